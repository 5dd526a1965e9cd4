#pragma once

#include "crnparam/pipeline.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace testing {

inline const std::string data_dir = CRNPARAM_DATA_DIR;

inline crnparam::ReactionNetwork load(const std::string& name) {
    return crnparam::load_network(data_dir + "/" + name + ".crn");
}

inline double log_uniform(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return std::pow(10.0, u(rng));
}

inline crnparam::RationalMatrix random_integer_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo = -3,
                                                      long hi = 3) {
    std::uniform_int_distribution<long> d(lo, hi);
    crnparam::RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

// Random mass-action networks over four species with at most two molecules per complex.
inline std::vector<crnparam::ReactionNetwork> random_networks(std::size_t count, std::uint64_t seed, std::size_t max_reactions = 8) {
    std::mt19937_64 rng(seed);
    std::vector<crnparam::ReactionNetwork> out;
    const std::vector<std::string> species{"A", "B", "C", "D"};
    while (out.size() < count) {
        std::size_t r = 2 + rng() % (max_reactions - 1);
        std::vector<crnparam::ReactionSpec> specs;
        for (std::size_t k = 0; k < r; ++k) {
            crnparam::ReactionSpec s;
            s.label = "R" + std::to_string(k + 1);
            s.rate_symbol = "k" + std::to_string(k + 1);
            do {
                s.source.assign(4, 0);
                s.product.assign(4, 0);
                for (int t = 0; t < 2; ++t) {
                    if (rng() % 3) s.source[rng() % 4] += 1;
                    if (rng() % 3) s.product[rng() % 4] += 1;
                }
            } while (s.source == s.product);
            specs.push_back(s);
        }
        out.emplace_back(species, specs);
    }
    return out;
}

// Cycles of affinely independent complexes with every reaction shifted by its own random complex,
// so each network has a weakly reversible deficiency-zero translation.
inline std::vector<crnparam::ReactionNetwork> random_translatable_networks(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<crnparam::ReactionNetwork> out;
    const std::vector<std::string> species{"A", "B", "C", "D"};
    while (out.size() < count) {
        std::vector<crnparam::ReactionSpec> specs;
        std::vector<crnparam::RationalVector> cols;
        std::size_t classes = 1 + rng() % 2;
        for (std::size_t c = 0; c < classes; ++c) {
            std::size_t len = 2 + rng() % 3;
            std::vector<crnparam::ComplexVector> cx;
            for (std::size_t i = 0; i < len; ++i) {
                crnparam::ComplexVector y(4, 0);
                for (int t = 0; t < 2; ++t)
                    if (rng() % 4) y[rng() % 4] += 1;
                cx.push_back(y);
            }
            for (std::size_t i = 0; i < len; ++i) {
                crnparam::ReactionSpec s;
                s.label = "R" + std::to_string(specs.size() + 1);
                s.rate_symbol = "k" + std::to_string(specs.size() + 1);
                crnparam::ComplexVector shift(4, 0);
                for (auto& v : shift) v = static_cast<std::int64_t>(rng() % 3 == 0);
                s.source = cx[i];
                s.product = cx[(i + 1) % len];
                for (std::size_t j = 0; j < 4; ++j) {
                    s.source[j] += shift[j];
                    s.product[j] += shift[j];
                }
                if (i + 1 < len) {
                    crnparam::RationalVector d(4);
                    for (std::size_t j = 0; j < 4; ++j) d[j] = cx[i + 1][j] - cx[i][j];
                    cols.push_back(d);
                }
                specs.push_back(s);
            }
        }
        crnparam::RationalMatrix m(4, cols.size());
        for (std::size_t k = 0; k < cols.size(); ++k)
            for (std::size_t j = 0; j < 4; ++j) m(j, k) = cols[k][j];
        if (crnparam::rank(m) != cols.size()) continue;
        bool distinct = true;
        for (const auto& s : specs) distinct = distinct && s.source != s.product;
        if (!distinct) continue;
        try {
            out.emplace_back(species, specs);
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

inline std::vector<std::size_t> labels_to_indices(const crnparam::ReactionNetwork& net, const std::vector<std::string>& labels) {
    std::vector<std::size_t> out;
    for (const auto& l : labels)
        for (std::size_t k = 0; k < net.reaction_count(); ++k)
            if (net.reactions()[k].label == l) out.push_back(k);
    return out;
}

inline crnparam::EquilibriumParametrization solve(const crnparam::ReactionNetwork& net) {
    crnparam::NetworkTranslation tr = crnparam::translate_by_blocks(net);
    if (!tr.ok) throw std::runtime_error("no valid translation");
    return crnparam::parametrize_equilibria(*tr.gcrn);
}

}  // namespace testing
