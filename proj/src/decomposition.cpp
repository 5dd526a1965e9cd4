#include "crnparam/decomposition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace crnparam {

Decomposition finest_independent_decomposition(const ReactionNetwork& net) {
    const RationalMatrix n = stoichiometric_matrix(net);
    const std::size_t r = net.reaction_count();
    // greedy basis by increasing index: pivot columns of rref(N)
    RowEchelon e = rref(n);
    const std::vector<std::size_t>& basis = e.pivots;
    std::vector<long> basis_pos(r, -1);
    for (std::size_t i = 0; i < basis.size(); ++i) basis_pos[basis[i]] = static_cast<long>(i);

    std::vector<std::pair<std::size_t, std::size_t>> links;
    for (std::size_t k = 0; k < r; ++k) {
        if (basis_pos[k] >= 0) continue;
        // column k of rref gives coordinates of v_k in the pivot basis
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (sgn(e.matrix(i, k)) != 0) links.emplace_back(k, basis[i]);
    }
    Decomposition d;
    d.blocks = weak_components(r, links);
    return verify_independence(net, d.blocks);
}

Decomposition verify_independence(const ReactionNetwork& net, std::vector<std::vector<std::size_t>> blocks) {
    const RationalMatrix n = stoichiometric_matrix(net);
    Decomposition d;
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    std::vector<int> seen(net.reaction_count(), 0);
    for (const auto& b : blocks)
        for (std::size_t k : b) {
            if (k >= net.reaction_count()) throw std::out_of_range("reaction index out of range");
            ++seen[k];
        }
    for (int c : seen)
        if (c != 1) throw std::invalid_argument("blocks do not partition the reactions");
    d.blocks = std::move(blocks);
    d.total_rank = rank(n);
    std::size_t sum = 0;
    for (const auto& b : d.blocks) {
        d.block_ranks.push_back(rank(n.select_columns(b)));
        sum += d.block_ranks.back();
    }
    d.independent = sum == d.total_rank;
    return d;
}

ReactionNetwork subnetwork(const ReactionNetwork& net, const std::vector<std::size_t>& reactions) {
    std::vector<ReactionSpec> specs;
    auto all = net.reaction_specs();
    for (std::size_t k : reactions) specs.push_back(all.at(k));
    return ReactionNetwork(net.species(), specs);
}

ReactionNetwork merge_subnetworks(const std::vector<ReactionNetwork>& parts) {
    std::vector<std::string> species;
    for (const auto& p : parts)
        for (const auto& s : p.species())
            if (std::find(species.begin(), species.end(), s) == species.end()) species.push_back(s);
    std::vector<ReactionSpec> specs;
    std::map<std::string, std::size_t> by_symbol;
    for (const auto& p : parts) {
        for (const auto& spec : p.reaction_specs()) {
            ReactionSpec out{spec.label, ComplexVector(species.size(), 0), ComplexVector(species.size(), 0),
                             spec.rate_symbol, spec.phantom};
            for (std::size_t i = 0; i < p.species_count(); ++i) {
                std::size_t j = static_cast<std::size_t>(std::find(species.begin(), species.end(), p.species()[i]) - species.begin());
                out.source[j] = spec.source[i];
                out.product[j] = spec.product[i];
            }
            auto it = by_symbol.find(spec.rate_symbol);
            if (it != by_symbol.end()) {
                const auto& prev = specs[it->second];
                if (prev.source != out.source || prev.product != out.product || prev.label != out.label)
                    throw std::invalid_argument("rate symbol " + spec.rate_symbol + " bound to two different reactions");
                continue;
            }
            by_symbol[spec.rate_symbol] = specs.size();
            specs.push_back(std::move(out));
        }
    }
    return ReactionNetwork(std::move(species), specs);
}

}  // namespace crnparam
