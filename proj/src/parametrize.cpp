#include "crnparam/parametrize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>

namespace crnparam {

namespace {

std::vector<std::vector<std::size_t>> incident_edges(const Gcrn& g) {
    std::vector<std::vector<std::size_t>> inc(g.vertices.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].tail == g.edges[e].head) continue;
        inc[g.edges[e].tail].push_back(e);
        inc[g.edges[e].head].push_back(e);
    }
    return inc;
}

std::vector<std::vector<std::size_t>> kinetic_classes(const Gcrn& g) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : g.edges) edges.emplace_back(e.tail, e.head);
    return weak_components(g.vertices.size(), edges);
}

Rational rational_pow(const Rational& q, long e) {
    Rational out = 1;
    Rational base = e < 0 ? Rational(1 / q) : q;
    for (long i = 0; i < std::labs(e); ++i) out *= base;
    return out;
}

// Every coefficient has sign s (returns 0 for mixed signs or zero).
int uniform_sign(const Polynomial& p) {
    int s = 0;
    for (const auto& [m, c] : p.terms()) {
        int t = sgn(c);
        if (s == 0) s = t;
        if (t != s) return 0;
    }
    return s;
}

double scaled_value(const Polynomial& p, const std::map<std::string, double>& values) {
    double sum = 0.0, mag = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double t = c.get_d();
        for (const auto& [v, e] : m) t *= std::pow(values.at(v), static_cast<double>(e));
        sum += t;
        mag += std::fabs(t);
    }
    return mag > 0 ? sum / mag : 0.0;
}

}  // namespace

SpanningForest spanning_forest(const Gcrn& g, ForestOrder order) {
    SpanningForest f;
    auto inc = incident_edges(g);
    auto key = [&](std::size_t e) { return std::make_tuple(g.edges[e].tail, g.edges[e].head, e); };
    for (auto& list : inc) {
        std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
        if (order == ForestOrder::reverse) std::reverse(list.begin(), list.end());
    }
    std::vector<bool> seen(g.vertices.size(), false);
    for (const auto& cls : kinetic_classes(g)) {
        std::size_t root = order == ForestOrder::reverse ? cls.back() : cls.front();
        f.roots.push_back(root);
        seen[root] = true;
        std::deque<std::size_t> queue{root};
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t e : inc[u]) {
                std::size_t w = g.edges[e].tail == u ? g.edges[e].head : g.edges[e].tail;
                if (seen[w]) continue;
                seen[w] = true;
                f.edges.push_back(e);
                queue.push_back(w);
            }
        }
    }
    return f;
}

RationalMatrix kinetic_difference_matrix(const Gcrn& g, const SpanningForest& f) {
    RationalMatrix m(f.edges.size(), g.species.size());
    for (std::size_t r = 0; r < f.edges.size(); ++r) {
        const auto& e = g.edges[f.edges[r]];
        for (std::size_t j = 0; j < g.species.size(); ++j)
            m(r, j) = g.vertices[e.head].kinetic[j] - g.vertices[e.tail].kinetic[j];
    }
    return m;
}

std::vector<Polynomial> tree_constants(const Gcrn& g) {
    std::vector<Polynomial> k(g.vertices.size());
    std::vector<std::vector<std::size_t>> out(g.vertices.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.edges[e].tail != g.edges[e].head) out[g.edges[e].tail].push_back(e);
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    for (const auto& cls : kinetic_classes(g)) {
        for (std::size_t root : cls) {
            std::vector<std::size_t> others;
            for (std::size_t v : cls)
                if (v != root) others.push_back(v);
            std::vector<std::size_t> parent(g.vertices.size(), none), via(g.vertices.size(), none);
            Polynomial sum;
            // choose one outgoing edge per non-root vertex, rejecting cycles as they appear
            std::function<void(std::size_t)> choose = [&](std::size_t idx) {
                if (idx == others.size()) {
                    Monomial m;
                    for (std::size_t v : others) m.emplace_back(g.edges[via[v]].symbol, 1);
                    std::sort(m.begin(), m.end(), [](const auto& a, const auto& b) { return symbol_less(a.first, b.first); });
                    Monomial merged;
                    for (const auto& t : m) {
                        if (!merged.empty() && merged.back().first == t.first)
                            merged.back().second += t.second;
                        else
                            merged.push_back(t);
                    }
                    sum += monomial_polynomial(merged);
                    return;
                }
                std::size_t v = others[idx];
                for (std::size_t e : out[v]) {
                    std::size_t w = g.edges[e].head;
                    std::size_t u = w;
                    bool cycle = false;
                    while (u != root && u != none) {
                        if (u == v) {
                            cycle = true;
                            break;
                        }
                        u = parent[u];
                    }
                    if (cycle) continue;
                    parent[v] = w;
                    via[v] = e;
                    choose(idx + 1);
                    parent[v] = none;
                    via[v] = none;
                }
            };
            choose(0);
            if (others.empty()) sum = Polynomial(1);
            k[root] = std::move(sum);
        }
    }
    return k;
}

double SymbolicPowerProduct::evaluate(const std::map<std::string, double>& values,
                                      const std::vector<std::string>& free_symbols) const {
    double log_sum = 0.0;
    for (const auto& f : factors) log_sum += f.exponent.get_d() * std::log(std::fabs(f.base.evaluate(values)));
    for (std::size_t i = 0; i < free_exponents.size(); ++i) {
        if (sgn(free_exponents[i]) == 0) continue;
        log_sum += free_exponents[i].get_d() * std::log(values.at(free_symbols[i]));
    }
    return std::exp(log_sum);
}

std::string SymbolicPowerProduct::to_string(const std::vector<std::string>& free_symbols) const {
    std::string out;
    auto append = [&](const std::string& base, bool atomic, const Rational& e) {
        if (!out.empty()) out += " * ";
        out += atomic ? base : "(" + base + ")";
        if (e != 1) out += "^(" + e.get_str() + ")";
    };
    for (const auto& f : factors) {
        bool atomic = f.base.term_count() == 1 && (f.base.is_constant() ? sgn(f.base.constant_value()) > 0 &&
                                                                               f.base.constant_value().get_den() == 1
                                                                         : f.base.terms().begin()->first.size() == 1 &&
                                                                               f.base.terms().begin()->second == 1);
        append(f.base.to_string(), atomic, f.exponent);
    }
    for (std::size_t i = 0; i < free_exponents.size(); ++i)
        if (sgn(free_exponents[i]) != 0) append(free_symbols[i], true, free_exponents[i]);
    return out.empty() ? "1" : out;
}

SymbolSet SymbolicPowerProduct::symbols() const {
    SymbolSet out;
    for (const auto& f : factors)
        for (const auto& v : f.base.variables()) out.insert(v);
    return out;
}

std::size_t EquilibriumParametrization::species_index(const std::string& name) const {
    auto it = std::find(species.begin(), species.end(), name);
    if (it == species.end()) throw std::out_of_range("unknown species " + name);
    return static_cast<std::size_t>(it - species.begin());
}

std::vector<std::string> EquilibriumParametrization::numeric_unknowns() const {
    std::vector<std::string> out;
    for (const auto& c : side_conditions)
        if (!c.solved && !c.trivial && !c.designated.empty() &&
            std::find(out.begin(), out.end(), c.designated) == out.end())
            out.push_back(c.designated);
    return out;
}

void rebuild_expressions(EquilibriumParametrization& p) {
    const std::size_t nv = p.tree_constants.size();
    std::vector<Polynomial> inputs;
    for (const auto& k : p.tree_constants) {
        inputs.push_back(k.num);
        inputs.push_back(k.den);
    }
    FactorRefinement fr = refine_factors(inputs);
    const std::size_t nb = fr.basis.size();
    std::vector<std::vector<long>> a(nv, std::vector<long>(nb));
    std::vector<Rational> c(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        for (std::size_t b = 0; b < nb; ++b) a[v][b] = fr.exponents[2 * v][b] - fr.exponents[2 * v + 1][b];
        c[v] = fr.constants[2 * v] / fr.constants[2 * v + 1];
    }
    p.expressions.clear();
    for (std::size_t j = 0; j < p.species.size(); ++j) {
        std::vector<Rational> expo(nb, Rational(0));
        std::vector<std::pair<Rational, Rational>> consts;
        auto add_const = [&](const Rational& value, const Rational& e) {
            Rational v = abs(value);
            if (v == 1 || sgn(e) == 0) return;
            for (auto& [cv, ce] : consts)
                if (cv == v) {
                    ce += e;
                    return;
                }
            consts.emplace_back(v, e);
        };
        for (std::size_t e = 0; e < p.forest_edges.size(); ++e) {
            const Rational& h = p.edge_exponents(j, e);
            if (sgn(h) == 0) continue;
            auto [tail, head] = p.forest_edges[e];
            for (std::size_t b = 0; b < nb; ++b) expo[b] += h * (a[head][b] - a[tail][b]);
            add_const(c[head], h);
            add_const(c[tail], -h);
        }
        SymbolicPowerProduct spp;
        for (std::size_t b = 0; b < nb; ++b)
            if (sgn(expo[b]) != 0) spp.factors.push_back({fr.basis[b], expo[b]});
        for (const auto& [cv, ce] : consts)
            if (sgn(ce) != 0) spp.factors.push_back({Polynomial(cv), ce});
        spp.free_exponents = p.free_exponent_matrix.row(j);
        p.expressions.push_back(std::move(spp));
    }
}

EquilibriumParametrization parametrize_equilibria(const Gcrn& g, const ParametrizeOptions& options) {
    GcrnSummary summary = gcrn_summary(g);
    if (!summary.kinetic_weakly_reversible) throw std::domain_error("kinetic-order graph is not weakly reversible");
    EquilibriumParametrization p;
    p.species = g.species;
    p.kinetic_deficiency = summary.kinetic_deficiency;
    p.effective_deficiency = summary.effective_deficiency;
    p.all_positive_equilibria = summary.effective_deficiency == 0;
    p.rate_symbols = g.rate_symbols();
    p.sigma_symbols = g.sigma_symbols();

    SpanningForest forest = spanning_forest(g, options.forest);
    RationalMatrix m = kinetic_difference_matrix(g, forest);
    for (std::size_t e : forest.edges) p.forest_edges.emplace_back(g.edges[e].tail, g.edges[e].head);
    p.edge_exponents = generalized_inverse(m);
    p.free_exponent_matrix = kernel_basis(m);
    RationalMatrix cokernel = cokernel_basis(m);
    for (std::size_t t = 0; t < p.free_exponent_matrix.cols(); ++t) p.free_symbols.push_back("tau" + std::to_string(t + 1));

    for (auto& k : tree_constants(g)) p.tree_constants.push_back({k, Polynomial(1)});

    for (std::size_t t = 0; t < cokernel.cols(); ++t) {
        std::vector<mpz_class> c = primitive_integer_vector(cokernel.column(t));
        std::vector<long> w(g.vertices.size(), 0);
        for (std::size_t e = 0; e < c.size(); ++e) {
            long ce = c[e].get_si();
            w[p.forest_edges[e].second] += ce;
            w[p.forest_edges[e].first] -= ce;
        }
        std::vector<Polynomial> inputs;
        std::vector<std::size_t> which;
        for (std::size_t v = 0; v < w.size(); ++v)
            if (w[v] != 0) {
                inputs.push_back(p.tree_constants[v].num);
                inputs.push_back(p.tree_constants[v].den);
                which.push_back(v);
            }
        SideCondition cond;
        if (inputs.empty()) {
            cond.trivial = true;
            p.side_conditions.push_back(cond);
            continue;
        }
        FactorRefinement fr = refine_factors(inputs);
        std::vector<long> n(fr.basis.size(), 0);
        Rational constant = 1;
        for (std::size_t i = 0; i < which.size(); ++i) {
            long wv = w[which[i]];
            for (std::size_t b = 0; b < fr.basis.size(); ++b)
                n[b] += wv * (fr.exponents[2 * i][b] - fr.exponents[2 * i + 1][b]);
            constant *= rational_pow(Rational(fr.constants[2 * i] / fr.constants[2 * i + 1]), wv);
        }
        Polynomial lhs{constant}, rhs(1);
        for (std::size_t b = 0; b < fr.basis.size(); ++b) {
            if (n[b] > 0) lhs *= fr.basis[b].pow(static_cast<unsigned>(n[b]));
            if (n[b] < 0) rhs *= fr.basis[b].pow(static_cast<unsigned>(-n[b]));
        }
        cond.equation = (lhs - rhs).normalized();
        if (cond.equation.is_zero()) {
            cond.trivial = true;
            p.side_conditions.push_back(cond);
            continue;
        }
        std::vector<std::string> candidates;
        for (const auto& s : p.sigma_symbols)
            if (std::none_of(p.solved.begin(), p.solved.end(), [&](const SolvedSymbol& x) { return x.symbol == s; }))
                candidates.push_back(s);
        for (const auto& s : p.rate_symbols)
            if (std::none_of(p.solved.begin(), p.solved.end(), [&](const SolvedSymbol& x) { return x.symbol == s; }))
                candidates.push_back(s);
        for (const auto& z : candidates) {
            if (!cond.equation.contains(z)) continue;
            if (cond.designated.empty()) cond.designated = z;
            if (!options.eliminate || cond.equation.degree(z) != 1) continue;
            auto coeffs = cond.equation.coefficients_in(z);
            if (!coeffs.count(0)) continue;
            const Polynomial& a1 = coeffs[1];
            const Polynomial& a0 = coeffs[0];
            int s1 = uniform_sign(a1), s0 = uniform_sign(a0);
            if (s1 == 0 || s0 == 0 || s1 == s0) continue;
            RationalFunction value = reduce({-a0, a1});
            for (auto& k : p.tree_constants) k = substitute(k, z, value);
            for (auto& s : p.solved) s.value = substitute(s.value, z, value);
            p.solved.push_back({z, value});
            cond.designated = z;
            cond.solved = true;
            break;
        }
        p.side_conditions.push_back(cond);
    }
    p.free_parameters = p.free_symbols;
    for (const auto& s : p.sigma_symbols)
        if (std::none_of(p.solved.begin(), p.solved.end(), [&](const SolvedSymbol& x) { return x.symbol == s; }))
            p.free_parameters.push_back(s);
    rebuild_expressions(p);
    return p;
}

EquilibriumParametrization express_in_species(const EquilibriumParametrization& p, const std::vector<std::string>& preferred) {
    EquilibriumParametrization out = p;
    const std::size_t d = p.free_exponent_matrix.cols();
    if (d == 0) return out;
    std::vector<std::size_t> order;
    for (const auto& name : preferred) {
        std::size_t j = p.species_index(name);
        if (std::find(order.begin(), order.end(), j) == order.end()) order.push_back(j);
    }
    for (std::size_t j = 0; j < p.species.size(); ++j)
        if (std::find(order.begin(), order.end(), j) == order.end()) order.push_back(j);
    std::vector<std::size_t> chosen;
    for (std::size_t j : order) {
        if (chosen.size() == d) break;
        std::vector<std::size_t> trial = chosen;
        trial.push_back(j);
        if (rank(p.free_exponent_matrix.select_rows(trial)) == trial.size()) chosen = std::move(trial);
    }
    if (chosen.size() < d) {
        out.substitution_fallback = true;
        return out;
    }
    RationalMatrix t = inverse(p.free_exponent_matrix.select_rows(chosen));
    RationalMatrix new_free = p.free_exponent_matrix * t;
    out.edge_exponents = p.edge_exponents - new_free * p.edge_exponents.select_rows(chosen);
    out.free_exponent_matrix = new_free;
    out.free_symbols.clear();
    for (std::size_t j : chosen) out.free_symbols.push_back(p.species[j]);
    std::vector<std::string> params = out.free_symbols;
    for (const auto& s : p.free_parameters)
        if (std::find(p.free_symbols.begin(), p.free_symbols.end(), s) == p.free_symbols.end()) params.push_back(s);
    out.free_parameters = params;
    rebuild_expressions(out);
    return out;
}

bool complete_values(const EquilibriumParametrization& p, std::map<std::string, double>& values) {
    auto fill_solved = [&]() {
        for (const auto& s : p.solved) values[s.symbol] = s.value.evaluate(values);
    };
    std::vector<std::string> unknowns = p.numeric_unknowns();
    std::vector<const SideCondition*> open;
    for (const auto& c : p.side_conditions)
        if (!c.solved && !c.trivial) open.push_back(&c);
    auto positive = [&]() {
        for (const auto& s : p.solved) {
            double v = values[s.symbol];
            if (!(v > 0) || !std::isfinite(v)) return false;
        }
        return true;
    };
    if (unknowns.empty()) {
        fill_solved();
        return positive();
    }
    auto residuals = [&](const std::vector<double>& logs) {
        for (std::size_t i = 0; i < unknowns.size(); ++i) values[unknowns[i]] = std::exp(logs[i]);
        fill_solved();
        std::vector<double> r;
        for (const auto* c : open) r.push_back(scaled_value(c->equation, values));
        return r;
    };
    if (unknowns.size() == 1 && open.size() == 1) {
        double lo = std::log(1e-10), step = std::log(10.0) / 4;
        double prev_x = lo, prev_r = residuals({lo})[0];
        for (double x = lo + step; x <= std::log(1e10) + 1e-12; x += step) {
            double r = residuals({x})[0];
            if (prev_r == 0.0) {
                residuals({prev_x});
                return positive();
            }
            if ((r < 0) != (prev_r < 0)) {
                double a = prev_x, b = x, fa = prev_r;
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (a + b);
                    double fm = residuals({mid})[0];
                    if ((fm < 0) == (fa < 0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                residuals({0.5 * (a + b)});
                return positive();
            }
            prev_x = x;
            prev_r = r;
        }
        return false;
    }
    // damped Newton in log space for coupled conditions
    const std::size_t n = unknowns.size();
    if (open.size() != n) return false;
    std::vector<double> x(n, 0.0);
    for (int it = 0; it < 100; ++it) {
        std::vector<double> r = residuals(x);
        double norm = 0;
        for (double v : r) norm = std::max(norm, std::fabs(v));
        if (norm < 1e-14) return positive();
        std::vector<std::vector<double>> jac(n, std::vector<double>(n + 1));
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> xp = x;
            xp[j] += 1e-7;
            std::vector<double> rp = residuals(xp);
            for (std::size_t i = 0; i < n; ++i) jac[i][j] = (rp[i] - r[i]) / 1e-7;
        }
        for (std::size_t i = 0; i < n; ++i) jac[i][n] = -r[i];
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            for (std::size_t i = c + 1; i < n; ++i)
                if (std::fabs(jac[i][c]) > std::fabs(jac[piv][c])) piv = i;
            std::swap(jac[c], jac[piv]);
            if (std::fabs(jac[c][c]) < 1e-300) return false;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == c) continue;
                double f = jac[i][c] / jac[c][c];
                for (std::size_t k = c; k <= n; ++k) jac[i][k] -= f * jac[c][k];
            }
        }
        for (std::size_t i = 0; i < n; ++i) x[i] += std::clamp(jac[i][n] / jac[i][i], -2.0, 2.0);
    }
    residuals(x);
    return false;
}

std::vector<double> evaluate_species(const EquilibriumParametrization& p, const std::map<std::string, double>& values) {
    std::vector<double> x;
    for (const auto& e : p.expressions) x.push_back(e.evaluate(values, p.free_symbols));
    return x;
}

}  // namespace crnparam
