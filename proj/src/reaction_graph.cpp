#include "crnparam/reaction_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace crnparam {

bool ReactionGraph::has_edge(std::size_t i, std::size_t j) const {
    return std::binary_search(edges.begin(), edges.end(), Edge{i, j});
}

std::vector<Edge> predecessor_key(const ReactionGraph& g) {
    std::vector<Edge> key;
    for (auto [i, j] : g.edges) key.emplace_back(j, i);
    std::sort(key.begin(), key.end());
    return key;
}

std::string to_string(GraphSearchResult::Status s) {
    switch (s) {
        case GraphSearchResult::Status::found: return "found";
        case GraphSearchResult::Status::not_unitary: return "flux modes are not unitary";
        case GraphSearchResult::Status::not_covering: return "flux modes do not cover all reactions";
        case GraphSearchResult::Status::infeasible: return "no compatible reaction graph";
        case GraphSearchResult::Status::budget_exhausted: return "search budget exhausted";
    }
    return "unknown";
}

namespace {

std::vector<std::vector<std::size_t>> cycle_supports(const FluxModeSet& modes) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& m : modes.modes)
        if (m.support.size() >= 2) out.push_back(m.support);
    return out;
}

}  // namespace

std::size_t BlpModel::edge_variable(std::size_t i, std::size_t j) const {
    if (i == j || i >= reactions || j >= reactions) throw std::out_of_range("no edge variable");
    return i * (reactions - 1) + (j < i ? j : j - 1);
}

void BlpModel::add_no_good(const ReactionGraph& g) {
    BlpConstraint c;
    c.sense = BlpConstraint::Sense::ge;
    c.rhs = 1 - static_cast<long>(g.edges.size());
    for (std::size_t i = 0; i < reactions; ++i)
        for (std::size_t j = 0; j < reactions; ++j)
            if (i != j) c.terms.emplace_back(edge_variable(i, j), g.has_edge(i, j) ? -1 : 1);
    constraints.push_back(std::move(c));
}

bool BlpModel::feasible(const std::vector<long>& a) const {
    if (a.size() != variables.size()) return false;
    for (std::size_t v = 0; v < variables.size(); ++v)
        if (a[v] < variables[v].lower || a[v] > variables[v].upper) return false;
    for (const auto& c : constraints) {
        long lhs = 0;
        for (auto [v, coeff] : c.terms) lhs += coeff * a[v];
        if (c.sense == BlpConstraint::Sense::le && lhs > c.rhs) return false;
        if (c.sense == BlpConstraint::Sense::ge && lhs < c.rhs) return false;
        if (c.sense == BlpConstraint::Sense::eq && lhs != c.rhs) return false;
    }
    return true;
}

long BlpModel::objective_value(const std::vector<long>& a) const {
    long s = 0;
    for (std::size_t v = 0; v < objective.size(); ++v) s += objective[v] * a[v];
    return s;
}

BlpModel build_blp_model(const ReactionNetwork& net, const FluxModeSet& modes) {
    BlpModel m;
    const std::size_t r = net.reaction_count();
    m.reactions = r;
    m.cycle_supports = cycle_supports(modes);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (i != j) m.variables.push_back({BlpVariable::Kind::edge, 0, i, j, 0, 1});
    m.objective.assign(m.variables.size(), 1);

    using Sense = BlpConstraint::Sense;
    for (std::size_t mode = 0; mode < m.cycle_supports.size(); ++mode) {
        const auto& s = m.cycle_supports[mode];
        const long n = static_cast<long>(s.size());
        std::map<Edge, std::size_t> y;
        for (std::size_t i : s)
            for (std::size_t j : s)
                if (i != j) {
                    y[{i, j}] = m.variables.size();
                    m.variables.push_back({BlpVariable::Kind::cycle, mode, i, j, 0, 1});
                }
        for (std::size_t i : s) {
            BlpConstraint out{{}, Sense::eq, 1}, in{{}, Sense::eq, 1};
            for (std::size_t j : s)
                if (i != j) {
                    out.terms.emplace_back(y[{i, j}], 1);
                    in.terms.emplace_back(y[{j, i}], 1);
                }
            m.constraints.push_back(std::move(out));
            m.constraints.push_back(std::move(in));
        }
        for (const auto& [e, idx] : y)
            m.constraints.push_back({{{idx, 1}, {m.edge_variable(e.first, e.second), -1}}, Sense::le, 0});
        if (n >= 3) {
            std::map<std::size_t, std::size_t> u;
            for (std::size_t k = 1; k < s.size(); ++k) {
                u[s[k]] = m.variables.size();
                m.variables.push_back({BlpVariable::Kind::order, mode, s[k], 0, 1, n - 1});
            }
            for (std::size_t a = 1; a < s.size(); ++a)
                for (std::size_t b = 1; b < s.size(); ++b)
                    if (a != b)
                        m.constraints.push_back(
                            {{{u[s[a]], 1}, {u[s[b]], -1}, {y[{s[a], s[b]}], n}}, Sense::le, n - 1});
        }
    }
    m.objective.resize(m.variables.size(), 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j || net.reactions()[i].source != net.reactions()[j].source) continue;
            // x_ij would force the loop x_ii
            m.constraints.push_back({{{m.edge_variable(i, j), 1}}, Sense::eq, 0});
            if (i < j)
                for (std::size_t k = 0; k < r; ++k)
                    if (k != i && k != j)
                        m.constraints.push_back({{{m.edge_variable(k, i), 1}, {m.edge_variable(k, j), -1}}, Sense::eq, 0});
        }
    return m;
}

std::vector<std::vector<std::size_t>> minimal_cycle_supports(const ReactionGraph& g, std::size_t limit) {
    const std::size_t n = g.vertices;
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [i, j] : g.edges) adj[i].push_back(j);
    std::set<std::vector<std::size_t>> sets;
    std::vector<std::size_t> path;
    std::vector<bool> on_path(n, false);
    std::size_t found = 0;
    // cycles listed once, from their smallest vertex
    for (std::size_t start = 0; start < n; ++start) {
        std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
        path = {start};
        on_path.assign(n, false);
        on_path[start] = true;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < adj[v].size()) {
                std::size_t w = adj[v][next++];
                if (w == start) {
                    std::vector<std::size_t> s = path;
                    std::sort(s.begin(), s.end());
                    sets.insert(std::move(s));
                    if (++found > limit) throw std::length_error("too many cycles");
                } else if (w > start && !on_path[w]) {
                    on_path[w] = true;
                    path.push_back(w);
                    stack.emplace_back(w, 0);
                }
            } else {
                on_path[v] = false;
                path.pop_back();
                stack.pop_back();
            }
        }
    }
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : sets) {
        bool minimal = true;
        for (const auto& t : sets)
            if (t.size() < s.size() && std::includes(s.begin(), s.end(), t.begin(), t.end())) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(s);
    }
    return out;
}

CompatibilityReport compatibility_check(const ReactionNetwork& net, const ReactionGraph& g, const FluxModeSet& modes) {
    CompatibilityReport rep;
    const std::size_t r = net.reaction_count();
    const auto& rx = net.reactions();
    auto label = [&](std::size_t i) { return rx[i].label; };
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j || rx[i].source != rx[j].source) continue;
            for (std::size_t k = 0; k < r; ++k) {
                bool ki = k != i && g.has_edge(k, i);
                bool kj = k != j && g.has_edge(k, j);
                if (ki && !kj) {
                    rep.cs_ok = false;
                    rep.violations.push_back("CS: (" + label(k) + "," + label(i) + ") present, (" + label(k) + "," + label(j) +
                                             ") missing");
                }
            }
        }
    std::set<std::vector<std::size_t>> supports;
    for (const auto& s : cycle_supports(modes)) supports.insert(s);
    std::set<std::vector<std::size_t>> cycles;
    try {
        for (auto& c : minimal_cycle_supports(g)) cycles.insert(c);
    } catch (const std::length_error&) {
        rep.em_ok = false;
        rep.violations.push_back("EM: cycle enumeration limit reached");
    }
    auto names = [&](const std::vector<std::size_t>& s) {
        std::string out = "{";
        for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + label(s[k]);
        return out + "}";
    };
    for (const auto& c : cycles)
        if (!supports.count(c)) {
            rep.em_ok = false;
            rep.violations.push_back("EM: minimal cycle " + names(c) + " is not a flux mode");
        }
    for (const auto& s : supports)
        if (!cycles.count(s)) {
            rep.em_ok = false;
            rep.violations.push_back("EM: flux mode " + names(s) + " is not a minimal cycle");
        }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) continue;
            bool match = net.product_of(i) == net.source_of(j);
            bool edge = g.has_edge(i, j);
            if (match != edge) {
                rep.ps_ok = false;
                rep.violations.push_back("PS: (" + label(i) + "," + label(j) + ") " +
                                         (edge ? "is an edge but y_p != y_s" : "is not an edge but y_p == y_s"));
            }
        }
    return rep;
}

namespace {

class GraphSearch {
public:
    GraphSearch(const ReactionNetwork& net, const std::vector<std::vector<std::size_t>>& supports, std::uint64_t budget,
                std::uint64_t& nodes)
        : net_(net), r_(net.reaction_count()), supports_(supports), budget_(budget), nodes_(nodes) {
        for (const auto& s : supports_) cycles_.push_back(hamiltonian_cycles(s));
    }

    // false when the budget ran out
    bool run(const std::set<std::vector<Edge>>& excluded) {
        excluded_ = &excluded;
        best_.reset();
        Adjacency a(r_ * r_, false);
        chosen_.assign(supports_.size(), 0);
        try {
            dfs(0, a, 0);
        } catch (const Budget&) {
            return false;
        }
        return true;
    }

    bool found() const { return best_.has_value(); }
    const ReactionGraph& best() const { return best_->graph; }
    const std::vector<std::size_t>& best_choice() const { return best_->choice; }
    const std::vector<std::vector<std::size_t>>& cycles_of(std::size_t mode) const { return cycles_[mode]; }

private:
    struct Budget {};
    using Adjacency = std::vector<bool>;
    struct Best {
        ReactionGraph graph;
        std::vector<Edge> key;
        std::vector<std::size_t> choice;
    };

    static std::vector<std::vector<std::size_t>> hamiltonian_cycles(const std::vector<std::size_t>& s) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> rest(s.begin() + 1, s.end());
        do {
            std::vector<std::size_t> c{s[0]};
            c.insert(c.end(), rest.begin(), rest.end());
            out.push_back(std::move(c));
        } while (std::next_permutation(rest.begin(), rest.end()));
        if (s.size() == 2) out.resize(1);
        return out;
    }

    bool add_edge(Adjacency& a, std::size_t& size, std::size_t k, std::size_t i) const {
        const auto& rx = net_.reactions();
        if (rx[k].source == rx[i].source) return false;
        for (std::size_t j = 0; j < r_; ++j) {
            if (rx[j].source != rx[i].source) continue;
            if (!a[k * r_ + j]) {
                a[k * r_ + j] = true;
                ++size;
            }
        }
        return true;
    }

    void dfs(std::size_t mode, const Adjacency& a, std::size_t size) {
        if (++nodes_ > budget_) throw Budget{};
        if (best_ && size > best_->graph.edges.size()) return;
        if (mode == supports_.size()) {
            ReactionGraph g;
            g.vertices = r_;
            for (std::size_t i = 0; i < r_; ++i)
                for (std::size_t j = 0; j < r_; ++j)
                    if (a[i * r_ + j]) g.edges.emplace_back(i, j);
            std::vector<Edge> key = predecessor_key(g);
            if (excluded_->count(g.edges)) return;
            if (!best_ || g.edges.size() < best_->graph.edges.size() ||
                (g.edges.size() == best_->graph.edges.size() && key < best_->key))
                best_ = Best{std::move(g), std::move(key), chosen_};
            return;
        }
        for (std::size_t c = 0; c < cycles_[mode].size(); ++c) {
            const auto& cyc = cycles_[mode][c];
            Adjacency next = a;
            std::size_t next_size = size;
            bool ok = true;
            for (std::size_t t = 0; t < cyc.size() && ok; ++t)
                ok = add_edge(next, next_size, cyc[t], cyc[(t + 1) % cyc.size()]);
            if (!ok) continue;
            chosen_[mode] = c;
            dfs(mode + 1, next, next_size);
        }
    }

    const ReactionNetwork& net_;
    std::size_t r_;
    const std::vector<std::vector<std::size_t>>& supports_;
    std::vector<std::vector<std::vector<std::size_t>>> cycles_;
    std::uint64_t budget_;
    std::uint64_t& nodes_;
    const std::set<std::vector<Edge>>* excluded_ = nullptr;
    std::optional<Best> best_;
    std::vector<std::size_t> chosen_;
};

std::vector<long> assignment_for(const BlpModel& m, const ReactionGraph& g, const std::vector<std::vector<std::size_t>>& cycles) {
    std::vector<long> a(m.variables.size(), 0);
    for (std::size_t v = 0; v < m.variables.size(); ++v) {
        const auto& var = m.variables[v];
        if (var.kind == BlpVariable::Kind::edge) {
            a[v] = g.has_edge(var.i, var.j) ? 1 : 0;
        } else if (var.kind == BlpVariable::Kind::cycle) {
            const auto& c = cycles[var.mode];
            for (std::size_t t = 0; t < c.size(); ++t)
                if (c[t] == var.i && c[(t + 1) % c.size()] == var.j) a[v] = 1;
        } else {
            const auto& c = cycles[var.mode];
            a[v] = static_cast<long>(std::find(c.begin(), c.end(), var.i) - c.begin());
        }
    }
    return a;
}

}  // namespace

GraphSearchResult build_reaction_graph(const ReactionNetwork& net, const FluxModeSet& modes, const GraphSearchOptions& options,
                                       const std::function<bool(const ReactionGraph&)>& accept) {
    GraphSearchResult result;
    using Status = GraphSearchResult::Status;
    if (!modes.unitary) {
        result.status = Status::not_unitary;
        result.message = to_string(result.status);
        return result;
    }
    if (!modes.covers) {
        result.status = Status::not_covering;
        result.message = to_string(result.status);
        return result;
    }
    result.model = build_blp_model(net, modes);
    std::set<std::vector<Edge>> excluded;
    GraphSearch search(net, result.model.cycle_supports, options.node_budget, result.nodes);
    for (result.rounds = 1; result.rounds <= options.max_rounds; ++result.rounds) {
        if (!search.run(excluded)) {
            result.status = Status::budget_exhausted;
            result.message = to_string(result.status) + " after " + std::to_string(result.nodes) + " nodes";
            return result;
        }
        if (!search.found()) {
            result.status = Status::infeasible;
            result.message = to_string(result.status);
            return result;
        }
        const ReactionGraph& g = search.best();
        CompatibilityReport rep = compatibility_check(net, g, modes);
        if (rep.cs_ok && rep.em_ok && (!accept || accept(g))) {
            std::vector<std::vector<std::size_t>> cycles;
            for (std::size_t m = 0; m < result.model.cycle_supports.size(); ++m)
                cycles.push_back(search.cycles_of(m)[search.best_choice()[m]]);
            result.graph = g;
            result.assignment = assignment_for(result.model, g, cycles);
            result.status = Status::found;
            return result;
        }
        result.model.add_no_good(g);
        excluded.insert(g.edges);
    }
    result.status = Status::infeasible;
    result.message = "no-good iteration limit reached";
    return result;
}

}  // namespace crnparam
