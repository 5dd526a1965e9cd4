#include "crnparam/translation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace crnparam {

namespace {

ComplexVector add(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

ComplexVector sub(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

}  // namespace

TranslationResult translation_complexes(const ReactionNetwork& net, const ReactionGraph& g) {
    const std::size_t r = net.reaction_count();
    const std::size_t m = net.species_count();
    TranslationResult res;
    RationalMatrix a(g.edges.size(), r), b(g.edges.size(), m);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [i, j] = g.edges[e];
        a(e, i) += 1;
        a(e, j) -= 1;
        ComplexVector rhs = sub(net.source_of(j), net.product_of(i));
        for (std::size_t s = 0; s < m; ++s) b(e, s) = rhs[s];
    }
    SolveResult sr = solve_consistent(a, b);
    res.rank_a = sr.rank_a;
    res.rank_augmented = sr.rank_augmented;
    if (!sr.consistent()) {
        for (std::size_t s = 0; s < m; ++s) {
            RationalMatrix col(g.edges.size(), 1);
            for (std::size_t e = 0; e < g.edges.size(); ++e) col(e, 0) = b(e, s);
            if (!solve_consistent(a, col).consistent()) res.violations.push_back("inconsistent in species " + net.species()[s]);
        }
        return res;
    }
    // neighbor lists carry the constraint offset: alpha_to = alpha_from + offset
    std::vector<std::vector<std::pair<std::size_t, ComplexVector>>> nbr(r);
    for (auto [i, j] : g.edges) {
        ComplexVector d = sub(net.product_of(i), net.source_of(j));  // alpha_j - alpha_i
        nbr[i].emplace_back(j, d);
        ComplexVector neg(m);
        for (std::size_t s = 0; s < m; ++s) neg[s] = -d[s];
        nbr[j].emplace_back(i, neg);
    }
    for (auto& list : nbr)
        std::stable_sort(list.begin(), list.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<ComplexVector> alpha(r, ComplexVector(m, 0));
    std::vector<bool> done(r, false);
    for (std::size_t seed = 0; seed < r; ++seed) {
        if (done[seed]) continue;
        done[seed] = true;
        std::deque<std::size_t> active{seed};
        while (!active.empty()) {
            std::size_t i = active.front();
            active.pop_front();
            for (const auto& [j, d] : nbr[i]) {
                if (done[j]) continue;
                alpha[j] = add(alpha[i], d);
                done[j] = true;
                active.push_back(j);
            }
        }
    }
    for (auto [i, j] : g.edges)
        if (sub(alpha[i], alpha[j]) != sub(net.source_of(j), net.product_of(i))) {
            res.violations.push_back("propagated translation violates edge (" + net.reactions()[i].label + "," +
                                     net.reactions()[j].label + ")");
            return res;
        }
    // nonnegativity shift per linkage class of the translated network
    std::vector<ComplexVector> cx;
    auto id = [&](const ComplexVector& c) {
        auto it = std::find(cx.begin(), cx.end(), c);
        if (it != cx.end()) return static_cast<std::size_t>(it - cx.begin());
        cx.push_back(c);
        return cx.size() - 1;
    };
    std::vector<std::pair<std::size_t, std::size_t>> links;
    std::vector<std::size_t> src_id(r);
    for (std::size_t k = 0; k < r; ++k) {
        src_id[k] = id(add(net.source_of(k), alpha[k]));
        links.emplace_back(src_id[k], id(add(net.product_of(k), alpha[k])));
    }
    auto comps = weak_components(cx.size(), links);
    std::vector<std::size_t> comp_of(cx.size());
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (std::size_t v : comps[c]) comp_of[v] = c;
    std::vector<ComplexVector> deficit(comps.size(), ComplexVector(m, 0));
    for (std::size_t v = 0; v < cx.size(); ++v)
        for (std::size_t s = 0; s < m; ++s) deficit[comp_of[v]][s] = std::max(deficit[comp_of[v]][s], -cx[v][s]);
    for (std::size_t k = 0; k < r; ++k) alpha[k] = add(alpha[k], deficit[comp_of[src_id[k]]]);
    res.alpha = std::move(alpha);
    res.consistent = true;
    return res;
}

ReactionNetwork translate_network(const ReactionNetwork& net, const std::vector<ComplexVector>& alpha) {
    if (alpha.size() != net.reaction_count()) throw std::invalid_argument("one translation complex per reaction required");
    std::vector<ReactionSpec> specs = net.reaction_specs();
    for (std::size_t k = 0; k < specs.size(); ++k) {
        specs[k].source = add(specs[k].source, alpha[k]);
        specs[k].product = add(specs[k].product, alpha[k]);
    }
    return ReactionNetwork(net.species(), specs);
}

std::vector<std::string> Gcrn::sigma_symbols() const {
    std::vector<std::string> out;
    for (const auto& e : edges)
        if (e.phantom) out.push_back(e.symbol);
    return out;
}

std::vector<std::string> Gcrn::rate_symbols() const {
    std::vector<std::string> out;
    for (const auto& e : edges)
        if (!e.phantom) out.push_back(e.symbol);
    return out;
}

Gcrn build_gcrn(const ReactionNetwork& net, const std::vector<ComplexVector>& alpha) {
    Gcrn g;
    g.species = net.species();
    g.original = net;
    g.alpha = alpha;
    ReactionNetwork translated = translate_network(net, alpha);
    const std::size_t r = net.reaction_count();
    const std::size_t nc = translated.complex_count();
    std::vector<std::vector<std::size_t>> out_rx(nc), in_rx(nc);
    for (std::size_t k = 0; k < r; ++k) {
        out_rx[translated.reactions()[k].source].push_back(k);
        in_rx[translated.reactions()[k].product].push_back(k);
    }
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> vertex_of;  // (stoich complex, original source) -> vertex
    std::vector<std::size_t> first_copy(nc);
    std::vector<std::vector<std::size_t>> copies(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        first_copy[c] = g.vertices.size();
        std::vector<std::size_t> sources;
        for (std::size_t k : out_rx[c]) {
            std::size_t s = net.reactions()[k].source;
            if (std::find(sources.begin(), sources.end(), s) == sources.end()) sources.push_back(s);
        }
        if (sources.empty()) {
            GcrnVertex v{c, net.product_of(in_rx[c].front()), false};
            copies[c].push_back(g.vertices.size());
            g.vertices.push_back(v);
            continue;
        }
        for (std::size_t s : sources) {
            vertex_of[{c, s}] = g.vertices.size();
            copies[c].push_back(g.vertices.size());
            g.vertices.push_back({c, net.complexes()[s], true});
        }
    }
    std::set<std::string> used;
    for (const auto& rx : net.reactions()) used.insert(rx.rate_symbol);
    for (std::size_t k = 0; k < r; ++k) {
        const auto& t = translated.reactions()[k];
        GcrnEdge e;
        e.tail = vertex_of.at({t.source, net.reactions()[k].source});
        e.head = first_copy[t.product];
        e.symbol = t.rate_symbol;
        e.reaction = k;
        g.edges.push_back(e);
    }
    std::vector<ReactionSpec> specs = translated.reaction_specs();
    std::size_t counter = 0;
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t t = 0; t + 1 < copies[c].size(); ++t) {
            std::string sym;
            do {
                sym = "sigma" + std::to_string(++counter);
            } while (used.count(sym));
            used.insert(sym);
            g.edges.push_back({copies[c][t], copies[c][t + 1], sym, true, std::nullopt});
            specs.push_back({"phantom" + std::to_string(counter), translated.complexes()[c], translated.complexes()[c], sym, true});
        }
    }
    g.stoich_network = ReactionNetwork(net.species(), specs);
    return g;
}

Gcrn build_gcrn(const ReactionNetwork& net) {
    return build_gcrn(net, std::vector<ComplexVector>(net.reaction_count(), ComplexVector(net.species_count(), 0)));
}

GcrnSummary gcrn_summary(const Gcrn& g) {
    GcrnSummary s;
    s.stoichiometric = structural_summary(g.stoich_network);
    s.effective_deficiency = s.stoichiometric.deficiency;
    s.stoichiometric_weakly_reversible = s.stoichiometric.weakly_reversible;
    s.vertices = g.vertices.size();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    RationalMatrix diff(g.edges.size(), g.species.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        edges.emplace_back(g.edges[e].tail, g.edges[e].head);
        for (std::size_t j = 0; j < g.species.size(); ++j)
            diff(e, j) = g.vertices[g.edges[e].head].kinetic[j] - g.vertices[g.edges[e].tail].kinetic[j];
    }
    auto weak = weak_components(g.vertices.size(), edges);
    auto strong = strong_components(g.vertices.size(), edges);
    s.kinetic_linkage_classes = weak.size();
    s.kinetic_rank = rank(diff);
    s.kinetic_deficiency = static_cast<std::int64_t>(s.vertices) - static_cast<std::int64_t>(weak.size()) -
                           static_cast<std::int64_t>(s.kinetic_rank);
    s.kinetic_weakly_reversible = weak.size() == strong.size();
    s.both_weakly_reversible = s.stoichiometric_weakly_reversible && s.kinetic_weakly_reversible;
    return s;
}

std::string kinetic_order_text(const Gcrn& g) {
    std::string out;
    for (const auto& e : g.edges) {
        std::string label = e.reaction ? g.original.reactions()[*e.reaction].label : "phantom";
        out += label + ": " + format_complex(g.vertices[e.tail].kinetic, g.species) + " -> " +
               format_complex(g.vertices[e.head].kinetic, g.species) + " ; " + e.symbol + "\n";
    }
    return out;
}

}  // namespace crnparam
