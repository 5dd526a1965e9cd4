#include "crnparam/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace crnparam {

namespace {

Json complex_json(const ComplexVector& c) {
    Json a = Json::array();
    for (auto v : c) a.push_back(v);
    return a;
}

ComplexVector complex_from(const Json& j) {
    ComplexVector c;
    for (const auto& v : j) c.push_back(v.get<std::int64_t>());
    return c;
}

Json labels(const ReactionNetwork& net, const std::vector<std::size_t>& idx) {
    Json a = Json::array();
    for (std::size_t i : idx) a.push_back(net.reactions()[i].label);
    return a;
}

std::size_t label_index(const ReactionNetwork& net, const std::string& label) {
    for (std::size_t k = 0; k < net.reaction_count(); ++k)
        if (net.reactions()[k].label == label) return k;
    throw std::out_of_range("unknown reaction label " + label);
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json network_to_json(const ReactionNetwork& net) {
    Json j;
    j["species"] = net.species();
    Json rx = Json::array();
    for (const auto& spec : net.reaction_specs()) {
        Json r;
        r["label"] = spec.label;
        r["source"] = format_complex(spec.source, net.species());
        r["product"] = format_complex(spec.product, net.species());
        r["rate"] = spec.rate_symbol;
        if (spec.phantom) r["phantom"] = true;
        r["source_vector"] = complex_json(spec.source);
        r["product_vector"] = complex_json(spec.product);
        rx.push_back(std::move(r));
    }
    j["reactions"] = std::move(rx);
    j["text"] = serialize_network(net);
    return j;
}

ReactionNetwork network_from_json(const Json& j) {
    std::vector<std::string> species = j.at("species").get<std::vector<std::string>>();
    std::vector<ReactionSpec> specs;
    for (const auto& r : j.at("reactions"))
        specs.push_back({r.at("label").get<std::string>(), complex_from(r.at("source_vector")),
                         complex_from(r.at("product_vector")), r.at("rate").get<std::string>(), r.value("phantom", false)});
    return ReactionNetwork(std::move(species), specs);
}

Json summary_to_json(const StructuralSummary& s) {
    Json j;
    j["species"] = s.species;
    j["complexes"] = s.complexes;
    j["reactions"] = s.reactions;
    j["rank"] = s.rank;
    j["linkage_classes"] = s.linkage_classes;
    j["strong_linkage_classes"] = s.strong_linkage_classes;
    j["deficiency"] = s.deficiency;
    j["weakly_reversible"] = s.weakly_reversible;
    return j;
}

Json matrix_to_json(const RationalMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).get_str());
        a.push_back(std::move(row));
    }
    return a;
}

RationalMatrix matrix_from_json(const Json& j, std::size_t cols) {
    RationalMatrix m(j.size(), j.empty() ? cols : j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i)
        for (std::size_t k = 0; k < j[i].size(); ++k) {
            m(i, k) = Rational(j[i][k].get<std::string>());
            m(i, k).canonicalize();
        }
    return m;
}

Json decomposition_to_json(const ReactionNetwork& net, const Decomposition& d) {
    Json j;
    Json blocks = Json::array();
    for (const auto& b : d.blocks) blocks.push_back(labels(net, b));
    j["blocks"] = std::move(blocks);
    j["block_ranks"] = d.block_ranks;
    j["total_rank"] = d.total_rank;
    j["independent"] = d.independent;
    return j;
}

Json modes_to_json(const ReactionNetwork& block, const FluxModeSet& modes) {
    Json j;
    Json list = Json::array();
    for (const auto& m : modes.modes) {
        Json mode;
        mode["support"] = labels(block, m.support);
        Json coeff = Json::array();
        for (std::size_t k : m.support) coeff.push_back(m.coordinates[k].get_str());
        mode["coefficients"] = std::move(coeff);
        list.push_back(std::move(mode));
    }
    j["modes"] = std::move(list);
    j["unitary"] = modes.unitary;
    j["covers"] = modes.covers;
    return j;
}

FluxModeSet modes_from_json(const ReactionNetwork& block, const Json& j) {
    FluxModeSet set;
    set.reactions = block.reaction_count();
    for (const auto& mode : j.at("modes")) {
        Ray ray;
        ray.coordinates.assign(set.reactions, 0);
        const auto& sup = mode.at("support");
        const auto& coeff = mode.at("coefficients");
        for (std::size_t t = 0; t < sup.size(); ++t) {
            std::size_t k = label_index(block, sup[t].get<std::string>());
            ray.coordinates[k] = mpz_class(coeff[t].get<std::string>());
        }
        for (std::size_t k = 0; k < set.reactions; ++k)
            if (ray.coordinates[k] != 0) ray.support.push_back(k);
        set.modes.push_back(std::move(ray));
    }
    efm_properties(set);
    return set;
}

Json graph_to_json(const ReactionNetwork& block, const ReactionGraph& g) {
    Json a = Json::array();
    for (auto [i, k] : g.edges) a.push_back(Json::array({block.reactions()[i].label, block.reactions()[k].label}));
    return a;
}

Json gcrn_to_json(const Gcrn& g) {
    Json j;
    j["network"] = network_to_json(g.original);
    Json alpha = Json::array();
    for (const auto& a : g.alpha) alpha.push_back(format_complex(a, g.species));
    j["alpha"] = std::move(alpha);
    Json alpha_vec = Json::array();
    for (const auto& a : g.alpha) alpha_vec.push_back(complex_json(a));
    j["alpha_vectors"] = std::move(alpha_vec);
    Json vertices = Json::array();
    for (const auto& v : g.vertices) {
        Json x;
        x["stoichiometric"] = format_complex(g.stoich_network.complexes()[v.stoich_complex], g.species);
        x["kinetic"] = format_complex(v.kinetic, g.species);
        if (!v.has_source) x["has_source"] = false;
        vertices.push_back(std::move(x));
    }
    j["vertices"] = std::move(vertices);
    Json edges = Json::array();
    for (const auto& e : g.edges) {
        Json x;
        x["tail"] = e.tail;
        x["head"] = e.head;
        x["symbol"] = e.symbol;
        x["phantom"] = e.phantom;
        if (e.reaction) x["reaction"] = g.original.reactions()[*e.reaction].label;
        edges.push_back(std::move(x));
    }
    j["edges"] = std::move(edges);
    j["stoichiometric_text"] = serialize_network(g.stoich_network);
    j["kinetic_text"] = kinetic_order_text(g);
    return j;
}

Gcrn gcrn_from_json(const Json& j) {
    ReactionNetwork net = network_from_json(j.at("network"));
    std::vector<ComplexVector> alpha;
    for (const auto& a : j.at("alpha_vectors")) alpha.push_back(complex_from(a));
    Gcrn g = build_gcrn(net, alpha);
    if (g.vertices.size() != j.at("vertices").size() || g.edges.size() != j.at("edges").size())
        throw std::runtime_error("GCRN record does not match its network and translation");
    return g;
}

Json gcrn_summary_to_json(const GcrnSummary& s) {
    Json j;
    j["stoichiometric"] = summary_to_json(s.stoichiometric);
    j["vertices"] = s.vertices;
    j["kinetic_linkage_classes"] = s.kinetic_linkage_classes;
    j["kinetic_rank"] = s.kinetic_rank;
    j["effective_deficiency"] = s.effective_deficiency;
    j["kinetic_deficiency"] = s.kinetic_deficiency;
    j["stoichiometric_weakly_reversible"] = s.stoichiometric_weakly_reversible;
    j["kinetic_weakly_reversible"] = s.kinetic_weakly_reversible;
    j["both_weakly_reversible"] = s.both_weakly_reversible;
    return j;
}

Json power_product_tree(const SymbolicPowerProduct& p, const std::vector<std::string>& free_symbols) {
    Json args = Json::array();
    for (const auto& f : p.factors)
        args.push_back({{"op", "pow"}, {"exp", f.exponent.get_str()}, {"base", {{"op", "poly"}, {"value", f.base.to_string()}}}});
    for (std::size_t i = 0; i < p.free_exponents.size(); ++i)
        if (sgn(p.free_exponents[i]) != 0)
            args.push_back({{"op", "pow"},
                            {"exp", p.free_exponents[i].get_str()},
                            {"base", {{"op", "poly"}, {"value", free_symbols[i]}}}});
    return {{"op", "mul"}, {"args", std::move(args)}};
}

Json parametrization_to_json(const EquilibriumParametrization& p) {
    Json j;
    j["free_symbols"] = p.free_symbols;
    j["free_parameters"] = p.free_parameters;
    j["free_parameter_count"] = p.free_parameters.size();
    j["rate_symbols"] = p.rate_symbols;
    j["sigma_symbols"] = p.sigma_symbols;
    j["kinetic_deficiency"] = p.kinetic_deficiency;
    j["effective_deficiency"] = p.effective_deficiency;
    j["all_positive_equilibria"] = p.all_positive_equilibria;
    j["substitution_fallback"] = p.substitution_fallback;
    Json species = Json::array();
    for (std::size_t i = 0; i < p.species.size(); ++i) {
        const auto& e = p.expressions[i];
        Json s;
        s["name"] = p.species[i];
        s["expression"] = e.to_string(p.free_symbols);
        s["tree"] = power_product_tree(e, p.free_symbols);
        Json factors = Json::array();
        for (const auto& f : e.factors) factors.push_back({{"base", f.base.to_string()}, {"exp", f.exponent.get_str()}});
        s["factors"] = std::move(factors);
        Json fe = Json::array();
        for (const auto& q : e.free_exponents) fe.push_back(q.get_str());
        s["free_exponents"] = std::move(fe);
        species.push_back(std::move(s));
    }
    j["species"] = std::move(species);
    Json solved = Json::array();
    for (const auto& s : p.solved)
        solved.push_back({{"symbol", s.symbol}, {"numerator", s.value.num.to_string()}, {"denominator", s.value.den.to_string()}});
    j["solved"] = std::move(solved);
    Json conds = Json::array();
    for (const auto& c : p.side_conditions)
        conds.push_back({{"equation", c.equation.to_string()},
                         {"designated", c.designated},
                         {"solved", c.solved},
                         {"trivial", c.trivial}});
    j["side_conditions"] = std::move(conds);
    Json data;
    Json tc = Json::array();
    for (const auto& k : p.tree_constants) tc.push_back({{"numerator", k.num.to_string()}, {"denominator", k.den.to_string()}});
    data["tree_constants"] = std::move(tc);
    Json fe = Json::array();
    for (auto [t, h] : p.forest_edges) fe.push_back(Json::array({t, h}));
    data["forest_edges"] = std::move(fe);
    data["edge_exponents"] = matrix_to_json(p.edge_exponents);
    data["free_exponent_matrix"] = matrix_to_json(p.free_exponent_matrix);
    j["exponent_data"] = std::move(data);
    return j;
}

EquilibriumParametrization parametrization_from_json(const Json& j) {
    EquilibriumParametrization p;
    p.free_symbols = j.at("free_symbols").get<std::vector<std::string>>();
    p.free_parameters = j.at("free_parameters").get<std::vector<std::string>>();
    p.rate_symbols = j.at("rate_symbols").get<std::vector<std::string>>();
    p.sigma_symbols = j.at("sigma_symbols").get<std::vector<std::string>>();
    p.kinetic_deficiency = j.at("kinetic_deficiency").get<std::int64_t>();
    p.effective_deficiency = j.at("effective_deficiency").get<std::int64_t>();
    p.all_positive_equilibria = j.at("all_positive_equilibria").get<bool>();
    p.substitution_fallback = j.at("substitution_fallback").get<bool>();
    for (const auto& s : j.at("species")) {
        p.species.push_back(s.at("name").get<std::string>());
        SymbolicPowerProduct e;
        for (const auto& f : s.at("factors"))
            e.factors.push_back({Polynomial::parse(f.at("base").get<std::string>()), Rational(f.at("exp").get<std::string>())});
        for (const auto& q : s.at("free_exponents")) e.free_exponents.emplace_back(q.get<std::string>());
        for (auto& q : e.free_exponents) q.canonicalize();
        for (auto& f : e.factors) f.exponent.canonicalize();
        p.expressions.push_back(std::move(e));
    }
    for (const auto& s : j.at("solved"))
        p.solved.push_back({s.at("symbol").get<std::string>(),
                            {Polynomial::parse(s.at("numerator").get<std::string>()),
                             Polynomial::parse(s.at("denominator").get<std::string>())}});
    for (const auto& c : j.at("side_conditions")) {
        SideCondition sc;
        sc.equation = Polynomial::parse(c.at("equation").get<std::string>());
        sc.designated = c.at("designated").get<std::string>();
        sc.solved = c.at("solved").get<bool>();
        sc.trivial = c.at("trivial").get<bool>();
        p.side_conditions.push_back(std::move(sc));
    }
    if (j.contains("exponent_data")) {
        const Json& data = j.at("exponent_data");
        for (const auto& k : data.at("tree_constants"))
            p.tree_constants.push_back(
                {Polynomial::parse(k.at("numerator").get<std::string>()), Polynomial::parse(k.at("denominator").get<std::string>())});
        for (const auto& e : data.at("forest_edges")) p.forest_edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
        p.edge_exponents = matrix_from_json(data.at("edge_exponents"), p.forest_edges.size());
        p.free_exponent_matrix = matrix_from_json(data.at("free_exponent_matrix"), p.free_symbols.size());
    }
    return p;
}

Json verification_to_json(const VerificationReport& r) {
    Json j;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["tolerance"] = r.tolerance;
    j["evaluated"] = r.residuals.size();
    j["skipped"] = r.skipped;
    j["max_residual"] = number_or_null(r.max_residual);
    j["passed"] = r.passed;
    Json res = Json::array();
    for (double v : r.residuals) res.push_back(number_or_null(v));
    j["residuals"] = std::move(res);
    return j;
}

Json acr_to_json(const AcrReport& r, const std::vector<std::string>& free_symbols) {
    Json j;
    j["species"] = r.species;
    j["is_acr"] = r.is_acr;
    j["symbolic"] = r.symbolic;
    j["numeric"] = r.numeric;
    j["spread"] = number_or_null(r.spread);
    j["draws"] = r.draws;
    j["witness"] = r.witness ? Json(r.witness->to_string(free_symbols)) : Json(nullptr);
    return j;
}

Json timing_to_json(const TimingReport& t) {
    Json j;
    Json stages = Json::object();
    for (const auto& s : t.stages) stages[s.stage] = s.seconds;
    j["stages"] = std::move(stages);
    j["total"] = t.total;
    return j;
}

}  // namespace crnparam
