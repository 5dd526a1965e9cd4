#include "doctest.h"
#include "helpers.hpp"

using namespace crnparam;

namespace {

Polynomial P(const std::string& s) { return Polynomial::parse(s); }

std::map<std::string, double> random_values(const EquilibriumParametrization& p, std::mt19937_64& rng) {
    std::map<std::string, double> v;
    for (const auto& k : p.rate_symbols) v[k] = testing::log_uniform(rng);
    for (const auto& f : p.free_parameters) v[f] = testing::log_uniform(rng);
    return v;
}

std::size_t vertex_of(const Gcrn& g, const ComplexVector& stoich) {
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (g.stoich_network.complexes()[g.vertices[v].stoich_complex] == stoich) return v;
    throw std::out_of_range("no such vertex");
}

}  // namespace

TEST_SUITE("parametrize") {
    TEST_CASE("spanning forests have one tree per linkage class") {
        for (const char* name : {"toy", "two_protein", "envz_ompr", "histidine_kinase"}) {
            CAPTURE(name);
            NetworkTranslation tr = translate_by_blocks(testing::load(name));
            REQUIRE(tr.ok);
            const Gcrn& g = *tr.gcrn;
            GcrnSummary s = gcrn_summary(g);
            for (ForestOrder order : {ForestOrder::breadth_first, ForestOrder::reverse}) {
                SpanningForest f = spanning_forest(g, order);
                CHECK(f.edges.size() == g.vertices.size() - s.kinetic_linkage_classes);
                CHECK(f.roots.size() == s.kinetic_linkage_classes);
                // acyclic: union-find never merges two already-connected vertices
                std::vector<std::size_t> parent(g.vertices.size());
                for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
                auto find = [&](std::size_t v) {
                    while (parent[v] != v) v = parent[v];
                    return v;
                };
                for (std::size_t e : f.edges) {
                    std::size_t a = find(g.edges[e].tail), b = find(g.edges[e].head);
                    CHECK(a != b);
                    parent[a] = b;
                }
            }
        }
    }

    TEST_CASE("reversible pair forest has one edge") {
        Gcrn g = build_gcrn(parse_network("R1, R2: A <-> B ; k1, k2"));
        CHECK(spanning_forest(g).edges.size() == 1);
    }

    TEST_CASE("kinetic difference rows are head minus tail") {
        NetworkTranslation tr = translate_by_blocks(testing::load("envz_ompr"));
        REQUIRE(tr.ok);
        const Gcrn& g = *tr.gcrn;
        SpanningForest f = spanning_forest(g);
        RationalMatrix m = kinetic_difference_matrix(g, f);
        REQUIRE(m.rows() == f.edges.size());
        REQUIRE(m.cols() == g.species.size());
        for (std::size_t r = 0; r < f.edges.size(); ++r) {
            const GcrnEdge& e = g.edges[f.edges[r]];
            for (std::size_t s = 0; s < g.species.size(); ++s)
                CHECK(m(r, s) == Rational(g.vertices[e.head].kinetic[s] - g.vertices[e.tail].kinetic[s]));
        }
    }

    TEST_CASE("tree constants of a reversible pair") {
        Gcrn g = build_gcrn(parse_network("R2, R3: A <-> B ; k2, k3"));
        std::vector<Polynomial> k = tree_constants(g);
        CHECK(k[vertex_of(g, {1, 0})] == P("k3"));
        CHECK(k[vertex_of(g, {0, 1})] == P("k2"));
    }

    TEST_CASE("tree constants of a 3-cycle") {
        ReactionNetwork net = parse_network("R1: A -> B ; k1\nR2: B -> C ; k2\nR3: C -> A ; k3");
        Gcrn g = build_gcrn(net);
        std::vector<Polynomial> k = tree_constants(g);
        CHECK(k[vertex_of(g, {1, 0, 0})] == P("k2*k3"));
        CHECK(k[vertex_of(g, {0, 1, 0})] == P("k3*k1"));
        CHECK(k[vertex_of(g, {0, 0, 1})] == P("k1*k2"));
    }

    TEST_CASE("tree constants of a reversible 3-cycle") {
        ReactionNetwork net = parse_network("R1, R2: A <-> B ; k1, k2\nR3, R4: B <-> C ; k3, k4\nR5, R6: C <-> A ; k5, k6");
        Gcrn g = build_gcrn(net);
        std::vector<Polynomial> k = tree_constants(g);
        // into A: {B->A, C->A}, {B->A, C->B}, {C->A, B->C}
        CHECK(k[vertex_of(g, {1, 0, 0})] == P("k2*k5 + k2*k4 + k5*k3"));
    }

    TEST_CASE("toy parametrization matches the hand solution") {
        ReactionNetwork net = testing::load("toy");
        EquilibriumParametrization p = express_in_species(testing::solve(net));
        CHECK(p.free_parameters.empty());
        CHECK(p.all_positive_equilibria);
        std::mt19937_64 rng(8);
        for (int t = 0; t < 30; ++t) {
            auto v = random_values(p, rng);
            REQUIRE(complete_values(p, v));
            std::vector<double> x = evaluate_species(p, v);
            double k1 = v["k1"], k2 = v["k2"], k3 = v["k3"], k4 = v["k4"], k5 = v["k5"];
            // A = sqrt(k3 k5 / (k1 k2)), B = k2 A / k3, C = k5 / k4
            double a = std::sqrt(k3 * k5 / (k1 * k2));
            CHECK(x[p.species_index("A")] == doctest::Approx(a).epsilon(1e-12));
            CHECK(x[p.species_index("B")] == doctest::Approx(k2 * a / k3).epsilon(1e-12));
            CHECK(x[p.species_index("C")] == doctest::Approx(k5 / k4).epsilon(1e-12));
        }
    }

    TEST_CASE("reversible pair ratio is k1/k2") {
        ReactionNetwork net = parse_network("R1, R2: A <-> B ; k1, k2");
        EquilibriumParametrization p = express_in_species(testing::solve(net), {"A"});
        REQUIRE(p.free_symbols == std::vector<std::string>{"A"});
        std::map<std::string, double> v{{"k1", 3.0}, {"k2", 4.0}, {"A", 2.0}};
        REQUIRE(complete_values(p, v));
        std::vector<double> x = evaluate_species(p, v);
        CHECK(x[0] == doctest::Approx(2.0));
        CHECK(x[1] == doctest::Approx(1.5));
    }

    TEST_CASE("EnvZ-OmpR phantom symbol is solved") {
        EquilibriumParametrization p = testing::solve(testing::load("envz_ompr"));
        CHECK(p.kinetic_deficiency == 1);
        REQUIRE(p.solved.size() == 1);
        CHECK(p.solved[0].symbol == "sigma1");
        const RationalFunction& f = p.solved[0].value;
        CHECK(f.num * P("k2*k4 + k2*k5") == P("k1*k3*k12") * f.den);
        CHECK(p.numeric_unknowns().empty());
        CHECK(p.free_parameters.size() == 2);
    }

    TEST_CASE("express_in_species respects the preferred names") {
        EquilibriumParametrization base = testing::solve(testing::load("envz_ompr"));
        EquilibriumParametrization p = express_in_species(base, {"XpY", "Y"});
        CHECK(p.free_symbols == std::vector<std::string>{"XpY", "Y"});
        EquilibriumParametrization d = express_in_species(base);
        CHECK(d.free_symbols.size() == 2);
        for (const auto& s : d.free_symbols) CHECK(std::find(d.species.begin(), d.species.end(), s) != d.species.end());
        CHECK_THROWS_AS(express_in_species(base, {"Q"}), std::out_of_range);
    }

    TEST_CASE("a free species maps to itself") {
        EquilibriumParametrization p = express_in_species(testing::solve(testing::load("envz_ompr")), {"XpY", "Y"});
        std::mt19937_64 rng(2);
        for (int t = 0; t < 10; ++t) {
            auto v = random_values(p, rng);
            REQUIRE(complete_values(p, v));
            std::vector<double> x = evaluate_species(p, v);
            CHECK(x[p.species_index("XpY")] == doctest::Approx(v["XpY"]));
            CHECK(x[p.species_index("Y")] == doctest::Approx(v["Y"]));
        }
    }

    TEST_CASE("expressing a parametrization without free symbols changes nothing") {
        EquilibriumParametrization p = testing::solve(testing::load("toy"));
        EquilibriumParametrization q = express_in_species(p);
        REQUIRE(q.expressions.size() == p.expressions.size());
        for (std::size_t s = 0; s < p.expressions.size(); ++s)
            CHECK(q.expressions[s].to_string(q.free_symbols) == p.expressions[s].to_string(p.free_symbols));
    }

    TEST_CASE("reverse forest order gives an equivalent parametrization") {
        for (const char* name : {"toy", "envz_ompr", "two_protein", "histidine_kinase"}) {
            CAPTURE(name);
            ReactionNetwork net = testing::load(name);
            NetworkTranslation tr = translate_by_blocks(net);
            REQUIRE(tr.ok);
            ParametrizeOptions opt;
            opt.forest = ForestOrder::reverse;
            EquilibriumParametrization p = parametrize_equilibria(*tr.gcrn, opt);
            CHECK(verify_equilibrium(net, p, 30, 1e-9, 7).passed);
        }
    }

    TEST_CASE("non weakly reversible kinetic graph is refused") {
        CHECK_THROWS_AS(parametrize_equilibria(build_gcrn(testing::load("histidine_kinase"))), std::domain_error);
    }

    TEST_CASE("rebuilding from exponent data is idempotent") {
        for (const char* name : {"toy", "envz_ompr", "enzyme_transfer"}) {
            CAPTURE(name);
            EquilibriumParametrization p = express_in_species(testing::solve(testing::load(name)));
            EquilibriumParametrization q = p;
            rebuild_expressions(q);
            for (std::size_t s = 0; s < p.expressions.size(); ++s)
                CHECK(q.expressions[s].to_string(q.free_symbols) == p.expressions[s].to_string(p.free_symbols));
        }
    }

    TEST_CASE("species symbols of an expression are rates and free parameters only") {
        EquilibriumParametrization p = express_in_species(testing::solve(testing::load("envz_ompr")));
        SymbolSet allowed(p.rate_symbols.begin(), p.rate_symbols.end());
        allowed.insert(p.free_parameters.begin(), p.free_parameters.end());
        for (const auto& e : p.expressions)
            for (const auto& s : e.symbols()) CHECK(allowed.count(s) == 1);
    }
}
