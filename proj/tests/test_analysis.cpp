#include "doctest.h"
#include "helpers.hpp"

using namespace crnparam;

TEST_SUITE("analysis") {
    TEST_CASE("toy and EnvZ-OmpR parametrizations verify") {
        for (const char* name : {"toy", "envz_ompr"}) {
            CAPTURE(name);
            ReactionNetwork net = testing::load(name);
            VerificationReport r = verify_equilibrium(net, express_in_species(testing::solve(net)), 100, 1e-9, 42);
            CHECK(r.passed);
            CHECK(r.samples == 100);
            CHECK(r.residuals.size() + r.skipped == 100);
            CHECK(r.max_residual <= 1e-9);
        }
    }

    TEST_CASE("corrupted exponent fails verification") {
        ReactionNetwork net = testing::load("envz_ompr");
        EquilibriumParametrization p = express_in_species(testing::solve(net));
        REQUIRE(p.edge_exponents.cols() > 0);
        p.edge_exponents(0, 0) += 1;
        rebuild_expressions(p);
        VerificationReport r = verify_equilibrium(net, p, 50, 1e-9, 42);
        CHECK_FALSE(r.passed);
        CHECK(r.max_residual > 1e-6);
    }

    TEST_CASE("residuals stay small on random translatable networks") {
        std::size_t solved = 0;
        for (const auto& net : testing::random_translatable_networks(40, 404)) {
            NetworkTranslation tr = translate_by_blocks(net);
            if (!tr.ok) continue;
            EquilibriumParametrization p;
            try {
                p = parametrize_equilibria(*tr.gcrn);
            } catch (const std::domain_error&) {
                continue;
            }
            ++solved;
            CAPTURE(serialize_network(net));
            CHECK(verify_equilibrium(net, p, 20, 1e-9, 42).passed);
        }
        CHECK(solved > 0);
    }

    TEST_CASE("verification is deterministic in the seed") {
        ReactionNetwork net = testing::load("envz_ompr");
        EquilibriumParametrization p = testing::solve(net);
        VerificationReport a = verify_equilibrium(net, p, 20, 1e-9, 5);
        VerificationReport b = verify_equilibrium(net, p, 20, 1e-9, 5);
        VerificationReport c = verify_equilibrium(net, p, 20, 1e-9, 6);
        CHECK(a.residuals == b.residuals);
        CHECK(a.residuals != c.residuals);
        CHECK(a.seed == 5);
    }

    TEST_CASE("EnvZ-OmpR has ACR in Yp but not in X") {
        EquilibriumParametrization p = express_in_species(testing::solve(testing::load("envz_ompr")));
        AcrReport yp = detect_acr(p, "Yp");
        CHECK(yp.is_acr);
        CHECK(yp.symbolic);
        REQUIRE(yp.witness.has_value());
        for (const auto& e : yp.witness->free_exponents) CHECK(sgn(e) == 0);
        AcrReport x = detect_acr(p, "X");
        CHECK_FALSE(x.is_acr);
        CHECK(x.spread > 1e-3);
        CHECK_THROWS_AS(detect_acr(p, "Q"), std::out_of_range);
    }

    TEST_CASE("species with no free parameters are all ACR") {
        EquilibriumParametrization p = express_in_species(testing::solve(testing::load("toy")));
        for (const auto& s : p.species) CHECK(detect_acr(p, s).is_acr);
    }

    TEST_CASE("Shinar-Feinberg network has ACR in A") {
        EquilibriumParametrization p = express_in_species(testing::solve(testing::load("shinar_feinberg")));
        CHECK(detect_acr(p, "A").is_acr);
        CHECK_FALSE(detect_acr(p, "B").is_acr);
    }

    TEST_CASE("timing report") {
        TimingReport empty = timing_report({});
        CHECK(empty.stages.empty());
        CHECK(empty.total == 0);
        TimingReport t = timing_report({{"parse", 0.25}, {"efm", 0.5}, {"translate", 1.0}});
        REQUIRE(t.stages.size() == 3);
        CHECK(t.stages[0].stage == "parse");
        CHECK(t.stages[2].stage == "translate");
        CHECK(t.total == doctest::Approx(1.75));
        std::string table = t.table();
        CHECK(table.find("parse") < table.find("efm"));
        CHECK(table.find("efm") < table.find("translate"));
    }
}
