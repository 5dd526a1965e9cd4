#include "doctest.h"
#include "helpers.hpp"

using namespace crnparam;

namespace {

Polynomial P(const std::string& s) { return Polynomial::parse(s); }

Polynomial random_polynomial(std::mt19937_64& rng, int terms) {
    const std::vector<std::string> vars{"k1", "k2", "k3", "sigma1"};
    Polynomial p(0);
    for (int t = 0; t < terms; ++t) {
        Polynomial m(static_cast<long>(rng() % 5) + 1);
        for (const auto& v : vars)
            if (rng() % 2) m *= Polynomial::symbol(v, static_cast<unsigned>(rng() % 2 + 1));
        p += m;
    }
    return p;
}

}  // namespace

TEST_SUITE("polynomial") {
    TEST_CASE("symbols use natural order") {
        CHECK(symbol_less("k2", "k10"));
        CHECK_FALSE(symbol_less("k10", "k2"));
        CHECK(symbol_less("k10", "sigma1"));
        CHECK(symbol_less("sigma1", "tau1"));
        CHECK_FALSE(symbol_less("k1", "k1"));
    }

    TEST_CASE("parse and print") {
        CHECK(P("k1 + k2").to_string() == "k1 + k2");
        CHECK(P("(k1 + k2)^2") == P("k1^2 + 2*k1*k2 + k2^2"));
        CHECK(P("k1*k3*k12/2 - 3") == P("-3 + 1/2*k12*k3*k1"));
        CHECK(P("-(k1 - k2)") == P("k2 - k1"));
        CHECK(P("0").is_zero());
        CHECK(P("7").is_constant());
        CHECK(P("7").constant_value() == 7);
        CHECK_THROWS_AS(P("k1 +"), std::invalid_argument);
        CHECK_THROWS_AS(P("k1 / k2"), std::invalid_argument);
        CHECK_THROWS_AS(P("(k1"), std::invalid_argument);
    }

    TEST_CASE("printing round-trips through the parser") {
        std::mt19937_64 rng(6);
        for (int t = 0; t < 50; ++t) {
            Rational c(1 + t % 3, 2 + t % 4);
            c.canonicalize();
            Polynomial p = random_polynomial(rng, 1 + t % 5) * Polynomial(c);
            if (t % 2) p = -p;
            CHECK(P(p.to_string()) == p);
        }
    }

    TEST_CASE("arithmetic matches evaluation") {
        std::mt19937_64 rng(12);
        std::map<std::string, double> v{{"k1", 1.3}, {"k2", 0.7}, {"k3", 2.1}, {"sigma1", 0.4}};
        for (int t = 0; t < 30; ++t) {
            Polynomial a = random_polynomial(rng, 3), b = random_polynomial(rng, 2);
            CHECK((a * b).evaluate(v) == doctest::Approx(a.evaluate(v) * b.evaluate(v)));
            CHECK((a - b).evaluate(v) == doctest::Approx(a.evaluate(v) - b.evaluate(v)));
            CHECK(a.pow(3).evaluate(v) == doctest::Approx(std::pow(a.evaluate(v), 3)));
            CHECK((a - a).is_zero());
        }
    }

    TEST_CASE("inspectors") {
        Polynomial p = P("k1^2*k2 + 3*k2 + k3");
        CHECK(p.degree("k1") == 2);
        CHECK(p.degree("k4") == 0);
        CHECK(p.total_degree() == 3);
        CHECK(p.contains("k3"));
        CHECK_FALSE(p.contains("k4"));
        CHECK(p.variables() == SymbolSet{"k1", "k2", "k3"});
        auto c = p.coefficients_in("k1");
        CHECK(c[2] == P("k2"));
        CHECK(c[0] == P("3*k2 + k3"));
        CHECK(P("2*k1*k2 + 4*k1^2*k2").monomial_content() == Monomial{{"k1", 1}, {"k2", 1}});
    }

    TEST_CASE("normalization and content") {
        Polynomial p = P("-4*k1 + 6*k2");
        Polynomial n = p.normalized();
        CHECK(n.leading_term().second > 0);
        CHECK((n == P("2*k1 - 3*k2") || n == P("3*k2 - 2*k1")));
        CHECK(P("1/2*k1 + 1/3").content() == Rational(1, 6));
    }

    TEST_CASE("exact division") {
        Polynomial a = P("k1 + k2"), b = P("k3 - 2*k1");
        auto q = exact_divide(a * b, a);
        REQUIRE(q);
        CHECK(*q == b);
        CHECK_FALSE(exact_divide(a * b + 1, a));
        CHECK(exact_divide(P("6*k1"), P("3")) == P("2*k1"));
    }

    TEST_CASE("gcd recovers planted common factors") {
        std::mt19937_64 rng(99);
        for (int t = 0; t < 25; ++t) {
            Polynomial c = random_polynomial(rng, 2), a = random_polynomial(rng, 2), b = random_polynomial(rng, 2);
            if (c.is_constant()) continue;
            Polynomial g = gcd(a * c, b * c);
            CHECK(exact_divide(g, c.normalized()).has_value());
            CHECK(exact_divide(a * c, g).has_value());
            CHECK(exact_divide(b * c, g).has_value());
        }
        CHECK(gcd(P("k1^2 - k2^2"), P("k1 + k2")) == P("k1 + k2").normalized());
        CHECK(gcd(P("k1"), P("k2")) == Polynomial(1));
        CHECK(gcd(Polynomial(0), Polynomial(0)).is_zero());
    }

    TEST_CASE("substitution and reduction") {
        RationalFunction s{P("k1*k3*k12"), P("k2*k4 + k2*k5")};
        RationalFunction r = substitute(P("k1*k3*k12 - k2*k4*sigma1 - k2*k5*sigma1"), "sigma1", s);
        CHECK(reduce(r).num.is_zero());
        RationalFunction f = reduce({P("k1^2 - k2^2"), P("2*k1 + 2*k2")});
        CHECK(f.num * P("2") == P("k1 - k2") * f.den);
        CHECK(f.den.is_constant());
    }

    TEST_CASE("factor refinement gives a coprime basis") {
        std::mt19937_64 rng(4);
        for (int t = 0; t < 15; ++t) {
            Polynomial a = random_polynomial(rng, 2), b = random_polynomial(rng, 2), c = random_polynomial(rng, 2);
            std::vector<Polynomial> inputs{a * b, b * c * Polynomial(3), a * c * c};
            FactorRefinement fr = refine_factors(inputs);
            for (std::size_t i = 0; i < fr.basis.size(); ++i) {
                CHECK_FALSE(fr.basis[i].is_constant());
                for (std::size_t j = i + 1; j < fr.basis.size(); ++j) CHECK(gcd(fr.basis[i], fr.basis[j]).is_constant());
            }
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                Polynomial prod(fr.constants[i]);
                for (std::size_t j = 0; j < fr.basis.size(); ++j)
                    prod *= fr.basis[j].pow(static_cast<unsigned>(fr.exponents[i][j]));
                CHECK(prod == inputs[i]);
            }
        }
    }

    TEST_CASE("exact evaluation") {
        std::map<std::string, Rational> v{{"k1", Rational(1, 2)}, {"k2", Rational(3)}};
        CHECK(P("k1*k2 + k1^2").evaluate_exact(v) == Rational(7, 4));
        CHECK_THROWS_AS(P("k3").evaluate({}), std::out_of_range);
    }
}
