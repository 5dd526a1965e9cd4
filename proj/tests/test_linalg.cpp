#include "doctest.h"
#include "helpers.hpp"

using namespace crnparam;
using testing::random_integer_matrix;

namespace {

// Independent fraction-free elimination over Z with row swaps; integer input only.
std::size_t bareiss_rank(const RationalMatrix& m) {
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).get_num();
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && a[p][c] == 0) ++p;
        if (p == m.rows()) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            for (std::size_t j = c + 1; j < m.cols(); ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

bool is_zero(const RationalMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0) return false;
    return true;
}

RationalMatrix column_matrix(const std::vector<long>& v) {
    RationalMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

// Toy stoichiometric matrix, species (A, B, C), reactions R1..R5.
const RationalMatrix toy_n{{-1, -1, 1, 0, 1}, {0, 1, -1, 0, 0}, {1, 0, 0, -1, 0}};

}  // namespace

TEST_SUITE("linalg") {
    TEST_CASE("rank of the toy stoichiometric matrix is 3") { CHECK(rank(toy_n) == 3); }

    TEST_CASE("zero matrices have rank 0") {
        CHECK(rank(RationalMatrix(3, 4)) == 0);
        CHECK(rank(RationalMatrix(0, 5)) == 0);
        CHECK(rank(RationalMatrix(2, 0)) == 0);
    }

    TEST_CASE("rank agrees with an independent Bareiss elimination") {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 60; ++t) {
            RationalMatrix m = random_integer_matrix(rng, 5, 5);
            if (t % 3 == 0) m = random_integer_matrix(rng, 5, 2) * random_integer_matrix(rng, 2, 5);
            if (t % 3 == 1) m = random_integer_matrix(rng, 5, 3) * random_integer_matrix(rng, 3, 5);
            CHECK(rank(m) == bareiss_rank(m));
        }
    }

    TEST_CASE("rref is reduced and pivots are increasing") {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 20; ++t) {
            RationalMatrix m = random_integer_matrix(rng, 4, 6);
            RowEchelon e = rref(m);
            for (std::size_t k = 0; k < e.pivots.size(); ++k) {
                if (k > 0) CHECK(e.pivots[k] > e.pivots[k - 1]);
                for (std::size_t i = 0; i < e.matrix.rows(); ++i) CHECK(e.matrix(i, e.pivots[k]) == (i == k ? 1 : 0));
            }
            CHECK(e.pivots.size() == rank(m));
        }
    }

    TEST_CASE("kernel of [1 -1] is spanned by (1, 1)") {
        RationalMatrix k = kernel_basis(RationalMatrix{{1, -1}});
        REQUIRE(k.cols() == 1);
        CHECK(k(0, 0) == 1);
        CHECK(k(1, 0) == 1);
    }

    TEST_CASE("toy kernel is two-dimensional and contains both mode indicators") {
        RationalMatrix k = kernel_basis(toy_n);
        REQUIRE(k.cols() == 2);
        CHECK(is_zero(toy_n * k));
        for (const auto& v : {std::vector<long>{1, 0, 0, 1, 1}, std::vector<long>{0, 1, 1, 0, 0}}) {
            CHECK(is_zero(toy_n * column_matrix(v)));
            CHECK(rank(hstack(k, column_matrix(v))) == 2);
        }
    }

    TEST_CASE("kernel basis satisfies rank-nullity on random matrices") {
        std::mt19937_64 rng(3);
        for (int t = 0; t < 30; ++t) {
            RationalMatrix m = t % 2 ? random_integer_matrix(rng, 4, 7) : random_integer_matrix(rng, 4, 2) * random_integer_matrix(rng, 2, 7);
            RationalMatrix k = kernel_basis(m);
            CHECK(k.cols() == m.cols() - bareiss_rank(m));
            CHECK(is_zero(m * k));
            CHECK(rank(k) == k.cols());
        }
    }

    TEST_CASE("cokernel of the identity is empty") { CHECK(cokernel_basis(RationalMatrix::identity(3)).cols() == 0); }

    TEST_CASE("cokernel dimension is rows minus rank") {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 30; ++t) {
            RationalMatrix m = random_integer_matrix(rng, 6, 3) * random_integer_matrix(rng, 3, 5);
            RationalMatrix c = cokernel_basis(m);
            CHECK(c.cols() == m.rows() - bareiss_rank(m));
            CHECK(is_zero(c.transpose() * m));
        }
    }

    TEST_CASE("generalized inverse of an invertible matrix is its inverse") {
        RationalMatrix m{{2, 1}, {5, 3}};
        RationalMatrix expected{{3, -1}, {-5, 2}};
        CHECK(generalized_inverse(m) == expected);
        CHECK(inverse(m) == expected);
    }

    TEST_CASE("generalized inverse of a zero matrix is zero with transposed shape") {
        RationalMatrix h = generalized_inverse(RationalMatrix(2, 3));
        CHECK(h.rows() == 3);
        CHECK(h.cols() == 2);
        CHECK(is_zero(h));
    }

    TEST_CASE("generalized inverse satisfies m H m = m") {
        std::mt19937_64 rng(21);
        for (int t = 0; t < 30; ++t) {
            RationalMatrix m = random_integer_matrix(rng, 4, 2 + t % 3) * random_integer_matrix(rng, 2 + t % 3, 6);
            RationalMatrix h = generalized_inverse(m);
            CHECK(h.rows() == 6);
            CHECK(h.cols() == 4);
            CHECK(m * h * m == m);
        }
    }

    TEST_CASE("inverse rejects singular matrices") { CHECK_THROWS_AS(inverse(RationalMatrix{{1, 2}, {2, 4}}), std::domain_error); }

    TEST_CASE("solve with the identity returns b") {
        RationalMatrix b{{3}, {-2}, {7}};
        SolveResult r = solve_consistent(RationalMatrix::identity(3), b);
        REQUIRE(r.consistent());
        CHECK(*r.solution == b);
    }

    TEST_CASE("contradictory system reports both ranks") {
        SolveResult r = solve_consistent(RationalMatrix{{1}, {1}}, RationalMatrix{{0}, {1}});
        CHECK_FALSE(r.consistent());
        CHECK(r.rank_a == 1);
        CHECK(r.rank_augmented == 2);
    }

    TEST_CASE("consistent systems are solved exactly") {
        std::mt19937_64 rng(2);
        for (int t = 0; t < 20; ++t) {
            RationalMatrix a = random_integer_matrix(rng, 5, 3) * random_integer_matrix(rng, 3, 4);
            RationalMatrix x = random_integer_matrix(rng, 4, 2);
            SolveResult r = solve_consistent(a, a * x);
            REQUIRE(r.consistent());
            CHECK(a * *r.solution == a * x);
        }
    }

    TEST_CASE("histidine kinase translation system yields alpha = (Yp, 0, 0, Xp)") {
        ReactionNetwork net = testing::load("histidine_kinase");
        ReactionGraph g{4, {{0, 3}, {1, 0}, {1, 2}, {2, 1}, {3, 1}}};
        TranslationResult tr = translation_complexes(net, g);
        REQUIRE(tr.consistent);
        CHECK(tr.rank_a == tr.rank_augmented);
        std::vector<ComplexVector> expected{{0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 1, 0, 0}};
        CHECK(tr.alpha == expected);
    }

    TEST_CASE("primitive integer vector clears denominators and common factors") {
        std::vector<mpz_class> v = primitive_integer_vector({Rational(1, 2), Rational(1, 3), Rational(0)});
        CHECK(v == std::vector<mpz_class>{3, 2, 0});
        CHECK(primitive_integer_vector({Rational(4), Rational(-6)}) == std::vector<mpz_class>{2, -3});
    }
}
