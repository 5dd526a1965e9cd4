#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace crnparam {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Dense row-major matrix over Q.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    RationalMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalVector row(std::size_t i) const;
    RationalVector column(std::size_t j) const;
    RationalMatrix transpose() const;
    RationalMatrix select_columns(const std::vector<std::size_t>& cols) const;
    RationalMatrix select_rows(const std::vector<std::size_t>& rows) const;

    bool operator==(const RationalMatrix& other) const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalVector operator*(const RationalMatrix& a, const RationalVector& x);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b);

struct RowEchelon {
    RationalMatrix matrix;
    std::vector<std::size_t> pivots;
};

// Fraction-free elimination; returns the reduced row echelon form.
RowEchelon rref(const RationalMatrix& a);
std::size_t rank(const RationalMatrix& a);

// Columns form a basis of ker(a), one per free column in increasing order.
RationalMatrix kernel_basis(const RationalMatrix& a);
// Columns form a basis of ker(a^T).
RationalMatrix cokernel_basis(const RationalMatrix& a);

// H with a*H*a == a, built from a rank factorization a = F*G.
RationalMatrix generalized_inverse(const RationalMatrix& a);
// Throws std::domain_error when a is singular.
RationalMatrix inverse(const RationalMatrix& a);

struct SolveResult {
    std::optional<RationalMatrix> solution;  // free variables set to zero
    std::size_t rank_a = 0;
    std::size_t rank_augmented = 0;
    bool consistent() const { return solution.has_value(); }
};

// Solves a*x = b for every column of b at once.
SolveResult solve_consistent(const RationalMatrix& a, const RationalMatrix& b);

// Multiplies v by the lcm of denominators and divides by the gcd of numerators.
std::vector<mpz_class> primitive_integer_vector(const RationalVector& v);

std::string to_string(const Rational& q);

}  // namespace crnparam
