#include "crnparam/linalg.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace crnparam {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RationalVector RationalMatrix::row(std::size_t i) const {
    return RationalVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

RationalVector RationalMatrix::column(std::size_t j) const {
    RationalVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    RationalMatrix m(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
    return m;
}

RationalMatrix RationalMatrix::select_rows(const std::vector<std::size_t>& rows) const {
    RationalMatrix m(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(rows[i], j);
    return m;
}

bool RationalMatrix::operator==(const RationalMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << '[';
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
        os << "]\n";
    }
    return os.str();
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RationalVector operator*(const RationalMatrix& a, const RationalVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    RationalVector y(a.rows(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
    RationalMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    RationalMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

namespace {

using IntRows = std::vector<std::vector<mpz_class>>;

IntRows scaled_integer_rows(const RationalMatrix& a) {
    IntRows out(a.rows(), std::vector<mpz_class>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < a.cols(); ++j) {
            mpz_class v = a(i, j).get_num() * (l / a(i, j).get_den());
            out[i][j] = v;
        }
    }
    return out;
}

// Bareiss forward elimination in place. Entries below pivots become zero.
std::vector<std::size_t> bareiss_forward(IntRows& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.size();
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

RowEchelon rref(const RationalMatrix& a) {
    IntRows ints = scaled_integer_rows(a);
    std::vector<std::size_t> pivots = bareiss_forward(ints, a.cols());
    RationalMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const mpz_class& lead = ints[i][pivots[i]];
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m(i, j) = Rational(ints[i][j], lead);
            m(i, j).canonicalize();
        }
    }
    for (std::size_t i = pivots.size(); i-- > 0;) {
        const std::size_t pc = pivots[i];
        for (std::size_t k = 0; k < i; ++k) {
            Rational f = m(k, pc);
            if (sgn(f) == 0) continue;
            for (std::size_t j = pc; j < a.cols(); ++j) m(k, j) -= f * m(i, j);
        }
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const RationalMatrix& a) {
    if (a.empty()) return 0;
    IntRows ints = scaled_integer_rows(a);
    return bareiss_forward(ints, a.cols()).size();
}

RationalMatrix kernel_basis(const RationalMatrix& a) {
    RowEchelon e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    RationalMatrix k(a.cols(), free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        k(free_cols[f], f) = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) k(e.pivots[i], f) = -e.matrix(i, free_cols[f]);
    }
    return k;
}

RationalMatrix cokernel_basis(const RationalMatrix& a) { return kernel_basis(a.transpose()); }

RationalMatrix inverse(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw std::domain_error("inverse of non-square matrix");
    const std::size_t n = a.rows();
    RowEchelon e = rref(hstack(a, RationalMatrix::identity(n)));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.matrix(i, n + j);
    return inv;
}

RationalMatrix generalized_inverse(const RationalMatrix& a) {
    RowEchelon e = rref(a);
    const std::size_t r = e.pivots.size();
    if (r == 0) return RationalMatrix(a.cols(), a.rows());
    RationalMatrix f = a.select_columns(e.pivots);
    RationalMatrix g(r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) g(i, j) = e.matrix(i, j);
    RationalMatrix gt = g.transpose();
    RationalMatrix ft = f.transpose();
    return gt * inverse(g * gt) * inverse(ft * f) * ft;
}

SolveResult solve_consistent(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_consistent row mismatch");
    SolveResult result;
    RowEchelon e = rref(hstack(a, b));
    std::size_t ra = 0;
    for (std::size_t p : e.pivots)
        if (p < a.cols()) ++ra;
    result.rank_a = ra;
    result.rank_augmented = e.pivots.size();
    if (ra != e.pivots.size()) return result;
    RationalMatrix x(a.cols(), b.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.matrix(i, a.cols() + j);
    result.solution = std::move(x);
    return result;
}

std::vector<mpz_class> primitive_integer_vector(const RationalVector& v) {
    mpz_class l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> out(v.size());
    mpz_class g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i].get_num() * (l / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace crnparam
