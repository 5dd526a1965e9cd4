#pragma once

#include "crnparam/linalg.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace crnparam {

// Natural order on symbols: k2 < k10 < sigma1 < tau1.
bool symbol_less(const std::string& a, const std::string& b);

struct SymbolLess {
    bool operator()(const std::string& a, const std::string& b) const { return symbol_less(a, b); }
};
using SymbolSet = std::set<std::string, SymbolLess>;

// Sorted (symbol, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<std::string, unsigned>>;

// Lex order where the smallest symbol is the most significant variable.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    Polynomial() = default;
    Polynomial(long c);  // NOLINT implicit constant
    explicit Polynomial(const Rational& c);
    static Polynomial symbol(const std::string& name, unsigned power = 1);
    static Polynomial parse(const std::string& text);  // throws std::invalid_argument

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()
    std::size_t term_count() const { return terms_.size(); }

    SymbolSet variables() const;
    bool contains(const std::string& var) const;
    unsigned degree(const std::string& var) const;
    unsigned total_degree() const;
    // deg -> coefficient polynomial free of var
    std::map<unsigned, Polynomial> coefficients_in(const std::string& var) const;

    std::pair<Monomial, Rational> leading_term() const;  // requires !is_zero()

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator<(const Polynomial& o) const;  // arbitrary total order for containers

    Polynomial pow(unsigned e) const;
    // Scales to coprime integer coefficients with positive leading coefficient.
    Polynomial normalized() const;
    // Positive rational c with *this == c * normalized(), up to the sign of the leading coefficient.
    Rational content() const;
    // Largest monomial dividing every term.
    Monomial monomial_content() const;

    double evaluate(const std::map<std::string, double>& values) const;  // throws std::out_of_range
    Rational evaluate_exact(const std::map<std::string, Rational>& values) const;
    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    Terms terms_;
};

struct RationalFunction {
    Polynomial num{1};
    Polynomial den{1};

    double evaluate(const std::map<std::string, double>& values) const { return num.evaluate(values) / den.evaluate(values); }
    std::string to_string() const;
};

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);
// Normalized gcd over Q; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
RationalFunction substitute(const Polynomial& p, const std::string& var, const RationalFunction& value);
RationalFunction substitute(const RationalFunction& f, const std::string& var, const RationalFunction& value);
// Cancels the gcd of numerator and denominator and normalizes the denominator.
RationalFunction reduce(const RationalFunction& f);
Polynomial monomial_polynomial(const Monomial& m);

// inputs[i] = constants[i] * prod_j basis[j]^exponents[i][j], basis pairwise coprime.
struct FactorRefinement {
    std::vector<Polynomial> basis;
    std::vector<Rational> constants;
    std::vector<std::vector<long>> exponents;
};

FactorRefinement refine_factors(const std::vector<Polynomial>& inputs);

}  // namespace crnparam
