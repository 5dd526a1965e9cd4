#include "crnparam/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace crnparam {

namespace {

std::pair<std::string, long> split_symbol(const std::string& s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    if (i == s.size() || s.size() - i > 15) return {s, -1};
    return {s.substr(0, i), std::stol(s.substr(i))};
}

int compare_monomials(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            if (a[i].second != b[j].second) return a[i].second < b[j].second ? -1 : 1;
            ++i;
            ++j;
        } else if (symbol_less(a[i].first, b[j].first)) {
            return 1;
        } else {
            return -1;
        }
    }
    if (i < a.size()) return 1;
    if (j < b.size()) return -1;
    return 0;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && symbol_less(a[i].first, b[j].first))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || symbol_less(b[j].first, a[i].first)) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

// a / b as a monomial if b divides a.
std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0;
    for (const auto& [var, e] : b) {
        while (i < a.size() && symbol_less(a[i].first, var)) out.push_back(a[i++]);
        if (i == a.size() || a[i].first != var || a[i].second < e) return std::nullopt;
        if (a[i].second > e) out.emplace_back(var, a[i].second - e);
        ++i;
    }
    while (i < a.size()) out.push_back(a[i++]);
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Polynomial run() {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + why + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Polynomial expr() {
        Polynomial p = term();
        while (true) {
            if (eat('+'))
                p += term();
            else if (eat('-'))
                p -= term();
            else
                return p;
        }
    }
    Polynomial term() {
        Polynomial p = unary();
        while (true) {
            if (eat('*')) {
                p *= unary();
            } else if (eat('/')) {
                Polynomial d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
                p *= Polynomial(Rational(Rational(1) / d.constant_value()));
            } else {
                return p;
            }
        }
    }
    Polynomial unary() {
        if (eat('-')) return -unary();
        return power();
    }
    Polynomial power() {
        Polynomial base = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }
    Polynomial atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Polynomial(Rational(mpz_class(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            return Polynomial::symbol(s_.substr(start, pos_ - start));
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

bool symbol_less(const std::string& a, const std::string& b) {
    auto [pa, na] = split_symbol(a);
    auto [pb, nb] = split_symbol(b);
    if (pa != pb) return pa < pb;
    if (na != nb) return na < nb;
    return a < b;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(a, b) < 0; }

Polynomial::Polynomial(long c) {
    if (c != 0) terms_[{}] = Rational(c);
}

Polynomial::Polynomial(const Rational& c) {
    if (sgn(c) != 0) terms_[{}] = c;
}

Polynomial Polynomial::symbol(const std::string& name, unsigned power) {
    Polynomial p;
    if (power == 0)
        p.terms_[{}] = 1;
    else
        p.terms_[{{name, power}}] = 1;
    return p;
}

Polynomial Polynomial::parse(const std::string& text) { return Parser(text).run(); }

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_.begin()->second;
}

SymbolSet Polynomial::variables() const {
    SymbolSet out;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) out.insert(v);
    return out;
}

bool Polynomial::contains(const std::string& var) const { return degree(var) > 0; }

unsigned Polynomial::degree(const std::string& var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            if (v == var) d = std::max(d, e);
    return d;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        unsigned t = 0;
        for (const auto& [v, e] : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

std::map<unsigned, Polynomial> Polynomial::coefficients_in(const std::string& var) const {
    std::map<unsigned, Polynomial> out;
    for (const auto& [m, c] : terms_) {
        unsigned e = 0;
        Monomial rest;
        for (const auto& term : m) {
            if (term.first == var)
                e = term.second;
            else
                rest.push_back(term);
        }
        out[e].add_term(rest, c);
    }
    return out;
}

std::pair<Monomial, Rational> Polynomial::leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return *terms_.rbegin();
}

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
    return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

bool Polynomial::operator<(const Polynomial& o) const {
    auto ia = terms_.rbegin(), ib = o.terms_.rbegin();
    for (; ia != terms_.rend() && ib != o.terms_.rend(); ++ia, ++ib) {
        int c = compare_monomials(ia->first, ib->first);
        if (c != 0) return c < 0;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == terms_.rend() && ib != o.terms_.rend();
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

Rational Polynomial::content() const {
    if (terms_.empty()) return 0;
    mpz_class num = 0, den = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Polynomial Polynomial::normalized() const {
    if (terms_.empty()) return *this;
    Rational scale = content();
    if (sgn(terms_.rbegin()->second) < 0) scale = -scale;
    Polynomial p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, c / scale);
    return p;
}

Monomial Polynomial::monomial_content() const {
    if (terms_.empty()) return {};
    Monomial common = terms_.begin()->first;
    for (const auto& [m, c] : terms_) {
        Monomial next;
        for (const auto& [v, e] : common) {
            auto it = std::find_if(m.begin(), m.end(), [&](const auto& t) { return t.first == v; });
            if (it != m.end()) next.emplace_back(v, std::min(e, it->second));
        }
        common = std::move(next);
        if (common.empty()) break;
    }
    return common;
}

double Polynomial::evaluate(const std::map<std::string, double>& values) const {
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = c.get_d();
        for (const auto& [v, e] : m) {
            auto it = values.find(v);
            if (it == values.end()) throw std::out_of_range("no value for symbol " + v);
            t *= std::pow(it->second, static_cast<double>(e));
        }
        sum += t;
    }
    return sum;
}

Rational Polynomial::evaluate_exact(const std::map<std::string, Rational>& values) const {
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [v, e] : m) {
            auto it = values.find(v);
            if (it == values.end()) throw std::out_of_range("no value for symbol " + v);
            for (unsigned i = 0; i < e; ++i) t *= it->second;
        }
        sum += t;
    }
    return sum;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = abs(c);
        bool negative = sgn(c) < 0;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono;
        for (const auto& [v, e] : m) {
            if (!mono.empty()) mono += "*";
            mono += v;
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            out += a.get_str();
        else if (a == 1)
            out += mono;
        else
            out += a.get_str() + "*" + mono;
    }
    return out;
}

std::string RationalFunction::to_string() const {
    if (den == Polynomial(1)) return num.to_string();
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

Polynomial monomial_polynomial(const Monomial& m) {
    Polynomial p(1);
    for (const auto& [v, e] : m) p *= Polynomial::symbol(v, e);
    return p;
}

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    Polynomial q, r = a;
    auto [lb, cb] = b.leading_term();
    while (!r.is_zero()) {
        auto [lr, cr] = r.leading_term();
        auto t = divide(lr, lb);
        if (!t) return std::nullopt;
        Polynomial step = monomial_polynomial(*t) * Polynomial(Rational(cr / cb));
        q += step;
        r -= step * b;
    }
    return q;
}

namespace {

Polynomial divide_or_throw(const Polynomial& a, const Polynomial& b) {
    auto q = exact_divide(a, b);
    if (!q) throw std::logic_error("expected exact polynomial division");
    return *q;
}

Polynomial content_in(const Polynomial& p, const std::string& var) {
    Polynomial g;
    for (const auto& [d, c] : p.coefficients_in(var)) {
        g = gcd(g, c);
        if (g.is_constant()) return Polynomial(1);
    }
    return g;
}

Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, const std::string& var) {
    const unsigned db = b.degree(var);
    const Polynomial lb = b.coefficients_in(var).rbegin()->second;
    while (!a.is_zero()) {
        unsigned da = a.degree(var);
        if (da < db) break;
        Polynomial la = a.coefficients_in(var).rbegin()->second;
        a = lb * a - la * Polynomial::symbol(var, da - db) * b;
    }
    return a;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    SymbolSet va = a.variables(), vb = b.variables();
    std::string var;
    for (const auto& v : va)
        if (vb.count(v)) {
            var = v;
            break;
        }
    if (var.empty()) {
        // no shared variable: only the content in some variable can be common
        return gcd(content_in(a, *va.begin()), b);
    }
    Polynomial ca = content_in(a, var), cb = content_in(b, var);
    Polynomial pa = divide_or_throw(a, ca).normalized(), pb = divide_or_throw(b, cb).normalized();
    Polynomial cg = gcd(ca, cb);
    if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);
    while (true) {
        Polynomial r = pseudo_remainder(pa, pb, var);
        if (r.is_zero()) break;
        if (r.degree(var) == 0) {
            pb = Polynomial(1);
            break;
        }
        pa = pb;
        pb = divide_or_throw(r, content_in(r, var)).normalized();
    }
    return (pb * cg).normalized();
}

RationalFunction reduce(const RationalFunction& f) {
    if (f.den.is_zero()) throw std::domain_error("zero denominator");
    if (f.num.is_zero()) return {Polynomial(0), Polynomial(1)};
    Polynomial g = gcd(f.num, f.den);
    Polynomial n = divide_or_throw(f.num, g), d = divide_or_throw(f.den, g);
    Rational lead = d.leading_term().second;
    Rational scale = d.content();
    if (sgn(lead) < 0) scale = -scale;
    Polynomial inv{Rational(Rational(1) / scale)};
    return {n * inv, d * inv};
}

RationalFunction substitute(const Polynomial& p, const std::string& var, const RationalFunction& value) {
    auto coeffs = p.coefficients_in(var);
    const unsigned deg = coeffs.rbegin()->first;
    std::vector<Polynomial> num_pow{Polynomial(1)}, den_pow{Polynomial(1)};
    for (unsigned i = 1; i <= deg; ++i) {
        num_pow.push_back(num_pow.back() * value.num);
        den_pow.push_back(den_pow.back() * value.den);
    }
    Polynomial out;
    for (const auto& [d, c] : coeffs) out += c * num_pow[d] * den_pow[deg - d];
    return {out, den_pow[deg]};
}

RationalFunction substitute(const RationalFunction& f, const std::string& var, const RationalFunction& value) {
    if (!f.num.contains(var) && !f.den.contains(var)) return f;
    RationalFunction n = substitute(f.num, var, value);
    RationalFunction d = substitute(f.den, var, value);
    return reduce({n.num * d.den, n.den * d.num});
}

FactorRefinement refine_factors(const std::vector<Polynomial>& inputs) {
    FactorRefinement out;
    out.constants.resize(inputs.size());
    std::vector<Polynomial> residual(inputs.size());
    SymbolSet monomial_vars;
    std::vector<Polynomial> work;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i].is_zero()) throw std::domain_error("cannot factor the zero polynomial");
        Monomial mc = inputs[i].monomial_content();
        for (const auto& [v, e] : mc) monomial_vars.insert(v);
        Polynomial rest = divide_or_throw(inputs[i], monomial_polynomial(mc));
        residual[i] = inputs[i];
        Polynomial n = rest.normalized();
        if (!n.is_constant() && std::find(work.begin(), work.end(), n) == work.end()) work.push_back(n);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < work.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
                Polynomial g = gcd(work[i], work[j]);
                if (g.is_constant()) continue;
                Polynomial a = divide_or_throw(work[i], g).normalized();
                Polynomial b = divide_or_throw(work[j], g).normalized();
                std::vector<Polynomial> next;
                for (std::size_t t = 0; t < work.size(); ++t)
                    if (t != i && t != j) next.push_back(work[t]);
                for (const Polynomial& p : {a, b, g})
                    if (!p.is_constant() && std::find(next.begin(), next.end(), p) == next.end()) next.push_back(p);
                work = std::move(next);
                changed = true;
            }
    }
    std::sort(work.begin(), work.end(), [](const Polynomial& a, const Polynomial& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        if (a.term_count() != b.term_count()) return a.term_count() < b.term_count();
        return b < a;
    });
    for (const auto& v : monomial_vars) out.basis.push_back(Polynomial::symbol(v));
    for (auto& w : work) out.basis.push_back(std::move(w));
    out.exponents.assign(inputs.size(), std::vector<long>(out.basis.size(), 0));
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        Polynomial r = residual[i];
        for (std::size_t j = 0; j < out.basis.size(); ++j) {
            while (true) {
                auto q = exact_divide(r, out.basis[j]);
                if (!q) break;
                r = std::move(*q);
                ++out.exponents[i][j];
            }
        }
        if (!r.is_constant()) throw std::logic_error("factor refinement left a non-constant cofactor");
        out.constants[i] = r.constant_value();
    }
    return out;
}

}  // namespace crnparam
