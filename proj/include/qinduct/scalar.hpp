/// Exact scalars: rational functions in the deformation parameter q with
/// cyclotomic-rational coefficients.  Exponents live in (1/2)Z and are stored
/// as integer exponents of s = q^(1/2), so weight pairings of sl2 stay exact.
///
/// Every Scalar is kept in a canonical reduced form (numerator and
/// denominator coprime, denominator with lowest exponent 0 and leading
/// coefficient 1), so equality is plain structural comparison.

#pragma once

#include "qinduct/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qinduct {

struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Context for numeric evaluation: the sample point 0 < q < 1 (complex off
/// the real axis is allowed) plus the tolerance used by numeric comparisons.
struct NumericContext {
    std::complex<double> q{0.5, 0.0};
    double tol{1e-9};

    NumericContext() = default;
    NumericContext(std::complex<double> qv, double t) : q(qv), tol(t) {
        if (std::abs(q) == 0.0) throw ScalarError("NumericContext: q must be nonzero");
        if (tol < 0.0) throw ScalarError("NumericContext: tolerance must be >= 0");
    }

    /// principal value of q^(e/2)
    std::complex<double> q_half_pow(double half_units) const {
        return std::exp(std::log(q) * (half_units / 2.0));
    }
};

/// Sparse Laurent polynomial in s = q^(1/2); terms sorted by exponent,
/// no zero coefficients stored.
class LaurentPoly {
public:
    using Term = std::pair<int, Cyclo>;  // exponent of q^(1/2) -> coefficient

    LaurentPoly() = default;
    LaurentPoly(const Cyclo& c) {
        if (!c.is_zero()) terms_.emplace_back(0, c);
    }
    LaurentPoly(long n) : LaurentPoly(Cyclo(n)) {}

    static LaurentPoly monomial(int exp, const Cyclo& c = Cyclo(1)) {
        LaurentPoly p;
        if (!c.is_zero()) p.terms_.emplace_back(exp, c);
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == Cyclo(1);
    }
    int low_exp() const { return terms_.front().first; }
    int high_exp() const { return terms_.back().first; }
    const Cyclo& leading() const { return terms_.back().second; }

    bool is_monomial() const { return terms_.size() == 1; }

    LaurentPoly operator-() const {
        LaurentPoly r;
        r.terms_.reserve(terms_.size());
        for (const auto& [e, c] : terms_) r.terms_.emplace_back(e, -c);
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                Cyclo c = a.terms_[i].second + b.terms_[j].second;
                if (!c.is_zero()) r.terms_.emplace_back(a.terms_[i].first, c);
                ++i; ++j;
            }
        }
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (b.is_monomial()) return a.shifted_scaled(b.terms_[0].first, b.terms_[0].second);
        if (a.is_monomial()) return b.shifted_scaled(a.terms_[0].first, a.terms_[0].second);
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            r = r + b.shifted_scaled(ea, ca);
        return r;
    }

    LaurentPoly shifted_scaled(int exp, const Cyclo& c) const {
        LaurentPoly r;
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& [e, x] : terms_) {
            Cyclo y = x * c;
            if (!y.is_zero()) r.terms_.emplace_back(e + exp, y);
        }
        return r;
    }

    LaurentPoly conj() const {
        LaurentPoly r;
        r.terms_.reserve(terms_.size());
        for (const auto& [e, c] : terms_) r.terms_.emplace_back(e, c.conj());
        return r;
    }

    std::complex<double> eval(const NumericContext& ctx) const {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [e, c] : terms_)
            acc += c.to_complex() * ctx.q_half_pow(static_cast<double>(e));
        return acc;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Euclidean division a = q*b + r in K[s], valid after both are shifted to
    /// ordinary polynomials (low_exp >= 0); remainder degree < deg b.
    static void divmod(const LaurentPoly& a, const LaurentPoly& b,
                       LaurentPoly& quo, LaurentPoly& rem) {
        if (b.is_zero()) throw ScalarError("LaurentPoly: division by zero polynomial");
        quo = LaurentPoly();
        rem = a;
        Cyclo lead_inv = b.leading().inverse();
        while (!rem.is_zero() && rem.high_exp() >= b.high_exp()) {
            int e = rem.high_exp() - b.high_exp();
            Cyclo c = rem.leading() * lead_inv;
            LaurentPoly m = monomial(e, c);
            quo = quo + m;
            rem = rem - b.shifted_scaled(e, c);
        }
    }

    /// monic gcd of the polynomial parts (exponent shifts stripped first)
    static LaurentPoly gcd(LaurentPoly a, LaurentPoly b) {
        if (a.is_zero()) return b.normalized_poly();
        if (b.is_zero()) return a.normalized_poly();
        a = a.normalized_poly();
        b = b.normalized_poly();
        while (!b.is_zero()) {
            LaurentPoly q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = r.is_zero() ? LaurentPoly() : r.normalized_poly();
        }
        return a;
    }

    /// shift so low_exp = 0, scale so leading coefficient = 1
    LaurentPoly normalized_poly() const {
        if (is_zero()) return {};
        return shifted_scaled(-low_exp(), leading().inverse());
    }

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

/// [n]_q = (q^n - q^-n)/(q - q^-1) as a Laurent polynomial
inline LaurentPoly quantum_int_poly(int n) {
    LaurentPoly p;
    int an = std::abs(n);
    for (int k = 0; k < an; ++k)
        p = p + LaurentPoly::monomial(2 * (an - 1 - 2 * k));
    if (n < 0) p = -p;
    return p;
}

/// Element of the field K(q^(1/2)), K = Q(zeta_12); always reduced.
class Scalar {
public:
    Scalar() : num_(), den_(Cyclo(1)) {}
    Scalar(long n) : num_(Cyclo(n)), den_(Cyclo(1)) {}
    Scalar(long n, long d) : Scalar(Cyclo(n, d)) {}
    Scalar(const Cyclo& c) : num_(c), den_(Cyclo(1)) {}
    Scalar(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw ScalarError("Scalar: zero denominator");
        reduce();
    }

    /// q^(k/2), exponent counted in half-units
    static Scalar q_pow_half(int half_units) {
        Scalar s;
        s.num_ = LaurentPoly::monomial(half_units);
        return s;
    }
    static Scalar q() { return q_pow_half(2); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    Scalar operator-() const {
        Scalar r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_zero() || b.is_zero()) return Scalar();
        return Scalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw ScalarError("Scalar: division by zero");
        if (a.is_zero()) return Scalar();
        return Scalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const { return Scalar(1) / *this; }

    Scalar conj() const {
        Scalar r;
        r.num_ = num_.conj();
        r.den_ = den_.conj();
        r.reduce();
        return r;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::complex<double> eval(const NumericContext& ctx) const {
        std::complex<double> d = den_.eval(ctx);
        double scale = 0.0;
        for (const auto& [e, c] : den_.terms())
            scale += std::abs(c.to_complex() * ctx.q_half_pow(static_cast<double>(e)));
        if (std::abs(d) <= 1e-13 * scale)
            throw ScalarError("Scalar: pole at the evaluation point");
        return num_.eval(ctx) / d;
    }

    std::string to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }
    static Scalar parse(const std::string& text);

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = LaurentPoly(Cyclo(1));
            return;
        }
        if (!den_.is_monomial()) {
            LaurentPoly g = LaurentPoly::gcd(num_, den_);
            if (!g.is_one() && !(g.is_monomial() && g.low_exp() == 0)) {
                LaurentPoly q1, r1, q2, r2;
                LaurentPoly::divmod(num_.shifted_scaled(-num_.low_exp(), Cyclo(1)), g, q1, r1);
                LaurentPoly::divmod(den_.shifted_scaled(-den_.low_exp(), Cyclo(1)), g, q2, r2);
                if (!r1.is_zero() || !r2.is_zero())
                    throw ScalarError("Scalar: gcd failed to divide exactly");
                q1 = q1.shifted_scaled(num_.low_exp(), Cyclo(1));
                q2 = q2.shifted_scaled(den_.low_exp(), Cyclo(1));
                num_ = std::move(q1);
                den_ = std::move(q2);
            }
        }
        // denominator: lowest exponent 0, leading coefficient 1
        int sh = den_.low_exp();
        Cyclo lead_inv = den_.leading().inverse();
        num_ = num_.shifted_scaled(-sh, lead_inv);
        den_ = den_.shifted_scaled(-sh, lead_inv);
    }

    LaurentPoly num_, den_;
};

inline Scalar quantum_int(int n) { return Scalar(quantum_int_poly(n), LaurentPoly(Cyclo(1))); }

enum class ArithKind { Add, Sub, Mul, Div };

inline Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::Add: return a + b;
        case ArithKind::Sub: return a - b;
        case ArithKind::Mul: return a * b;
        case ArithKind::Div: return a / b;
    }
    throw ScalarError("scalar_arith: bad kind");
}

// ---------------------------------------------------------------------------
// printing / parsing
// ---------------------------------------------------------------------------

inline std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    // descending exponents: "q^2+1+q^-2"
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        bool rational = c.is_rational();
        bool neg = rational && c.rational() < 0;
        std::string coef = (neg ? -c : c).to_string();
        if (!s.empty()) s += neg ? "-" : "+";
        else if (neg) s += "-";

        std::string mono;
        if (e != 0) {
            if (e % 2 == 0)
                mono = "q^" + std::to_string(e / 2);
            else
                mono = "q^(" + std::to_string(e) + "/2)";
        }
        if (!rational) coef = "(" + coef + ")";  // cyclotomic: always parenthesized
        if (mono.empty())
            s += coef;
        else if (coef == "1")
            s += mono;
        else
            s += coef + "*" + mono;
    }
    return s;
}

namespace detail {

class ScalarParser {
public:
    explicit ScalarParser(const std::string& s) : s_(s) {}

    Scalar parse_scalar() {
        LaurentPoly num = parse_fraction_side();
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            LaurentPoly den = parse_fraction_side();
            skip_ws();
            if (pos_ != s_.size()) fail("trailing characters");
            return Scalar(num, den);
        }
        if (pos_ != s_.size()) fail("trailing characters");
        return Scalar(num, LaurentPoly(Cyclo(1)));
    }

private:
    LaurentPoly parse_fraction_side() {
        skip_ws();
        if (peek() == '(') {
            size_t close = matching_paren(pos_);
            // a parenthesized fraction side, e.g. "(q^2+1)"
            ScalarParser inner(s_.substr(pos_ + 1, close - pos_ - 1));
            LaurentPoly p = inner.parse_poly_full();
            pos_ = close + 1;
            return p;
        }
        return parse_poly();
    }

    LaurentPoly parse_poly_full() {
        LaurentPoly p = parse_poly();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters in polynomial");
        return p;
    }

    LaurentPoly parse_poly() {
        LaurentPoly acc;
        skip_ws();
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            LaurentPoly t = parse_term();
            acc = acc + (sign < 0 ? -t : t);
            first = false;
            skip_ws();
            if (pos_ >= s_.size() || (peek() != '+' && peek() != '-')) break;
        }
        return acc;
    }

    LaurentPoly parse_term() {
        skip_ws();
        Cyclo coef(1);
        bool have_coef = false;
        if (peek() == '(') {
            size_t close = matching_paren(pos_);
            coef = parse_cyclo(s_.substr(pos_ + 1, close - pos_ - 1));
            pos_ = close + 1;
            have_coef = true;
        } else if (std::isdigit(peek()) || peek() == 'z') {
            coef = parse_cyclo_atom();
            have_coef = true;
        }
        skip_ws();
        if (peek() == '*') {
            ++pos_;
            skip_ws();
        }
        if (peek() == 'q') {
            ++pos_;
            int half = 2;
            if (peek() == '^') {
                ++pos_;
                half = parse_exponent();
            }
            return LaurentPoly::monomial(half, coef);
        }
        if (!have_coef) fail("expected term");
        return LaurentPoly(coef);
    }

    // exponent forms: 3, -2, (3/2), (-1/2)
    int parse_exponent() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            long n = parse_int();
            skip_ws();
            if (peek() != '/') fail("expected '/2' in half exponent");
            ++pos_;
            long d = parse_int();
            if (d != 2) fail("only half exponents supported");
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return static_cast<int>(n);
        }
        return static_cast<int>(2 * parse_int());
    }

    // cyclotomic inside parens: "1+z", "2*z^3-1/2", ...
    Cyclo parse_cyclo(const std::string& text) {
        ScalarParser p(text);
        Cyclo acc(0);
        bool first = true;
        while (true) {
            p.skip_ws();
            if (p.pos_ >= p.s_.size()) break;
            int sign = 1;
            if (p.peek() == '+' || p.peek() == '-') {
                sign = p.peek() == '-' ? -1 : 1;
                ++p.pos_;
            } else if (!first) {
                p.fail("bad cyclotomic");
            }
            Cyclo a = p.parse_cyclo_atom();
            acc += sign < 0 ? -a : a;
            first = false;
        }
        return acc;
    }

    Cyclo parse_cyclo_atom() {
        skip_ws();
        Cyclo c(1);
        bool have_num = false;
        if (std::isdigit(peek())) {
            long n = parse_int();
            long d = 1;
            if (peek() == '/') {
                ++pos_;
                d = parse_int();
            }
            c = Cyclo(n, d);
            have_num = true;
        }
        skip_ws();
        if (peek() == '*') {
            ++pos_;
            skip_ws();
        }
        if (peek() == 'z') {
            ++pos_;
            int k = 1;
            if (peek() == '^') {
                ++pos_;
                k = static_cast<int>(parse_int());
            }
            return c * Cyclo::zeta(k);
        }
        if (!have_num) fail("expected coefficient");
        return c;
    }

    long parse_int() {
        skip_ws();
        size_t start = pos_;
        if (peek() == '-') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected integer");
        return std::stol(s_.substr(start, pos_ - start));
    }

    size_t matching_paren(size_t open) const {
        int depth = 0;
        for (size_t i = open; i < s_.size(); ++i) {
            if (s_[i] == '(') ++depth;
            if (s_[i] == ')' && --depth == 0) return i;
        }
        throw ScalarError("Scalar::parse: unbalanced parentheses");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    [[noreturn]] void fail(const std::string& why) const {
        throw ScalarError("Scalar::parse: " + why + " at position " + std::to_string(pos_) +
                          " in \"" + s_ + "\"");
    }

    std::string s_;
    size_t pos_ = 0;
};

}  // namespace detail

inline Scalar Scalar::parse(const std::string& text) {
    return detail::ScalarParser(text).parse_scalar();
}

}  // namespace qinduct
