/// Exact arithmetic in the cyclotomic field Q(z), z = exp(i*pi/6), the
/// 12th root of unity.  This is the coefficient field for all structure
/// constants: it is the smallest cyclotomic field containing both i and the
/// primitive cube root of unity, which is what characters of the small
/// finite groups we support require.  Minimal polynomial: z^4 = z^2 - 1.

#pragma once

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qinduct {

class Cyclo {
public:
    Cyclo() = default;
    Cyclo(long n) { c_[0] = n; }
    Cyclo(long num, long den) : Cyclo(mpq_class(num, den)) {}
    Cyclo(const mpq_class& r) { c_[0] = r; c_[0].canonicalize(); }

    /// z^k for 0 <= k < 12 (reduced mod the minimal polynomial).
    static Cyclo zeta(int k) {
        k = ((k % 12) + 12) % 12;
        Cyclo r;
        bool neg = k >= 6;
        if (neg) k -= 6;           // z^6 = -1
        switch (k) {
            case 0: r.c_[0] = 1; break;
            case 1: r.c_[1] = 1; break;
            case 2: r.c_[2] = 1; break;
            case 3: r.c_[3] = 1; break;
            case 4: r.c_[2] = 1; r.c_[0] = -1; break;   // z^4 = z^2 - 1
            case 5: r.c_[3] = 1; r.c_[1] = -1; break;   // z^5 = z^3 - z
        }
        if (neg)
            for (auto& x : r.c_) x = -x;
        return r;
    }

    static Cyclo i() { return zeta(3); }
    /// primitive cube root of unity
    static Cyclo omega3() { return zeta(4); }

    const mpq_class& coeff(int k) const { return c_[k]; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    const mpq_class& rational() const {
        if (!is_rational()) throw std::logic_error("Cyclo: not rational");
        return c_[0];
    }

    Cyclo operator-() const {
        Cyclo r;
        for (size_t k = 0; k < 4; ++k) r.c_[k] = -c_[k];
        return r;
    }
    Cyclo& operator+=(const Cyclo& o) {
        for (size_t k = 0; k < 4; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Cyclo& operator-=(const Cyclo& o) {
        for (size_t k = 0; k < 4; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }

    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        // schoolbook product; powers 4..6 fold back via z^4 = z^2 - 1
        std::array<mpq_class, 7> t;
        for (size_t i = 0; i < 4; ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < 4; ++j) {
                if (b.c_[j] == 0) continue;
                t[i + j] += a.c_[i] * b.c_[j];
            }
        }
        t[2] += t[4];  t[0] -= t[4];
        t[3] += t[5];  t[1] -= t[5];
        // z^6 = -1
        t[0] -= t[6];
        Cyclo r;
        for (size_t k = 0; k < 4; ++k) r.c_[k] = t[k];
        return r;
    }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    /// Galois automorphism z -> z^j, j coprime to 12.
    Cyclo galois(int j) const {
        Cyclo r;
        for (int k = 0; k < 4; ++k) {
            if (c_[k] == 0) continue;
            Cyclo zk = zeta(j * k);
            for (size_t s = 0; s < 4; ++s) r.c_[s] += c_[k] * zk.c_[s];
        }
        return r;
    }

    /// complex conjugation (z -> z^-1); q itself is real so scalars conjugate
    /// through their cyclotomic part only
    Cyclo conj() const { return galois(11); }

    Cyclo inverse() const {
        if (is_zero()) throw std::domain_error("Cyclo: division by zero");
        if (is_rational()) {
            Cyclo r;
            r.c_[0] = 1 / c_[0];
            return r;
        }
        // x^-1 = s5(x) s7(x) s11(x) / N(x), with N(x) rational
        Cyclo p = galois(5) * galois(7) * galois(11);
        Cyclo n = *this * p;
        if (!n.is_rational() || n.c_[0] == 0)
            throw std::logic_error("Cyclo: norm computation failed");
        mpq_class inv = 1 / n.c_[0];
        Cyclo r;
        for (size_t k = 0; k < 4; ++k) r.c_[k] = p.c_[k] * inv;
        return r;
    }
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        for (size_t k = 0; k < 4; ++k)
            if (a.c_[k] != b.c_[k]) return false;
        return true;
    }
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    /// total order (coefficient-lexicographic), used for canonical printing
    friend bool operator<(const Cyclo& a, const Cyclo& b) {
        for (size_t k = 0; k < 4; ++k) {
            int c = cmp(a.c_[k], b.c_[k]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    std::complex<double> to_complex() const {
        static const std::complex<double> z(0.8660254037844386467637232, 0.5);
        std::complex<double> acc(0.0, 0.0), p(1.0, 0.0);
        for (size_t k = 0; k < 4; ++k) {
            acc += c_[k].get_d() * p;
            p *= z;
        }
        return acc;
    }

    /// "3", "-1/2", "1+z", "2*z^3", ... (canonical; parseable back)
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        bool first = true;
        for (int k = 0; k < 4; ++k) {
            if (c_[k] == 0) continue;
            mpq_class a = c_[k];
            if (!first) s += (a < 0 ? "-" : "+");
            else if (a < 0) s += "-";
            first = false;
            mpq_class aa = abs(a);
            std::string mon = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
            if (mon.empty())
                s += aa.get_str();
            else if (aa == 1)
                s += mon;
            else
                s += aa.get_str() + "*" + mon;
        }
        return s;
    }

private:
    std::array<mpq_class, 4> c_{};  // value = sum c_[k] z^k
};

inline Cyclo abs_norm_sq(const Cyclo& a) { return a * a.conj(); }

}  // namespace qinduct
