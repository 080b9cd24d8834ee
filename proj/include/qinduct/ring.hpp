/// Small trait layer so the algebra engine can run over the exact field
/// (Scalar) or over complex doubles for numeric mode.

#pragma once

#include "qinduct/scalar.hpp"

#include <complex>

namespace qinduct {

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class R>
struct RingOps;

template <>
struct RingOps<Scalar> {
    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static bool is_zero(const Scalar& x) { return x.is_zero(); }
    static Scalar conj(const Scalar& x) { return x.conj(); }
    static Scalar from_rational(long n, long d) { return Scalar(n, d); }
};

template <>
struct RingOps<std::complex<double>> {
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static bool is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }
    static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
    static std::complex<double> from_rational(long n, long d) {
        return {static_cast<double>(n) / static_cast<double>(d), 0.0};
    }
};

using Complex = std::complex<double>;

}  // namespace qinduct
