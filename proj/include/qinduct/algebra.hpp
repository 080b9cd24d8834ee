/// Core data model for finite / truncated algebraic quantum groups.
///
/// A QGroup describes an algebra by structure tables on an indexed basis:
/// multiplication, comultiplication, counit, antipode(s), star, Haar
/// functional, plus the modular multipliers.  Truncated backends (the
/// Peter-Weyl tower and its relatives) carry per-axis label sizes and
/// cutoffs; every table entry knows whether it is the complete expansion or
/// an exact window of an infinite one.  Operations never project silently:
/// completeness is tracked and overflowing requests throw TruncationError.

#pragma once

#include "qinduct/ring.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qinduct {

template <class R>
struct Expansion {
    std::map<int, R> terms;
    bool complete = true;

    void add(int label, const R& c) {
        if (RingOps<R>::is_zero(c)) return;
        auto [it, fresh] = terms.emplace(label, c);
        if (!fresh) {
            it->second = it->second + c;
            if (RingOps<R>::is_zero(it->second)) terms.erase(it);
        }
    }
};

using TensorKey = std::vector<int>;

template <class R>
struct TensorExpansion {
    std::map<TensorKey, R> terms;
    bool complete = true;

    void add(const TensorKey& k, const R& c) {
        if (RingOps<R>::is_zero(c)) return;
        auto [it, fresh] = terms.emplace(k, c);
        if (!fresh) {
            it->second = it->second + c;
            if (RingOps<R>::is_zero(it->second)) terms.erase(it);
        }
    }
};

template <class R>
class QGroup;

template <class R>
struct AlgElem {
    const QGroup<R>* alg = nullptr;
    std::map<int, R> coeffs;

    AlgElem() = default;
    explicit AlgElem(const QGroup<R>* a) : alg(a) {}
    AlgElem(const QGroup<R>* a, int label) : alg(a) { coeffs.emplace(label, RingOps<R>::one()); }

    bool is_zero() const { return coeffs.empty(); }
    void add(int label, const R& c) {
        if (RingOps<R>::is_zero(c)) return;
        auto [it, fresh] = coeffs.emplace(label, c);
        if (!fresh) {
            it->second = it->second + c;
            if (RingOps<R>::is_zero(it->second)) coeffs.erase(it);
        }
    }
    void add_scaled(const AlgElem& o, const R& c) {
        for (const auto& [l, x] : o.coeffs) add(l, x * c);
    }
    AlgElem scaled(const R& c) const {
        AlgElem r(alg);
        for (const auto& [l, x] : coeffs) r.add(l, x * c);
        return r;
    }
    friend AlgElem operator+(const AlgElem& a, const AlgElem& b) {
        AlgElem r = a;
        for (const auto& [l, x] : b.coeffs) r.add(l, x);
        return r;
    }
    friend AlgElem operator-(const AlgElem& a, const AlgElem& b) {
        AlgElem r = a;
        for (const auto& [l, x] : b.coeffs) r.add(l, -x);
        return r;
    }
    friend bool operator==(const AlgElem& a, const AlgElem& b) { return a.coeffs == b.coeffs; }

    std::string to_string() const;
};

template <class R>
struct TensorElem {
    std::vector<const QGroup<R>*> legs;
    std::map<TensorKey, R> coeffs;

    TensorElem() = default;
    explicit TensorElem(std::vector<const QGroup<R>*> l) : legs(std::move(l)) {}

    bool is_zero() const { return coeffs.empty(); }
    void add(const TensorKey& k, const R& c) {
        if (RingOps<R>::is_zero(c)) return;
        auto [it, fresh] = coeffs.emplace(k, c);
        if (!fresh) {
            it->second = it->second + c;
            if (RingOps<R>::is_zero(it->second)) coeffs.erase(it);
        }
    }
    friend TensorElem operator+(const TensorElem& a, const TensorElem& b) {
        TensorElem r = a;
        for (const auto& [k, x] : b.coeffs) r.add(k, x);
        return r;
    }
    friend TensorElem operator-(const TensorElem& a, const TensorElem& b) {
        TensorElem r = a;
        for (const auto& [k, x] : b.coeffs) r.add(k, -x);
        return r;
    }
    friend bool operator==(const TensorElem& a, const TensorElem& b) { return a.coeffs == b.coeffs; }

    std::string to_string() const;
};

/// Element of the multiplier algebra, given by compatible left/right action
/// tables on the basis.  An element realization within the truncation is
/// attached when one exists (it always does on our backends).
template <class R>
struct Multiplier {
    std::string name;
    std::function<Expansion<R>(int)> left;   // label -> m * b
    std::function<Expansion<R>(int)> right;  // label -> b * m
    std::optional<AlgElem<R>> element;

    static Multiplier identity() {
        Multiplier m;
        m.name = "1";
        m.left = [](int l) {
            Expansion<R> e;
            e.add(l, RingOps<R>::one());
            return e;
        };
        m.right = m.left;
        return m;
    }
};

/// How the size of a convolution product f*g grows along one truncation axis.
enum class ConvGrowth { KeepLeft, Add };

template <class R>
class QGroup {
public:
    std::string name;
    std::vector<std::string> label_names;
    /// per-label truncation sizes, one entry per axis (empty axes = finite backend)
    std::vector<std::vector<int>> label_size;
    std::vector<int> axis_cutoff;
    std::vector<ConvGrowth> conv_growth;
    /// per-axis max size carrying nonzero Haar mass (-1 meaning unbounded)
    std::vector<int> haar_support_max;
    /// axes along which the antipode can leave the cutoff window (empty for
    /// size-preserving antipodes)
    std::vector<int> antipode_overflow_axes;

    std::function<Expansion<R>(int, int)> mult;
    std::function<TensorExpansion<R>(int)> comult;
    std::function<R(int)> counit;
    std::function<Expansion<R>(int)> antipode;
    std::function<Expansion<R>(int)> antipode_inv;
    std::function<Expansion<R>(int)> star;  // table is linear; elements conjugate coefficients
    std::function<R(int)> haar;
    std::function<R(int, int)> phi_product;  // phi(b_i b_j), exact for every pair
    /// when set, decides whether a coefficient pair is inside the window on
    /// which the Galois maps are exact; defaults to pair_within_cutoff
    std::function<bool(const std::vector<int>&, const std::vector<int>&)> galois_safe;

    Multiplier<R> modular, modular_sqrt, modular_inv_sqrt;
    bool unimodular = false;
    AlgElem<R> unit;
    bool unit_truncated = false;

    size_t dim() const { return label_names.size(); }
    int n_axes() const { return static_cast<int>(axis_cutoff.size()); }

    const std::vector<int>& sizes(int label) const { return label_size[label]; }

    bool pair_within_cutoff(int a, int b) const {
        for (int ax = 0; ax < n_axes(); ++ax)
            if (label_size[a][ax] + label_size[b][ax] > axis_cutoff[ax]) return false;
        return true;
    }

    AlgElem<R> basis_elem(int label) const { return AlgElem<R>(this, label); }

    int index_of(const std::string& nm) const {
        for (size_t i = 0; i < label_names.size(); ++i)
            if (label_names[i] == nm) return static_cast<int>(i);
        throw DomainError(name + ": unknown basis label " + nm);
    }
};

template <class R>
std::string AlgElem<R>::to_string() const {
    if (coeffs.empty()) return "0";
    std::string s;
    for (const auto& [l, c] : coeffs) {
        if (!s.empty()) s += " + ";
        if constexpr (std::is_same_v<R, Scalar>)
            s += c.to_string();
        else
            s += "(" + std::to_string(c.real()) + (c.imag() < 0 ? "" : "+") +
                 std::to_string(c.imag()) + "i)";
        s += "*" + (alg ? alg->label_names[l] : std::to_string(l));
    }
    return s;
}

template <class R>
std::string TensorElem<R>::to_string() const {
    if (coeffs.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : coeffs) {
        if (!s.empty()) s += " + ";
        if constexpr (std::is_same_v<R, Scalar>) s += c.to_string();
        else s += "(num)";
        for (size_t leg = 0; leg < k.size(); ++leg)
            s += (leg ? "(x)" : "*") + legs[leg]->label_names[k[leg]];
    }
    return s;
}

/// mutex-guarded memo cache for structure-map closures
template <class K, class V, class Hash = std::hash<K>>
class Memo {
public:
    /// references stay valid: unordered_map nodes are pointer-stable
    template <class F>
    const V& get(const K& k, F&& compute) const {
        {
            std::lock_guard<std::mutex> g(mu_);
            auto it = map_.find(k);
            if (it != map_.end()) return it->second;
        }
        V v = compute();
        std::lock_guard<std::mutex> g(mu_);
        return map_.emplace(k, std::move(v)).first->second;
    }

private:
    mutable std::mutex mu_;
    mutable std::unordered_map<K, V, Hash> map_;
};

struct PairHash {
    size_t operator()(const std::pair<int, int>& p) const {
        return (static_cast<size_t>(static_cast<uint32_t>(p.first)) << 32) ^
               static_cast<uint32_t>(p.second);
    }
};

}  // namespace qinduct
