/// The axioms suite: every defining identity of an algebraic quantum group,
/// run as exact checks over a descriptor's basis.  On truncated backends each
/// check compares only components that are certified exact by the window
/// bookkeeping (the "safe sub-span"); nothing is ever projected silently.

#pragma once

#include "qinduct/linalg.hpp"
#include "qinduct/ops.hpp"
#include "qinduct/report.hpp"

#include <random>
#include <sstream>

namespace qinduct {

struct AxiomsOptions {
    size_t triple_budget = 1500;   // max exhaustive triples before sampling
    size_t pair_budget = 4000;
    size_t sample_count = 300;
    uint64_t seed = 1;
    bool positivity = true;
    NumericContext ctx{{0.5, 0.0}, 1e-9};
};

namespace detail {

inline bool axis_leq(const std::vector<int>& a, const std::vector<int>& b,
                     const std::vector<int>& cut) {
    for (size_t ax = 0; ax < cut.size(); ++ax)
        if (a[ax] + b[ax] > cut[ax]) return false;
    return true;
}

template <class R>
std::vector<std::pair<int, int>> safe_pairs(const QGroup<R>& A) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < (int)A.dim(); ++i)
        for (int j = 0; j < (int)A.dim(); ++j)
            if (A.pair_within_cutoff(i, j)) out.emplace_back(i, j);
    return out;
}

template <class T>
std::vector<T> sample_if_large(std::vector<T> v, size_t budget, std::mt19937_64& rng) {
    if (v.size() <= budget) return v;
    std::shuffle(v.begin(), v.end(), rng);
    v.resize(budget);
    return v;
}

}  // namespace detail

/// coassociativity on one basis element, compared on the window certified by
/// the triangle bounds: keys (a,b,c) with a+b and b+c inside the cutoff
inline bool check_coassoc_basis(const QGroup<Scalar>& A, int f) {
    AlgElem<Scalar> e = A.basis_elem(f);
    ClippedTensor<Scalar> d = comul_clipped(e);

    TensorElem<Scalar> lhs({&A, &A, &A}), rhs({&A, &A, &A});
    for (const auto& [k, c] : d.elem.coeffs) {
        TensorExpansion<Scalar> e1 = A.comult(k[0]);
        for (const auto& [k2, x] : e1.terms) lhs.add({k2[0], k2[1], k[1]}, x * c);
        TensorExpansion<Scalar> e2 = A.comult(k[1]);
        for (const auto& [k2, x] : e2.terms) rhs.add({k[0], k2[0], k2[1]}, x * c);
    }
    auto keep = [&](const TensorKey& k) {
        return detail::axis_leq(A.sizes(k[0]), A.sizes(k[1]), A.axis_cutoff) &&
               detail::axis_leq(A.sizes(k[1]), A.sizes(k[2]), A.axis_cutoff);
    };
    return equal_on<Scalar>(lhs, rhs, keep);
}

inline bool check_counit_basis(const QGroup<Scalar>& A, int f) {
    AlgElem<Scalar> e = A.basis_elem(f);
    ClippedTensor<Scalar> d = comul_clipped(e);
    AlgElem<Scalar> left(&A), right(&A);
    for (const auto& [k, c] : d.elem.coeffs) {
        left.add(k[1], A.counit(k[0]) * c);
        right.add(k[0], A.counit(k[1]) * c);
    }
    return left == e && right == e;
}

/// m(S (x) id)Delta(f) = eps(f) 1 and the mirror law; exact on all stored
/// components (block pinning makes the in-window sums complete), provided the
/// needed antipode expansions are complete.  Returns nullopt when skipped.
inline std::optional<bool> check_antipode_law_basis(const QGroup<Scalar>& A, int f) {
    AlgElem<Scalar> e = A.basis_elem(f);
    ClippedTensor<Scalar> d = comul_clipped(e);
    AlgElem<Scalar> lhs(&A), rhs(&A);
    for (const auto& [k, c] : d.elem.coeffs) {
        Expansion<Scalar> s1 = A.antipode(k[0]);
        if (!s1.complete) return std::nullopt;
        for (const auto& [z, cz] : s1.terms) {
            Expansion<Scalar> p = A.mult(z, k[1]);
            for (const auto& [l, x] : p.terms) lhs.add(l, x * cz * c);
        }
        Expansion<Scalar> s2 = A.antipode(k[1]);
        if (!s2.complete) return std::nullopt;
        for (const auto& [z, cz] : s2.terms) {
            Expansion<Scalar> p = A.mult(k[0], z);
            for (const auto& [l, x] : p.terms) rhs.add(l, x * cz * c);
        }
    }
    AlgElem<Scalar> expect = A.unit.scaled(A.counit(f));
    return lhs == expect && rhs == expect;
}

/// (id (x) phi)Delta(f) = phi(f) 1 compared on the certified output window
inline bool check_left_invariance_basis(const QGroup<Scalar>& A, int f) {
    AlgElem<Scalar> e = A.basis_elem(f);
    ClippedTensor<Scalar> d = comul_clipped(e);
    AlgElem<Scalar> lhs(&A);
    for (const auto& [k, c] : d.elem.coeffs) lhs.add(k[0], A.haar(k[1]) * c);
    AlgElem<Scalar> expect = A.unit.scaled(A.haar(f));
    auto keep = [&](int b) {
        for (int ax = 0; ax < A.n_axes(); ++ax) {
            int reach = A.sizes(b)[ax] + A.sizes(f)[ax];
            int hmax = A.haar_support_max[ax];
            int needed = hmax < 0 ? reach : std::min(reach, hmax);
            if (needed > A.axis_cutoff[ax]) return false;
        }
        return true;
    };
    return equal_on<Scalar>(lhs, expect, keep);
}

/// (phi (x) id)Delta(f) = phi(f) delta compared on the certified window
inline bool check_modular_property_basis(const QGroup<Scalar>& A, int f) {
    AlgElem<Scalar> e = A.basis_elem(f);
    ClippedTensor<Scalar> d = comul_clipped(e);
    AlgElem<Scalar> lhs(&A);
    for (const auto& [k, c] : d.elem.coeffs) lhs.add(k[1], A.haar(k[0]) * c);
    if (!A.modular.element)
        throw DomainError(A.name + ": modular element has no truncated realization");
    AlgElem<Scalar> expect = A.modular.element->scaled(A.haar(f));
    auto keep = [&](int b) {
        for (int ax = 0; ax < A.n_axes(); ++ax) {
            int reach = A.sizes(b)[ax] + A.sizes(f)[ax];
            int hmax = A.haar_support_max[ax];
            int needed = hmax < 0 ? reach : std::min(reach, hmax);
            if (needed > A.axis_cutoff[ax]) return false;
        }
        return true;
    };
    return equal_on<Scalar>(lhs, expect, keep);
}

inline Report axioms_suite(const QGroup<Scalar>& A, const AxiomsOptions& opt = {}) {
    Report rep;
    rep.title = "axioms: " + A.name;
    std::mt19937_64 rng(opt.seed);
    const int n = static_cast<int>(A.dim());
    auto count_detail = [](size_t ok, size_t total, size_t skipped = 0) {
        std::ostringstream os;
        os << ok << "/" << total << " checked";
        if (skipped) os << ", " << skipped << " outside safe window";
        return os.str();
    };

    // unit laws
    {
        size_t ok = 0;
        for (int b = 0; b < n; ++b) {
            AlgElem<Scalar> e = A.basis_elem(b);
            if (mul(A.unit, e) == e && mul(e, A.unit) == e) ++ok;
        }
        rep.add("unit law", ok == (size_t)n, count_detail(ok, n));
    }

    // associativity on safe triples
    {
        std::vector<std::array<int, 3>> triples;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (!A.pair_within_cutoff(a, b)) continue;
                for (int c = 0; c < n; ++c) {
                    bool ok = true;
                    for (int ax = 0; ax < A.n_axes(); ++ax)
                        if (A.sizes(a)[ax] + A.sizes(b)[ax] + A.sizes(c)[ax] > A.axis_cutoff[ax])
                            ok = false;
                    if (ok) triples.push_back({a, b, c});
                }
            }
        triples = detail::sample_if_large(std::move(triples), opt.triple_budget, rng);
        size_t ok = 0;
        for (auto [a, b, c] : triples) {
            AlgElem<Scalar> ea = A.basis_elem(a), eb = A.basis_elem(b), ec = A.basis_elem(c);
            if (mul(mul(ea, eb), ec) == mul(ea, mul(eb, ec))) ++ok;
        }
        rep.add("associativity", ok == triples.size(), count_detail(ok, triples.size()));
    }

    // coassociativity / counit law
    {
        size_t ok = 0;
        for (int f = 0; f < n; ++f)
            if (check_coassoc_basis(A, f)) ++ok;
        rep.add("coassociativity", ok == (size_t)n, count_detail(ok, n));
    }
    {
        size_t ok = 0;
        for (int f = 0; f < n; ++f)
            if (check_counit_basis(A, f)) ++ok;
        rep.add("counit law", ok == (size_t)n, count_detail(ok, n));
    }

    // antipode law
    {
        size_t ok = 0, skipped = 0, total = 0;
        for (int f = 0; f < n; ++f) {
            auto r = check_antipode_law_basis(A, f);
            if (!r) { ++skipped; continue; }
            ++total;
            if (*r) ++ok;
        }
        rep.add("antipode law", ok == total && total > 0, count_detail(ok, total, skipped));
    }

    // S o S^-1 = S^-1 o S = id on basis
    {
        size_t ok = 0, skipped = 0, total = 0;
        for (int f = 0; f < n; ++f) {
            AlgElem<Scalar> e = A.basis_elem(f);
            Clipped<Scalar> s = apply_table(e, A.antipode);
            Clipped<Scalar> si = apply_table(e, A.antipode_inv);
            if (!s.complete || !si.complete) { ++skipped; continue; }
            Clipped<Scalar> a = apply_table(s.elem, A.antipode_inv);
            Clipped<Scalar> b = apply_table(si.elem, A.antipode);
            if (!a.complete || !b.complete) { ++skipped; continue; }
            ++total;
            if (a.elem == e && b.elem == e) ++ok;
        }
        rep.add("antipode inverse pair", ok == total && total > 0, count_detail(ok, total, skipped));
    }

    // star: involution, Delta-compatibility, eps o star
    {
        size_t ok = 0;
        for (int f = 0; f < n; ++f) {
            AlgElem<Scalar> e = A.basis_elem(f);
            if (star_alg(star_alg(e)) == e) ++ok;
        }
        rep.add("star involution", ok == (size_t)n, count_detail(ok, n));
    }
    {
        size_t ok = 0;
        for (int f = 0; f < n; ++f) {
            AlgElem<Scalar> e = A.basis_elem(f);
            ClippedTensor<Scalar> lhs = comul_clipped(star_alg(e));
            ClippedTensor<Scalar> rhs0 = comul_clipped(e);
            TensorElem<Scalar> rhs({&A, &A});
            for (const auto& [k, c] : rhs0.elem.coeffs) {
                Expansion<Scalar> s1 = A.star(k[0]);
                Expansion<Scalar> s2 = A.star(k[1]);
                for (const auto& [l1, x1] : s1.terms)
                    for (const auto& [l2, x2] : s2.terms)
                        rhs.add({l1, l2}, x1 * x2 * c.conj());
            }
            if (lhs.elem == rhs) ++ok;
        }
        rep.add("coproduct star compatibility", ok == (size_t)n, count_detail(ok, n));
    }
    {
        size_t ok = 0;
        for (int f = 0; f < n; ++f) {
            AlgElem<Scalar> e = A.basis_elem(f);
            if (counit(star_alg(e)) == counit(e).conj()) ++ok;
        }
        rep.add("counit star compatibility", ok == (size_t)n, count_detail(ok, n));
    }

    // star anti-multiplicativity on safe pairs
    {
        auto pairs = detail::sample_if_large(detail::safe_pairs(A), opt.pair_budget, rng);
        size_t ok = 0;
        for (auto [a, b] : pairs) {
            AlgElem<Scalar> ea = A.basis_elem(a), eb = A.basis_elem(b);
            if (star_alg(mul(ea, eb)) == mul(star_alg(eb), star_alg(ea))) ++ok;
        }
        rep.add("star anti-multiplicativity", ok == pairs.size(), count_detail(ok, pairs.size()));
    }

    // Haar: left invariance and modular property
    {
        size_t ok = 0;
        for (int f = 0; f < n; ++f)
            if (check_left_invariance_basis(A, f)) ++ok;
        rep.add("haar left invariance", ok == (size_t)n, count_detail(ok, n));
    }
    {
        size_t ok = 0;
        for (int f = 0; f < n; ++f)
            if (check_modular_property_basis(A, f)) ++ok;
        rep.add("modular property", ok == (size_t)n, count_detail(ok, n));
    }

    // phi(S(f)) = phi(f delta)
    {
        size_t ok = 0, skipped = 0, total = 0;
        for (int f = 0; f < n; ++f) {
            AlgElem<Scalar> e = A.basis_elem(f);
            Clipped<Scalar> s = apply_table(e, A.antipode);
            if (!s.complete) {
                // safe only when the overflowing axes carry no Haar mass
                bool sound = true;
                for (int ax : A.antipode_overflow_axes)
                    if (A.haar_support_max[ax] < 0 || A.haar_support_max[ax] > A.axis_cutoff[ax])
                        sound = false;
                if (!sound || A.antipode_overflow_axes.empty()) { ++skipped; continue; }
            }
            Scalar lhs;
            for (const auto& [l, c] : s.elem.coeffs) lhs += A.haar(l) * c;
            Scalar rhs;
            AlgElem<Scalar> fd = mult_right(e, A.modular);
            for (const auto& [l, c] : fd.coeffs) rhs += A.haar(l) * c;
            ++total;
            if (lhs == rhs) ++ok;
        }
        rep.add("haar antipode vs modular", ok == total && total > 0,
                count_detail(ok, total, skipped));
    }

    // modular_sqrt^2 = modular as multipliers
    {
        size_t ok = 0;
        for (int f = 0; f < n; ++f) {
            AlgElem<Scalar> e = A.basis_elem(f);
            bool good = mult_left(A.modular_sqrt, mult_left(A.modular_sqrt, e)) ==
                            mult_left(A.modular, e) &&
                        mult_right(mult_right(e, A.modular_sqrt), A.modular_sqrt) ==
                            mult_right(e, A.modular) &&
                        mult_left(A.modular_sqrt, mult_left(A.modular_inv_sqrt, e)) == e;
            if (good) ++ok;
        }
        rep.add("modular square root", ok == (size_t)n, count_detail(ok, n));
    }

    // multiplier compatibility (f m) g = f (m g) for the modular family
    {
        auto pairs = detail::sample_if_large(detail::safe_pairs(A), opt.pair_budget / 4, rng);
        size_t ok = 0;
        for (auto [a, b] : pairs) {
            AlgElem<Scalar> ea = A.basis_elem(a), eb = A.basis_elem(b);
            bool good = true;
            for (const Multiplier<Scalar>* m : {&A.modular, &A.modular_sqrt, &A.modular_inv_sqrt})
                if (!(mul(mult_right(ea, *m), eb) == mul(ea, mult_left(*m, eb)))) good = false;
            if (good) ++ok;
        }
        rep.add("multiplier compatibility", ok == pairs.size(), count_detail(ok, pairs.size()));
    }

    // Galois maps: closed-form inverses compose to the identity
    {
        auto pairs = detail::sample_if_large(detail::safe_pairs(A), opt.pair_budget / 4, rng);
        size_t ok = 0, skipped = 0, total = 0;
        for (auto [a, b] : pairs) {
            TensorElem<Scalar> t({&A, &A});
            t.add({a, b}, Scalar(1));
            bool good = true, any = false;
            for (GaloisKind k : {GaloisKind::GammaL, GaloisKind::GammaR, GaloisKind::RhoL,
                                 GaloisKind::RhoR}) {
                try {
                    TensorElem<Scalar> fw = galois(k, t);
                    TensorElem<Scalar> back = galois_inverse(k, fw);
                    any = true;
                    if (!(back == t)) good = false;
                } catch (const TruncationError&) {
                    // outside the safe window for this map
                }
            }
            if (!any) { ++skipped; continue; }
            ++total;
            if (good) ++ok;
        }
        rep.add("galois invertibility", ok == total && total > 0, count_detail(ok, total, skipped));
    }

    // GNS positivity of the Haar form at the numeric sample point
    if (opt.positivity) {
        Mat<Scalar> gram(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                gram.at(i, j) = gns_inner(A.basis_elem(i), A.basis_elem(j));
        Eigen::MatrixXcd g = to_eigen(gram, opt.ctx);
        double defect = hermitian_defect(g);
        double mineig = min_eigenvalue_hermitian(g);
        std::ostringstream os;
        os << "min eigenvalue " << mineig << ", hermitian defect " << defect;
        rep.add("haar positivity (numeric)", mineig >= -opt.ctx.tol && defect <= opt.ctx.tol,
                os.str());
    }

    return rep;
}

}  // namespace qinduct
