/// Hopf-algebra operations over QGroup descriptors: products, coproducts,
/// Galois maps, the convolution algebra structure, GNS form and pairing.
/// Checked variants throw TruncationError instead of projecting; *_clipped
/// variants return the exact in-window part together with a completeness
/// flag and are used by identity checks that reason about windows
/// themselves.

#pragma once

#include "qinduct/algebra.hpp"

namespace qinduct {

// ---------------------------------------------------------------------------
// products
// ---------------------------------------------------------------------------

template <class R>
struct Clipped {
    AlgElem<R> elem;
    bool complete = true;
};

template <class R>
Clipped<R> mul_clipped(const AlgElem<R>& f, const AlgElem<R>& g) {
    Clipped<R> out;
    out.elem.alg = f.alg;
    for (const auto& [a, ca] : f.coeffs)
        for (const auto& [b, cb] : g.coeffs) {
            Expansion<R> e = f.alg->mult(a, b);
            if (!e.complete) out.complete = false;
            R c = ca * cb;
            for (const auto& [l, x] : e.terms) out.elem.add(l, x * c);
        }
    return out;
}

template <class R>
AlgElem<R> mul(const AlgElem<R>& f, const AlgElem<R>& g) {
    if (f.alg != g.alg) throw DomainError("mul: operands live in different algebras");
    for (const auto& [a, ca] : f.coeffs)
        for (const auto& [b, cb] : g.coeffs)
            if (!f.alg->mult(a, b).complete)
                throw TruncationError(f.alg->name + ": product overflows the cutoff at basis pair (" +
                                      f.alg->label_names[a] + ", " + f.alg->label_names[b] + ")");
    return mul_clipped(f, g).elem;
}

template <class R>
AlgElem<R> mul(const AlgElem<R>& f, const AlgElem<R>& g, const AlgElem<R>& h) {
    return mul(mul(f, g), h);
}

// ---------------------------------------------------------------------------
// coalgebra / antipode / star
// ---------------------------------------------------------------------------

template <class R>
struct ClippedTensor {
    TensorElem<R> elem;
    bool complete = true;
};

template <class R>
ClippedTensor<R> comul_clipped(const AlgElem<R>& f) {
    ClippedTensor<R> out;
    out.elem.legs = {f.alg, f.alg};
    for (const auto& [a, ca] : f.coeffs) {
        TensorExpansion<R> e = f.alg->comult(a);
        if (!e.complete) out.complete = false;
        for (const auto& [k, x] : e.terms) out.elem.add(k, x * ca);
    }
    return out;
}

template <class R>
TensorElem<R> comul(const AlgElem<R>& f) {
    ClippedTensor<R> c = comul_clipped(f);
    if (!c.complete)
        throw TruncationError(f.alg->name + ": coproduct is multiplier-valued beyond the cutoff");
    return c.elem;
}

template <class R>
R counit(const AlgElem<R>& f) {
    R acc = RingOps<R>::zero();
    for (const auto& [a, ca] : f.coeffs) acc = acc + f.alg->counit(a) * ca;
    return acc;
}

template <class R>
Clipped<R> apply_table(const AlgElem<R>& f, const std::function<Expansion<R>(int)>& table,
                       bool conj_coeffs = false) {
    Clipped<R> out;
    out.elem.alg = f.alg;
    for (const auto& [a, ca] : f.coeffs) {
        Expansion<R> e = table(a);
        if (!e.complete) out.complete = false;
        R c = conj_coeffs ? RingOps<R>::conj(ca) : ca;
        for (const auto& [l, x] : e.terms) out.elem.add(l, x * c);
    }
    return out;
}

template <class R>
AlgElem<R> antipode(const AlgElem<R>& f) {
    Clipped<R> c = apply_table(f, f.alg->antipode);
    if (!c.complete) throw TruncationError(f.alg->name + ": antipode overflows the cutoff");
    return c.elem;
}

template <class R>
AlgElem<R> antipode_inv(const AlgElem<R>& f) {
    Clipped<R> c = apply_table(f, f.alg->antipode_inv);
    if (!c.complete) throw TruncationError(f.alg->name + ": inverse antipode overflows the cutoff");
    return c.elem;
}

/// the *-structure of the function algebra (antilinear)
template <class R>
AlgElem<R> star_alg(const AlgElem<R>& f) {
    Clipped<R> c = apply_table(f, f.alg->star, /*conj=*/true);
    if (!c.complete) throw TruncationError(f.alg->name + ": star overflows the cutoff");
    return c.elem;
}

// ---------------------------------------------------------------------------
// multiplier actions
// ---------------------------------------------------------------------------

template <class R>
AlgElem<R> mult_left(const Multiplier<R>& m, const AlgElem<R>& f) {
    Clipped<R> c = apply_table(f, m.left);
    if (!c.complete) throw TruncationError("multiplier " + m.name + " overflows the cutoff");
    return c.elem;
}

template <class R>
AlgElem<R> mult_right(const AlgElem<R>& f, const Multiplier<R>& m) {
    Clipped<R> c = apply_table(f, m.right);
    if (!c.complete) throw TruncationError("multiplier " + m.name + " overflows the cutoff");
    return c.elem;
}

// ---------------------------------------------------------------------------
// Galois maps and their closed-form inverses
// ---------------------------------------------------------------------------

enum class GaloisKind { GammaL, GammaR, RhoL, RhoR };

inline const char* galois_name(GaloisKind k) {
    switch (k) {
        case GaloisKind::GammaL: return "gamma_l";
        case GaloisKind::GammaR: return "gamma_r";
        case GaloisKind::RhoL: return "rho_l";
        case GaloisKind::RhoR: return "rho_r";
    }
    return "?";
}

/// gamma_l: f(x)g -> Delta(f)(g(x)1), etc. (two-leg tensors over one algebra).
/// The coproduct may be multiplier-valued: the multiplication against the
/// second factor pins the out-of-window legs, so the windowed computation is
/// exact exactly on the pairs the descriptor declares galois-safe.
template <class R>
TensorElem<R> galois(GaloisKind kind, const TensorElem<R>& t) {
    if (t.legs.size() != 2 || t.legs[0] != t.legs[1])
        throw DomainError("galois: expected a two-leg tensor over a single algebra");
    const QGroup<R>* A = t.legs[0];
    TensorElem<R> out({A, A});
    for (const auto& [key, c] : t.coeffs) {
        int f = key[0], g = key[1];
        bool safe = A->galois_safe ? A->galois_safe(A->sizes(f), A->sizes(g))
                                   : A->pair_within_cutoff(f, g);
        if (!safe)
            throw TruncationError(std::string("galois ") + galois_name(kind) +
                                  ": pair outside the safe window");
        // legs of Delta applied to whichever factor the map dictates
        int df = (kind == GaloisKind::GammaL || kind == GaloisKind::GammaR) ? f : g;
        TensorExpansion<R> e = A->comult(df);
        for (const auto& [k2, x] : e.terms) {
            int l1 = k2[0], l2 = k2[1];
            Expansion<R> p;
            switch (kind) {
                case GaloisKind::GammaL: p = A->mult(l1, g); break;  // f1 g (x) f2
                case GaloisKind::GammaR: p = A->mult(l2, g); break;  // f1 (x) f2 g
                case GaloisKind::RhoL: p = A->mult(f, l1); break;    // f g1 (x) g2
                case GaloisKind::RhoR: p = A->mult(f, l2); break;    // g1 (x) f g2
            }
            if (!p.complete)
                throw TruncationError(std::string("galois ") + galois_name(kind) +
                                      ": product overflow");
            for (const auto& [l, y] : p.terms) {
                switch (kind) {
                    case GaloisKind::GammaL:
                    case GaloisKind::RhoL: out.add({l, l2}, y * x * c); break;
                    case GaloisKind::GammaR:
                    case GaloisKind::RhoR: out.add({l1, l}, y * x * c); break;
                }
            }
        }
    }
    return out;
}

/// The four maps are bijections; these are the standard closed-form inverses
/// (S for gamma_r / rho_l, S^-1 for gamma_l / rho_r).
template <class R>
TensorElem<R> galois_inverse(GaloisKind kind, const TensorElem<R>& t) {
    if (t.legs.size() != 2 || t.legs[0] != t.legs[1])
        throw DomainError("galois_inverse: expected a two-leg tensor over a single algebra");
    const QGroup<R>* A = t.legs[0];
    TensorElem<R> out({A, A});
    auto mul_into = [&](int a, int b, int other, bool other_first, const R& c) {
        Expansion<R> p = A->mult(a, b);
        if (!p.complete) throw TruncationError("galois_inverse: product overflow");
        for (const auto& [l, y] : p.terms)
            out.add(other_first ? TensorKey{other, l} : TensorKey{l, other}, y * c);
    };
    for (const auto& [key, c] : t.coeffs) {
        int x = key[0], y = key[1];
        switch (kind) {
            case GaloisKind::GammaR: {  // x1 (x) S(x2) y
                TensorExpansion<R> e = A->comult(x);
                for (const auto& [k2, w] : e.terms) {
                    Expansion<R> s = A->antipode(k2[1]);
                    if (!s.complete) throw TruncationError("galois_inverse: antipode window");
                    for (const auto& [sl, sc] : s.terms) mul_into(sl, y, k2[0], true, sc * w * c);
                }
                break;
            }
            case GaloisKind::GammaL: {  // y2 (x) S^-1(y1) x
                TensorExpansion<R> e = A->comult(y);
                for (const auto& [k2, w] : e.terms) {
                    Expansion<R> s = A->antipode_inv(k2[0]);
                    if (!s.complete) throw TruncationError("galois_inverse: antipode window");
                    for (const auto& [sl, sc] : s.terms) mul_into(sl, x, k2[1], true, sc * w * c);
                }
                break;
            }
            case GaloisKind::RhoL: {  // x S(y1) (x) y2
                TensorExpansion<R> e = A->comult(y);
                for (const auto& [k2, w] : e.terms) {
                    Expansion<R> s = A->antipode(k2[0]);
                    if (!s.complete) throw TruncationError("galois_inverse: antipode window");
                    for (const auto& [sl, sc] : s.terms) mul_into(x, sl, k2[1], false, sc * w * c);
                }
                break;
            }
            case GaloisKind::RhoR: {  // y S^-1(x2) (x) x1
                TensorExpansion<R> e = A->comult(x);
                for (const auto& [k2, w] : e.terms) {
                    Expansion<R> s = A->antipode_inv(k2[1]);
                    if (!s.complete) throw TruncationError("galois_inverse: antipode window");
                    for (const auto& [sl, sc] : s.terms) mul_into(y, sl, k2[0], false, sc * w * c);
                }
                break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// convolution algebra D(G)
// ---------------------------------------------------------------------------

template <class R>
Clipped<R> conv_mul_clipped(const AlgElem<R>& f, const AlgElem<R>& g) {
    // f*g = (id (x) phi)[(1 (x) S^-1(g)) Delta(f)]
    const QGroup<R>* A = f.alg;
    Clipped<R> out;
    out.elem.alg = A;
    Clipped<R> sg = apply_table(g, A->antipode_inv);
    if (!sg.complete) out.complete = false;
    for (const auto& [a, ca] : f.coeffs) {
        TensorExpansion<R> e = A->comult(a);
        for (const auto& [k, x] : e.terms) {
            R acc = RingOps<R>::zero();
            for (const auto& [z, cz] : sg.elem.coeffs)
                acc = acc + cz * A->phi_product(z, k[1]);
            if (!RingOps<R>::is_zero(acc)) out.elem.add(k[0], acc * x * ca);
        }
    }
    // growth policy decides whether in-window output is the whole answer
    for (const auto& [a, ca] : f.coeffs)
        for (const auto& [b, cb] : g.coeffs)
            for (int ax = 0; ax < A->n_axes(); ++ax)
                if (A->conv_growth[ax] == ConvGrowth::Add &&
                    A->label_size[a][ax] + A->label_size[b][ax] > A->axis_cutoff[ax])
                    out.complete = false;
    return out;
}

template <class R>
AlgElem<R> conv_mul(const AlgElem<R>& f, const AlgElem<R>& g) {
    if (f.alg != g.alg) throw DomainError("conv_mul: operands live in different algebras");
    Clipped<R> c = conv_mul_clipped(f, g);
    if (!c.complete)
        throw TruncationError(f.alg->name + ": convolution product overflows the cutoff");
    return c.elem;
}

/// the involution of D(G): f^* = conj(S(f)) delta_G
template <class R>
AlgElem<R> conv_star(const AlgElem<R>& f) {
    AlgElem<R> s = star_alg(antipode(f));
    if (f.alg->unimodular) return s;
    return mult_right(s, f.alg->modular);
}

/// <f,g> = phi(conj(f) g); equals counit(conv_star(f) * g)
template <class R>
R gns_inner(const AlgElem<R>& f, const AlgElem<R>& g) {
    const QGroup<R>* A = f.alg;
    R acc = RingOps<R>::zero();
    for (const auto& [a, ca] : f.coeffs) {
        Expansion<R> sa = A->star(a);
        for (const auto& [z, cz] : sa.terms)
            for (const auto& [b, cb] : g.coeffs)
                acc = acc + RingOps<R>::conj(ca) * cz * cb * A->phi_product(z, b);
    }
    return acc;
}

/// the natural pairing (f, g) = phi(g f) between A(G) and D(G)
template <class R>
R pairing(const AlgElem<R>& f, const AlgElem<R>& g) {
    const QGroup<R>* A = f.alg;
    R acc = RingOps<R>::zero();
    for (const auto& [b, cb] : g.coeffs)
        for (const auto& [a, ca] : f.coeffs) acc = acc + cb * ca * A->phi_product(b, a);
    return acc;
}

// ---------------------------------------------------------------------------
// corepresentation -> representation of D(G)
// ---------------------------------------------------------------------------

/// left coaction V -> A(G) (x) V on a finite-dimensional space, given per
/// basis vector as a list of (algebra label, target vector index, coefficient)
template <class R>
struct Coaction {
    const QGroup<R>* alg = nullptr;
    int dim = 0;
    std::function<std::vector<std::tuple<int, int, R>>(int)> map;
};

/// f * v = (phi (x) id)((rho(f) o S^-1 (x) id)(alpha(v)))
template <class R>
std::vector<R> corep_act(const Coaction<R>& alpha, const AlgElem<R>& f, const std::vector<R>& v) {
    const QGroup<R>* A = alpha.alg;
    std::vector<R> out(alpha.dim, RingOps<R>::zero());
    for (int j = 0; j < alpha.dim; ++j) {
        if (RingOps<R>::is_zero(v[j])) continue;
        for (const auto& [a, w, c] : alpha.map(j)) {
            Expansion<R> sa = A->antipode_inv(a);
            if (!sa.complete) throw TruncationError("corep_act: antipode window");
            R acc = RingOps<R>::zero();
            for (const auto& [z, cz] : sa.terms)
                for (const auto& [b, cb] : f.coeffs) acc = acc + cz * cb * A->phi_product(z, b);
            out[w] = out[w] + acc * c * v[j];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// comparison helpers
// ---------------------------------------------------------------------------

template <class R>
bool equal_on(const AlgElem<R>& a, const AlgElem<R>& b, const std::function<bool(int)>& keep) {
    for (const auto& [l, c] : a.coeffs) {
        if (!keep(l)) continue;
        auto it = b.coeffs.find(l);
        if (it == b.coeffs.end() || !(it->second == c)) return false;
    }
    for (const auto& [l, c] : b.coeffs) {
        if (!keep(l)) continue;
        if (a.coeffs.find(l) == a.coeffs.end()) return false;
    }
    return true;
}

template <class R>
bool equal_on(const TensorElem<R>& a, const TensorElem<R>& b,
              const std::function<bool(const TensorKey&)>& keep) {
    for (const auto& [k, c] : a.coeffs) {
        if (!keep(k)) continue;
        auto it = b.coeffs.find(k);
        if (it == b.coeffs.end() || !(it->second == c)) return false;
    }
    for (const auto& [k, c] : b.coeffs) {
        if (!keep(k)) continue;
        if (a.coeffs.find(k) == a.coeffs.end()) return false;
    }
    return true;
}

}  // namespace qinduct
