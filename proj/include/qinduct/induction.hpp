/// Rieffel-style induction machinery for a closed quantum subgroup
/// pi : A(G) -> A(B): the conditional expectation E(f) = pi(f) gamma, the
/// module actions of D(B) on D(G), the D(B)-valued inner product
/// <f,g> = E(f^* * g), the operators rho_f with <f,g> = rho_f^* rho_g, the
/// induction of *-representations, the classical Frobenius character oracle,
/// and the inner-product chain that matches the correspondence picture of
/// induction on finite backends.

#pragma once

#include "qinduct/finite_reps.hpp"
#include "qinduct/linalg.hpp"
#include "qinduct/ops.hpp"
#include "qinduct/report.hpp"

#include <random>

namespace qinduct {

/// closed quantum subgroup: surjective *-Hopf morphism plus the group-like
/// correction gamma = pi(delta_G^{-1/2}) delta_B^{1/2}
template <class R>
struct SubgroupMorphism {
    std::shared_ptr<QGroup<R>> source, target;
    std::function<Expansion<R>(int)> pi_table;
    Multiplier<R> gamma;
    /// source axis -> target axis correspondence for growth bookkeeping
    std::vector<int> axis_map;
    /// act_left output size bound per source axis, given (f sizes, h target sizes);
    /// empty = sizes of f (finite backends)
    std::function<std::vector<int>(const std::vector<int>&, const std::vector<int>&)>
        left_size_bound;

    AlgElem<R> pi(const AlgElem<R>& f) const {
        AlgElem<R> r(target.get());
        for (const auto& [l, c] : f.coeffs) {
            Expansion<R> e = pi_table(l);
            if (!e.complete) throw TruncationError("pi: image overflows the target cutoff");
            for (const auto& [t, x] : e.terms) r.add(t, x * c);
        }
        return r;
    }

    /// E(f) = pi(f) gamma
    AlgElem<R> cond_expect(const AlgElem<R>& f) const { return mult_right(pi(f), gamma); }
};

/// build the morphism for a finite subgroup pair (gamma = 1: both unimodular)
inline SubgroupMorphism<Scalar> finite_subgroup_morphism(const FiniteGroupTable& G,
                                                         const SubgroupSpec& B) {
    FinitePi fp = subgroup_pi(G, B);
    SubgroupMorphism<Scalar> m;
    m.source = fp.source;
    m.target = fp.target;
    std::vector<int> img = fp.image_label;
    m.pi_table = [img](int l) {
        Expansion<Scalar> e;
        if (img[l] >= 0) e.add(img[l], Scalar(1));
        return e;
    };
    m.gamma = Multiplier<Scalar>::identity();
    m.gamma.element = m.target->unit;
    m.axis_map = {};
    return m;
}

// ---------------------------------------------------------------------------
// module actions of D(B) on D(G)
// ---------------------------------------------------------------------------

/// f . h = (id (x) phi_B)[(1 (x) S_B^-1(h)) (id (x) E)(Delta_G(f))]
template <class R>
AlgElem<R> act_right(const SubgroupMorphism<R>& m, const AlgElem<R>& f, const AlgElem<R>& h) {
    const QGroup<R>& A = *m.source;
    const QGroup<R>& B = *m.target;
    Clipped<R> sh = apply_table(h, B.antipode_inv);
    if (!sh.complete) throw TruncationError("act_right: antipode window on the subgroup side");
    AlgElem<R> out(&A);
    for (const auto& [a, ca] : f.coeffs) {
        TensorExpansion<R> d = A.comult(a);
        for (const auto& [k, x] : d.terms) {
            AlgElem<R> eb = m.cond_expect(A.basis_elem(k[1]));
            R acc = RingOps<R>::zero();
            for (const auto& [z, cz] : sh.elem.coeffs)
                for (const auto& [w, cw] : eb.coeffs) acc = acc + cz * cw * B.phi_product(z, w);
            if (!RingOps<R>::is_zero(acc)) out.add(k[0], acc * x * ca);
        }
    }
    // growth: same policy as convolution, with h sizes seen through the axis map
    for (const auto& [a, ca] : f.coeffs)
        for (const auto& [b, cb] : h.coeffs)
            for (int ax = 0; ax < A.n_axes(); ++ax) {
                if (A.conv_growth[ax] != ConvGrowth::Add) continue;
                int hsz = m.axis_map.empty() || m.axis_map[ax] < 0
                              ? 0
                              : B.label_size[b][m.axis_map[ax]];
                if (A.label_size[a][ax] + hsz > A.axis_cutoff[ax])
                    throw TruncationError("act_right: output overflows the cutoff");
            }
    return out;
}

/// h . f = (phi_B (x) id)[((S_B^-1 o E (x) id)(Delta_G(f))) (h (x) 1)]
template <class R>
AlgElem<R> act_left(const SubgroupMorphism<R>& m, const AlgElem<R>& h, const AlgElem<R>& f) {
    const QGroup<R>& A = *m.source;
    const QGroup<R>& B = *m.target;
    AlgElem<R> out(&A);
    for (const auto& [a, ca] : f.coeffs) {
        TensorExpansion<R> d = A.comult(a);
        for (const auto& [k, x] : d.terms) {
            Clipped<R> se = apply_table(m.cond_expect(A.basis_elem(k[0])), B.antipode_inv);
            if (!se.complete) throw TruncationError("act_left: antipode window");
            R acc = RingOps<R>::zero();
            for (const auto& [z, cz] : se.elem.coeffs)
                for (const auto& [w, cw] : h.coeffs) acc = acc + cz * cw * B.phi_product(z, w);
            if (!RingOps<R>::is_zero(acc)) out.add(k[1], acc * x * ca);
        }
    }
    if (m.left_size_bound) {
        for (const auto& [a, ca] : f.coeffs)
            for (const auto& [b, cb] : h.coeffs) {
                std::vector<int> bound = m.left_size_bound(A.label_size[a], B.label_size[b]);
                for (int ax = 0; ax < A.n_axes(); ++ax)
                    if (bound[ax] > A.axis_cutoff[ax])
                        throw TruncationError("act_left: output overflows the cutoff");
            }
    }
    return out;
}

/// pi-hat(h) as a multiplier of D(G): left action h.(-), right action (-).h
template <class R>
Multiplier<R> pi_hat_multiplier(const SubgroupMorphism<R>& m, const AlgElem<R>& h) {
    Multiplier<R> mult;
    mult.name = "pi-hat(" + h.to_string() + ")";
    const QGroup<R>* A = m.source.get();
    const SubgroupMorphism<R>* mp = &m;
    AlgElem<R> hc = h;
    mult.left = [mp, hc, A](int l) {
        AlgElem<R> r = act_left(*mp, hc, A->basis_elem(l));
        Expansion<R> e;
        for (const auto& [k, c] : r.coeffs) e.add(k, c);
        return e;
    };
    mult.right = [mp, hc, A](int l) {
        AlgElem<R> r = act_right(*mp, A->basis_elem(l), hc);
        Expansion<R> e;
        for (const auto& [k, c] : r.coeffs) e.add(k, c);
        return e;
    };
    return mult;
}

/// <f,g>_{D(B)} = E(f^* * g)
template <class R>
AlgElem<R> dvalued_inner(const SubgroupMorphism<R>& m, const AlgElem<R>& f, const AlgElem<R>& g) {
    return m.cond_expect(conv_mul(conv_star(f), g));
}

// ---------------------------------------------------------------------------
// rho operators and the inner-product identity
// ---------------------------------------------------------------------------

template <class R>
Mat<R> gns_gram(const QGroup<R>& A) {
    int n = static_cast<int>(A.dim());
    Mat<R> g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = gns_inner(A.basis_elem(i), A.basis_elem(j));
    return g;
}

/// matrix of eta -> f . eta from L^2(B) to L^2(G), basis to basis
template <class R>
Mat<R> rho_op(const SubgroupMorphism<R>& m, const AlgElem<R>& f) {
    int nb = static_cast<int>(m.target->dim());
    int ng = static_cast<int>(m.source->dim());
    Mat<R> r(ng, nb);
    for (int j = 0; j < nb; ++j) {
        AlgElem<R> col = act_right(m, f, m.target->basis_elem(j));
        for (const auto& [l, c] : col.coeffs) r.at(l, j) = c;
    }
    return r;
}

/// adjoint with respect to the GNS Gram matrices on both sides
template <class R>
Mat<R> rho_adjoint(const SubgroupMorphism<R>& m, const Mat<R>& rho, const Mat<R>& gram_g,
                   const Mat<R>& gram_b) {
    return inverse(gram_b) * (rho.conj_transpose() * gram_g);
}

/// matrix of left convolution eta -> x * eta on L^2(B)
template <class R>
Mat<R> conv_action_matrix(const QGroup<R>& B, const AlgElem<R>& x) {
    int n = static_cast<int>(B.dim());
    Mat<R> r(n, n);
    for (int j = 0; j < n; ++j) {
        AlgElem<R> col = conv_mul(x, B.basis_elem(j));
        for (const auto& [l, c] : col.coeffs) r.at(l, j) = c;
    }
    return r;
}

// ---------------------------------------------------------------------------
// induced representations
// ---------------------------------------------------------------------------

/// finite-dimensional *-representation of D(B) with an invariant inner product
template <class R>
struct RepOnSpace {
    std::shared_ptr<QGroup<R>> alg;
    int dim = 0;
    std::vector<Mat<R>> action;  // per basis label of the descriptor
    Mat<R> inner;

    Mat<R> act(const AlgElem<R>& x) const {
        Mat<R> r(dim, dim);
        for (const auto& [l, c] : x.coeffs)
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) r.at(i, j) = r.at(i, j) + c * action[l].at(i, j);
        return r;
    }
    R pair(const std::vector<R>& v, const std::vector<R>& w) const {
        R acc = RingOps<R>::zero();
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                acc = acc + RingOps<R>::conj(v[i]) * inner.at(i, j) * w[j];
        return acc;
    }
};

/// D(Fun(B))-representation attached to a group representation: the group
/// element delta_b acts as rho(b)/|B| (so |B| delta_b acts as rho(b))
inline RepOnSpace<Scalar> rep_from_group_rep(const std::shared_ptr<QGroup<Scalar>>& funB,
                                             const FiniteGroupTable& B, const GroupRep& rho) {
    RepOnSpace<Scalar> rep;
    rep.alg = funB;
    rep.dim = rho.dim;
    int n = B.order();
    rep.action.resize(n, Mat<Scalar>(rho.dim, rho.dim));
    for (int b = 0; b < n; ++b) {
        Mat<Scalar> m(rho.dim, rho.dim);
        for (int i = 0; i < rho.dim; ++i)
            for (int j = 0; j < rho.dim; ++j) m.at(i, j) = rho.mats[b].at(i, j) * Scalar(1, n);
        rep.action[b] = m;
    }
    rep.inner = rho.inner;
    return rep;
}

/// algebraic induced module: representatives f_i (x) v_a over the full basis,
/// Gram from <v, E(f^* * g) w>, null space quotiented exactly
template <class R>
struct InducedRep {
    const SubgroupMorphism<R>* morphism = nullptr;
    const RepOnSpace<R>* rep = nullptr;
    int family = 0;   // number of representatives (dim D(G) * dim V)
    int dim = 0;      // quotient dimension
    Mat<R> gram;      // family x family
    std::vector<size_t> pivots;        // representative indices forming a quotient basis
    Mat<R> reduced;                    // rref of gram, for expressing classes
    Mat<R> quotient_gram;              // pivot x pivot

    int rep_index(int f_label, int v_index) const { return f_label * rep->dim + v_index; }

    /// coordinates of a family vector in the pivot basis
    std::vector<R> coords(const std::map<int, R>& family_vec) const {
        std::vector<R> c(pivots.size(), RingOps<R>::zero());
        for (const auto& [r, x] : family_vec) {
            // column r of gram = sum_k reduced[k][r] * column pivots[k]
            for (size_t k = 0; k < pivots.size(); ++k)
                c[k] = c[k] + reduced.at(k, r) * x;
        }
        return c;
    }

    /// matrix of x acting on the quotient (x * f_i (x) v_a)
    Mat<R> action_matrix(const AlgElem<R>& x) const {
        const QGroup<R>& A = *morphism->source;
        Mat<R> m(pivots.size(), pivots.size());
        for (size_t p = 0; p < pivots.size(); ++p) {
            int f_label = static_cast<int>(pivots[p]) / rep->dim;
            int v_index = static_cast<int>(pivots[p]) % rep->dim;
            AlgElem<R> xf = conv_mul(x, A.basis_elem(f_label));
            std::map<int, R> fam;
            for (const auto& [l, c] : xf.coeffs) fam[rep_index(l, v_index)] = c;
            std::vector<R> col = coords(fam);
            for (size_t i = 0; i < pivots.size(); ++i) m.at(i, p) = col[i];
        }
        return m;
    }
};

template <class R>
InducedRep<R> induce(const SubgroupMorphism<R>& m, const RepOnSpace<R>& V) {
    const QGroup<R>& A = *m.source;
    int ng = static_cast<int>(A.dim());
    InducedRep<R> ind;
    ind.morphism = &m;
    ind.rep = &V;
    ind.family = ng * V.dim;
    ind.gram = Mat<R>(ind.family, ind.family);
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j) {
            AlgElem<R> inner = dvalued_inner(m, A.basis_elem(i), A.basis_elem(j));
            Mat<R> act = V.act(inner);
            // <v_a, act w_b> with respect to V's inner product
            for (int a = 0; a < V.dim; ++a)
                for (int b = 0; b < V.dim; ++b) {
                    R acc = RingOps<R>::zero();
                    for (int s = 0; s < V.dim; ++s)
                        for (int t = 0; t < V.dim; ++t)
                            acc = acc + V.inner.at(a, s) * act.at(s, t) *
                                  (t == b ? RingOps<R>::one() : RingOps<R>::zero());
                    // acc = (inner * act)[a][b]
                    ind.gram.at(ind.rep_index(i, a), ind.rep_index(j, b)) = acc;
                }
        }
    ind.reduced = ind.gram;
    ind.pivots = rref(ind.reduced);
    ind.dim = static_cast<int>(ind.pivots.size());
    ind.quotient_gram = Mat<R>(ind.dim, ind.dim);
    for (int i = 0; i < ind.dim; ++i)
        for (int j = 0; j < ind.dim; ++j)
            ind.quotient_gram.at(i, j) = ind.gram.at(ind.pivots[i], ind.pivots[j]);
    return ind;
}

/// character of the induced module of a finite backend, per group element
inline std::vector<Cyclo> induced_character(const InducedRep<Scalar>& ind,
                                            const FiniteGroupTable& G) {
    std::vector<Cyclo> chi;
    const QGroup<Scalar>& A = *ind.morphism->source;
    for (int g = 0; g < G.order(); ++g) {
        AlgElem<Scalar> tg(&A);
        tg.add(g, Scalar(G.order()));  // |G| delta_g is the group-like of D(Fun(G))
        Mat<Scalar> m = ind.action_matrix(tg);
        Scalar tr;
        for (size_t i = 0; i < ind.pivots.size(); ++i) tr += m.at(i, i);
        if (!tr.den().is_one() || (!tr.num().is_zero() && tr.num().high_exp() != 0))
            throw DomainError("induced_character: non-constant trace");
        chi.push_back(tr.is_zero() ? Cyclo(0) : tr.num().terms()[0].second);
    }
    return chi;
}

/// classical Frobenius induced-character formula (the independent oracle)
inline std::vector<Cyclo> mackey_oracle(const FiniteGroupTable& G, const SubgroupSpec& B,
                                        const std::vector<Cyclo>& chiV) {
    std::vector<int> pos(G.order(), -1);
    for (size_t i = 0; i < B.members.size(); ++i) pos[B.members[i]] = static_cast<int>(i);
    std::vector<Cyclo> chi;
    for (int g = 0; g < G.order(); ++g) {
        Cyclo acc(0);
        for (int x = 0; x < G.order(); ++x) {
            int c = G.op(G.op(G.inverse[x], g), x);
            if (pos[c] >= 0) acc += chiV[pos[c]];
        }
        chi.push_back(acc * Cyclo(1, static_cast<long>(B.members.size())));
    }
    return chi;
}

/// density surrogate: the evaluation map D(G) (x) K -> K is surjective
template <class R>
bool essentialness_check(const QGroup<R>& A, const RepOnSpace<R>& K) {
    int n = static_cast<int>(A.dim());
    Mat<R> span(K.dim, n * K.dim);
    for (int f = 0; f < n; ++f)
        for (int v = 0; v < K.dim; ++v)
            for (int i = 0; i < K.dim; ++i) span.at(i, f * K.dim + v) = K.action[f].at(i, v);
    return rank(span) == static_cast<size_t>(K.dim);
}

// ---------------------------------------------------------------------------
// correspondence-picture isometry check (finite backends)
// ---------------------------------------------------------------------------

template <class R>
struct IsometrySample {
    AlgElem<R> xi, eta;        // L^2(G) vectors
    AlgElem<R> f, g;           // module legs in D(G)
    std::vector<R> v, w;       // vectors in V
};

/// Both routes to the inner product of Psi(xi (x) f (x) v) = Delta(xi)(f (x) 1) (x) v:
/// the correspondence side pairs through beta_l(h) = (pi-hat (x) alpha)(dual-Delta(h)),
/// the direct side is <xi,eta> <v, <f,g> w>.  Exact equality per sample.
template <class R>
bool isometry_sample_check(const SubgroupMorphism<R>& m,
                           const std::function<TensorExpansion<R>(int)>& dual_comul_B,
                           const RepOnSpace<R>& V, const IsometrySample<R>& s) {
    const QGroup<R>& A = *m.source;
    const QGroup<R>& B = *m.target;

    // direct side
    R direct = gns_inner(s.xi, s.eta);
    {
        AlgElem<R> fg = dvalued_inner(m, s.f, s.g);
        Mat<R> act = V.act(fg);
        std::vector<R> aw(V.dim, RingOps<R>::zero());
        for (int i = 0; i < V.dim; ++i)
            for (int j = 0; j < V.dim; ++j) aw[i] = aw[i] + act.at(i, j) * s.w[j];
        direct = direct * V.pair(s.v, aw);
    }

    // correspondence side: expand Psi on both arguments
    TensorElem<R> tx({&A, &A}), ty({&A, &A});
    for (const auto& [a, ca] : s.xi.coeffs)
        for (const auto& [b, cb] : s.f.coeffs) tx.add({a, b}, ca * cb);
    for (const auto& [a, ca] : s.eta.coeffs)
        for (const auto& [b, cb] : s.g.coeffs) ty.add({a, b}, ca * cb);
    TensorElem<R> px = galois(GaloisKind::GammaL, tx);  // xi1 f (x) xi2
    TensorElem<R> py = galois(GaloisKind::GammaL, ty);

    R vaes = RingOps<R>::zero();
    for (const auto& [kx, cx] : px.coeffs)
        for (const auto& [ky, cy] : py.coeffs) {
            // h = <x-leg, y-leg>_{D(B)}
            AlgElem<R> h = dvalued_inner(m, A.basis_elem(kx[0]), A.basis_elem(ky[0]));
            // beta_l(h)(eta-leg (x) w) via the dual coproduct of D(B)
            AlgElem<R> eta2 = A.basis_elem(ky[1]);
            R contrib = RingOps<R>::zero();
            for (const auto& [hl, hc] : h.coeffs) {
                TensorExpansion<R> dh = dual_comul_B(hl);
                for (const auto& [dk, dc] : dh.terms) {
                    AlgElem<R> acted = act_left(m, B.basis_elem(dk[0]), eta2);
                    R left = gns_inner(A.basis_elem(kx[1]), acted);
                    if (RingOps<R>::is_zero(left)) continue;
                    // alpha(h2) w then <v, .>
                    Mat<R> act = V.act(B.basis_elem(dk[1]));
                    std::vector<R> aw(V.dim, RingOps<R>::zero());
                    for (int i = 0; i < V.dim; ++i)
                        for (int j = 0; j < V.dim; ++j) aw[i] = aw[i] + act.at(i, j) * s.w[j];
                    contrib = contrib + hc * dc * left * V.pair(s.v, aw);
                }
            }
            vaes = vaes + RingOps<R>::conj(cx) * cy * contrib;
        }
    return direct == vaes;
}

}  // namespace qinduct
