/// The SU_q(2) backend: an exact representation calculus for the quantized
/// enveloping algebra (weight modules, tensor-product intertwiners,
/// q-Clebsch-Gordan data) and the quantum-group descriptors built from it:
/// the truncated Peter-Weyl algebra, its discrete dual of matrix blocks, the
/// torus function algebra, and the dual weight-lattice algebra.
///
/// Conventions, fixed once and validated by the axioms suite rather than
/// trusted: weights live on the lattice Z*omega with (alpha,alpha) = 2 and
/// alpha = 2*omega, so every pairing (lambda,mu) sits in (1/2)Z and every
/// q-power is an integer power of q^(1/2).  Spins are stored doubled
/// (l2 = 2l), weights in omega-units (m = twice the magnetic number).
/// Module actions: E v_m = [(l2-m)/2] v_{m+2}, F v_m = [(l2+m)/2] v_{m-2},
/// K_lambda v_m = q^(a m / 2) for lambda = a omega; coproduct
/// Delta(E) = E (x) K_alpha + 1 (x) E, Delta(F) = F (x) 1 + K_alpha^-1 (x) F;
/// compact involution E^* = F K_alpha, F^* = K_alpha^-1 E, K^* = K.

#pragma once

#include "qinduct/linalg.hpp"
#include "qinduct/ops.hpp"

#include <unordered_map>

namespace qinduct {

/// a basis label u^{l}_{ij} / omega^{l}_{ij}: doubled spin and weights
struct PWLabel {
    int l2;     // 2l >= 0
    int i, j;   // weights in omega-units, |i|,|j| <= l2, parity of l2
};

namespace uq {

inline int dim_of(int l2) { return l2 + 1; }
inline int weight_of_index(int l2, int r) { return l2 - 2 * r; }  // descending
inline int index_of_weight(int l2, int m) { return (l2 - m) / 2; }

/// exact intertwiner data for V_{l2} in V_{a2} (x) V_{b2}
struct CGData {
    // embed[l2] : map (m1,m2,m) -> Scalar; project[l2] : map (m,m1,m2) -> Scalar
    // stored as dense per-weight-space matrices for the solve, plus sparse maps
    std::map<int, std::map<std::array<int, 3>, Scalar>> embed;    // key l2
    std::map<int, std::map<std::array<int, 3>, Scalar>> project;  // key l2
};

class Engine {
public:
    /// [n]_q
    static Scalar qint(int n) { return quantum_int(n); }

    /// the Clebsch-Gordan package for the pair (a2, b2), memoized
    const CGData& cg(int a2, int b2) const {
        return cg_memo_.get({a2, b2}, [&] { return build_cg(a2, b2); });
    }

    /// embedding coefficient: v_{m} of V_{l2} -> sum qcg * v_{m1} (x) v_{m2}
    Scalar qcg(int a2, int b2, int l2, int m1, int m2, int m) const {
        if (m1 + m2 != m || l2 > a2 + b2 || l2 < std::abs(a2 - b2) || (a2 + b2 - l2) % 2 != 0)
            return Scalar(0);
        if (std::abs(m1) > a2 || std::abs(m2) > b2 || std::abs(m) > l2) return Scalar(0);
        if ((a2 - m1) % 2 != 0 || (b2 - m2) % 2 != 0) return Scalar(0);
        const auto& d = cg(a2, b2);
        auto it = d.embed.at(l2).find({m1, m2, m});
        return it == d.embed.at(l2).end() ? Scalar(0) : it->second;
    }

    /// projection coefficient: dual family with sum qcg_dual * qcg = delta
    Scalar qcg_dual(int a2, int b2, int l2, int m, int m1, int m2) const {
        if (m1 + m2 != m || l2 > a2 + b2 || l2 < std::abs(a2 - b2) || (a2 + b2 - l2) % 2 != 0)
            return Scalar(0);
        if (std::abs(m1) > a2 || std::abs(m2) > b2 || std::abs(m) > l2) return Scalar(0);
        if ((a2 - m1) % 2 != 0 || (b2 - m2) % 2 != 0) return Scalar(0);
        const auto& d = cg(a2, b2);
        auto it = d.project.at(l2).find({m, m1, m2});
        return it == d.project.at(l2).end() ? Scalar(0) : it->second;
    }

    /// antipode table: S(u^{l}_{ij}) = s_factor(l2,i,j) u^{l}_{-j,-i}
    Scalar s_factor(int l2, int i, int j) const {
        const auto& q = qmat(l2);
        // S(u_{ij}) = Q_{j,-j} (Q^-1)_{-i,i} u_{-j,-i}
        return q.q.at(index_of_weight(l2, j), index_of_weight(l2, -j)) *
               q.qinv.at(index_of_weight(l2, -i), index_of_weight(l2, i));
    }

    /// star table: bar(u^{l}_{ij}) = r_factor(l2,i,j) u^{l}_{-i,-j}
    Scalar r_factor(int l2, int i, int j) const {
        const auto& r = rmat(l2);
        return r.q.at(index_of_weight(l2, i), index_of_weight(l2, -i)) *
               r.qinv.at(index_of_weight(l2, -j), index_of_weight(l2, j));
    }

    /// phi(u^{a}_{i1 j1} u^{b}_{i2 j2}): the trivial-isotype coefficient
    Scalar phi_product(int a2, int i1, int j1, int b2, int i2, int j2) const {
        if (a2 != b2) return Scalar(0);
        if (i1 + i2 != 0 || j1 + j2 != 0) return Scalar(0);
        return qcg(a2, b2, 0, i1, i2, 0) * qcg_dual(a2, b2, 0, 0, j1, j2);
    }

    Mat<Scalar> rep_E(int l2) const {
        int d = dim_of(l2);
        Mat<Scalar> m(d, d);
        for (int r = 0; r < d; ++r) {
            int w = weight_of_index(l2, r);
            if (w + 2 <= l2) m.at(index_of_weight(l2, w + 2), r) = qint((l2 - w) / 2);
        }
        return m;
    }
    Mat<Scalar> rep_F(int l2) const {
        int d = dim_of(l2);
        Mat<Scalar> m(d, d);
        for (int r = 0; r < d; ++r) {
            int w = weight_of_index(l2, r);
            if (w - 2 >= -l2) m.at(index_of_weight(l2, w - 2), r) = qint((l2 + w) / 2);
        }
        return m;
    }
    Mat<Scalar> rep_K(int l2, int a) const {  // K_{a omega}
        int d = dim_of(l2);
        Mat<Scalar> m(d, d);
        for (int r = 0; r < d; ++r)
            m.at(r, r) = Scalar::q_pow_half(a * weight_of_index(l2, r));
        return m;
    }

private:
    struct QPair {
        Mat<Scalar> q, qinv;
    };

    CGData build_cg(int a2, int b2) const {
        CGData data;
        int lo = std::abs(a2 - b2), hi = a2 + b2;
        // tensor action of F: (v_{m1} (x) v_{m2}) -> F v_{m1} (x) v_{m2}
        //                                          + q^{-m1} v_{m1} (x) F v_{m2}
        auto apply_F = [&](const std::map<std::pair<int, int>, Scalar>& v) {
            std::map<std::pair<int, int>, Scalar> out;
            auto add = [&](std::pair<int, int> k, const Scalar& c) {
                if (c.is_zero()) return;
                auto [it, fresh] = out.emplace(k, c);
                if (!fresh) {
                    it->second += c;
                    if (it->second.is_zero()) out.erase(it);
                }
            };
            for (const auto& [k, c] : v) {
                auto [m1, m2] = k;
                if (m1 - 2 >= -a2) add({m1 - 2, m2}, qint((a2 + m1) / 2) * c);
                if (m2 - 2 >= -b2)
                    add({m1, m2 - 2}, Scalar::q_pow_half(-2 * m1) * qint((b2 + m2) / 2) * c);
            }
            return out;
        };
        for (int l2 = hi; l2 >= lo; l2 -= 2) {
            // highest weight vector: E_Delta v = 0 in the weight-(l2) space
            std::vector<std::pair<int, int>> keys;  // (m1, m2), m1 descending
            for (int m1 = std::min(a2, l2 + b2); m1 >= std::max(-a2, l2 - b2); m1 -= 2)
                keys.emplace_back(m1, l2 - m1);
            // E(v_{m1} (x) v_{m2}) = E v_{m1} (x) K_alpha v_{m2} + v_{m1} (x) E v_{m2}
            // rows: target keys in the weight-(l2+2) space
            std::map<std::pair<int, int>, int> row_of;
            int nrows = 0;
            auto row_for = [&](std::pair<int, int> k) {
                auto [it, fresh] = row_of.emplace(k, nrows);
                if (fresh) ++nrows;
                return it->second;
            };
            std::vector<std::vector<Scalar>> cols;
            for (auto [m1, m2] : keys) {
                std::vector<std::pair<std::pair<int, int>, Scalar>> img;
                if (m1 + 2 <= a2)
                    img.push_back({{m1 + 2, m2}, qint((a2 - m1) / 2) * Scalar::q_pow_half(2 * m2)});
                if (m2 + 2 <= b2) img.push_back({{m1, m2 + 2}, qint((b2 - m2) / 2)});
                std::vector<Scalar> col;
                for (auto& [k, c] : img) {
                    int r = row_for(k);
                    if ((int)col.size() <= r) col.resize(r + 1);
                    col[r] = c;
                }
                cols.push_back(std::move(col));
            }
            Mat<Scalar> sys(nrows, keys.size());
            for (size_t c = 0; c < cols.size(); ++c)
                for (size_t r = 0; r < cols[c].size(); ++r) sys.at(r, c) = cols[c][r];
            auto null = kernel(sys);
            if (null.size() != 1)
                throw DomainError("CG solve: highest-weight space is not one-dimensional");
            // normalize: leading (largest m1) coefficient = 1
            std::vector<Scalar> hw = null[0];
            Scalar lead;
            for (size_t k = 0; k < keys.size(); ++k)
                if (!hw[k].is_zero()) { lead = hw[k]; break; }
            std::map<std::pair<int, int>, Scalar> vec;
            for (size_t k = 0; k < keys.size(); ++k)
                if (!hw[k].is_zero()) vec[keys[k]] = hw[k] / lead;
            // descend with Delta(F)
            int m = l2;
            while (true) {
                for (const auto& [k, c] : vec) data.embed[l2][{k.first, k.second, m}] = c;
                if (m - 2 < -l2) break;
                vec = apply_F(vec);
                Scalar norm = qint((l2 + m) / 2);
                for (auto& [k, c] : vec) c /= norm;
                m -= 2;
            }
        }
        // projections: per weight space, invert the embedding-column matrix
        for (int mu = hi; mu >= -hi; mu -= 2) {
            std::vector<int> spins;
            for (int l2 = hi; l2 >= std::max(lo, std::abs(mu)); l2 -= 2) spins.push_back(l2);
            if (spins.empty()) continue;
            std::vector<std::pair<int, int>> keys;
            for (int m1 = std::min(a2, mu + b2); m1 >= std::max(-a2, mu - b2); m1 -= 2)
                keys.emplace_back(m1, mu - m1);
            if (keys.size() != spins.size())
                throw DomainError("CG solve: weight-space dimension mismatch");
            Mat<Scalar> m(keys.size(), spins.size());
            for (size_t c = 0; c < spins.size(); ++c)
                for (size_t r = 0; r < keys.size(); ++r) {
                    auto it = data.embed[spins[c]].find({keys[r].first, keys[r].second, mu});
                    if (it != data.embed[spins[c]].end()) m.at(r, c) = it->second;
                }
            Mat<Scalar> minv = inverse(m);
            for (size_t c = 0; c < spins.size(); ++c)
                for (size_t r = 0; r < keys.size(); ++r)
                    if (!minv.at(c, r).is_zero())
                        data.project[spins[c]][{mu, keys[r].first, keys[r].second}] =
                            minv.at(c, r);
        }
        return data;
    }

    /// solve M rho(x) = rho_target(x) M on the generators; kernel must be 1-dim
    Mat<Scalar> solve_intertwiner(int l2, const std::vector<Mat<Scalar>>& src,
                                  const std::vector<Mat<Scalar>>& dst) const {
        int d = dim_of(l2);
        std::vector<std::vector<std::pair<int, Scalar>>> rows;
        for (size_t g = 0; g < src.size(); ++g)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    // (M src - dst M)[i][j] = 0
                    std::map<int, Scalar> row;
                    for (int k = 0; k < d; ++k) {
                        if (!src[g].at(k, j).is_zero()) {
                            auto& slot = row[i * d + k];
                            slot += src[g].at(k, j);
                        }
                        if (!dst[g].at(i, k).is_zero()) {
                            auto& slot = row[k * d + j];
                            slot -= dst[g].at(i, k);
                        }
                    }
                    std::vector<std::pair<int, Scalar>> r;
                    for (auto& [c, v] : row)
                        if (!v.is_zero()) r.emplace_back(c, v);
                    if (!r.empty()) rows.push_back(std::move(r));
                }
        auto null = sparse_kernel(rows, d * d);
        if (null.size() != 1)
            throw DomainError("intertwiner solve: expected a one-dimensional space");
        Mat<Scalar> m(d, d);
        for (auto& [c, v] : null[0]) m.at(c / d, c % d) = v;
        return m;
    }

    const QPair& qmat(int l2) const {
        return q_memo_.get(l2, [&] {
            // target rep x -> rho(S(x))^T on generators E, F, K_omega
            Mat<Scalar> e = rep_E(l2), f = rep_F(l2), k1 = rep_K(l2, 1), kinv = rep_K(l2, -2);
            Mat<Scalar> se = (e * kinv);  // S(E) = -E K_alpha^{-1}
            Mat<Scalar> sf = (rep_K(l2, 2) * f);
            auto neg = [&](Mat<Scalar> m) {
                Mat<Scalar> r(m.rows(), m.cols());
                for (size_t i = 0; i < m.rows(); ++i)
                    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = -m.at(i, j);
                return r;
            };
            std::vector<Mat<Scalar>> src = {e, f, k1};
            std::vector<Mat<Scalar>> dst = {neg(se).conj_transpose(), neg(sf).conj_transpose(),
                                            rep_K(l2, -1).conj_transpose()};
            // conj_transpose of a real-coefficient matrix is the plain transpose here
            Mat<Scalar> q = solve_intertwiner(l2, src, dst);
            return QPair{q, inverse(q)};
        });
    }

    const QPair& rmat(int l2) const {
        return r_memo_.get(l2, [&] {
            // target rep x -> rho(S(x)^*): sigma(E) = -q^2 F, sigma(F) = -q^-2 E,
            // sigma(K_lambda) = K_{-lambda}
            Mat<Scalar> e = rep_E(l2), f = rep_F(l2);
            auto scale = [&](const Mat<Scalar>& m, const Scalar& c) {
                Mat<Scalar> r(m.rows(), m.cols());
                for (size_t i = 0; i < m.rows(); ++i)
                    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = c * m.at(i, j);
                return r;
            };
            std::vector<Mat<Scalar>> src = {e, f, rep_K(l2, 1)};
            std::vector<Mat<Scalar>> dst = {scale(f, -Scalar::q_pow_half(4)),
                                            scale(e, -Scalar::q_pow_half(-4)), rep_K(l2, -1)};
            Mat<Scalar> r = solve_intertwiner(l2, src, dst);
            return QPair{r, inverse(r)};
        });
    }

    mutable Memo<std::pair<int, int>, CGData, PairHash> cg_memo_;
    mutable Memo<int, QPair> q_memo_;
    mutable Memo<int, QPair> r_memo_;
};

inline std::shared_ptr<const Engine> shared_engine() {
    static std::shared_ptr<const Engine> e = std::make_shared<Engine>();
    return e;
}

}  // namespace uq

// ---------------------------------------------------------------------------
// descriptor builders
// ---------------------------------------------------------------------------

/// label bookkeeping shared by the Peter-Weyl algebra and its dual
struct PWIndex {
    std::vector<PWLabel> labels;
    std::unordered_map<long, int> by_key;
    int l2max = 0;

    static long key(int l2, int i, int j) {
        return (static_cast<long>(l2) << 24) ^ (static_cast<long>(i + 512) << 12) ^
               static_cast<long>(j + 512);
    }
    void build(int cutoff) {
        l2max = cutoff;
        for (int l2 = 0; l2 <= cutoff; ++l2)
            for (int i = l2; i >= -l2; i -= 2)
                for (int j = l2; j >= -l2; j -= 2) {
                    by_key[key(l2, i, j)] = static_cast<int>(labels.size());
                    labels.push_back({l2, i, j});
                }
    }
    int at(int l2, int i, int j) const {
        auto it = by_key.find(key(l2, i, j));
        if (it == by_key.end()) throw DomainError("PWIndex: label outside the cutoff");
        return it->second;
    }
    bool has(int l2, int i, int j) const { return by_key.count(key(l2, i, j)) > 0; }
};

inline std::string spin_name(int l2) {
    return l2 % 2 == 0 ? std::to_string(l2 / 2) : std::to_string(l2) + "/2";
}
inline std::string weight_name(int m) {
    return m % 2 == 0 ? std::to_string(m / 2) : std::to_string(m) + "/2";
}

/// the truncated Peter-Weyl function algebra of SU_q(2): spins l2 <= cutoff
inline std::shared_ptr<QGroup<Scalar>> pw_algebra(int cutoff) {
    if (cutoff < 0) throw DomainError("pw_algebra: cutoff must be >= 0");
    auto eng = uq::shared_engine();
    auto A = std::make_shared<QGroup<Scalar>>();
    auto idx = std::make_shared<PWIndex>();
    idx->build(cutoff);
    A->name = "A(SUq2,L=" + spin_name(cutoff) + ")";
    for (const auto& lb : idx->labels) {
        A->label_names.push_back("u[" + spin_name(lb.l2) + ";" + weight_name(lb.i) + "," +
                                 weight_name(lb.j) + "]");
        A->label_size.push_back({lb.l2});
    }
    A->axis_cutoff = {cutoff};
    A->conv_growth = {ConvGrowth::KeepLeft};
    A->haar_support_max = {0};

    auto mult_cache = std::make_shared<Memo<std::pair<int, int>, Expansion<Scalar>, PairHash>>();
    A->mult = [eng, idx, cutoff, mult_cache](int a, int b) {
        return mult_cache->get({a, b}, [&] {
            const PWLabel& x = idx->labels[a];
            const PWLabel& y = idx->labels[b];
            Expansion<Scalar> e;
            e.complete = x.l2 + y.l2 <= cutoff;
            int i = x.i + y.i, j = x.j + y.j;
            for (int l2 = std::abs(x.l2 - y.l2); l2 <= std::min(x.l2 + y.l2, cutoff); l2 += 2) {
                if (std::abs(i) > l2 || std::abs(j) > l2) continue;
                Scalar c = eng->qcg(x.l2, y.l2, l2, x.i, y.i, i) *
                           eng->qcg_dual(x.l2, y.l2, l2, j, x.j, y.j);
                e.add(idx->at(l2, i, j), c);
            }
            return e;
        });
    };
    A->comult = [idx](int a) {
        const PWLabel& x = idx->labels[a];
        TensorExpansion<Scalar> e;
        for (int k = x.l2; k >= -x.l2; k -= 2)
            e.add({idx->at(x.l2, x.i, k), idx->at(x.l2, k, x.j)}, Scalar(1));
        return e;
    };
    A->counit = [idx](int a) {
        const PWLabel& x = idx->labels[a];
        return x.i == x.j ? Scalar(1) : Scalar(0);
    };
    A->antipode = [eng, idx](int a) {
        const PWLabel& x = idx->labels[a];
        Expansion<Scalar> e;
        e.add(idx->at(x.l2, -x.j, -x.i), eng->s_factor(x.l2, x.i, x.j));
        return e;
    };
    A->antipode_inv = [eng, idx](int a) {
        const PWLabel& x = idx->labels[a];
        // S(u_{-j,-i}) = s(-j,-i) u_{i,j}; invert the monomial map
        Expansion<Scalar> e;
        e.add(idx->at(x.l2, -x.j, -x.i), Scalar(1) / eng->s_factor(x.l2, -x.j, -x.i));
        return e;
    };
    A->star = [eng, idx](int a) {
        const PWLabel& x = idx->labels[a];
        Expansion<Scalar> e;
        e.add(idx->at(x.l2, -x.i, -x.j), eng->r_factor(x.l2, x.i, x.j));
        return e;
    };
    A->haar = [idx](int a) { return idx->labels[a].l2 == 0 ? Scalar(1) : Scalar(0); };
    A->phi_product = [eng, idx](int a, int b) {
        const PWLabel& x = idx->labels[a];
        const PWLabel& y = idx->labels[b];
        return eng->phi_product(x.l2, x.i, x.j, y.l2, y.i, y.j);
    };
    A->modular = Multiplier<Scalar>::identity();
    A->modular_sqrt = A->modular;
    A->modular_inv_sqrt = A->modular;
    A->unimodular = true;
    A->unit = AlgElem<Scalar>(A.get(), idx->at(0, 0, 0));
    A->modular.element = A->unit;
    A->modular_sqrt.element = A->unit;
    A->modular_inv_sqrt.element = A->unit;
    return A;
}

/// diagonal multiplier K_lambda (lambda = a*omega, integral) on the dual
inline Multiplier<Scalar> k_lambda_multiplier(const std::shared_ptr<PWIndex>& idx, int a) {
    Multiplier<Scalar> m;
    m.name = "K[" + weight_name(a) + "w]";
    auto left = [idx, a](int l) {
        Expansion<Scalar> e;
        const PWLabel& x = idx->labels[l];
        e.add(l, Scalar::q_pow_half(a * x.i));
        return e;
    };
    auto right = [idx, a](int l) {
        Expansion<Scalar> e;
        const PWLabel& x = idx->labels[l];
        e.add(l, Scalar::q_pow_half(a * x.j));
        return e;
    };
    m.left = left;
    m.right = right;
    return m;
}

/// the discrete dual: blocks of matrix units omega^{l}_{ij}, spins <= cutoff
struct DualAlgebra {
    std::shared_ptr<QGroup<Scalar>> alg;
    std::shared_ptr<PWIndex> index;
    std::vector<Scalar> haar_weights;  // phi-hat on diagonal labels
    std::function<Scalar(int)> right_haar;  // psi-hat = phi-hat(. K_{-4rho})
};

inline DualAlgebra dual_algebra(int cutoff) {
    auto eng = uq::shared_engine();
    auto A = std::make_shared<QGroup<Scalar>>();
    auto idx = std::make_shared<PWIndex>();
    idx->build(cutoff);
    A->name = "A(dual-SUq2,L=" + spin_name(cutoff) + ")";
    for (const auto& lb : idx->labels) {
        A->label_names.push_back("w[" + spin_name(lb.l2) + ";" + weight_name(lb.i) + "," +
                                 weight_name(lb.j) + "]");
        A->label_size.push_back({lb.l2});
    }
    A->axis_cutoff = {cutoff};
    A->conv_growth = {ConvGrowth::Add};
    A->haar_support_max = {-1};

    A->mult = [idx](int a, int b) {
        const PWLabel& x = idx->labels[a];
        const PWLabel& y = idx->labels[b];
        Expansion<Scalar> e;
        if (x.l2 == y.l2 && x.j == y.i) e.add(idx->at(x.l2, x.i, y.j), Scalar(1));
        return e;
    };
    A->comult = [eng, idx, cutoff](int a) {
        const PWLabel& x = idx->labels[a];
        TensorExpansion<Scalar> e;
        e.complete = false;  // genuinely multiplier-valued
        for (int a2 = 0; a2 <= cutoff; ++a2)
            for (int b2 = std::abs(x.l2 - a2); b2 <= std::min(cutoff, x.l2 + a2); b2 += 2)
                for (int i1 = a2; i1 >= -a2; i1 -= 2)
                    for (int j1 = a2; j1 >= -a2; j1 -= 2) {
                        int i2 = x.i - i1, j2 = x.j - j1;
                        if (std::abs(i2) > b2 || std::abs(j2) > b2) continue;
                        Scalar c = eng->qcg(a2, b2, x.l2, i1, i2, x.i) *
                                   eng->qcg_dual(a2, b2, x.l2, x.j, j1, j2);
                        e.add({idx->at(a2, i1, j1), idx->at(b2, i2, j2)}, c);
                    }
        return e;
    };
    A->counit = [idx](int a) { return idx->labels[a].l2 == 0 ? Scalar(1) : Scalar(0); };
    A->antipode = [eng, idx](int a) {
        const PWLabel& x = idx->labels[a];
        Expansion<Scalar> e;
        e.add(idx->at(x.l2, -x.j, -x.i), eng->s_factor(x.l2, -x.j, -x.i));
        return e;
    };
    A->antipode_inv = [eng, idx](int a) {
        const PWLabel& x = idx->labels[a];
        Expansion<Scalar> e;
        e.add(idx->at(x.l2, -x.j, -x.i), Scalar(1) / eng->s_factor(x.l2, x.i, x.j));
        return e;
    };
    A->star = [eng, idx](int a) {
        // omega*_{rs} = conj(bar(S(u_{sr})) coefficient) omega_{sr}
        const PWLabel& x = idx->labels[a];
        Scalar s = eng->s_factor(x.l2, x.j, x.i);           // S(u_{sr}) -> u_{-r,-s}
        Scalar r = eng->r_factor(x.l2, -x.i, -x.j);          // bar(u_{-r,-s}) -> u_{r,s}
        Expansion<Scalar> e;
        e.add(idx->at(x.l2, x.j, x.i), (s * r).conj());
        return e;
    };

    // The functional eps o Fourier^-1 (blockwise) is the *right* Haar
    // functional psi-hat under this coproduct orientation; the left Haar is
    // its K_{4 rho}-twist phi-hat = psi-hat(. K_{4 rho}), which makes the
    // modular element come out as K_{-4 rho}.
    std::vector<Scalar> rhw(idx->labels.size());
    {
        for (int l2 = 0; l2 <= cutoff; ++l2) {
            int d = uq::dim_of(l2);
            int n = d * d;
            Mat<Scalar> F(n, n);
            auto flat = [&](int i, int j) {
                return uq::index_of_weight(l2, i) * d + uq::index_of_weight(l2, j);
            };
            for (int i1 = l2; i1 >= -l2; i1 -= 2)
                for (int j1 = l2; j1 >= -l2; j1 -= 2)
                    for (int i2 = l2; i2 >= -l2; i2 -= 2)
                        for (int j2 = l2; j2 >= -l2; j2 -= 2)
                            F.at(flat(i1, j1), flat(i2, j2)) =
                                eng->phi_product(l2, i1, j1, l2, i2, j2);
            Mat<Scalar> Finv = inverse(F);
            for (int i = l2; i >= -l2; i -= 2)
                for (int j = l2; j >= -l2; j -= 2) {
                    Scalar acc;
                    for (int aa = l2; aa >= -l2; aa -= 2) acc += Finv.at(flat(aa, aa), flat(i, j));
                    rhw[idx->at(l2, i, j)] = acc;
                }
        }
    }
    std::vector<Scalar> hw(idx->labels.size());
    for (size_t a = 0; a < idx->labels.size(); ++a)
        hw[a] = rhw[a] * Scalar::q_pow_half(4 * idx->labels[a].j);
    A->haar = [hw](int a) { return hw[a]; };
    A->phi_product = [idx, hw](int a, int b) {
        const PWLabel& x = idx->labels[a];
        const PWLabel& y = idx->labels[b];
        if (x.l2 != y.l2 || x.j != y.i) return Scalar(0);
        return hw[idx->at(x.l2, x.i, y.j)];
    };

    A->modular = k_lambda_multiplier(idx, -4);      // K_{-4 rho}, rho = omega
    A->modular_sqrt = k_lambda_multiplier(idx, -2);
    A->modular_inv_sqrt = k_lambda_multiplier(idx, 2);
    A->unimodular = false;
    A->unit = AlgElem<Scalar>(A.get());
    for (int l2 = 0; l2 <= cutoff; ++l2)
        for (int i = l2; i >= -l2; i -= 2) A->unit.add(idx->at(l2, i, i), Scalar(1));
    A->unit_truncated = true;
    auto k_elem = [&](int a) {
        AlgElem<Scalar> e(A.get());
        for (int l2 = 0; l2 <= cutoff; ++l2)
            for (int i = l2; i >= -l2; i -= 2)
                e.add(idx->at(l2, i, i), Scalar::q_pow_half(a * i));
        return e;
    };
    A->modular.element = k_elem(-4);
    A->modular_sqrt.element = k_elem(-2);
    A->modular_inv_sqrt.element = k_elem(2);

    DualAlgebra out;
    out.alg = A;
    out.index = idx;
    out.haar_weights = hw;
    out.right_haar = [rhw](int a) { return rhw[a]; };
    return out;
}

// ---------------------------------------------------------------------------
// torus and lattice algebras
// ---------------------------------------------------------------------------

/// A(T): group algebra of the weight lattice, truncated to |m| <= cutoff
inline std::shared_ptr<QGroup<Scalar>> torus_algebra(int cutoff, const std::string& name = "A(T)") {
    auto A = std::make_shared<QGroup<Scalar>>();
    A->name = name + "[|m|<=" + std::to_string(cutoff) + "]";
    for (int m = -cutoff; m <= cutoff; ++m) {
        A->label_names.push_back("e[" + weight_name(m) + "]");
        A->label_size.push_back({std::abs(m)});
    }
    int off = cutoff;
    A->axis_cutoff = {cutoff};
    A->conv_growth = {ConvGrowth::KeepLeft};
    A->haar_support_max = {0};
    A->mult = [off, cutoff](int a, int b) {
        Expansion<Scalar> e;
        int m = (a - off) + (b - off);
        e.complete = std::abs(m) <= cutoff;
        if (e.complete) e.add(m + off, Scalar(1));
        return e;
    };
    A->comult = [](int a) {
        TensorExpansion<Scalar> e;
        e.add({a, a}, Scalar(1));
        return e;
    };
    A->counit = [](int) { return Scalar(1); };
    A->antipode = [off](int a) {
        Expansion<Scalar> e;
        e.add(2 * off - a, Scalar(1));
        return e;
    };
    A->antipode_inv = A->antipode;
    A->star = A->antipode;
    A->haar = [off](int a) { return a == off ? Scalar(1) : Scalar(0); };
    A->phi_product = [off](int a, int b) {
        return (a - off) + (b - off) == 0 ? Scalar(1) : Scalar(0);
    };
    A->modular = Multiplier<Scalar>::identity();
    A->modular_sqrt = A->modular;
    A->modular_inv_sqrt = A->modular;
    A->unimodular = true;
    A->unit = AlgElem<Scalar>(A.get(), off);
    A->modular.element = A->unit;
    A->modular_sqrt.element = A->unit;
    A->modular_inv_sqrt.element = A->unit;
    return A;
}

/// A(A_q) = functions on the weight lattice (delta basis), |m| <= cutoff
inline std::shared_ptr<QGroup<Scalar>> aq_algebra(int cutoff, const std::string& name = "A(Aq)") {
    auto A = std::make_shared<QGroup<Scalar>>();
    A->name = name + "[|m|<=" + std::to_string(cutoff) + "]";
    for (int m = -cutoff; m <= cutoff; ++m) {
        A->label_names.push_back("dl[" + weight_name(m) + "]");
        A->label_size.push_back({std::abs(m)});
    }
    int off = cutoff;
    A->axis_cutoff = {cutoff};
    A->conv_growth = {ConvGrowth::Add};
    A->haar_support_max = {-1};
    A->mult = [](int a, int b) {
        Expansion<Scalar> e;
        if (a == b) e.add(a, Scalar(1));
        return e;
    };
    A->comult = [off, cutoff](int c) {
        TensorExpansion<Scalar> e;
        e.complete = false;
        int m = c - off;
        for (int a = -cutoff; a <= cutoff; ++a) {
            int b = m - a;
            if (std::abs(b) <= cutoff) e.add({a + off, b + off}, Scalar(1));
        }
        return e;
    };
    A->counit = [off](int a) { return a == off ? Scalar(1) : Scalar(0); };
    A->antipode = [off](int a) {
        Expansion<Scalar> e;
        e.add(2 * off - a, Scalar(1));
        return e;
    };
    A->antipode_inv = A->antipode;
    A->star = [](int a) {
        Expansion<Scalar> e;
        e.add(a, Scalar(1));
        return e;
    };
    A->haar = [](int) { return Scalar(1); };
    A->phi_product = [](int a, int b) { return a == b ? Scalar(1) : Scalar(0); };
    A->modular = Multiplier<Scalar>::identity();
    A->modular_sqrt = A->modular;
    A->modular_inv_sqrt = A->modular;
    A->unimodular = true;
    A->unit = AlgElem<Scalar>(A.get());
    for (int m = -cutoff; m <= cutoff; ++m) A->unit.add(m + off, Scalar(1));
    A->unit_truncated = true;
    AlgElem<Scalar> u = A->unit;
    A->modular.element = u;
    A->modular_sqrt.element = u;
    A->modular_inv_sqrt.element = u;
    return A;
}

/// pointwise multiplier K_lambda on A(A_q): dl_m -> q^((lambda, m omega)) dl_m
inline Multiplier<Scalar> k_lambda_on_aq(int cutoff, int a) {
    Multiplier<Scalar> m;
    m.name = "Kaq[" + weight_name(a) + "w]";
    int off = cutoff;
    auto act = [off, a](int l) {
        Expansion<Scalar> e;
        e.add(l, Scalar::q_pow_half(a * (l - off)));
        return e;
    };
    m.left = act;
    m.right = act;
    return m;
}

// ---------------------------------------------------------------------------
// the restriction maps
// ---------------------------------------------------------------------------

/// pi : A(K_q) -> A(T), u^{l}_{ij} -> delta_{ij} e^{wt_i}
struct TorusMap {
    std::shared_ptr<QGroup<Scalar>> source, target;
    std::shared_ptr<PWIndex> index;
    int t_cutoff = 0;

    AlgElem<Scalar> apply(const AlgElem<Scalar>& f) const {
        AlgElem<Scalar> r(target.get());
        for (const auto& [l, c] : f.coeffs) {
            const PWLabel& x = index->labels[l];
            if (x.i != x.j) continue;
            if (std::abs(x.i) > t_cutoff) throw TruncationError("torus_map: weight overflow");
            r.add(x.i + t_cutoff, c);
        }
        return r;
    }
};

inline TorusMap torus_map(const std::shared_ptr<QGroup<Scalar>>& pw,
                          const std::shared_ptr<PWIndex>& idx,
                          const std::shared_ptr<QGroup<Scalar>>& torus, int t_cutoff) {
    return TorusMap{pw, torus, idx, t_cutoff};
}

/// quotient map pi : A(dual) -> A(A_q), omega^{l}_{ij} -> delta_{ij} h_l(i) dl_{wt_i},
/// normalized by phi-hat = phi_{A_q} o pi
struct AqQuotient {
    std::shared_ptr<QGroup<Scalar>> source, target;
    std::shared_ptr<PWIndex> index;
    std::vector<Scalar> weights;  // phi-hat diagonal weights
    int t_cutoff = 0;

    AlgElem<Scalar> apply(const AlgElem<Scalar>& f) const {
        AlgElem<Scalar> r(target.get());
        for (const auto& [l, c] : f.coeffs) {
            const PWLabel& x = index->labels[l];
            if (x.i != x.j) continue;
            if (std::abs(x.i) > t_cutoff) throw TruncationError("aq_quotient: weight overflow");
            r.add(x.i + t_cutoff, weights[l] * c);
        }
        return r;
    }
};

inline AqQuotient aq_quotient(const DualAlgebra& dual, const std::shared_ptr<QGroup<Scalar>>& aq,
                              int t_cutoff) {
    return AqQuotient{dual.alg, aq, dual.index, dual.haar_weights, t_cutoff};
}

/// the coaction A(A_q) -> A(dual) (x) A(A_q) induced by the quotient map:
/// pi(f) -> f_(1) (x) pi(f_(2)); computed from a canonical preimage, with
/// well-definedness across preimages a separate test
inline TensorElem<Scalar> aq_coaction(const DualAlgebra& dual, const AqQuotient& piq, int aq_label,
                                      int preimage_l2 = -1) {
    int m = aq_label - piq.t_cutoff;
    int l2 = preimage_l2 < 0 ? std::abs(m) : preimage_l2;
    if (l2 < std::abs(m) || (l2 - m) % 2 != 0 || l2 > dual.index->l2max)
        throw DomainError("aq_coaction: invalid preimage spin");
    int lab = dual.index->at(l2, m, m);
    Scalar norm = Scalar(1) / dual.haar_weights[lab];
    TensorExpansion<Scalar> d = dual.alg->comult(lab);
    TensorElem<Scalar> out({dual.alg.get(), piq.target.get()});
    for (const auto& [k, c] : d.terms) {
        const PWLabel& y = dual.index->labels[k[1]];
        if (y.i != y.j) continue;
        if (std::abs(y.i) > piq.t_cutoff) continue;  // outside the lattice window
        out.add({k[0], y.i + piq.t_cutoff}, c * norm * dual.haar_weights[k[1]]);
    }
    return out;
}

}  // namespace qinduct
