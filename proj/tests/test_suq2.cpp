#include "qinduct/axioms.hpp"
#include "qinduct/suq2.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qinduct;

namespace {

double factorial(int n) {
    double r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

/// classical Clebsch-Gordan coefficient (Condon-Shortley), doubled arguments
double classical_cg(int a2, int m1x2, int b2, int m2x2, int j2, int mx2) {
    if (m1x2 + m2x2 != mx2) return 0.0;
    if (j2 > a2 + b2 || j2 < std::abs(a2 - b2)) return 0.0;
    auto f2 = [](int twice) { return factorial(twice / 2); };
    double pref = std::sqrt((j2 + 1.0) * f2(a2 + b2 - j2) * f2(a2 - b2 + j2) * f2(-a2 + b2 + j2) /
                            f2(a2 + b2 + j2 + 2));
    pref *= std::sqrt(f2(j2 + mx2) * f2(j2 - mx2) * f2(a2 - m1x2) * f2(a2 + m1x2) *
                      f2(b2 - m2x2) * f2(b2 + m2x2));
    double sum = 0.0;
    for (int k2 = 0; k2 <= a2 + b2; k2 += 2) {
        int t1 = a2 + b2 - j2 - k2, t2 = a2 - m1x2 - k2, t3 = b2 + m2x2 - k2;
        int t4 = j2 - b2 + m1x2 + k2, t5 = j2 - a2 - m2x2 + k2;
        if (t1 < 0 || t2 < 0 || t3 < 0 || t4 < 0 || t5 < 0) continue;
        double den = f2(k2) * f2(t1) * f2(t2) * f2(t3) * f2(t4) * f2(t5);
        sum += ((k2 / 2) % 2 == 0 ? 1.0 : -1.0) / den;
    }
    return pref * sum;
}

/// squared norms of the weight basis under the invariant inner product,
/// evaluated numerically (top vector normalized to 1)
std::vector<double> basis_norms(int l2, double q) {
    std::vector<double> n(l2 + 1);
    n[0] = 1.0;  // index 0 = weight l2
    auto qint = [&](int k) {
        double s = 0;
        for (int t = 0; t < k; ++t) s += std::pow(q, k - 1 - 2 * t);
        return s;
    };
    for (int r = 1; r <= l2; ++r) {
        int m = uq::weight_of_index(l2, r);  // we are computing n at weight m
        // n_{m} = n_{m+2} * [(l2-m)/2] / (q^{m+2} [(l2+m+2)/2])
        n[r] = n[r - 1] * qint((l2 - m) / 2) / (std::pow(q, m + 2) * qint((l2 + m + 2) / 2));
    }
    return n;
}

}  // namespace

TEST(QCG, TrivialAndStretched) {
    auto eng = uq::shared_engine();
    // tensoring with the trivial representation is the identity
    for (int l2 = 0; l2 <= 3; ++l2)
        for (int m = l2; m >= -l2; m -= 2) {
            EXPECT_EQ(eng->qcg(l2, 0, l2, m, 0, m), Scalar(1));
            EXPECT_EQ(eng->qcg(0, l2, l2, 0, m, m), Scalar(1));
        }
    // highest-weight stretching
    EXPECT_EQ(eng->qcg(1, 1, 2, 1, 1, 2), Scalar(1));
    EXPECT_EQ(eng->qcg(2, 3, 5, 2, 3, 5), Scalar(1));
    // out-of-range arguments give zero
    EXPECT_EQ(eng->qcg(1, 1, 4, 1, 1, 2), Scalar(0));
    EXPECT_EQ(eng->qcg(1, 1, 2, 1, 1, 0), Scalar(0));
}

TEST(QCG, OrthogonalityExact) {
    auto eng = uq::shared_engine();
    for (int a2 = 0; a2 <= 3; ++a2)
        for (int b2 = 0; b2 <= 3; ++b2) {
            // project o embed = id on each irreducible summand
            for (int l2 = std::abs(a2 - b2); l2 <= a2 + b2; l2 += 2)
                for (int lp2 = std::abs(a2 - b2); lp2 <= a2 + b2; lp2 += 2)
                    for (int m = std::min(l2, lp2); m >= -std::min(l2, lp2); m -= 2) {
                        Scalar acc;
                        for (int m1 = -a2; m1 <= a2; m1 += 2)
                            acc += eng->qcg_dual(a2, b2, lp2, m, m1, m - m1) *
                                   eng->qcg(a2, b2, l2, m1, m - m1, m);
                        EXPECT_EQ(acc, l2 == lp2 ? Scalar(1) : Scalar(0))
                            << a2 << " " << b2 << " " << l2 << " " << lp2 << " " << m;
                    }
            // completeness: sum over l of embed o project = id on the tensor space
            for (int m1 = -a2; m1 <= a2; m1 += 2)
                for (int m2 = -b2; m2 <= b2; m2 += 2)
                    for (int n1 = -a2; n1 <= a2; n1 += 2) {
                        int n2 = m1 + m2 - n1;
                        if (std::abs(n2) > b2) continue;
                        Scalar acc;
                        for (int l2 = std::abs(a2 - b2); l2 <= a2 + b2; l2 += 2)
                            acc += eng->qcg(a2, b2, l2, m1, m2, m1 + m2) *
                                   eng->qcg_dual(a2, b2, l2, m1 + m2, n1, n2);
                        EXPECT_EQ(acc, (n1 == m1 && n2 == m2) ? Scalar(1) : Scalar(0));
                    }
        }
}

TEST(QCG, ClassicalLimit) {
    // q -> 1: unitarily normalized columns agree with classical CG within 1e-2
    auto eng = uq::shared_engine();
    double q = 0.999;
    NumericContext ctx({q, 0.0}, 1e-9);
    for (int a2 = 1; a2 <= 3; ++a2)
        for (int b2 = 1; b2 <= 2; ++b2) {
            auto na = basis_norms(a2, q), nb = basis_norms(b2, q);
            for (int l2 = std::abs(a2 - b2); l2 <= a2 + b2; l2 += 2) {
                auto nl = basis_norms(l2, q);
                for (int m = l2; m >= -l2; m -= 2) {
                    // unnormalized unitary-basis column
                    std::vector<double> col;
                    std::vector<std::pair<int, int>> keys;
                    double norm = 0;
                    for (int m1 = -a2; m1 <= a2; m1 += 2) {
                        int m2 = m - m1;
                        if (std::abs(m2) > b2) continue;
                        Scalar c = eng->qcg(a2, b2, l2, m1, m2, m);
                        double v = c.eval(ctx).real() *
                                   std::sqrt(na[uq::index_of_weight(a2, m1)] *
                                             nb[uq::index_of_weight(b2, m2)]);
                        col.push_back(v);
                        keys.emplace_back(m1, m2);
                        norm += v * v;
                    }
                    norm = std::sqrt(norm);
                    for (size_t k = 0; k < col.size(); ++k) {
                        double classical =
                            classical_cg(a2, keys[k].first, b2, keys[k].second, l2, m);
                        EXPECT_NEAR(col[k] / norm, classical, 1e-2)
                            << a2 << b2 << l2 << " m=" << m << " m1=" << keys[k].first;
                    }
                }
            }
        }
}

TEST(PWAlgebra, UnitCounitHaar) {
    auto A = pw_algebra(2);
    EXPECT_EQ(A->dim(), 1u + 4u + 9u);
    // phi(u^0) = 1, phi vanishes on higher spins
    EXPECT_EQ(A->haar(A->index_of("u[0;0,0]")), Scalar(1));
    EXPECT_EQ(A->haar(A->index_of("u[1;0,0]")), Scalar(0));
    // counit is delta_{ij}
    EXPECT_EQ(A->counit(A->index_of("u[1/2;1/2,1/2]")), Scalar(1));
    EXPECT_EQ(A->counit(A->index_of("u[1/2;1/2,-1/2]")), Scalar(0));
}

TEST(PWAlgebra, HaarIsUniqueInvariantFunctional) {
    // solve (id (x) psi)Delta(f) = psi(f) 1 for all basis f on the truncation:
    // the solution space is one-dimensional, spanned by the Haar functional
    auto A = pw_algebra(2);
    int n = static_cast<int>(A->dim());
    std::vector<std::vector<std::pair<int, Scalar>>> rows;
    int unit = A->index_of("u[0;0,0]");
    for (int f = 0; f < n; ++f) {
        TensorExpansion<Scalar> d = A->comult(f);
        // coefficient of basis b in (id x psi)Delta(f) - psi(f) unit = 0
        std::map<int, std::map<int, Scalar>> eqs;  // b -> psi-unknown -> coef
        for (const auto& [k, c] : d.terms) eqs[k[0]][k[1]] += c;
        eqs[unit][f] -= Scalar(1);
        for (auto& [b, row] : eqs) {
            std::vector<std::pair<int, Scalar>> r;
            for (auto& [u, v] : row)
                if (!v.is_zero()) r.emplace_back(u, v);
            if (!r.empty()) rows.push_back(std::move(r));
        }
    }
    auto null = sparse_kernel(rows, n);
    ASSERT_EQ(null.size(), 1u);
    // spanned by the delta at the unit
    for (auto& [lab, c] : null[0]) EXPECT_EQ(lab, unit);
}

TEST(PWAlgebra, SchurOrthogonality) {
    // phi(bar(u^l_{ij}) u^l_{kl}) = delta_{ik} delta_{jl} * positive weight at q=1/2
    auto A = pw_algebra(2);
    NumericContext ctx({0.5, 0.0}, 1e-9);
    for (int a = 0; a < (int)A->dim(); ++a)
        for (int b = 0; b < (int)A->dim(); ++b) {
            Scalar v = gns_inner(A->basis_elem(a), A->basis_elem(b));
            if (a == b) {
                EXPECT_FALSE(v.is_zero());
                EXPECT_GT(v.eval(ctx).real(), 0.0);
            } else {
                EXPECT_TRUE(v.is_zero());
            }
        }
}

TEST(PWAlgebra, AxiomsSuiteL1) {
    auto A = pw_algebra(2);
    Report r = axioms_suite(*A);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

TEST(PWAlgebra, AxiomsSuiteL32) {
    auto A = pw_algebra(3);
    AxiomsOptions opt;
    opt.triple_budget = 400;
    Report r = axioms_suite(*A, opt);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

TEST(DualAlgebra, BlocksAndUnit) {
    auto D = dual_algebra(2);
    auto& A = *D.alg;
    // omega^0 is an idempotent killed by nothing: the convolution unit
    int w0 = A.index_of("w[0;0,0]");
    EXPECT_EQ(mul(A.basis_elem(w0), A.basis_elem(w0)), A.basis_elem(w0));
    // phi-hat normalization: phi-hat(omega^0) = 1
    EXPECT_EQ(A.haar(w0), Scalar(1));
    // matrix units multiply blockwise
    int a = A.index_of("w[1;1,0]"), b = A.index_of("w[1;0,-1]");
    EXPECT_EQ(mul(A.basis_elem(a), A.basis_elem(b)), A.basis_elem(A.index_of("w[1;1,-1]")));
    EXPECT_TRUE(mul(A.basis_elem(b), A.basis_elem(a)).is_zero());
}

TEST(DualAlgebra, ConvUnitOfDual) {
    // omega^0 = the Haar-state element is the unit for the dual convolution
    auto D = dual_algebra(2);
    auto& A = *D.alg;
    int w0 = A.index_of("w[0;0,0]");
    for (int f = 0; f < (int)A.dim(); ++f) {
        EXPECT_EQ(conv_mul(A.basis_elem(w0), A.basis_elem(f)), A.basis_elem(f));
        EXPECT_EQ(conv_mul(A.basis_elem(f), A.basis_elem(w0)), A.basis_elem(f));
    }
}

TEST(DualAlgebra, AxiomsSuiteL1) {
    auto D = dual_algebra(2);
    Report r = axioms_suite(*D.alg);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

TEST(DualAlgebra, AxiomsSuiteL32) {
    auto D = dual_algebra(3);
    AxiomsOptions opt;
    opt.triple_budget = 400;
    Report r = axioms_suite(*D.alg, opt);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

TEST(DualAlgebra, RightHaarIsRightInvariant) {
    // (psi (x) id)Delta-hat(f) = psi(f) 1 on the certified window
    auto D = dual_algebra(2);
    auto& A = *D.alg;
    for (int f = 0; f < (int)A.dim(); ++f) {
        TensorExpansion<Scalar> d = A.comult(f);
        AlgElem<Scalar> lhs(&A);
        for (const auto& [k, c] : d.terms) lhs.add(k[1], D.right_haar(k[0]) * c);
        AlgElem<Scalar> expect = A.unit.scaled(D.right_haar(f));
        auto keep = [&](int b) {
            return A.sizes(b)[0] + A.sizes(f)[0] <= A.axis_cutoff[0];
        };
        EXPECT_TRUE(equal_on<Scalar>(lhs, expect, keep)) << A.label_names[f];
    }
}

TEST(KLambda, BasicsAndGroupLike) {
    auto D = dual_algebra(2);
    auto idx = D.index;
    // K_0 is the identity multiplier
    Multiplier<Scalar> k0 = k_lambda_multiplier(idx, 0);
    for (int f = 0; f < (int)D.alg->dim(); ++f)
        EXPECT_EQ(mult_left(k0, D.alg->basis_elem(f)), D.alg->basis_elem(f));
    // e^mu(K_lambda) = q^((lambda,mu)): fundamental weight pairing gives q^(1/2)
    auto Aq = aq_algebra(4);
    Multiplier<Scalar> kw = k_lambda_on_aq(4, 1);
    AlgElem<Scalar> d1 = Aq->basis_elem(Aq->index_of("dl[1/2]"));
    EXPECT_EQ(mult_left(kw, d1), d1.scaled(Scalar::q_pow_half(1)));
    // K_{2rho} acts on the spin-1/2 block with entries q and q^-1
    Multiplier<Scalar> k2r = k_lambda_multiplier(idx, 2);
    AlgElem<Scalar> wpp = D.alg->basis_elem(D.alg->index_of("w[1/2;1/2,1/2]"));
    AlgElem<Scalar> wmm = D.alg->basis_elem(D.alg->index_of("w[1/2;-1/2,-1/2]"));
    EXPECT_EQ(mult_left(k2r, wpp), wpp.scaled(Scalar::q_pow_half(2)));
    EXPECT_EQ(mult_left(k2r, wmm), wmm.scaled(Scalar::q_pow_half(-2)));
    // group-like under the dual coproduct: Delta(K f) = (K x K) Delta(f)
    auto& A = *D.alg;
    for (int f = 0; f < (int)A.dim(); ++f) {
        TensorExpansion<Scalar> d = A.comult(f);
        TensorElem<Scalar> lhs({&A, &A}), rhs({&A, &A});
        AlgElem<Scalar> kf = mult_left(k2r, A.basis_elem(f));
        for (const auto& [l, c] : kf.coeffs) {
            TensorExpansion<Scalar> dk = A.comult(l);
            for (const auto& [k, x] : dk.terms) lhs.add(k, x * c);
        }
        for (const auto& [k, c] : d.terms) {
            AlgElem<Scalar> k1 = mult_left(k2r, A.basis_elem(k[0]));
            AlgElem<Scalar> k2 = mult_left(k2r, A.basis_elem(k[1]));
            for (const auto& [l1, c1] : k1.coeffs)
                for (const auto& [l2, c2] : k2.coeffs) rhs.add({l1, l2}, c * c1 * c2);
        }
        EXPECT_TRUE(lhs == rhs);
    }
}

TEST(TorusMap, HopfMorphism) {
    int cut = 2, tcut = 6;
    auto A = pw_algebra(cut);
    auto idxA = std::make_shared<PWIndex>();
    idxA->build(cut);
    auto T = torus_algebra(tcut);
    TorusMap pi = torus_map(A, idxA, T, tcut);
    // u^0 -> e^0; u^{1/2}_{1/2,1/2} -> e^{omega}
    EXPECT_EQ(pi.apply(A->basis_elem(A->index_of("u[0;0,0]"))), T->basis_elem(T->index_of("e[0]")));
    EXPECT_EQ(pi.apply(A->basis_elem(A->index_of("u[1/2;1/2,1/2]"))),
              T->basis_elem(T->index_of("e[1/2]")));
    // multiplicativity, counit, antipode, star compatibility on the window
    for (int a = 0; a < (int)A->dim(); ++a) {
        EXPECT_EQ(counit(pi.apply(A->basis_elem(a))), A->counit(a));
        EXPECT_EQ(pi.apply(antipode(A->basis_elem(a))), antipode(pi.apply(A->basis_elem(a))));
        EXPECT_EQ(pi.apply(star_alg(A->basis_elem(a))), star_alg(pi.apply(A->basis_elem(a))));
        for (int b = 0; b < (int)A->dim(); ++b) {
            if (!A->pair_within_cutoff(a, b)) continue;
            EXPECT_EQ(pi.apply(mul(A->basis_elem(a), A->basis_elem(b))),
                      mul(pi.apply(A->basis_elem(a)), pi.apply(A->basis_elem(b))));
        }
        // coproduct intertwining: (pi x pi) Delta = Delta_T pi
        TensorExpansion<Scalar> d = A->comult(a);
        TensorElem<Scalar> lhs({T.get(), T.get()});
        for (const auto& [k, c] : d.terms) {
            AlgElem<Scalar> p1 = pi.apply(A->basis_elem(k[0]));
            AlgElem<Scalar> p2 = pi.apply(A->basis_elem(k[1]));
            for (const auto& [l1, c1] : p1.coeffs)
                for (const auto& [l2, c2] : p2.coeffs) lhs.add({l1, l2}, c * c1 * c2);
        }
        ClippedTensor<Scalar> rhs = comul_clipped(pi.apply(A->basis_elem(a)));
        EXPECT_TRUE(lhs == rhs.elem);
    }
}

TEST(AqQuotient, HaarIdentityAndKCompat) {
    int cut = 2, tcut = 6;
    auto D = dual_algebra(cut);
    auto Aq = aq_algebra(tcut);
    AqQuotient piq = aq_quotient(D, Aq, tcut);
    // pi(1-hat) = delta at 0 (normalization anchor)
    int w0 = D.alg->index_of("w[0;0,0]");
    EXPECT_EQ(piq.apply(D.alg->basis_elem(w0)), Aq->basis_elem(Aq->index_of("dl[0]")));
    for (int f = 0; f < (int)D.alg->dim(); ++f) {
        // off-diagonals die
        const PWLabel& x = D.index->labels[f];
        AlgElem<Scalar> img = piq.apply(D.alg->basis_elem(f));
        if (x.i != x.j) EXPECT_TRUE(img.is_zero());
        // Haar identity phi-hat = phi_Aq o pi
        Scalar rhs;
        for (const auto& [l, c] : img.coeffs) rhs += Aq->haar(l) * c;
        EXPECT_EQ(D.alg->haar(f), rhs);
        // conditional-expectation property pi(f K_lambda) = pi(f) K_lambda
        for (int a : {-2, 1, 3}) {
            Multiplier<Scalar> kd = k_lambda_multiplier(D.index, a);
            Multiplier<Scalar> ka = k_lambda_on_aq(tcut, a);
            EXPECT_EQ(piq.apply(mult_right(D.alg->basis_elem(f), kd)), mult_right(img, ka));
        }
    }
}

TEST(AqCoaction, WellDefinedAndMatchesAction) {
    int cut = 3, tcut = 8;
    auto D = dual_algebra(cut);
    auto Aq = aq_algebra(tcut);
    AqQuotient piq = aq_quotient(D, Aq, tcut);
    // well-definedness: all preimage spins give the same coaction (l <= 1 exhaustive)
    for (int m = -2; m <= 2; ++m) {
        int lab = m + tcut;
        std::optional<TensorElem<Scalar>> first;
        for (int l2 = std::abs(m); l2 <= cut; l2 += 2) {
            TensorElem<Scalar> c = aq_coaction(D, piq, lab, l2);
            // compare only on components whose dual leg is exactly covered for
            // both preimages: blocks <= cutoff - max preimage spin
            if (!first) { first = c; continue; }
            auto keep = [&](const TensorKey& k) {
                return D.index->labels[k[0]].l2 + cut <= D.alg->axis_cutoff[0] + (cut - 3);
            };
            (void)keep;
            // with cutoff 3 and preimage spins <= 3: certified window is blocks
            // b with b + preimage spin <= cutoff for every preimage used
            auto keep2 = [&](const TensorKey& k) {
                return D.index->labels[k[0]].l2 <= cut - l2;
            };
            EXPECT_TRUE(equal_on<Scalar>(*first, c, keep2)) << "mu=" << m << " l2=" << l2;
        }
    }
    // the coaction reproduces the module action: g * pi(f) = pi(f * g)
    auto& A = *D.alg;
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> lab(0, (int)A.dim() - 1);
    for (int trial = 0; trial < 40; ++trial) {
        int f = lab(rng), g = lab(rng);
        if (A.sizes(f)[0] + A.sizes(g)[0] > A.axis_cutoff[0]) continue;
        // action through the coaction: g * delta_mu = sum phi-hat(S^-1(g1-leg) ...)
        // easier: pi(f * g) vs the convolution action computed from aq_coaction
        AlgElem<Scalar> lhs = piq.apply(conv_mul(A.basis_elem(f), A.basis_elem(g)));
        // rhs: alpha(pi(f)) = f1 (x) pi(f2); g * pi(f) = (phi(S^-1(f1) g)) pi(f2)
        AlgElem<Scalar> pif = piq.apply(A.basis_elem(f));
        AlgElem<Scalar> rhs(Aq.get());
        for (const auto& [al, ac] : pif.coeffs) {
            TensorElem<Scalar> co = aq_coaction(D, piq, al);
            for (const auto& [k, c] : co.coeffs) {
                Clipped<Scalar> sf = apply_table(A.basis_elem(k[0]), A.antipode_inv);
                Scalar acc;
                for (const auto& [z, cz] : sf.elem.coeffs)
                    acc += cz * A.phi_product(z, g);
                rhs.add(k[1], acc * c * ac);
            }
        }
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Fourier, IntertwinesProductAndConvolution) {
    // F(a) = sum phi(u_{ij} a) w_{ij} turns pointwise products into convolution
    int cut = 2;
    auto A = pw_algebra(cut);
    auto D = dual_algebra(cut);
    auto idx = D.index;
    auto fourier = [&](const AlgElem<Scalar>& a) {
        AlgElem<Scalar> r(D.alg.get());
        for (int l = 0; l < (int)A->dim(); ++l) {
            Scalar acc;
            for (const auto& [b, c] : a.coeffs) acc += c * A->phi_product(l, b);
            r.add(l, acc);
        }
        return r;
    };
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> lab(0, (int)A->dim() - 1), coef(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        AlgElem<Scalar> a(A.get()), b(A.get());
        for (int t = 0; t < 2; ++t) {
            a.add(lab(rng), Scalar(coef(rng)));
            b.add(lab(rng), Scalar(coef(rng)));
        }
        bool safe = true;
        for (const auto& [x, cx] : a.coeffs)
            for (const auto& [y, cy] : b.coeffs)
                if (!A->pair_within_cutoff(x, y)) safe = false;
        if (!safe) continue;
        EXPECT_EQ(fourier(mul(a, b)), conv_mul(fourier(a), fourier(b)));
    }
    // and the Haar of the Fourier image recovers the counit (under this
    // coproduct orientation the identity lands on the right Haar)
    for (int l = 0; l < (int)A->dim(); ++l) {
        AlgElem<Scalar> fa = fourier(A->basis_elem(l));
        Scalar acc;
        for (const auto& [x, c] : fa.coeffs) acc += c * D.right_haar(x);
        EXPECT_EQ(acc, A->counit(l));
    }
}

TEST(TorusAndAq, AxiomsSuites) {
    for (auto A : {torus_algebra(4), aq_algebra(4)}) {
        Report r = axioms_suite(*A);
        for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << A->name << " " << c.name << ": " << c.detail;
    }
}
