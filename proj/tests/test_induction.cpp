#include "qinduct/induction.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qinduct;

namespace {

AlgElem<Scalar> random_elem(const std::shared_ptr<QGroup<Scalar>>& A, std::mt19937& rng,
                            int terms = 3) {
    std::uniform_int_distribution<int> lab(0, static_cast<int>(A->dim()) - 1), coef(-4, 4);
    AlgElem<Scalar> e(A.get());
    for (int t = 0; t < terms; ++t) e.add(lab(rng), Scalar(coef(rng)));
    return e;
}

SubgroupSpec subgroup_by_order(const FiniteGroupTable& G, size_t order, int which = 0) {
    int seen = 0;
    for (const auto& s : all_subgroups(G))
        if (s.members.size() == order && seen++ == which) return s;
    throw std::runtime_error("no such subgroup");
}

}  // namespace

TEST(Irreps, CharacterOrthogonality) {
    for (const char* nm : {"S3", "S4", "D4", "Q8", "Z4", "Z3"}) {
        auto G = group_preset(nm);
        auto reps = irreducible_reps(G);
        // sum of squared dims = |G|
        int sq = 0;
        for (const auto& r : reps) sq += r.dim * r.dim;
        EXPECT_EQ(sq, G.order()) << nm;
        // orthonormality of characters
        for (size_t a = 0; a < reps.size(); ++a) {
            auto ca = reps[a].character();
            for (size_t b = 0; b < reps.size(); ++b) {
                auto cb = reps[b].character();
                Cyclo acc(0);
                for (int g = 0; g < G.order(); ++g) acc += ca[g].conj() * cb[g];
                EXPECT_EQ(acc, a == b ? Cyclo(G.order()) : Cyclo(0)) << nm;
            }
        }
        // homomorphism spot checks
        for (const auto& r : reps)
            for (int a = 0; a < G.order(); a += 3)
                for (int b = 0; b < G.order(); b += 5)
                    EXPECT_TRUE(r.mats[G.op(a, b)] == r.mats[a] * r.mats[b]);
    }
}

TEST(CondExpect, FinitePropertiesAllBasisPairs) {
    auto G = symmetric_group(3);
    SubgroupSpec B = subgroup_by_order(G, 2);
    auto m = finite_subgroup_morphism(G, B);
    const auto& A = *m.source;
    const auto& T = *m.target;
    // E = pi on unimodular backends; E(f^*) = E(f)^* and module compatibilities
    for (int f = 0; f < (int)A.dim(); ++f) {
        AlgElem<Scalar> ef = m.cond_expect(A.basis_elem(f));
        EXPECT_EQ(ef, m.pi(A.basis_elem(f)));
        EXPECT_EQ(m.cond_expect(conv_star(A.basis_elem(f))), conv_star(ef));
        for (int h = 0; h < (int)T.dim(); ++h) {
            AlgElem<Scalar> eh = T.basis_elem(h);
            EXPECT_EQ(m.cond_expect(act_right(m, A.basis_elem(f), eh)), conv_mul(ef, eh));
            EXPECT_EQ(m.cond_expect(act_left(m, eh, A.basis_elem(f))), conv_mul(eh, ef));
        }
    }
}

TEST(CondExpect, RandomSparse) {
    auto G = symmetric_group(3);
    SubgroupSpec B = subgroup_by_order(G, 2);
    auto m = finite_subgroup_morphism(G, B);
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        AlgElem<Scalar> f = random_elem(m.source, rng);
        EXPECT_EQ(m.cond_expect(conv_star(f)), conv_star(m.cond_expect(f)));
    }
}

TEST(Actions, WholeGroupAndTrivialSubgroup) {
    auto G = cyclic_group(4);
    // B = G: f . h = f * h
    SubgroupSpec whole{&G, {0, 1, 2, 3}};
    auto m = finite_subgroup_morphism(G, whole);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        AlgElem<Scalar> f = random_elem(m.source, rng);
        AlgElem<Scalar> h0 = random_elem(m.source, rng);
        AlgElem<Scalar> h(m.target.get());
        for (const auto& [l, c] : h0.coeffs) h.add(l, c);
        EXPECT_EQ(act_right(m, f, h), conv_mul(f, h0));
    }
    // B = {e}: f . c collapses through the counit-like structure of D({e})
    auto G2 = cyclic_group(2);
    SubgroupSpec triv{&G2, {0}};
    auto mt = finite_subgroup_morphism(G2, triv);
    // D({e}) is C; h = delta_e, act by the formula directly:
    // f . h = (id x phi_B)[(1 x S^-1 h)(id x E)(Delta f)] = sum over Delta with E
    for (int f = 0; f < 2; ++f) {
        AlgElem<Scalar> h = mt.target->basis_elem(0);
        AlgElem<Scalar> r = act_right(mt, mt.source->basis_elem(f), h);
        // brute force from the definition
        AlgElem<Scalar> expect(mt.source.get());
        TensorExpansion<Scalar> d = mt.source->comult(f);
        for (const auto& [k, c] : d.terms) {
            AlgElem<Scalar> e = mt.cond_expect(mt.source->basis_elem(k[1]));
            Scalar acc;
            for (const auto& [w, cw] : e.coeffs) acc += cw * mt.target->phi_product(0, w);
            expect.add(k[0], acc * c);
        }
        EXPECT_EQ(r, expect);
    }
}

TEST(Actions, ModuleLaws) {
    auto G = symmetric_group(3);
    SubgroupSpec B = subgroup_by_order(G, 2);
    auto m = finite_subgroup_morphism(G, B);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        AlgElem<Scalar> f = random_elem(m.source, rng), g = random_elem(m.source, rng);
        AlgElem<Scalar> h = random_elem(m.target, rng), k = random_elem(m.target, rng);
        EXPECT_EQ(act_right(m, conv_mul(g, f), h), conv_mul(g, act_right(m, f, h)));
        EXPECT_EQ(act_right(m, act_right(m, f, h), k), act_right(m, f, conv_mul(h, k)));
        EXPECT_EQ(act_left(m, conv_mul(h, k), f), act_left(m, h, act_left(m, k, f)));
        EXPECT_EQ(act_left(m, h, conv_mul(f, g)), conv_mul(act_left(m, h, f), g));
        // E intertwines: E(f . h) = E(f) * h
        EXPECT_EQ(m.cond_expect(act_right(m, f, h)), conv_mul(m.cond_expect(f), h));
        EXPECT_EQ(m.cond_expect(act_left(m, h, f)), conv_mul(h, m.cond_expect(f)));
    }
}

TEST(PiHat, MultiplierProperties) {
    auto G = cyclic_group(4);
    SubgroupSpec B = subgroup_by_order(G, 2);
    auto m = finite_subgroup_morphism(G, B);
    std::mt19937 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        AlgElem<Scalar> f = random_elem(m.source, rng), g = random_elem(m.source, rng);
        AlgElem<Scalar> h = random_elem(m.target, rng), k = random_elem(m.target, rng);
        // multiplier property
        EXPECT_EQ(act_right(m, conv_mul(f, g), h), conv_mul(f, act_right(m, g, h)));
        EXPECT_EQ(act_left(m, h, conv_mul(f, g)), conv_mul(act_left(m, h, f), g));
        // pi-hat is multiplicative: pi-hat(h * k) acts as pi-hat(h) pi-hat(k)
        EXPECT_EQ(act_left(m, conv_mul(h, k), f), act_left(m, h, act_left(m, k, f)));
        EXPECT_EQ(act_right(m, f, conv_mul(h, k)), act_right(m, act_right(m, f, h), k));
        // star compatibility: pi-hat(h^*) * f = (f^* * pi-hat(h))^*
        EXPECT_EQ(act_left(m, conv_star(h), f), conv_star(act_right(m, conv_star(f), h)));
        EXPECT_EQ(act_right(m, f, conv_star(h)), conv_star(act_left(m, h, conv_star(f))));
    }
    // unit of D(B) gives the identity multiplier; the convolution unit of
    // D(Fun(B)) is |B| times the delta at the identity
    FiniteGroupTable Bg = B.as_group();
    AlgElem<Scalar> unit(m.target.get());
    unit.add(Bg.identity, Scalar(static_cast<long>(B.members.size())));
    for (int f = 0; f < (int)m.source->dim(); ++f) {
        EXPECT_EQ(act_right(m, m.source->basis_elem(f), unit), m.source->basis_elem(f));
        EXPECT_EQ(act_left(m, unit, m.source->basis_elem(f)), m.source->basis_elem(f));
    }
}

TEST(DValuedInner, Sesquilinear) {
    auto G = symmetric_group(3);
    SubgroupSpec B = subgroup_by_order(G, 2);
    auto m = finite_subgroup_morphism(G, B);
    std::mt19937 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        AlgElem<Scalar> f = random_elem(m.source, rng), g = random_elem(m.source, rng);
        AlgElem<Scalar> h = random_elem(m.target, rng);
        EXPECT_EQ(dvalued_inner(m, f, act_right(m, g, h)),
                  conv_mul(dvalued_inner(m, f, g), h));
        EXPECT_EQ(conv_star(dvalued_inner(m, f, g)), dvalued_inner(m, g, f));
    }
    // <1-block, 1-block> on Fun(Z2) down to the trivial subgroup
    auto G2 = cyclic_group(2);
    SubgroupSpec triv{&G2, {0}};
    auto mt = finite_subgroup_morphism(G2, triv);
    AlgElem<Scalar> u = mt.source->unit;
    AlgElem<Scalar> r = dvalued_inner(mt, u, u);
    EXPECT_FALSE(r.is_zero());
    // positivity of its single coefficient at q = 1/2 (it is a constant)
    NumericContext ctx({0.5, 0.0}, 1e-9);
    for (const auto& [l, c] : r.coeffs) EXPECT_GT(c.eval(ctx).real(), 0.0);
}

TEST(RhoOp, InnerProductIdentity) {
    auto G = symmetric_group(3);
    SubgroupSpec B = subgroup_by_order(G, 2);
    auto m = finite_subgroup_morphism(G, B);
    Mat<Scalar> gram_g = gns_gram(*m.source);
    Mat<Scalar> gram_b = gns_gram(*m.target);
    std::mt19937 rng(67);
    // rho_1 for B = G is the convolution-multiplication matrix
    {
        SubgroupSpec whole{&G, {0, 1, 2, 3, 4, 5}};
        auto mw = finite_subgroup_morphism(G, whole);
        AlgElem<Scalar> one(mw.source.get());
        for (int g = 0; g < 6; ++g) one.add(g, Scalar(6, 1) * Scalar(1, 6));
        // representative: any f; check rho_f equals conv matrix
        AlgElem<Scalar> f = random_elem(mw.source, rng);
        EXPECT_TRUE(rho_op(mw, f) == conv_action_matrix(*mw.source, f));
    }
    for (int trial = 0; trial < 20; ++trial) {
        AlgElem<Scalar> f = random_elem(m.source, rng), g = random_elem(m.source, rng);
        Mat<Scalar> rf = rho_op(m, f), rg = rho_op(m, g);
        Mat<Scalar> lhs = rho_adjoint(m, rf, gram_g, gram_b) * rg;
        Mat<Scalar> rhs = conv_action_matrix(*m.target, dvalued_inner(m, f, g));
        EXPECT_TRUE(lhs == rhs);
    }
}

TEST(Induce, WholeGroupIsIdentityFunctor) {
    auto G = symmetric_group(3);
    SubgroupSpec whole{&G, {0, 1, 2, 3, 4, 5}};
    auto m = finite_subgroup_morphism(G, whole);
    for (const auto& rho : irreducible_reps(G)) {
        RepOnSpace<Scalar> V = rep_from_group_rep(m.target, G, rho);
        InducedRep<Scalar> ind = induce(m, V);
        EXPECT_EQ(ind.dim, rho.dim);
        auto chi = induced_character(ind, G);
        auto expect = rho.character();
        EXPECT_EQ(chi, expect);
    }
}

TEST(Induce, RegularFromTrivialSubgroup) {
    auto G = symmetric_group(3);
    SubgroupSpec triv{&G, {G.identity}};
    auto m = finite_subgroup_morphism(G, triv);
    FiniteGroupTable Bg = triv.as_group();
    RepOnSpace<Scalar> V = rep_from_group_rep(m.target, Bg, irreducible_reps(Bg)[0]);
    InducedRep<Scalar> ind = induce(m, V);
    EXPECT_EQ(ind.dim, 6);
    auto chi = induced_character(ind, G);
    for (int g = 0; g < 6; ++g) EXPECT_EQ(chi[g], g == G.identity ? Cyclo(6) : Cyclo(0));
}

TEST(Induce, MackeyOracleAgreesOnS3) {
    auto G = symmetric_group(3);
    for (const auto& B : all_subgroups(G)) {
        auto m = finite_subgroup_morphism(G, B);
        FiniteGroupTable Bg = B.as_group();
        for (const auto& rho : irreducible_reps(Bg)) {
            RepOnSpace<Scalar> V = rep_from_group_rep(m.target, Bg, rho);
            InducedRep<Scalar> ind = induce(m, V);
            auto chi = induced_character(ind, G);
            auto oracle = mackey_oracle(G, B, rho.character());
            EXPECT_EQ(chi, oracle) << G.name << " / order-" << B.members.size();
            EXPECT_EQ(ind.dim, static_cast<int>(6 / B.members.size()) * rho.dim);
        }
    }
}

TEST(Induce, SpecExampleCharacters) {
    auto G = symmetric_group(3);
    // B = <(12)>, trivial character: induced character (3,1,0) on classes
    SubgroupSpec B = subgroup_by_order(G, 2);
    auto m = finite_subgroup_morphism(G, B);
    FiniteGroupTable Bg = B.as_group();
    GroupRep triv;
    for (const auto& r : irreducible_reps(Bg))
        if (r.character()[1] == Cyclo(1)) triv = r;
    RepOnSpace<Scalar> V = rep_from_group_rep(m.target, Bg, triv);
    InducedRep<Scalar> ind = induce(m, V);
    EXPECT_EQ(ind.dim, 3);
    auto chi = induced_character(ind, G);
    auto classes = G.conjugacy_classes();
    std::map<size_t, Cyclo> by_class_size;
    for (const auto& cls : classes) by_class_size[cls.size()] = chi[cls[0]];
    EXPECT_EQ(by_class_size[1], Cyclo(3));   // identity
    EXPECT_EQ(by_class_size[3], Cyclo(1));   // transpositions
    EXPECT_EQ(by_class_size[2], Cyclo(0));   // 3-cycles
    // A3 with a nontrivial character induces to (2,0,-1)
    SubgroupSpec A3 = subgroup_by_order(G, 3);
    auto m3 = finite_subgroup_morphism(G, A3);
    FiniteGroupTable A3g = A3.as_group();
    for (const auto& r : irreducible_reps(A3g)) {
        bool trivial = true;
        for (auto& v : r.character())
            if (!(v == Cyclo(1))) trivial = false;
        if (trivial) continue;
        auto oracle = mackey_oracle(G, A3, r.character());
        std::map<size_t, Cyclo> vals;
        for (const auto& cls : classes) vals[cls.size()] = oracle[cls[0]];
        EXPECT_EQ(vals[1], Cyclo(2));
        EXPECT_EQ(vals[3], Cyclo(0));
        EXPECT_EQ(vals[2], Cyclo(-1));
        RepOnSpace<Scalar> V3 = rep_from_group_rep(m3.target, A3g, r);
        EXPECT_EQ(induced_character(induce(m3, V3), G), oracle);
    }
}

TEST(Induce, GramPositiveSemidefinite) {
    NumericContext ctx({0.5, 0.0}, 1e-9);
    auto G = symmetric_group(3);
    SubgroupSpec B = subgroup_by_order(G, 2);
    auto m = finite_subgroup_morphism(G, B);
    FiniteGroupTable Bg = B.as_group();
    for (const auto& rho : irreducible_reps(Bg)) {
        RepOnSpace<Scalar> V = rep_from_group_rep(m.target, Bg, rho);
        InducedRep<Scalar> ind = induce(m, V);
        Eigen::MatrixXcd g = to_eigen(ind.gram, ctx);
        EXPECT_LE(hermitian_defect(g), 1e-9);
        EXPECT_GE(min_eigenvalue_hermitian(g), -1e-9);
    }
}

TEST(Essentialness, RegularZeroAndInduced) {
    auto G = cyclic_group(3);
    auto A = fun_qgroup(G);
    // regular representation of the convolution algebra
    RepOnSpace<Scalar> reg;
    reg.alg = A;
    reg.dim = 3;
    for (int f = 0; f < 3; ++f) reg.action.push_back(conv_action_matrix(*A, A->basis_elem(f)));
    reg.inner = Mat<Scalar>::identity(3);
    EXPECT_TRUE(essentialness_check(*A, reg));
    // zero action is degenerate
    RepOnSpace<Scalar> zero;
    zero.alg = A;
    zero.dim = 2;
    zero.action.assign(3, Mat<Scalar>(2, 2));
    zero.inner = Mat<Scalar>::identity(2);
    EXPECT_FALSE(essentialness_check(*A, zero));
    // induced representations are essential
    auto S3 = symmetric_group(3);
    SubgroupSpec B = subgroup_by_order(S3, 2);
    auto m = finite_subgroup_morphism(S3, B);
    FiniteGroupTable Bg = B.as_group();
    RepOnSpace<Scalar> V =
        rep_from_group_rep(m.target, Bg, irreducible_reps(Bg)[0]);
    InducedRep<Scalar> ind = induce(m, V);
    RepOnSpace<Scalar> K;
    K.alg = m.source;
    K.dim = ind.dim;
    for (int f = 0; f < (int)m.source->dim(); ++f)
        K.action.push_back(ind.action_matrix(m.source->basis_elem(f)));
    K.inner = ind.quotient_gram;
    EXPECT_TRUE(essentialness_check(*m.source, K));
}

TEST(Isometry, UnitSampleAndRandom) {
    for (auto [gname, border] : std::vector<std::pair<std::string, size_t>>{{"Z4", 2}, {"S3", 2}}) {
        auto G = group_preset(gname);
        SubgroupSpec B = subgroup_by_order(G, border);
        auto m = finite_subgroup_morphism(G, B);
        auto dc = dual_comul_table(m.target);
        FiniteGroupTable Bg = B.as_group();
        auto reps = irreducible_reps(Bg);
        RepOnSpace<Scalar> V = rep_from_group_rep(m.target, Bg, reps.back());
        std::mt19937 rng(97);
        int n_samples = gname == "Z4" ? 50 : 20;
        for (int trial = 0; trial < n_samples; ++trial) {
            IsometrySample<Scalar> s;
            s.xi = random_elem(m.source, rng);
            s.eta = random_elem(m.source, rng);
            s.f = random_elem(m.source, rng);
            s.g = random_elem(m.source, rng);
            std::uniform_int_distribution<int> coef(-3, 3);
            for (int i = 0; i < V.dim; ++i) {
                s.v.push_back(Scalar(coef(rng)));
                s.w.push_back(Scalar(coef(rng)));
            }
            EXPECT_TRUE(isometry_sample_check(m, dc, V, s)) << gname << " trial " << trial;
        }
        // unit sample: xi = eta = 1, f = g, v = w
        IsometrySample<Scalar> s;
        s.xi = s.eta = m.source->unit;
        s.f = s.g = random_elem(m.source, rng);
        s.v = s.w = std::vector<Scalar>(V.dim, Scalar(1));
        EXPECT_TRUE(isometry_sample_check(m, dc, V, s));
    }
}
