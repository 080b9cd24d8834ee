/// Explicit irreducible representations, over the exact cyclotomic field,
/// for every isomorphism type that occurs among subgroups of S3, S4, D4 and
/// Q8.  Arbitrary subgroups get their irreps by brute-force isomorphism
/// matching against these models.

#pragma once

#include "qinduct/finite_group.hpp"

namespace qinduct {

struct GroupRep {
    std::string name;
    int dim = 0;
    std::vector<Mat<Scalar>> mats;  // one per group element
    Mat<Scalar> inner;              // invariant Hermitian inner product

    std::vector<Cyclo> character() const {
        std::vector<Cyclo> chi;
        for (const auto& m : mats) {
            Scalar tr;
            for (int i = 0; i < dim; ++i) tr += m.at(i, i);
            // traces of finite-order matrices over the cyclotomic field are constants
            if (!tr.den().is_one() || (!tr.num().is_zero() && tr.num().high_exp() != 0))
                throw DomainError("GroupRep: non-constant character value");
            chi.push_back(tr.is_zero() ? Cyclo(0) : tr.num().terms()[0].second);
        }
        return chi;
    }
};

namespace detail {

inline Mat<Scalar> weyl_inner(const std::vector<Mat<Scalar>>& mats, int dim) {
    Mat<Scalar> b(dim, dim);
    for (const auto& m : mats) {
        Mat<Scalar> c = m.conj_transpose() * m;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) b.at(i, j) += c.at(i, j);
    }
    return b;
}

inline GroupRep rep_from_generators(const FiniteGroupTable& G, const std::string& name,
                                    const std::vector<int>& gens,
                                    const std::vector<Mat<Scalar>>& gen_mats, int dim) {
    GroupRep rep;
    rep.name = name;
    rep.dim = dim;
    int n = G.order();
    std::vector<bool> known(n, false);
    rep.mats.assign(n, Mat<Scalar>(dim, dim));
    rep.mats[G.identity] = Mat<Scalar>::identity(dim);
    known[G.identity] = true;
    for (size_t k = 0; k < gens.size(); ++k) {
        rep.mats[gens[k]] = gen_mats[k];
        known[gens[k]] = true;
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (int a = 0; a < n; ++a) {
            if (!known[a]) continue;
            for (int b = 0; b < n; ++b) {
                if (!known[b]) continue;
                int c = G.op(a, b);
                if (!known[c]) {
                    rep.mats[c] = rep.mats[a] * rep.mats[b];
                    known[c] = true;
                    grew = true;
                }
            }
        }
    }
    for (int a = 0; a < n; ++a)
        if (!known[a]) throw DomainError("rep_from_generators: generators do not generate");
    rep.inner = weyl_inner(rep.mats, dim);
    return rep;
}

inline Mat<Scalar> mat2(Scalar a, Scalar b, Scalar c, Scalar d) {
    Mat<Scalar> m(2, 2);
    m.at(0, 0) = a; m.at(0, 1) = b; m.at(1, 0) = c; m.at(1, 1) = d;
    return m;
}

/// all one-dimensional characters of an abelian group, by brute force over
/// root-of-unity assignments on a small generating set
inline std::vector<GroupRep> abelian_characters(const FiniteGroupTable& G) {
    int n = G.order();
    // find a small generating set greedily
    std::vector<int> gens;
    std::vector<int> have = {G.identity};
    auto gen_span = [&](const std::vector<int>& gs) { return closure_of(G, gs); };
    while (static_cast<int>(have.size()) < n) {
        int best = -1;
        size_t best_size = have.size();
        for (int g = 0; g < n; ++g) {
            std::vector<int> trial = gens;
            trial.push_back(g);
            size_t s = gen_span(trial).size();
            if (s > best_size) { best = g; best_size = s; }
        }
        gens.push_back(best);
        have = gen_span(gens);
    }
    std::vector<int> ord(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        int o = 1, x = gens[i];
        while (x != G.identity) { x = G.op(x, gens[i]); ++o; }
        ord[i] = o;
    }
    // enumerate assignments gen_i -> zeta_{ord_i}^{k_i}, keep consistent ones
    std::vector<GroupRep> out;
    std::vector<int> k(gens.size(), 0);
    auto root = [](int order, int power) {
        if (12 % order != 0) throw DomainError("abelian_characters: order does not divide 12");
        return Cyclo::zeta((12 / order) * power);
    };
    while (true) {
        // build candidate character by closure
        std::vector<Cyclo> chi(n);
        std::vector<bool> known(n, false);
        chi[G.identity] = Cyclo(1);
        known[G.identity] = true;
        for (size_t i = 0; i < gens.size(); ++i) {
            chi[gens[i]] = root(ord[i], k[i]);
            known[gens[i]] = true;
        }
        bool grew = true, ok = true;
        while (grew && ok) {
            grew = false;
            for (int a = 0; a < n && ok; ++a) {
                if (!known[a]) continue;
                for (int b = 0; b < n && ok; ++b) {
                    if (!known[b]) continue;
                    int c = G.op(a, b);
                    Cyclo v = chi[a] * chi[b];
                    if (!known[c]) { chi[c] = v; known[c] = true; grew = true; }
                    else if (!(chi[c] == v)) ok = false;
                }
            }
        }
        if (ok) {
            GroupRep rep;
            rep.name = "chi" + std::to_string(out.size());
            rep.dim = 1;
            for (int g = 0; g < n; ++g) {
                Mat<Scalar> m(1, 1);
                m.at(0, 0) = Scalar(chi[g]);
                rep.mats.push_back(m);
            }
            rep.inner = Mat<Scalar>::identity(1);
            bool dup = false;
            for (const auto& r : out)
                if (r.mats == rep.mats) dup = true;
            if (!dup) out.push_back(std::move(rep));
        }
        // advance the odometer
        size_t pos = 0;
        while (pos < k.size()) {
            if (++k[pos] < ord[pos]) break;
            k[pos++] = 0;
        }
        if (pos == k.size()) break;
    }
    if (static_cast<int>(out.size()) != n)
        throw DomainError("abelian_characters: wrong character count");
    return out;
}

inline std::optional<std::vector<int>> find_isomorphism(const FiniteGroupTable& H,
                                                        const FiniteGroupTable& M) {
    int n = H.order();
    if (M.order() != n) return std::nullopt;
    auto order_of = [](const FiniteGroupTable& G, int g) {
        int o = 1, x = g;
        while (x != G.identity) { x = G.op(x, g); ++o; }
        return o;
    };
    // generating pair (or single) of H
    std::vector<std::vector<int>> gen_sets;
    for (int a = 0; a < n; ++a)
        if (static_cast<int>(closure_of(H, {a}).size()) == n) { gen_sets.push_back({a}); break; }
    if (gen_sets.empty())
        for (int a = 0; a < n && gen_sets.empty(); ++a)
            for (int b = a + 1; b < n && gen_sets.empty(); ++b)
                if (static_cast<int>(closure_of(H, {a, b}).size()) == n) gen_sets.push_back({a, b});
    if (gen_sets.empty()) return std::nullopt;
    const auto& gens = gen_sets[0];

    std::vector<int> cand;
    for (int m = 0; m < M.order(); ++m) cand.push_back(m);
    std::vector<int> images(gens.size());
    std::function<std::optional<std::vector<int>>(size_t)> attempt =
        [&](size_t pos) -> std::optional<std::vector<int>> {
        if (pos == gens.size()) {
            // extend by closure and verify
            std::vector<int> map(n, -1);
            map[H.identity] = M.identity;
            for (size_t i = 0; i < gens.size(); ++i) map[gens[i]] = images[i];
            bool grew = true;
            while (grew) {
                grew = false;
                for (int a = 0; a < n; ++a) {
                    if (map[a] < 0) continue;
                    for (int b = 0; b < n; ++b) {
                        if (map[b] < 0) continue;
                        int c = H.op(a, b), mc = M.op(map[a], map[b]);
                        if (map[c] < 0) { map[c] = mc; grew = true; }
                        else if (map[c] != mc) return std::nullopt;
                    }
                }
            }
            std::vector<bool> hit(n, false);
            for (int a = 0; a < n; ++a) {
                if (map[a] < 0 || hit[map[a]]) return std::nullopt;
                hit[map[a]] = true;
            }
            return map;
        }
        for (int m : cand) {
            if (order_of(M, m) != order_of(H, gens[pos])) continue;
            images[pos] = m;
            auto r = attempt(pos + 1);
            if (r) return r;
        }
        return std::nullopt;
    };
    return attempt(0);
}

}  // namespace detail

/// complete list of irreducibles (with invariant inner products)
inline std::vector<GroupRep> irreducible_reps(const FiniteGroupTable& G) {
    using detail::mat2;
    int n = G.order();
    bool abelian = true;
    for (int a = 0; a < n && abelian; ++a)
        for (int b = 0; b < n && abelian; ++b)
            if (G.op(a, b) != G.op(b, a)) abelian = false;
    if (abelian) return detail::abelian_characters(G);

    auto build_on = [&](const FiniteGroupTable& model,
                        const std::vector<GroupRep>& model_reps) -> std::vector<GroupRep> {
        auto iso = detail::find_isomorphism(G, model);
        if (!iso) throw DomainError("irreducible_reps: could not match " + G.name);
        std::vector<GroupRep> out;
        for (const auto& mr : model_reps) {
            GroupRep r;
            r.name = mr.name;
            r.dim = mr.dim;
            r.mats.resize(n, Mat<Scalar>(mr.dim, mr.dim));
            for (int g = 0; g < n; ++g) r.mats[g] = mr.mats[(*iso)[g]];
            r.inner = mr.inner;
            out.push_back(std::move(r));
        }
        return out;
    };

    if (n == 6) {  // S3
        FiniteGroupTable M = symmetric_group(3);
        std::vector<GroupRep> reps;
        int t = -1, c = -1;  // a transposition and a 3-cycle
        for (int g = 0; g < 6; ++g) {
            int o = 1, x = g;
            while (x != M.identity) { x = M.op(x, g); ++o; }
            if (o == 2 && t < 0) t = g;
            if (o == 3 && c < 0) c = g;
        }
        auto one = [&](const std::string& nm, Scalar vt) {
            Mat<Scalar> mt(1, 1), mc(1, 1);
            mt.at(0, 0) = vt;
            mc.at(0, 0) = Scalar(1);
            return detail::rep_from_generators(M, nm, {t, c}, {mt, mc}, 1);
        };
        reps.push_back(one("trivial", Scalar(1)));
        reps.push_back(one("sign", Scalar(-1)));
        reps.push_back(detail::rep_from_generators(
            M, "standard", {t, c},
            {mat2(Scalar(-1), Scalar(1), Scalar(0), Scalar(1)),
             mat2(Scalar(0), Scalar(-1), Scalar(1), Scalar(-1))},
            2));
        return build_on(M, reps);
    }
    if (n == 8) {
        int order2 = 0;
        for (int g = 0; g < n; ++g)
            if (g != G.identity && G.op(g, g) == G.identity) ++order2;
        if (order2 == 1) {  // Q8
            FiniteGroupTable M = quaternion_group();
            int gi = M.index_of_name("i"), gj = M.index_of_name("j");
            std::vector<GroupRep> reps;
            for (auto [vi, vj] : std::vector<std::pair<long, long>>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
                Mat<Scalar> mi(1, 1), mj(1, 1);
                mi.at(0, 0) = Scalar(vi);
                mj.at(0, 0) = Scalar(vj);
                reps.push_back(detail::rep_from_generators(
                    M, std::string("chi") + std::to_string(reps.size()), {gi, gj}, {mi, mj}, 1));
            }
            Scalar I = Scalar(Cyclo::i());
            reps.push_back(detail::rep_from_generators(
                M, "spin", {gi, gj},
                {mat2(I, Scalar(0), Scalar(0), -I), mat2(Scalar(0), Scalar(-1), Scalar(1), Scalar(0))},
                2));
            return build_on(M, reps);
        }
        // D4: rotation r (order 4), reflection s (order 2 outside <r>)
        FiniteGroupTable M = dihedral4_group();
        int r = -1;
        for (int g = 0; g < 8; ++g) {
            int o = 1, x = g;
            while (x != M.identity) { x = M.op(x, g); ++o; }
            if (o == 4) { r = g; break; }
        }
        auto in_r = closure_of(M, {r});
        int s = -1;
        for (int g = 0; g < 8 && s < 0; ++g)
            if (std::find(in_r.begin(), in_r.end(), g) == in_r.end()) s = g;
        std::vector<GroupRep> reps;
        for (auto [vr, vs] : std::vector<std::pair<long, long>>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
            Mat<Scalar> mr(1, 1), ms(1, 1);
            mr.at(0, 0) = Scalar(vr);
            ms.at(0, 0) = Scalar(vs);
            reps.push_back(detail::rep_from_generators(
                M, std::string("chi") + std::to_string(reps.size()), {r, s}, {mr, ms}, 1));
        }
        reps.push_back(detail::rep_from_generators(
            M, "standard", {r, s},
            {mat2(Scalar(0), Scalar(-1), Scalar(1), Scalar(0)),
             mat2(Scalar(1), Scalar(0), Scalar(0), Scalar(-1))},
            2));
        return build_on(M, reps);
    }
    if (n == 12) {  // A4: generators (12)(34) and (123)
        FiniteGroupTable M = G;  // already a permutation-type table; build directly
        int a2 = -1, a3 = -1;
        for (int g = 0; g < n; ++g) {
            int o = 1, x = g;
            while (x != G.identity) { x = G.op(x, g); ++o; }
            if (o == 2 && a2 < 0) a2 = g;
        }
        for (int g = 0; g < n; ++g) {
            int o = 1, x = g;
            while (x != G.identity) { x = G.op(x, g); ++o; }
            if (o == 3 && static_cast<int>(closure_of(G, {a2, g}).size()) == 12) { a3 = g; break; }
        }
        std::vector<GroupRep> reps;
        Cyclo w = Cyclo::omega3();
        for (int k = 0; k < 3; ++k) {
            Mat<Scalar> m2(1, 1), m3(1, 1);
            m2.at(0, 0) = Scalar(1);
            Cyclo wk(1);
            for (int t = 0; t < k; ++t) wk = wk * w;
            m3.at(0, 0) = Scalar(wk);
            reps.push_back(detail::rep_from_generators(M, "chi" + std::to_string(k), {a2, a3},
                                                       {m2, m3}, 1));
        }
        // 3-dim standard rep from any faithful 3-dim orthogonal model:
        // realize A4 on the sum-zero subspace of the 4-point permutation action
        // by matching against the alternating subgroup of S4
        FiniteGroupTable S4 = symmetric_group(4);
        std::vector<int> evens;
        {
            // elements of S4 that are even: order-3 closure of 3-cycles
            std::vector<int> three;
            for (int g = 0; g < 24; ++g) {
                int o = 1, x = g;
                while (x != S4.identity) { x = S4.op(x, g); ++o; }
                if (o == 3) three.push_back(g);
            }
            evens = closure_of(S4, three);
        }
        SubgroupSpec a4spec{&S4, evens};
        std::vector<int> embed;
        FiniteGroupTable A4m = a4spec.as_group(&embed);
        // permutation matrices on e1-e2, e2-e3, e3-e4 for the embedded elements
        auto perm_mat = [&](int s4_elem) {
            // recover the permutation from its action on the Cayley table of S4 is
            // overkill; instead use the stored cycle names via index juggling:
            // S4 elements are the sorted permutations of {0,1,2,3}
            auto perms = detail::all_permutations(4);
            std::sort(perms.begin(), perms.end());
            const auto& p = perms[s4_elem];
            Mat<Scalar> m4(4, 4);
            for (int i = 0; i < 4; ++i) m4.at(p[i], i) = Scalar(1);
            Mat<Scalar> basis(4, 3), dual(3, 4);
            for (int c = 0; c < 3; ++c) { basis.at(c, c) = Scalar(1); basis.at(c + 1, c) = Scalar(-1); }
            // coordinates on the sum-zero subspace are partial sums
            for (int r0 = 0; r0 < 3; ++r0)
                for (int c = 0; c <= r0; ++c) dual.at(r0, c) = Scalar(1);
            return dual * (m4 * basis);
        };
        GroupRep std3;
        std3.name = "standard3";
        std3.dim = 3;
        std3.mats.resize(12, Mat<Scalar>(3, 3));
        auto iso = detail::find_isomorphism(G, A4m);
        if (!iso) throw DomainError("irreducible_reps: A4 match failed");
        for (int g = 0; g < 12; ++g) std3.mats[g] = perm_mat(embed[(*iso)[g]]);
        std3.inner = detail::weyl_inner(std3.mats, 3);
        reps.push_back(std::move(std3));
        return reps;
    }
    if (n == 24) {  // S4
        FiniteGroupTable M = symmetric_group(4);
        auto perms = detail::all_permutations(4);
        std::sort(perms.begin(), perms.end());
        auto sign_of = [&](int g) {
            const auto& p = perms[g];
            int inv = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (p[i] > p[j]) ++inv;
            return inv % 2 == 0 ? 1 : -1;
        };
        auto perm3 = [&](int g) {
            const auto& p = perms[g];
            Mat<Scalar> m4(4, 4);
            for (int i = 0; i < 4; ++i) m4.at(p[i], i) = Scalar(1);
            Mat<Scalar> basis(4, 3), dual(3, 4);
            for (int c = 0; c < 3; ++c) { basis.at(c, c) = Scalar(1); basis.at(c + 1, c) = Scalar(-1); }
            for (int r0 = 0; r0 < 3; ++r0)
                for (int c = 0; c <= r0; ++c) dual.at(r0, c) = Scalar(1);
            return dual * (m4 * basis);
        };
        std::vector<GroupRep> reps;
        {
            GroupRep r;
            r.name = "trivial"; r.dim = 1;
            for (int g = 0; g < 24; ++g) r.mats.push_back(Mat<Scalar>::identity(1));
            r.inner = Mat<Scalar>::identity(1);
            reps.push_back(r);
        }
        {
            GroupRep r;
            r.name = "sign"; r.dim = 1;
            for (int g = 0; g < 24; ++g) {
                Mat<Scalar> m(1, 1);
                m.at(0, 0) = Scalar(sign_of(g));
                r.mats.push_back(m);
            }
            r.inner = Mat<Scalar>::identity(1);
            reps.push_back(r);
        }
        {
            // 2-dim: pull back the S3 standard along S4 -> S3 (action on the
            // three coordinate pairings {12|34, 13|24, 14|23})
            auto pairing_of = [&](int g) {
                const auto& p = perms[g];
                // the partition {0,k | rest} maps to {p(0),p(k) | rest}; index
                // partitions by the partner of 0
                std::array<int, 3> dst{};
                for (int k = 1; k <= 3; ++k) {
                    int pa = p[0], pb = p[k];
                    int partner_of_0;
                    if (pa == 0) partner_of_0 = pb;
                    else if (pb == 0) partner_of_0 = pa;
                    else {
                        // pair not containing 0; 0 sits in the complementary pair
                        std::array<bool, 4> used{};
                        used[pa] = used[pb] = true;
                        std::vector<int> rest;
                        for (int x = 0; x < 4; ++x)
                            if (!used[x]) rest.push_back(x);
                        partner_of_0 = rest[0] == 0 ? rest[1] : rest[0];
                    }
                    dst[k - 1] = partner_of_0 - 1;
                }
                return dst;  // permutation of {0,1,2} in image positions
            };
            FiniteGroupTable S3m = symmetric_group(3);
            auto perms3 = detail::all_permutations(3);
            std::sort(perms3.begin(), perms3.end());
            auto s3_index = [&](const std::array<int, 3>& d) {
                std::vector<int> v = {d[0], d[1], d[2]};
                auto it = std::lower_bound(perms3.begin(), perms3.end(), v);
                return static_cast<int>(it - perms3.begin());
            };
            auto s3reps = irreducible_reps(S3m);
            const GroupRep* std2 = nullptr;
            for (const auto& r : s3reps)
                if (r.dim == 2) std2 = &r;
            GroupRep r;
            r.name = "partition2"; r.dim = 2;
            for (int g = 0; g < 24; ++g) r.mats.push_back(std2->mats[s3_index(pairing_of(g))]);
            r.inner = std2->inner;
            reps.push_back(r);
        }
        {
            GroupRep r;
            r.name = "standard3"; r.dim = 3;
            for (int g = 0; g < 24; ++g) r.mats.push_back(perm3(g));
            r.inner = detail::weyl_inner(r.mats, 3);
            reps.push_back(r);
        }
        {
            GroupRep r;
            r.name = "standard3xsign"; r.dim = 3;
            for (int g = 0; g < 24; ++g) {
                Mat<Scalar> m = perm3(g);
                if (sign_of(g) < 0) {
                    Mat<Scalar> neg(3, 3);
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) neg.at(i, j) = -m.at(i, j);
                    m = neg;
                }
                r.mats.push_back(m);
            }
            r.inner = detail::weyl_inner(r.mats, 3);
            reps.push_back(r);
        }
        return build_on(M, reps);
    }
    throw DomainError("irreducible_reps: unsupported group order " + std::to_string(n));
}

}  // namespace qinduct
