/// Finite groups as exact quantum-group backends: the function algebra
/// Fun(G) and the group algebra C[G], dual to each other, plus subgroup
/// machinery and the generic dual coproduct needed by the isometry checks.

#pragma once

#include "qinduct/linalg.hpp"
#include "qinduct/ops.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qinduct {

struct FiniteGroupTable {
    std::string name;
    std::vector<std::string> elem_names;
    std::vector<std::vector<int>> cayley;  // cayley[a][b] = a*b
    std::vector<int> inverse;
    int identity = -1;

    int order() const { return static_cast<int>(elem_names.size()); }
    int op(int a, int b) const { return cayley[a][b]; }

    int index_of_name(const std::string& nm) const {
        for (int i = 0; i < order(); ++i)
            if (elem_names[i] == nm) return i;
        throw DomainError(name + ": unknown element " + nm);
    }

    void finalize() {
        int n = order();
        identity = -1;
        for (int e = 0; e < n; ++e) {
            bool is_id = true;
            for (int a = 0; a < n; ++a)
                if (op(e, a) != a || op(a, e) != a) { is_id = false; break; }
            if (is_id) { identity = e; break; }
        }
        if (identity < 0) throw DomainError(name + ": no identity element");
        inverse.assign(n, -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (op(a, b) == identity && op(b, a) == identity) inverse[a] = b;
        for (int a = 0; a < n; ++a)
            if (inverse[a] < 0) throw DomainError(name + ": element without inverse");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (op(op(a, b), c) != op(a, op(b, c)))
                        throw DomainError(name + ": multiplication is not associative");
    }

    /// conjugacy classes, as lists of element indices (identity class first)
    std::vector<std::vector<int>> conjugacy_classes() const {
        int n = order();
        std::vector<int> cls(n, -1);
        std::vector<std::vector<int>> classes;
        for (int g = 0; g < n; ++g) {
            if (cls[g] >= 0) continue;
            std::vector<int> c;
            for (int x = 0; x < n; ++x) {
                int h = op(op(x, g), inverse[x]);
                if (cls[h] < 0) {
                    cls[h] = static_cast<int>(classes.size());
                    c.push_back(h);
                }
            }
            std::sort(c.begin(), c.end());
            classes.push_back(c);
        }
        return classes;
    }
};

// ---------------------------------------------------------------------------
// presets
// ---------------------------------------------------------------------------

inline FiniteGroupTable cyclic_group(int n) {
    FiniteGroupTable g;
    g.name = "Z" + std::to_string(n);
    for (int i = 0; i < n; ++i) g.elem_names.push_back("g" + std::to_string(i));
    g.cayley.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.cayley[a][b] = (a + b) % n;
    g.finalize();
    return g;
}

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::string perm_name(const std::vector<int>& p) {
    // cycle notation, e.g. "(12)(34)"; identity prints "e"
    int n = static_cast<int>(p.size());
    std::vector<bool> seen(n, false);
    std::string s;
    for (int i = 0; i < n; ++i) {
        if (seen[i] || p[i] == i) continue;
        std::string cyc = "(";
        int j = i;
        while (!seen[j]) {
            seen[j] = true;
            cyc += std::to_string(j + 1);
            j = p[j];
        }
        s += cyc + ")";
    }
    return s.empty() ? "e" : s;
}

inline FiniteGroupTable group_from_perms(const std::string& name,
                                         std::vector<std::vector<int>> perms) {
    std::sort(perms.begin(), perms.end());
    FiniteGroupTable g;
    g.name = name;
    int n = static_cast<int>(perms.size());
    auto index_of = [&](const std::vector<int>& p) {
        auto it = std::lower_bound(perms.begin(), perms.end(), p);
        return static_cast<int>(it - perms.begin());
    };
    for (const auto& p : perms) g.elem_names.push_back(perm_name(p));
    g.cayley.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            // (p q)(x) = p(q(x))
            std::vector<int> r(perms[a].size());
            for (size_t x = 0; x < r.size(); ++x) r[x] = perms[a][perms[b][x]];
            g.cayley[a][b] = index_of(r);
        }
    g.finalize();
    return g;
}

}  // namespace detail

inline FiniteGroupTable symmetric_group(int n) {
    return detail::group_from_perms("S" + std::to_string(n), detail::all_permutations(n));
}

/// dihedral group of the square (order 8), as permutations of the vertices
inline FiniteGroupTable dihedral4_group() {
    std::vector<std::vector<int>> gens = {{1, 2, 3, 0}, {1, 0, 3, 2}};  // rotation, reflection
    std::set<std::vector<int>> elems = {{0, 1, 2, 3}};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> cur(elems.begin(), elems.end());
        for (const auto& a : cur)
            for (const auto& g : gens) {
                std::vector<int> r(4);
                for (int x = 0; x < 4; ++x) r[x] = g[a[x]];
                if (elems.insert(r).second) grew = true;
            }
    }
    return detail::group_from_perms("D4", {elems.begin(), elems.end()});
}

inline FiniteGroupTable quaternion_group() {
    // {1,-1,i,-i,j,-j,k,-k} with the usual relations
    FiniteGroupTable g;
    g.name = "Q8";
    g.elem_names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    auto enc = [](int unit, int sign) { return 2 * unit + (sign < 0 ? 1 : 0); };
    // unit indices: 0=1, 1=i, 2=j, 3=k
    auto mul_unit = [](int a, int b, int& sgn) -> int {
        static const int tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sg[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
        sgn = sg[a][b];
        return tab[a][b];
    };
    g.cayley.assign(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a / 2, sa = a % 2 ? -1 : 1;
            int ub = b / 2, sb = b % 2 ? -1 : 1;
            int sgn;
            int u = mul_unit(ua, ub, sgn);
            g.cayley[a][b] = enc(u, sa * sb * sgn);
        }
    g.finalize();
    return g;
}

inline FiniteGroupTable group_preset(const std::string& name) {
    if (name == "S3") return symmetric_group(3);
    if (name == "S4") return symmetric_group(4);
    if (name == "D4") return dihedral4_group();
    if (name == "Q8") return quaternion_group();
    if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'C'))
        return cyclic_group(std::stoi(name.substr(1)));
    throw DomainError("unknown group preset: " + name);
}

// ---------------------------------------------------------------------------
// subgroups
// ---------------------------------------------------------------------------

struct SubgroupSpec {
    const FiniteGroupTable* parent = nullptr;
    std::vector<int> members;  // sorted element indices, closed, containing e

    bool validate() const {
        std::set<int> s(members.begin(), members.end());
        if (!s.count(parent->identity)) return false;
        for (int a : members) {
            if (!s.count(parent->inverse[a])) return false;
            for (int b : members)
                if (!s.count(parent->op(a, b))) return false;
        }
        return true;
    }

    /// the subgroup as a group table of its own, remembering the embedding
    FiniteGroupTable as_group(std::vector<int>* embedding = nullptr) const {
        FiniteGroupTable g;
        g.name = parent->name + "-sub" + std::to_string(members.size());
        std::vector<int> pos(parent->order(), -1);
        for (size_t i = 0; i < members.size(); ++i) {
            pos[members[i]] = static_cast<int>(i);
            g.elem_names.push_back(parent->elem_names[members[i]]);
        }
        int n = static_cast<int>(members.size());
        g.cayley.assign(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) g.cayley[a][b] = pos[parent->op(members[a], members[b])];
        g.finalize();
        if (embedding) *embedding = members;
        return g;
    }
};

inline std::vector<int> closure_of(const FiniteGroupTable& G, std::vector<int> gens) {
    std::set<int> s(gens.begin(), gens.end());
    s.insert(G.identity);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(s.begin(), s.end());
        for (int a : cur)
            for (int b : cur)
                if (s.insert(G.op(a, b)).second) grew = true;
    }
    return {s.begin(), s.end()};
}

/// every subgroup (not just up to conjugacy); fine at order <= 24
inline std::vector<SubgroupSpec> all_subgroups(const FiniteGroupTable& G) {
    std::set<std::vector<int>> found;
    found.insert({G.identity});
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> cur(found.begin(), found.end());
        for (const auto& h : cur)
            for (int g = 0; g < G.order(); ++g) {
                std::vector<int> gens = h;
                gens.push_back(g);
                auto c = closure_of(G, gens);
                if (found.insert(c).second) grew = true;
            }
    }
    std::vector<SubgroupSpec> out;
    for (const auto& m : found) out.push_back({&G, m});
    std::sort(out.begin(), out.end(), [](const SubgroupSpec& a, const SubgroupSpec& b) {
        return a.members.size() < b.members.size() ||
               (a.members.size() == b.members.size() && a.members < b.members);
    });
    return out;
}

// ---------------------------------------------------------------------------
// quantum-group descriptors
// ---------------------------------------------------------------------------

namespace detail {

template <class R>
void finite_defaults(QGroup<R>& A) {
    A.axis_cutoff = {};
    A.conv_growth = {};
    A.haar_support_max = {};
    A.label_size.assign(A.label_names.size(), {});
}

}  // namespace detail

/// Fun(G): basis of delta functions, pointwise product, haar = 1/|G| sum
inline std::shared_ptr<QGroup<Scalar>> fun_qgroup(const FiniteGroupTable& G) {
    auto A = std::make_shared<QGroup<Scalar>>();
    int n = G.order();
    A->name = "Fun(" + G.name + ")";
    for (int g = 0; g < n; ++g) A->label_names.push_back("d[" + G.elem_names[g] + "]");
    detail::finite_defaults(*A);

    A->mult = [n](int a, int b) {
        Expansion<Scalar> e;
        if (a == b) e.add(a, Scalar(1));
        return e;
    };
    FiniteGroupTable Gc = G;
    A->comult = [Gc, n](int g) {
        TensorExpansion<Scalar> e;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (Gc.op(a, b) == g) e.add({a, b}, Scalar(1));
        return e;
    };
    int id = G.identity;
    A->counit = [id](int g) { return g == id ? Scalar(1) : Scalar(0); };
    std::vector<int> inv = G.inverse;
    A->antipode = [inv](int g) {
        Expansion<Scalar> e;
        e.add(inv[g], Scalar(1));
        return e;
    };
    A->antipode_inv = A->antipode;
    A->star = [](int g) {
        Expansion<Scalar> e;
        e.add(g, Scalar(1));
        return e;
    };
    A->haar = [n](int) { return Scalar(1, n); };
    A->phi_product = [n](int a, int b) { return a == b ? Scalar(1, n) : Scalar(0); };
    A->modular = Multiplier<Scalar>::identity();
    A->modular_sqrt = A->modular;
    A->modular_inv_sqrt = A->modular;
    A->unimodular = true;
    A->unit = AlgElem<Scalar>(A.get());
    for (int g = 0; g < n; ++g) A->unit.add(g, Scalar(1));
    AlgElem<Scalar> unit_elem = A->unit;
    A->modular.element = unit_elem;
    A->modular_sqrt.element = unit_elem;
    A->modular_inv_sqrt.element = unit_elem;
    return A;
}

/// C[G]: group-like basis, haar picks out the identity coefficient
inline std::shared_ptr<QGroup<Scalar>> group_alg_qgroup(const FiniteGroupTable& G) {
    auto A = std::make_shared<QGroup<Scalar>>();
    int n = G.order();
    A->name = "C[" + G.name + "]";
    for (int g = 0; g < n; ++g) A->label_names.push_back("l[" + G.elem_names[g] + "]");
    detail::finite_defaults(*A);

    FiniteGroupTable Gc = G;
    A->mult = [Gc](int a, int b) {
        Expansion<Scalar> e;
        e.add(Gc.op(a, b), Scalar(1));
        return e;
    };
    A->comult = [](int g) {
        TensorExpansion<Scalar> e;
        e.add({g, g}, Scalar(1));
        return e;
    };
    A->counit = [](int) { return Scalar(1); };
    std::vector<int> inv = G.inverse;
    A->antipode = [inv](int g) {
        Expansion<Scalar> e;
        e.add(inv[g], Scalar(1));
        return e;
    };
    A->antipode_inv = A->antipode;
    A->star = A->antipode;  // lambda_g^bar = lambda_{g^-1}, antilinear extension
    int id = G.identity;
    A->haar = [id](int g) { return g == id ? Scalar(1) : Scalar(0); };
    A->phi_product = [Gc, id](int a, int b) {
        return Gc.op(a, b) == id ? Scalar(1) : Scalar(0);
    };
    A->modular = Multiplier<Scalar>::identity();
    A->modular_sqrt = A->modular;
    A->modular_inv_sqrt = A->modular;
    A->unimodular = true;
    A->unit = AlgElem<Scalar>(A.get(), id);
    A->modular.element = A->unit;
    A->modular_sqrt.element = A->unit;
    A->modular_inv_sqrt.element = A->unit;
    return A;
}

/// generic dual coproduct: the adjoint of multiplication under the natural
/// pairing (f,g) = phi(g f); finite-dimensional backends only
inline std::function<TensorExpansion<Scalar>(int)> dual_comul_table(
    const std::shared_ptr<QGroup<Scalar>>& A) {
    int n = static_cast<int>(A->dim());
    Mat<Scalar> P(n, n);  // P[a][x] = (b_a, b_x) = phi(b_x b_a)
    for (int a = 0; a < n; ++a)
        for (int x = 0; x < n; ++x) P.at(a, x) = A->phi_product(x, a);
    Mat<Scalar> Pinv = inverse(P);
    auto cache = std::make_shared<Memo<int, TensorExpansion<Scalar>>>();
    return [A, Pinv, n, cache](int d) {
        return cache->get(d, [&] {
            // T[a][b] = (b_a b_b, b_d); coefficients c = Pinv^T T Pinv^T
            Mat<Scalar> T(n, n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    Expansion<Scalar> p = A->mult(a, b);
                    Scalar acc;
                    for (const auto& [z, c] : p.terms) acc += c * A->phi_product(d, z);
                    T.at(a, b) = acc;
                }
            TensorExpansion<Scalar> e;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    Scalar acc;
                    for (int a = 0; a < n; ++a) {
                        if (RingOps<Scalar>::is_zero(Pinv.at(x, a))) continue;
                        for (int b = 0; b < n; ++b)
                            acc += Pinv.at(x, a) * T.at(a, b) * Pinv.at(y, b);
                    }
                    e.add({x, y}, acc);
                }
            return e;
        });
    };
}

/// restriction morphism Fun(G) -> Fun(B) for a subgroup B <= G
struct FinitePi {
    std::shared_ptr<QGroup<Scalar>> source, target;
    std::vector<int> image_label;  // source label -> target label or -1

    AlgElem<Scalar> apply(const AlgElem<Scalar>& f) const {
        AlgElem<Scalar> r(target.get());
        for (const auto& [l, c] : f.coeffs)
            if (image_label[l] >= 0) r.add(image_label[l], c);
        return r;
    }
};

inline FinitePi subgroup_pi(const FiniteGroupTable& G, const SubgroupSpec& B) {
    if (!B.validate()) throw DomainError("subgroup_pi: subset is not a subgroup");
    FinitePi pi;
    pi.source = fun_qgroup(G);
    std::vector<int> embed;
    FiniteGroupTable Bg = B.as_group(&embed);
    pi.target = fun_qgroup(Bg);
    pi.image_label.assign(G.order(), -1);
    for (size_t i = 0; i < embed.size(); ++i) pi.image_label[embed[i]] = static_cast<int>(i);
    return pi;
}

}  // namespace qinduct
