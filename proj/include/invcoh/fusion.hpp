#pragma once

// Skeletal fusion-category data: fusion ring plus associator (F-symbol)
// tables, either computed from concrete group representations or supplied
// directly, with a pentagon validator.

#include <map>

#include "rep.hpp"

namespace invcoh {

// Index of one fusion tree through a chosen middle channel.
struct TreeIndex {
    size_t mid;   // intermediate label
    size_t i;     // multiplicity index of the inner node
    size_t j;     // multiplicity index of the outer node
};

inline std::vector<TreeIndex> left_trees(const FusionTable& f, size_t x, size_t y, size_t z, size_t w) {
    std::vector<TreeIndex> out;
    for (size_t u = 0; u < f.k; ++u)
        for (long i = 0; i < f.n(x, y, u); ++i)
            for (long j = 0; j < f.n(u, z, w); ++j) out.push_back({u, (size_t)i, (size_t)j});
    return out;
}

inline std::vector<TreeIndex> right_trees(const FusionTable& f, size_t x, size_t y, size_t z, size_t w) {
    std::vector<TreeIndex> out;
    for (size_t v = 0; v < f.k; ++v)
        for (long kk = 0; kk < f.n(y, z, v); ++kk)
            for (long l = 0; l < f.n(x, v, w); ++l) out.push_back({v, (size_t)kk, (size_t)l});
    return out;
}

class SkeletalCategory {
public:
    std::vector<std::string> labels;
    size_t unit = 0;
    std::vector<size_t> dual;
    CtxPtr ctx;
    FusionTable fus;
    // F[(x,y,z,w)]: rows = left trees, cols = right trees, expressing each
    // left tree in the right-tree basis.
    std::map<std::array<size_t, 4>, Matrix> f_table;

    size_t nlabels() const { return labels.size(); }

    size_t label_index(const std::string& s) const {
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return i;
        throw std::invalid_argument("unknown label: " + s);
    }

    bool has_trees(size_t x, size_t y, size_t z, size_t w) const {
        for (size_t u = 0; u < fus.k; ++u)
            if (fus.n(x, y, u) > 0 && fus.n(u, z, w) > 0) return true;
        return false;
    }

    const Matrix& f(size_t x, size_t y, size_t z, size_t w) const {
        auto it = f_table.find({x, y, z, w});
        if (it == f_table.end()) throw std::invalid_argument("missing F-matrix");
        return it->second;
    }

    // Labels g for which g (x) y is a single simple for every y.
    std::vector<size_t> invertibles() const {
        std::vector<size_t> inv;
        for (size_t x = 0; x < nlabels(); ++x) {
            bool ok = true;
            for (size_t y = 0; y < nlabels() && ok; ++y) {
                long s = 0;
                for (size_t z = 0; z < nlabels(); ++z) s += fus.n(x, y, z);
                if (s != 1) ok = false;
            }
            if (ok) inv.push_back(x);
        }
        return inv;
    }

    size_t tensor_invertible(size_t g, size_t y) const {
        // unique z with N^{gy}_z = 1 when g is invertible
        for (size_t z = 0; z < nlabels(); ++z)
            if (fus.n(g, y, z) > 0) return z;
        throw std::logic_error("fusion row empty");
    }
};

inline void compute_duals(SkeletalCategory& c) {
    c.dual.assign(c.nlabels(), c.nlabels());
    for (size_t x = 0; x < c.nlabels(); ++x) {
        for (size_t y = 0; y < c.nlabels(); ++y)
            if (c.fus.n(x, y, c.unit) > 0) {
                c.dual[x] = y;
                break;
            }
        if (c.dual[x] == c.nlabels()) throw std::invalid_argument("label without dual");
    }
}

// ---------------------------------------------------------------------------
// Concrete model: a finite group with an exhaustive set of unitary irreps and
// all intertwiner channel bases.

struct ConcreteModel {
    std::string name;
    FiniteGroup group;
    std::vector<Irrep> irreps;
    size_t unit = 0;
    FusionTable fus;
    CtxPtr ctx;
    std::map<std::array<size_t, 3>, IntertwinerBasis> bases;

    const IntertwinerBasis& basis(size_t x, size_t y, size_t z) const {
        return bases.at({x, y, z});
    }
    size_t nlabels() const { return irreps.size(); }
};

inline ConcreteModel make_concrete_model(std::string name, FiniteGroup g, std::vector<Irrep> irreps) {
    ConcreteModel m;
    m.name = std::move(name);
    m.group = std::move(g);
    m.irreps = std::move(irreps);
    m.ctx = m.irreps[0].ctx();
    m.fus = fusion_table(m.group, m.irreps);
    for (size_t x = 0; x < m.irreps.size(); ++x)
        if (m.irreps[x].dim() == 1 && m.irreps[x].character(0).is_one()) {
            bool trivial = true;
            for (size_t a = 0; a < m.group.order(); ++a)
                if (!m.irreps[x].character((int)a).is_one()) trivial = false;
            if (trivial) {
                m.unit = x;
                break;
            }
        }
    for (size_t x = 0; x < m.nlabels(); ++x)
        for (size_t y = 0; y < m.nlabels(); ++y)
            for (size_t z = 0; z < m.nlabels(); ++z) {
                if (m.fus.n(x, y, z) == 0) continue;
                IntertwinerBasis b = intertwiner_basis(m.group, m.irreps, x, y, z);
                if ((long)b.maps.size() != m.fus.n(x, y, z))
                    throw std::logic_error("intertwiner count disagrees with fusion multiplicity");
                m.bases[{x, y, z}] = std::move(b);
            }
    return m;
}

// Left/right tree vectors as explicit maps H_w -> H_x (x) H_y (x) H_z.
inline Matrix concrete_left_tree(const ConcreteModel& m, size_t x, size_t y, size_t z, size_t w,
                                 const TreeIndex& t) {
    const Matrix& inner = m.basis(x, y, t.mid).maps[t.i];     // H_mid -> H_x (x) H_y
    const Matrix& outer = m.basis(t.mid, z, w).maps[t.j];     // H_w -> H_mid (x) H_z
    Matrix idz = Matrix::identity(m.ctx, m.irreps[z].dim());
    return kron(inner, idz) * outer;
}

inline Matrix concrete_right_tree(const ConcreteModel& m, size_t x, size_t y, size_t z, size_t w,
                                  const TreeIndex& t) {
    const Matrix& inner = m.basis(y, z, t.mid).maps[t.i];
    const Matrix& outer = m.basis(x, t.mid, w).maps[t.j];
    Matrix idx = Matrix::identity(m.ctx, m.irreps[x].dim());
    return kron(idx, inner) * outer;
}

// Expansion of each left tree in the right-tree basis via the dual trees:
// F[(uij),(vkl)] = (A^{xv;w}_l)^+ (id_x (x) (A^{yz;v}_k)^+) L_{(uij)}, which
// must be a scalar multiple of id_w.
inline Matrix concrete_f_matrix(const ConcreteModel& m, size_t x, size_t y, size_t z, size_t w) {
    auto lt = left_trees(m.fus, x, y, z, w);
    auto rt = right_trees(m.fus, x, y, z, w);
    Matrix f(m.ctx, lt.size(), rt.size());
    size_t dw = m.irreps[w].dim();
    Matrix idx = Matrix::identity(m.ctx, m.irreps[x].dim());
    for (size_t a = 0; a < lt.size(); ++a) {
        Matrix l = concrete_left_tree(m, x, y, z, w, lt[a]);
        for (size_t b = 0; b < rt.size(); ++b) {
            const auto& t = rt[b];
            const Matrix& innerdual = m.basis(y, z, t.mid).duals[t.i];
            const Matrix& outerdual = m.basis(x, t.mid, w).duals[t.j];
            Matrix coeff = outerdual * (kron(idx, innerdual) * l);
            // coeff must be scalar * id_w
            Cyclo scal = coeff(0, 0);
            Matrix expected = scal * Matrix::identity(m.ctx, dw);
            if (coeff != expected) throw std::logic_error("tree expansion is not scalar");
            f(a, b) = scal;
        }
    }
    return f;
}

inline SkeletalCategory to_skeletal(const ConcreteModel& m, bool cross_check = false) {
    SkeletalCategory c;
    for (const auto& r : m.irreps) c.labels.push_back(r.label());
    c.unit = m.unit;
    c.ctx = m.ctx;
    c.fus = m.fus;
    compute_duals(c);
    for (size_t x = 0; x < c.nlabels(); ++x)
        for (size_t y = 0; y < c.nlabels(); ++y)
            for (size_t z = 0; z < c.nlabels(); ++z)
                for (size_t w = 0; w < c.nlabels(); ++w) {
                    if (!c.has_trees(x, y, z, w)) continue;
                    Matrix f = concrete_f_matrix(m, x, y, z, w);
                    if (cross_check) {
                        // Independent route: stack right trees and solve.
                        auto lt = left_trees(m.fus, x, y, z, w);
                        auto rt = right_trees(m.fus, x, y, z, w);
                        size_t dim = m.irreps[x].dim() * m.irreps[y].dim() * m.irreps[z].dim() *
                                     m.irreps[w].dim();
                        Matrix rstack(m.ctx, dim, rt.size());
                        for (size_t b = 0; b < rt.size(); ++b) {
                            auto v = concrete_right_tree(m, x, y, z, w, rt[b]).vec();
                            for (size_t i = 0; i < dim; ++i) rstack(i, b) = v[i];
                        }
                        for (size_t a = 0; a < lt.size(); ++a) {
                            auto lv = concrete_left_tree(m, x, y, z, w, lt[a]).vec();
                            LinearSolution sol = solve_linear(rstack, lv);
                            if (!sol.consistent || !sol.nullbasis.empty())
                                throw std::logic_error("tree basis expansion failed");
                            for (size_t b = 0; b < rt.size(); ++b)
                                if (sol.particular[b] != f(a, b))
                                    throw std::logic_error("F-matrix cross-check failed");
                        }
                    }
                    c.f_table[{x, y, z, w}] = std::move(f);
                }
    return c;
}

// ---------------------------------------------------------------------------
// Bicharacter and the Tambara-Yamagami category over it.

struct Bicharacter {
    FiniteGroup group;   // abelian
    CtxPtr ctx;
    std::vector<Cyclo> table; // value at (a,b) = table[a*n+b]

    const Cyclo& at(int a, int b) const { return table[(size_t)a * group.order() + (size_t)b]; }

    void validate() const {
        size_t n = group.order();
        if (!const_cast<FiniteGroup&>(group).is_abelian())
            throw std::invalid_argument("bicharacter group must be abelian");
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                if (at((int)a, (int)b) != at((int)b, (int)a))
                    throw std::invalid_argument("bicharacter not symmetric");
                for (size_t c = 0; c < n; ++c)
                    if (at((int)a, (int)group.mul((int)b, (int)c)) != at((int)a, (int)b) * at((int)a, (int)c))
                        throw std::invalid_argument("bicharacter not multiplicative");
            }
        // Nondegenerate: a |-> chi(a, .) is injective.
        for (size_t a = 1; a < n; ++a) {
            bool allone = true;
            for (size_t b = 0; b < n; ++b)
                if (!at((int)a, (int)b).is_one()) allone = false;
            if (allone) throw std::invalid_argument("bicharacter degenerate");
        }
    }
};

// The Tambara-Yamagami category C(A, chi, tau) with labels A + {rho}.
// tau is restricted to rationals with tau^2 |A| = 1.
inline SkeletalCategory ty_category(const Bicharacter& bc, const Rat& tau) {
    bc.validate();
    size_t n = bc.group.order();
    if (tau * tau * Rat((long)n) != 1)
        throw std::invalid_argument("tau^2 * |A| must equal 1 (rational unitary normalization)");
    SkeletalCategory c;
    c.ctx = bc.ctx;
    for (size_t i = 0; i < n; ++i) c.labels.push_back(bc.group.name((int)i));
    c.labels.push_back("rho");
    size_t rho = n;
    c.unit = 0;
    c.fus.k = n + 1;
    c.fus.mult.assign((n + 1) * (n + 1) * (n + 1), 0);
    auto setn = [&](size_t x, size_t y, size_t z, long v) {
        c.fus.mult[x * (n + 1) * (n + 1) + y * (n + 1) + z] = v;
    };
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) setn(a, b, (size_t)bc.group.mul((int)a, (int)b), 1);
        setn(a, rho, rho, 1);
        setn(rho, a, rho, 1);
        setn(rho, rho, a, 1);
    }
    compute_duals(c);

    Cyclo one(c.ctx, Rat(1));
    auto fset = [&](size_t x, size_t y, size_t z, size_t w, Matrix m) {
        c.f_table[{x, y, z, w}] = std::move(m);
    };
    Matrix m1(c.ctx, 1, 1);
    m1(0, 0) = one;
    for (size_t s = 0; s < n; ++s)
        for (size_t t = 0; t < n; ++t) {
            for (size_t u = 0; u < n; ++u)
                fset(s, t, u, (size_t)bc.group.mul(bc.group.mul((int)s, (int)t), (int)u), m1);
            fset(s, t, rho, rho, m1);
            fset(rho, s, t, rho, m1);
            {
                Matrix m(c.ctx, 1, 1);
                m(0, 0) = bc.at((int)s, (int)t);
                fset(s, rho, t, rho, std::move(m));
            }
        }
    for (size_t s = 0; s < n; ++s)
        for (size_t w = 0; w < n; ++w) {
            fset(s, rho, rho, w, m1);
            fset(rho, rho, s, w, m1);
            Matrix m(c.ctx, 1, 1);
            m(0, 0) = bc.at((int)s, (int)w);
            fset(rho, s, rho, w, std::move(m));
        }
    // (rho, rho, rho; rho): rows u in A, cols v in A, entry tau / chi(u, v).
    Matrix big(c.ctx, n, n);
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v)
            big(u, v) = Cyclo(c.ctx, tau) * bc.at((int)u, (int)v).inverse();
    fset(rho, rho, rho, rho, std::move(big));
    return c;
}

// ---------------------------------------------------------------------------
// Pentagon validation.

struct PentagonViolation {
    size_t x, y, z, t, w;
};

namespace detail {

struct Tuple5Index {
    // index enumeration helpers for the five 4-object tree bases
    const FusionTable& f;
    size_t x, y, z, t, w;

    template <typename Fn>
    void b1(Fn&& fn) const { // ((xy)z)t : (a,i,b,j,k)
        for (size_t a = 0; a < f.k; ++a)
            for (long i = 0; i < f.n(x, y, a); ++i)
                for (size_t b = 0; b < f.k; ++b)
                    for (long j = 0; j < f.n(a, z, b); ++j)
                        for (long k = 0; k < f.n(b, t, w); ++k) fn(a, i, b, j, k);
    }
    template <typename Fn>
    void b2(Fn&& fn) const { // (x(yz))t : (c,p,b,q,k)
        for (size_t c = 0; c < f.k; ++c)
            for (long p = 0; p < f.n(y, z, c); ++p)
                for (size_t b = 0; b < f.k; ++b)
                    for (long q = 0; q < f.n(x, c, b); ++q)
                        for (long k = 0; k < f.n(b, t, w); ++k) fn(c, p, b, q, k);
    }
    template <typename Fn>
    void b3(Fn&& fn) const { // x((yz)t) : (c,p,d,r,s)
        for (size_t c = 0; c < f.k; ++c)
            for (long p = 0; p < f.n(y, z, c); ++p)
                for (size_t d = 0; d < f.k; ++d)
                    for (long r = 0; r < f.n(c, t, d); ++r)
                        for (long s = 0; s < f.n(x, d, w); ++s) fn(c, p, d, r, s);
    }
    template <typename Fn>
    void b4(Fn&& fn) const { // x(y(zt)) : (e,m,d,nn,s)
        for (size_t e = 0; e < f.k; ++e)
            for (long m = 0; m < f.n(z, t, e); ++m)
                for (size_t d = 0; d < f.k; ++d)
                    for (long nn = 0; nn < f.n(y, e, d); ++nn)
                        for (long s = 0; s < f.n(x, d, w); ++s) fn(e, m, d, nn, s);
    }
    template <typename Fn>
    void b5(Fn&& fn) const { // (xy)(zt) : (a,i,e,m,q)
        for (size_t a = 0; a < f.k; ++a)
            for (long i = 0; i < f.n(x, y, a); ++i)
                for (size_t e = 0; e < f.k; ++e)
                    for (long m = 0; m < f.n(z, t, e); ++m)
                        for (long q = 0; q < f.n(a, e, w); ++q) fn(a, i, e, m, q);
    }
    template <typename Fn>
    size_t count(Fn&& enumerate) const {
        size_t c = 0;
        enumerate([&](size_t, long, size_t, long, long) { ++c; });
        return c;
    }
};

// position lookup: enumerate and collect tuples into a map
template <typename Fn>
inline std::map<std::array<long, 5>, size_t> positions(Fn&& enumerate) {
    std::map<std::array<long, 5>, size_t> pos;
    size_t c = 0;
    enumerate([&](size_t a, long b, size_t cc, long d, long e) {
        pos[{(long)a, b, (long)cc, d, e}] = c++;
    });
    return pos;
}

} // namespace detail

inline bool pentagon_holds_at(const SkeletalCategory& c, size_t x, size_t y, size_t z, size_t t,
                              size_t w) {
    detail::Tuple5Index ix{c.fus, x, y, z, t, w};
    auto wrap1 = [&](auto&& fn) { ix.b1(fn); };
    auto wrap2 = [&](auto&& fn) { ix.b2(fn); };
    auto wrap3 = [&](auto&& fn) { ix.b3(fn); };
    auto wrap4 = [&](auto&& fn) { ix.b4(fn); };
    auto wrap5 = [&](auto&& fn) { ix.b5(fn); };
    auto p1 = detail::positions(wrap1);
    auto p2 = detail::positions(wrap2);
    auto p3 = detail::positions(wrap3);
    auto p4 = detail::positions(wrap4);
    auto p5 = detail::positions(wrap5);
    if (p1.empty()) return true;

    const CtxPtr& ctx = c.ctx;
    Matrix m12(ctx, p1.size(), p2.size()), m23(ctx, p2.size(), p3.size()),
        m34(ctx, p3.size(), p4.size()), m15(ctx, p1.size(), p5.size()),
        m54(ctx, p5.size(), p4.size());

    // M12: F^{xyz}_b mixing (a,i,j) -> (cc,p,q), spectators (b,k).
    for (const auto& [t1, r] : p1) {
        auto [a, i, b, j, k] = t1;
        if (!c.has_trees(x, y, z, (size_t)b)) continue;
        const Matrix& f = c.f(x, y, z, (size_t)b);
        auto lt = left_trees(c.fus, x, y, z, (size_t)b);
        auto rt = right_trees(c.fus, x, y, z, (size_t)b);
        size_t row = 0;
        for (; row < lt.size(); ++row)
            if ((long)lt[row].mid == a && (long)lt[row].i == i && (long)lt[row].j == j) break;
        for (size_t col = 0; col < rt.size(); ++col) {
            if (f(row, col).is_zero()) continue;
            auto it = p2.find({(long)rt[col].mid, (long)rt[col].i, b, (long)rt[col].j, k});
            m12(r, it->second) += f(row, col);
        }
    }
    // M23: F^{x,c,t}_w mixing (b,q,k) -> (d,r2,s), spectators (c,p).
    for (const auto& [t2, r] : p2) {
        auto [cc, p, b, q, k] = t2;
        if (!c.has_trees(x, (size_t)cc, t, w)) continue;
        const Matrix& f = c.f(x, (size_t)cc, t, w);
        auto lt = left_trees(c.fus, x, (size_t)cc, t, w);
        auto rt = right_trees(c.fus, x, (size_t)cc, t, w);
        size_t row = 0;
        for (; row < lt.size(); ++row)
            if ((long)lt[row].mid == b && (long)lt[row].i == q && (long)lt[row].j == k) break;
        for (size_t col = 0; col < rt.size(); ++col) {
            if (f(row, col).is_zero()) continue;
            auto it = p3.find({cc, p, (long)rt[col].mid, (long)rt[col].i, (long)rt[col].j});
            m23(r, it->second) += f(row, col);
        }
    }
    // M34: F^{yzt}_d mixing (c,p,r2) -> (e,m,nn), spectators (d,s).
    for (const auto& [t3, r] : p3) {
        auto [cc, p, d, r2, s] = t3;
        if (!c.has_trees(y, z, t, (size_t)d)) continue;
        const Matrix& f = c.f(y, z, t, (size_t)d);
        auto lt = left_trees(c.fus, y, z, t, (size_t)d);
        auto rt = right_trees(c.fus, y, z, t, (size_t)d);
        size_t row = 0;
        for (; row < lt.size(); ++row)
            if ((long)lt[row].mid == cc && (long)lt[row].i == p && (long)lt[row].j == r2) break;
        for (size_t col = 0; col < rt.size(); ++col) {
            if (f(row, col).is_zero()) continue;
            auto it = p4.find({(long)rt[col].mid, (long)rt[col].i, d, (long)rt[col].j, s});
            m34(r, it->second) += f(row, col);
        }
    }
    // M15: F^{a,z,t}_w mixing (b,j,k) -> (e,m,q), spectators (a,i).
    for (const auto& [t1, r] : p1) {
        auto [a, i, b, j, k] = t1;
        if (!c.has_trees((size_t)a, z, t, w)) continue;
        const Matrix& f = c.f((size_t)a, z, t, w);
        auto lt = left_trees(c.fus, (size_t)a, z, t, w);
        auto rt = right_trees(c.fus, (size_t)a, z, t, w);
        size_t row = 0;
        for (; row < lt.size(); ++row)
            if ((long)lt[row].mid == b && (long)lt[row].i == j && (long)lt[row].j == k) break;
        for (size_t col = 0; col < rt.size(); ++col) {
            if (f(row, col).is_zero()) continue;
            auto it = p5.find({a, i, (long)rt[col].mid, (long)rt[col].i, (long)rt[col].j});
            m15(r, it->second) += f(row, col);
        }
    }
    // M54: F^{x,y,e}_w mixing (a,i,q) -> (d,nn,s), spectators (e,m).
    for (const auto& [t5, r] : p5) {
        auto [a, i, e, m, q] = t5;
        if (!c.has_trees(x, y, (size_t)e, w)) continue;
        const Matrix& f = c.f(x, y, (size_t)e, w);
        auto lt = left_trees(c.fus, x, y, (size_t)e, w);
        auto rt = right_trees(c.fus, x, y, (size_t)e, w);
        size_t row = 0;
        for (; row < lt.size(); ++row)
            if ((long)lt[row].mid == a && (long)lt[row].i == i && (long)lt[row].j == q) break;
        for (size_t col = 0; col < rt.size(); ++col) {
            if (f(row, col).is_zero()) continue;
            auto it = p4.find({e, m, (long)rt[col].mid, (long)rt[col].i, (long)rt[col].j});
            m54(r, it->second) += f(row, col);
        }
    }
    return m12 * (m23 * m34) == m15 * m54;
}

inline std::vector<PentagonViolation> pentagon_check(const SkeletalCategory& c) {
    std::vector<PentagonViolation> bad;
    size_t k = c.nlabels();
    for (size_t x = 0; x < k; ++x)
        for (size_t y = 0; y < k; ++y)
            for (size_t z = 0; z < k; ++z)
                for (size_t t = 0; t < k; ++t)
                    for (size_t w = 0; w < k; ++w)
                        if (!pentagon_holds_at(c, x, y, z, t, w)) bad.push_back({x, y, z, t, w});
    return bad;
}

} // namespace invcoh
