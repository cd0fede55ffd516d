#pragma once

// Independent certification layer: convert categorical solutions into literal
// group-algebra elements Omega = sum omega(g,h) g (x) h and verify every
// defining identity by direct exact expansion over G^2 and G^3. This module
// shares only the cyclotomic and matrix primitives with the solver.

#include "rep.hpp"
#include "solver_classify.hpp"

namespace invcoh {

struct GroupCocycle {
    const FiniteGroup* group = nullptr;
    CtxPtr ctx;
    std::vector<Cyclo> omega; // omega[g*n+h]

    const Cyclo& at(int g, int h) const { return omega[(size_t)g * group->order() + (size_t)h]; }
    Cyclo& at(int g, int h) { return omega[(size_t)g * group->order() + (size_t)h]; }

    static GroupCocycle unit(const FiniteGroup& g, const CtxPtr& ctx) {
        GroupCocycle c;
        c.group = &g;
        c.ctx = ctx;
        c.omega.assign(g.order() * g.order(), Cyclo(ctx));
        c.at(0, 0) = Cyclo(ctx, Rat(1));
        return c;
    }
};

// Convolution product in C[G] (x) C[G].
inline GroupCocycle product(const GroupCocycle& a, const GroupCocycle& b) {
    const FiniteGroup& g = *a.group;
    size_t n = g.order();
    GroupCocycle out;
    out.group = a.group;
    out.ctx = a.ctx;
    out.omega.assign(n * n, Cyclo(a.ctx));
    for (size_t g1 = 0; g1 < n; ++g1)
        for (size_t h1 = 0; h1 < n; ++h1) {
            const Cyclo& va = a.at((int)g1, (int)h1);
            if (va.is_zero()) continue;
            for (size_t g2 = 0; g2 < n; ++g2)
                for (size_t h2 = 0; h2 < n; ++h2) {
                    const Cyclo& vb = b.at((int)g2, (int)h2);
                    if (vb.is_zero()) continue;
                    out.at(g.mul((int)g1, (int)g2), g.mul((int)h1, (int)h2)) += va * vb;
                }
        }
    return out;
}

// Star: conjugate coefficients, g |-> g^{-1} componentwise.
inline GroupCocycle star(const GroupCocycle& a) {
    const FiniteGroup& g = *a.group;
    size_t n = g.order();
    GroupCocycle out;
    out.group = a.group;
    out.ctx = a.ctx;
    out.omega.assign(n * n, Cyclo(a.ctx));
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            out.at(g.inv((int)x), g.inv((int)y)) = a.at((int)x, (int)y).conjugate();
    return out;
}

inline bool equal(const GroupCocycle& a, const GroupCocycle& b) {
    if (a.group->order() != b.group->order()) return false;
    if (a.ctx->conductor == b.ctx->conductor) return a.omega == b.omega;
    CtxPtr big = make_context((unsigned long)to_long(
        lcm(Int((long)a.ctx->conductor), Int((long)b.ctx->conductor))));
    for (size_t i = 0; i < a.omega.size(); ++i)
        if (embed(a.omega[i], big) != embed(b.omega[i], big)) return false;
    return true;
}

struct CocycleCheck {
    bool ok = true;
    std::string witness;
};

// Left 2-cocycle identity: (1 (x) Omega)(id (x) Delta)(Omega) =
// (Omega (x) 1)(Delta (x) id)(Omega), coefficients compared over G^3.
inline CocycleCheck check_left_cocycle(const GroupCocycle& om) {
    const FiniteGroup& g = *om.group;
    size_t n = g.order();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                Cyclo lhs(om.ctx), rhs(om.ctx);
                for (size_t h = 0; h < n; ++h) {
                    // (1 (x) g' (x) h')(g (x) h (x) h) = g (x) g'h (x) h'h
                    const Cyclo& w = om.at((int)a, (int)h);
                    if (!w.is_zero())
                        lhs += om.at(g.mul((int)b, g.inv((int)h)), g.mul((int)c, g.inv((int)h))) * w;
                    // (g' (x) h' (x) 1)(g (x) g (x) h) = g'g (x) h'g (x) h
                    const Cyclo& w2 = om.at((int)h, (int)c);
                    if (!w2.is_zero())
                        rhs += om.at(g.mul((int)a, g.inv((int)h)), g.mul((int)b, g.inv((int)h))) * w2;
                }
                if (lhs != rhs) {
                    return {false, "triple (" + g.name((int)a) + "," + g.name((int)b) + "," +
                                       g.name((int)c) + ")"};
                }
            }
    return {};
}

// Right 2-cocycle identity for Omega*: (id (x) Delta)(X)(1 (x) X) =
// (Delta (x) id)(X)(X (x) 1) with X = Omega*.
inline CocycleCheck check_right_cocycle_via_star(const GroupCocycle& om) {
    GroupCocycle x = star(om);
    const FiniteGroup& g = *x.group;
    size_t n = g.order();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                Cyclo lhs(x.ctx), rhs(x.ctx);
                for (size_t h = 0; h < n; ++h) {
                    // (g (x) h (x) h)(1 (x) g' (x) h') = g (x) hg' (x) hh'
                    const Cyclo& w = x.at((int)a, (int)h);
                    if (!w.is_zero())
                        lhs += w * x.at(g.mul(g.inv((int)h), (int)b), g.mul(g.inv((int)h), (int)c));
                    // (g (x) g (x) h)(g' (x) h' (x) 1) = gg' (x) gh' (x) h
                    const Cyclo& w2 = x.at((int)h, (int)c);
                    if (!w2.is_zero())
                        rhs += w2 * x.at(g.mul(g.inv((int)h), (int)a), g.mul(g.inv((int)h), (int)b));
                }
                if (lhs != rhs) {
                    return {false, "triple (" + g.name((int)a) + "," + g.name((int)b) + "," +
                                       g.name((int)c) + ")"};
                }
            }
    return {};
}

// Invariance: (k (x) k) Omega = Omega (k (x) k) for every k, i.e.
// omega(k^-1 g k, k^-1 h k) = omega(g, h).
inline CocycleCheck check_invariance(const GroupCocycle& om) {
    const FiniteGroup& g = *om.group;
    size_t n = g.order();
    for (size_t k = 0; k < n; ++k)
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                if (om.at(g.conjugate((int)a, (int)k), g.conjugate((int)b, (int)k)) !=
                    om.at((int)a, (int)b))
                    return {false, "element " + g.name((int)k)};
    return {};
}

// Counitality in both slots.
inline CocycleCheck check_counital(const GroupCocycle& om) {
    const FiniteGroup& g = *om.group;
    size_t n = g.order();
    for (size_t h = 0; h < n; ++h) {
        Cyclo rowsum(om.ctx), colsum(om.ctx);
        for (size_t x = 0; x < n; ++x) {
            rowsum += om.at((int)x, (int)h);
            colsum += om.at((int)h, (int)x);
        }
        Cyclo expect(om.ctx, Rat(h == 0 ? 1 : 0));
        if (rowsum != expect) return {false, "(eps (x) id) fails at " + g.name((int)h)};
        if (colsum != expect) return {false, "(id (x) eps) fails at " + g.name((int)h)};
    }
    return {};
}

inline CocycleCheck check_unitary(const GroupCocycle& om) {
    GroupCocycle st = star(om);
    GroupCocycle unit = GroupCocycle::unit(*om.group, om.ctx);
    if (!equal(product(om, st), unit)) return {false, "Omega Omega* != 1 (x) 1"};
    if (!equal(product(st, om), unit)) return {false, "Omega* Omega != 1 (x) 1"};
    return {};
}

// Invertibility certificate: blockwise inverse through the Fourier picture.
inline bool check_invertible(const ConcreteModel& m, const GroupCocycle& om, GroupCocycle* inv_out = nullptr);

// ---------------------------------------------------------------------------
// Fourier bridge between tensor structures and group cocycles.

// Omega block on (x,y): sum_{z,i,j} (J^{xy}_z)_{ij} S_i S_j^+.
inline Matrix fourier_block(const ConcreteModel& m, const CoherenceProblem& p,
                            const TensorStructure& ts, size_t x, size_t y, const CtxPtr& ctx) {
    size_t dx = m.irreps[x].dim(), dy = m.irreps[y].dim();
    Matrix block(ctx, dx * dy, dx * dy);
    for (size_t z = 0; z < m.nlabels(); ++z) {
        long n = m.fus.n(x, y, z);
        if (n == 0) continue;
        int chan = p.channel_of(x, y, z);
        const Matrix& j = ts.blocks[chan];
        const IntertwinerBasis& basis = m.basis(x, y, z);
        for (long i = 0; i < n; ++i)
            for (long jj = 0; jj < n; ++jj) {
                if (j((size_t)i, (size_t)jj).is_zero()) continue;
                Matrix term = basis.maps[i] * basis.duals[jj];
                for (size_t r = 0; r < dx * dy; ++r)
                    for (size_t c = 0; c < dx * dy; ++c)
                        if (!term(r, c).is_zero())
                            block(r, c) += j((size_t)i, (size_t)jj) * embed(term(r, c), ctx);
            }
    }
    return block;
}

// omega(g,h) = (1/|G|^2) sum_{x,y} d_x d_y tr((x(g^-1) (x) y(h^-1)) Omega^{(x,y)}).
inline GroupCocycle assemble_group_cocycle(const ConcreteModel& m, const CoherenceProblem& p,
                                           const TensorStructure& ts) {
    const FiniteGroup& g = m.group;
    size_t n = g.order();
    CtxPtr ctx = ts.blocks.empty() ? m.ctx : ts.blocks[0].ctx();
    GroupCocycle out;
    out.group = &g;
    out.ctx = ctx;
    out.omega.assign(n * n, Cyclo(ctx));
    Rat invn2 = rat(1, (long)(n * n));
    for (size_t x = 0; x < m.nlabels(); ++x)
        for (size_t y = 0; y < m.nlabels(); ++y) {
            Matrix block = fourier_block(m, p, ts, x, y, ctx);
            if (block.is_zero()) continue;
            size_t dx = m.irreps[x].dim(), dy = m.irreps[y].dim();
            Rat scale = invn2 * Rat((long)(dx * dy));
            for (size_t gg = 0; gg < n; ++gg) {
                Matrix xg(ctx, dx, dx);
                {
                    const Matrix& src = m.irreps[x].at(g.inv((int)gg));
                    for (size_t r = 0; r < dx; ++r)
                        for (size_t c = 0; c < dx; ++c) xg(r, c) = embed(src(r, c), ctx);
                }
                for (size_t hh = 0; hh < n; ++hh) {
                    const Matrix& yh = m.irreps[y].at(g.inv((int)hh));
                    // tr((xg (x) yh) block) without forming the kron product
                    Cyclo tr(ctx);
                    for (size_t r1 = 0; r1 < dx; ++r1)
                        for (size_t c1 = 0; c1 < dx; ++c1) {
                            if (xg(r1, c1).is_zero()) continue;
                            for (size_t r2 = 0; r2 < dy; ++r2)
                                for (size_t c2 = 0; c2 < dy; ++c2) {
                                    if (yh(r2, c2).is_zero()) continue;
                                    const Cyclo& bb = block(c1 * dy + c2, r1 * dy + r2);
                                    if (!bb.is_zero()) tr += xg(r1, c1) * embed(yh(r2, c2), ctx) * bb;
                                }
                        }
                    if (!tr.is_zero()) out.at((int)gg, (int)hh) += scale * tr;
                }
            }
        }
    return out;
}

// Fourier decomposition back to channel matrices:
// (J^{xy}_z)_{ij} = tr(S_i^+ B_{xy} S_j) / dim(z).
inline TensorStructure block_decompose(const ConcreteModel& m, const CoherenceProblem& p,
                                       const GroupCocycle& om) {
    const FiniteGroup& g = m.group;
    size_t n = g.order();
    CtxPtr ctx = om.ctx;
    // Fourier blocks B_{xy} = sum_{g,h} omega(g,h) x(g) (x) y(h)
    TensorStructure ts;
    ts.blocks.resize(p.channels.size(), Matrix());
    for (size_t x = 0; x < m.nlabels(); ++x)
        for (size_t y = 0; y < m.nlabels(); ++y) {
            size_t dx = m.irreps[x].dim(), dy = m.irreps[y].dim();
            Matrix b(ctx, dx * dy, dx * dy);
            for (size_t gg = 0; gg < n; ++gg)
                for (size_t hh = 0; hh < n; ++hh) {
                    const Cyclo& w = om.at((int)gg, (int)hh);
                    if (w.is_zero()) continue;
                    const Matrix& xg = m.irreps[x].at((int)gg);
                    const Matrix& yh = m.irreps[y].at((int)hh);
                    for (size_t r1 = 0; r1 < dx; ++r1)
                        for (size_t c1 = 0; c1 < dx; ++c1) {
                            if (xg(r1, c1).is_zero()) continue;
                            Cyclo f = w * embed(xg(r1, c1), ctx);
                            for (size_t r2 = 0; r2 < dy; ++r2)
                                for (size_t c2 = 0; c2 < dy; ++c2)
                                    if (!yh(r2, c2).is_zero())
                                        b(r1 * dy + r2, c1 * dy + c2) += f * embed(yh(r2, c2), ctx);
                        }
                }
            for (size_t z = 0; z < m.nlabels(); ++z) {
                long nn = m.fus.n(x, y, z);
                if (nn == 0) continue;
                int chan = p.channel_of(x, y, z);
                const IntertwinerBasis& basis = m.basis(x, y, z);
                size_t dz = m.irreps[z].dim();
                Matrix j(ctx, (size_t)nn, (size_t)nn);
                for (long i = 0; i < nn; ++i)
                    for (long jj = 0; jj < nn; ++jj) {
                        Matrix dual(ctx, dz, dx * dy), map(ctx, dx * dy, dz);
                        for (size_t r = 0; r < dz; ++r)
                            for (size_t c = 0; c < dx * dy; ++c)
                                dual(r, c) = embed(basis.duals[i](r, c), ctx);
                        for (size_t r = 0; r < dx * dy; ++r)
                            for (size_t c = 0; c < dz; ++c)
                                map(r, c) = embed(basis.maps[jj](r, c), ctx);
                        j((size_t)i, (size_t)jj) =
                            rat(1, (long)dz) * (dual * (b * map)).trace();
                    }
                ts.blocks[chan] = std::move(j);
            }
        }
    return ts;
}

inline bool check_invertible(const ConcreteModel& m, const GroupCocycle& om, GroupCocycle* inv_out) {
    CoherenceProblem p = build_problem(solver_input(m), false);
    TensorStructure ts = block_decompose(m, p, om);
    // blockwise inverse, then Fourier back
    TensorStructure inv;
    inv.blocks.reserve(ts.blocks.size());
    for (const auto& b : ts.blocks) {
        if (!is_invertible(b)) return false;
        inv.blocks.push_back(inverse(b));
    }
    GroupCocycle cand = assemble_group_cocycle(m, p, inv);
    GroupCocycle unit = GroupCocycle::unit(*om.group, om.ctx);
    bool ok = equal(product(om, cand), unit) && equal(product(cand, om), unit);
    if (ok && inv_out) *inv_out = std::move(cand);
    return ok;
}

// Coboundary delta(h) = (h (x) h) Delta(h^-1) of a central invertible element
// given by one nonzero scalar per irrep.
inline GroupCocycle coboundary(const ConcreteModel& m, const std::vector<Cyclo>& scalars) {
    if (scalars.size() != m.nlabels()) throw std::invalid_argument("one scalar per irrep required");
    unsigned long cond = (unsigned long)to_long(
        lcm(Int((long)scalars[0].ctx()->conductor), Int((long)m.ctx->conductor)));
    CtxPtr ctx = make_context(cond);
    for (const auto& s : scalars)
        if (s.is_zero()) throw std::invalid_argument("central element must be invertible");
    CoherenceProblem p = build_problem(solver_input(m), false);
    TensorStructure ts;
    ts.blocks.resize(p.channels.size());
    for (size_t c = 0; c < p.channels.size(); ++c) {
        const Channel& ch = p.channels[c];
        Matrix j(ctx, (size_t)ch.n, (size_t)ch.n);
        Cyclo f = embed(scalars[ch.x], ctx) * embed(scalars[ch.y], ctx) *
                  embed(scalars[ch.z], ctx).inverse();
        for (long i = 0; i < ch.n; ++i) j((size_t)i, (size_t)i) = f;
        ts.blocks[c] = std::move(j);
    }
    return assemble_group_cocycle(m, p, ts);
}

// Decide cohomologousness of two certified invariant cocycles; returns the
// per-irrep witness scalars when they are gauge-equivalent.
inline std::optional<std::vector<Cyclo>> cohomologous(const ConcreteModel& m,
                                                      const GroupCocycle& a, const GroupCocycle& b,
                                                      CoeffMode mode = CoeffMode::invertible) {
    CoherenceProblem p = build_problem(solver_input(m), false);
    TensorStructure ta = block_decompose(m, p, a);
    TensorStructure tb = block_decompose(m, p, b);
    for (size_t c = 0; c < p.channels.size(); ++c)
        if (!is_invertible(ta.blocks[c]) || !is_invertible(tb.blocks[c]))
            throw std::invalid_argument("inputs are not invertible invariant cocycles");
    auto h = cohomologous_witness(p, ta, tb, mode);
    if (!h) return std::nullopt;
    Int need(1);
    for (const auto& q : *h) need = lcm(need, q.get_den());
    CtxPtr ctx = make_context((unsigned long)to_long(need));
    std::vector<Cyclo> scalars;
    size_t idx = 0;
    for (size_t i = 0; i < m.nlabels(); ++i) {
        if (i == p.in.unit) {
            scalars.push_back(Cyclo(ctx, Rat(1)));
        } else {
            scalars.push_back(root_from_exponent(ctx, (*h)[idx++]));
        }
    }
    return scalars;
}

} // namespace invcoh
