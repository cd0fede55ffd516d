#pragma once

// Branch solving, the monomial Smith-reduction engine over the divisible
// coefficient groups, gauge classification, and the end-to-end pipeline.

#include "solver.hpp"

namespace invcoh {

struct BranchOutcome {
    BranchCharacter psi;
    bool survived = false;
    std::string status;                       // human-readable death/summary
    std::vector<Matrix> shapes;               // per matrix channel (when solved)
    std::vector<std::vector<Rat>> class_exponents; // per class, per-unknown root exponents
    AbelianGroup solution_group;              // classes-in-branch modulo gauge
    size_t free_rank = 0;
};

struct ClassifyResult {
    std::vector<TensorStructure> reps; // index 0 = trivial class
    std::vector<std::vector<size_t>> table;
    bool abelian = true;
    AbelianGroup presentation;
    std::vector<BranchOutcome> branches;
    size_t hsize = 0;
};

namespace detail {

// Gauge exponent matrix: one column per non-unit label, one row per scalar
// unknown (channel (x,y;z) shifts by h_x + h_y - h_z).
inline IntMatrix gauge_matrix(const CoherenceProblem& p) {
    size_t k = p.in.labels.size();
    std::vector<long> col_of(k, -1);
    long c = 0;
    for (size_t i = 0; i < k; ++i)
        if (i != p.in.unit) col_of[i] = c++;
    IntMatrix g(p.total_unknowns(), k - 1);
    for (const auto& ch : p.channels) {
        if (ch.unknown < 0 && ch.matrix_id < 0) continue; // counital: pinned to 1
        size_t row = ch.unknown >= 0 ? (size_t)ch.unknown : p.n_scalar + (size_t)ch.matrix_id;
        if (ch.x != p.in.unit) g(row, (size_t)col_of[ch.x]) += 1;
        if (ch.y != p.in.unit) g(row, (size_t)col_of[ch.y]) += 1;
        if (ch.z != p.in.unit) g(row, (size_t)col_of[ch.z]) -= 1;
    }
    return g;
}

inline Rat frac_mod1(Rat q) {
    q -= fdiv_q(q.get_num(), q.get_den());
    return q;
}

// Evaluate a bilinear relation side against fixed shapes: the scalar factor
// is carried separately in the exponent vector.
inline Cyclo collapse_lhs(const CoherenceProblem& p, const BilinRel& r,
                          const std::vector<Matrix>& shapes, const CtxPtr& ctx) {
    auto shape_of = [&](int chan) -> Matrix {
        const Channel& ch = p.channels[chan];
        if (ch.matrix_id >= 0) return shapes[ch.matrix_id];
        return Matrix::identity(ctx, 1);
    };
    Matrix ma = shape_of(r.a), mb = shape_of(r.b);
    Cyclo acc(ctx);
    for (size_t i = 0; i < r.coefL.rows(); ++i)
        for (size_t j = 0; j < r.coefL.cols(); ++j)
            if (!r.coefL(i, j).is_zero()) acc += embed(r.coefL(i, j), ctx) * ma(r.ra, i) * mb(r.rb, j);
    return acc;
}

inline Cyclo collapse_rhs(const CoherenceProblem& p, const BilinRel& r,
                          const std::vector<Matrix>& shapes, const CtxPtr& ctx) {
    auto shape_of = [&](int chan) -> Matrix {
        const Channel& ch = p.channels[chan];
        if (ch.matrix_id >= 0) return shapes[ch.matrix_id];
        return Matrix::identity(ctx, 1);
    };
    Matrix mc = shape_of(r.c), md = shape_of(r.d);
    Cyclo acc(ctx);
    for (size_t k = 0; k < r.coefR.rows(); ++k)
        for (size_t l = 0; l < r.coefR.cols(); ++l)
            if (!r.coefR(k, l).is_zero()) acc += embed(r.coefR(k, l), ctx) * mc(k, r.ck) * md(l, r.cl);
    return acc;
}

} // namespace detail

// Branch-time digest: the qualifying relations (one matrix channel per side,
// scalar companions) with their ratio monomials resolved against the lattice
// of base scalar relations. Built once per problem.
struct BranchContext {
    // per-relation rows of the joint linear system on matrix-channel entries
    struct PencilRow {
        int mid_l, mid_r;            // matrix channel ids
        std::vector<Cyclo> lcoef;    // over entries of channel mid_l
        std::vector<Cyclo> rcoef;    // over entries of channel mid_r
        int hidx = 0;                // H index for the psi power below
        long psi_power = 0;          // ratio value = psi(h)^psi_power
    };
    std::vector<PencilRow> rows;
    std::vector<size_t> entry_offset; // per matrix channel, offset into the joint vector
    size_t joint_dim = 0;
    std::vector<std::vector<long>> nu; // designated ratio monomial per H index (may be empty)
    bool character_recognized = true;
    std::string note;
};

inline BranchContext build_branch_context(const CoherenceProblem& p) {
    BranchContext ctx;
    size_t off = 0;
    for (size_t mid = 0; mid < p.matrix_channels.size(); ++mid) {
        ctx.entry_offset.push_back(off);
        long n = p.channels[p.matrix_channels[mid]].n;
        off += (size_t)(n * n);
    }
    ctx.joint_dim = off;
    ctx.nu.assign(p.hgroup.size(), {});
    if (p.matrix_channels.empty()) return ctx;

    // lattice membership oracle for the base-row span
    size_t nu_cols = p.total_unknowns();
    IntMatrix baseT(nu_cols, p.base_rows.size());
    for (size_t r = 0; r < p.base_rows.size(); ++r)
        for (size_t c = 0; c < nu_cols; ++c) baseT(c, r) = p.base_rows[r].e[c];
    SnfResult bsnf = smith_normal_form(baseT, true, false);
    auto bdiag = bsnf.diagonal();
    auto in_base_lattice = [&](const std::vector<long>& e) {
        std::vector<Int> ue(nu_cols, Int(0));
        for (size_t i = 0; i < nu_cols; ++i)
            for (size_t j = 0; j < nu_cols; ++j)
                if (bsnf.u(i, j) != 0 && e[j] != 0) ue[i] += bsnf.u(i, j) * e[j];
        for (size_t i = 0; i < nu_cols; ++i) {
            if (i < bsnf.rank) {
                if (ue[i] % bdiag[i] != 0) return false;
            } else if (ue[i] != 0) {
                return false;
            }
        }
        return true;
    };

    for (const auto& r : p.mixed) {
        int ma = p.channels[r.a].matrix_id, mb = p.channels[r.b].matrix_id;
        int mc = p.channels[r.c].matrix_id, md = p.channels[r.d].matrix_id;
        int lcount = (ma >= 0) + (mb >= 0), rcount = (mc >= 0) + (md >= 0);
        if (lcount != 1 || rcount != 1) continue;
        int mid_l = ma >= 0 ? ma : mb;
        int mid_r = mc >= 0 ? mc : md;
        // scalar ratio monomial: + LHS scalars - RHS scalars
        std::vector<long> e(p.total_unknowns(), 0);
        if (ma < 0) detail::add_channel_exponent(e, p, r.a, 1);
        if (mb < 0) detail::add_channel_exponent(e, p, r.b, 1);
        if (mc < 0) detail::add_channel_exponent(e, p, r.c, -1);
        if (md < 0) detail::add_channel_exponent(e, p, r.d, -1);
        bool zero = true;
        for (long v : e)
            if (v) zero = false;
        int hidx = 0;
        long power = 0;
        if (!zero && in_base_lattice(e)) zero = true; // ratio forced to 1
        if (!zero) {
            if (r.htag < 0) continue; // ratio not reachable from the branch data
            std::vector<long> diff(e), sum(e);
            bool resolved = false;
            if (!ctx.nu[r.htag].empty()) {
                for (size_t i = 0; i < e.size(); ++i) {
                    diff[i] = e[i] - ctx.nu[r.htag][i];
                    sum[i] = e[i] + ctx.nu[r.htag][i];
                }
                if (in_base_lattice(diff)) {
                    hidx = r.htag;
                    power = 1;
                    resolved = true;
                } else if (in_base_lattice(sum)) {
                    hidx = r.htag;
                    power = -1;
                    resolved = true;
                }
            } else {
                ctx.nu[r.htag] = e;
                hidx = r.htag;
                power = 1;
                resolved = true;
            }
            if (!resolved) continue; // handled after substitution
        }
        BranchContext::PencilRow row;
        row.mid_l = mid_l;
        row.mid_r = mid_r;
        row.hidx = hidx;
        row.psi_power = power;
        long nl = p.channels[p.matrix_channels[mid_l]].n;
        long nr = p.channels[p.matrix_channels[mid_r]].n;
        row.lcoef.assign((size_t)(nl * nl), Cyclo(p.in.ctx));
        row.rcoef.assign((size_t)(nr * nr), Cyclo(p.in.ctx));
        if (ma >= 0)
            for (long i = 0; i < nl; ++i) row.lcoef[(size_t)(r.ra * nl + i)] += r.coefL(i, 0);
        else
            for (long j = 0; j < nl; ++j) row.lcoef[(size_t)(r.rb * nl + j)] += r.coefL(0, j);
        if (mc >= 0)
            for (long kk = 0; kk < nr; ++kk) row.rcoef[(size_t)(kk * nr + r.ck)] += r.coefR(kk, 0);
        else
            for (long l = 0; l < nr; ++l) row.rcoef[(size_t)(l * nr + r.cl)] += r.coefR(0, l);
        ctx.rows.push_back(std::move(row));
    }
    // character recognition sanity: nu_g + nu_h must reduce to nu_{gh}
    auto hmul = [&](size_t a, size_t b) -> size_t {
        size_t la = p.hgroup[a], lb = p.hgroup[b];
        for (size_t z = 0; z < p.in.labels.size(); ++z)
            if (p.in.fus.n(la, lb, z) > 0) {
                for (size_t i = 0; i < p.hgroup.size(); ++i)
                    if (p.hgroup[i] == z) return i;
            }
        throw std::logic_error("H not closed");
    };
    for (size_t a = 1; a < p.hgroup.size() && ctx.character_recognized; ++a)
        for (size_t b = 1; b < p.hgroup.size(); ++b) {
            if (ctx.nu[a].empty() || ctx.nu[b].empty()) continue;
            size_t c = hmul(a, b);
            std::vector<long> comb(p.total_unknowns(), 0);
            for (size_t i = 0; i < comb.size(); ++i) comb[i] = ctx.nu[a][i] + ctx.nu[b][i];
            if (c != 0) {
                if (ctx.nu[c].empty()) continue;
                for (size_t i = 0; i < comb.size(); ++i) comb[i] -= ctx.nu[c][i];
            }
            if (!in_base_lattice(comb)) {
                ctx.character_recognized = false;
                ctx.note = "ratio monomials do not compose as a character on the invertible-object group";
            }
        }
    if (!ctx.character_recognized) throw std::runtime_error("unsupported coupling: " + ctx.note);
    return ctx;
}

// Joint linear solve of the matrix-channel system under the branch character.
// Each channel's induced solution space must be exactly one-dimensional with
// an invertible generator.
inline bool solve_branch_shapes(const CoherenceProblem& p, const BranchContext& bctx,
                                const BranchCharacter& psi, std::vector<Matrix>& shapes,
                                std::string& why) {
    shapes.clear();
    if (p.matrix_channels.empty()) return true;
    // pick a context large enough for the branch character values
    Int need((long)p.in.ctx->conductor);
    for (const auto& q : psi.exponent) need = lcm(need, q.get_den());
    CtxPtr ctx = make_context((unsigned long)to_long(need));
    Matrix sys(ctx, bctx.rows.size(), bctx.joint_dim);
    for (size_t r = 0; r < bctx.rows.size(); ++r) {
        const auto& row = bctx.rows[r];
        Cyclo ratio(ctx, Rat(1));
        if (row.psi_power != 0)
            ratio = root_from_exponent(ctx, detail::frac_mod1(Rat(row.psi_power) * psi.exponent[row.hidx]));
        // ratio * L - R = 0
        for (size_t i = 0; i < row.lcoef.size(); ++i)
            if (!row.lcoef[i].is_zero())
                sys(r, bctx.entry_offset[row.mid_l] + i) += ratio * embed(row.lcoef[i], ctx);
        for (size_t i = 0; i < row.rcoef.size(); ++i)
            if (!row.rcoef[i].is_zero())
                sys(r, bctx.entry_offset[row.mid_r] + i) -= embed(row.rcoef[i], ctx);
    }
    auto ns = nullspace(sys);
    if (ns.empty()) {
        why = "matrix-channel system has no nonzero solution";
        return false;
    }
    for (size_t mid = 0; mid < p.matrix_channels.size(); ++mid) {
        const Channel& ch = p.channels[p.matrix_channels[mid]];
        size_t n = (size_t)ch.n;
        std::string name = "(" + p.in.labels[ch.x] + "," + p.in.labels[ch.y] + ";" +
                           p.in.labels[ch.z] + ")";
        // the channel block across the null space must be rank one
        Matrix block(ctx, ns.size(), n * n);
        for (size_t v = 0; v < ns.size(); ++v)
            for (size_t i = 0; i < n * n; ++i) block(v, i) = ns[v][bctx.entry_offset[mid] + i];
        RrefResult rr = rref(block);
        if (rr.rank == 0) {
            why = "channel " + name + " has no nonzero solution";
            return false;
        }
        if (rr.rank > 1)
            throw std::runtime_error("unsupported multiplicity pattern: channel " + name +
                                     " solution space has dimension " + std::to_string(rr.rank));
        Matrix m(ctx, n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m(i, j) = rr.m(0, i * n + j);
        // normalize: first nonzero entry = 1 (row-major scan; rref already
        // guarantees a leading one, renormalize for determinism anyway)
        Cyclo scale(ctx);
        for (size_t i = 0; i < n * n && scale.is_zero(); ++i)
            if (!m(i / n, i % n).is_zero()) scale = m(i / n, i % n);
        m = scale.inverse() * m;
        if (!is_invertible(m)) {
            why = "channel " + name + " solution is singular";
            return false;
        }
        shapes.push_back(std::move(m));
    }
    return true;
}

struct MonomialSolveResult {
    bool consistent = false;
    std::string why;
    std::vector<Rat> particular;    // per-unknown root-of-unity exponents
    AbelianGroup class_group;       // kernel modulo gauge image
    size_t free_rank = 0;
    std::vector<std::vector<Rat>> class_exponents; // per class incl. identity coset shift
};

// Smith reduction that carries a multiplicative right-hand side through the
// row operations, so the (large) U matrix is never materialized.
struct SnfWithRhs {
    IntMatrix s, v;
    std::vector<Cyclo> rhs; // transformed constants, aligned with rows of s
    size_t rank = 0;
};

inline SnfWithRhs smith_with_rhs(IntMatrix a, std::vector<Cyclo> rhs) {
    size_t m = a.rows(), n = a.cols();
    SnfWithRhs res;
    IntMatrix v = IntMatrix::identity(n);
    auto swap_rows = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
        std::swap(rhs[i], rhs[j]);
    };
    auto swap_cols = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t r = 0; r < m; ++r) std::swap(a(r, i), a(r, j));
        for (size_t r = 0; r < n; ++r) std::swap(v(r, i), v(r, j));
    };
    auto add_row = [&](size_t dst, size_t src, const Int& f) {
        if (f == 0) return;
        for (size_t c = 0; c < n; ++c) a(dst, c) += f * a(src, c);
        rhs[dst] *= rhs[src].pow(to_long(f));
    };
    auto add_col = [&](size_t dst, size_t src, const Int& f) {
        if (f == 0) return;
        for (size_t r = 0; r < m; ++r) a(r, dst) += f * a(r, src);
        for (size_t r = 0; r < n; ++r) v(r, dst) += f * v(r, src);
    };
    size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        bool found = false;
        size_t pr = t, pc = t;
        Int best;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (a(i, j) == 0) continue;
                Int mag = abs(a(i, j));
                if (!found || mag < best) {
                    found = true;
                    best = mag;
                    pr = i;
                    pc = j;
                }
            }
        if (!found) break;
        swap_rows(t, pr);
        swap_cols(t, pc);
        while (true) {
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                add_row(i, t, -fdiv_q(a(i, t), a(t, t)));
                if (a(i, t) != 0) {
                    swap_rows(t, i);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                add_col(j, t, -fdiv_q(a(t, j), a(t, t)));
                if (a(t, j) != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            bool divides = true;
            for (size_t i = t + 1; i < m && divides; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        add_row(t, i, Int(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a(t, t) < 0) {
            for (size_t c = 0; c < n; ++c) a(t, c) = -a(t, c);
            rhs[t] = rhs[t].inverse();
        }
    }
    res.rank = t;
    res.s = std::move(a);
    res.v = std::move(v);
    res.rhs = std::move(rhs);
    return res;
}

// Solve v^A = beta over the divisible coefficient group, then compute the
// solution set modulo the gauge subgroup.
inline MonomialSolveResult solve_monomials(const CoherenceProblem& p,
                                           const std::vector<MonomialRow>& rows, CoeffMode mode,
                                           bool enumerate_classes) {
    MonomialSolveResult res;
    CtxPtr wctx = rows.empty() ? p.in.ctx : rows[0].rhs.ctx();
    size_t nu = p.total_unknowns();
    IntMatrix a(rows.size(), nu);
    std::vector<Cyclo> rhs(rows.size(), Cyclo(wctx, Rat(1)));
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < nu; ++j) a(i, j) = rows[i].e[j];
        rhs[i] = rows[i].rhs;
    }
    SnfWithRhs snf = smith_with_rhs(a, rhs);
    std::vector<Int> diag;
    for (size_t i = 0; i < std::min(snf.s.rows(), snf.s.cols()); ++i) diag.push_back(snf.s(i, i));

    for (size_t i = 0; i < rows.size(); ++i) {
        const Cyclo& c = snf.rhs[i];
        if (i >= snf.rank) {
            if (!c.is_one()) {
                res.why = "inconsistent scalar system (zero row with nonunit constant " +
                          to_string(c) + ")";
                return res;
            }
        } else if (mode == CoeffMode::unitary) {
            if (!(c * c.conjugate()).is_one()) {
                res.why = "no unitary solution (constant " + to_string(c) + " is not unit modulus)";
                return res;
            }
        }
    }
    // particular solution in exponent space
    std::vector<Rat> w(nu, Rat(0));
    for (size_t i = 0; i < snf.rank && i < nu; ++i) {
        auto q = root_of_unity_exponent(snf.rhs[i]);
        if (!q) {
            res.why = "constant " + to_string(snf.rhs[i]) + " is not a root of unity: "
                      "representative construction unsupported";
            return res;
        }
        w[i] = *q / Rat(diag[i]);
    }
    res.particular.assign(nu, Rat(0));
    for (size_t i = 0; i < nu; ++i) {
        Rat acc(0);
        for (size_t j = 0; j < nu; ++j)
            if (snf.v(i, j) != 0) acc += Rat(snf.v(i, j)) * w[j];
        res.particular[i] = detail::frac_mod1(acc);
    }
    res.consistent = true;

    // Class group: Hom(ker(Gamma^T)/Im(A^T), coefficients).
    IntMatrix gamma = detail::gauge_matrix(p);
    // gauge must preserve every relation
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t c = 0; c < gamma.cols(); ++c) {
            Int acc = 0;
            for (size_t j = 0; j < nu; ++j) acc += a(i, j) * gamma(j, c);
            if (acc != 0) throw std::logic_error("gauge does not preserve the coherence system");
        }
    SnfResult gsnf = smith_normal_form(gamma.transpose(), false, true);
    size_t grank = gsnf.rank;
    size_t kdim = nu - grank;
    IntMatrix bker(nu, kdim);
    for (size_t j = 0; j < kdim; ++j)
        for (size_t i = 0; i < nu; ++i) bker(i, j) = gsnf.v(i, grank + j);
    IntMatrix coords = lattice_coordinates(bker, a.transpose());
    res.class_group = quotient_group(coords.transpose(), kdim);
    res.free_rank = res.class_group.free_rank;
    if (!enumerate_classes) return res;
    if (res.free_rank > 0) return res; // infinite component: not enumerated

    // Enumerate the dual of Z^kdim / Im(coords) and extend each character to
    // the unknowns through the unimodular V of gauge^T.
    SnfResult csnf = smith_normal_form(coords);
    std::vector<Int> cd = csnf.diagonal();
    std::vector<Int> orders(kdim, Int(1));
    for (size_t i = 0; i < kdim; ++i)
        if (i < cd.size() && cd[i] != 0) orders[i] = cd[i];
    // V^{-1} of gsnf.v: integer inverse via lattice coordinates against identity.
    IntMatrix vinv = lattice_coordinates(gsnf.v, IntMatrix::identity(nu));
    // iterate tuples xi_i in (1/orders_i) Z / Z
    std::vector<long> tup(kdim, 0);
    while (true) {
        std::vector<Rat> q(nu, Rat(0));
        for (size_t j = 0; j < nu; ++j) {
            // kernel coordinates of e_j: rows grank.. of vinv column j
            Rat acc(0);
            for (size_t i = 0; i < kdim; ++i) {
                // xi as character on Z^kdim: xi(y) = sum_i tup_i/orders_i * (U_c y)_i
                // with y = kernel coords; combine U_c and vinv.
                Rat xi = rat(tup[i], to_long(orders[i]));
                if (xi == 0) continue;
                Int dot = 0;
                for (size_t t = 0; t < kdim; ++t) dot += csnf.u(i, t) * vinv(grank + t, j);
                acc += xi * Rat(dot);
            }
            q[j] = detail::frac_mod1(res.particular[j] + acc);
        }
        res.class_exponents.push_back(std::move(q));
        size_t pos = 0;
        while (pos < kdim) {
            if (Int(++tup[pos]) < orders[pos]) break;
            tup[pos] = 0;
            ++pos;
        }
        if (pos == kdim) break;
    }
    return res;
}

// Materialize a tensor structure from per-unknown root exponents and shapes.
inline TensorStructure materialize(const CoherenceProblem& p, const std::vector<Rat>& exps,
                                   const std::vector<Matrix>& shapes) {
    // choose a conductor that holds every needed root of unity
    Int need((long)p.in.ctx->conductor);
    for (const auto& sh : shapes) need = lcm(need, Int((long)sh.ctx()->conductor));
    for (const auto& q : exps) need = lcm(need, Int(q.get_den()));
    CtxPtr ctx = make_context((unsigned long)to_long(need));
    TensorStructure ts;
    for (const auto& ch : p.channels) {
        if (ch.counital) {
            ts.blocks.push_back(Matrix::identity(ctx, (size_t)ch.n));
        } else if (ch.unknown >= 0) {
            Matrix m(ctx, 1, 1);
            m(0, 0) = root_from_exponent(ctx, exps[ch.unknown]);
            ts.blocks.push_back(std::move(m));
        } else {
            Cyclo s = root_from_exponent(ctx, exps[p.n_scalar + ch.matrix_id]);
            const Matrix& shape = shapes[ch.matrix_id];
            Matrix m(ctx, shape.rows(), shape.cols());
            for (size_t i = 0; i < shape.rows(); ++i)
                for (size_t j = 0; j < shape.cols(); ++j)
                    m(i, j) = s * embed(shape(i, j), ctx);
            ts.blocks.push_back(std::move(m));
        }
    }
    return ts;
}

// Gauge-equivalence test: J2 = (h_x h_y / h_z) J1 channelwise for per-label
// scalars h. Returns the witness exponents (per non-unit label) when the two
// structures are cohomologous.
inline std::optional<std::vector<Rat>> cohomologous_witness(const CoherenceProblem& p,
                                                            const TensorStructure& j1,
                                                            const TensorStructure& j2,
                                                            CoeffMode mode) {
    CtxPtr ctx = j1.blocks.empty() ? p.in.ctx : j1.blocks[0].ctx();
    // per-channel ratio; shapes must match up to scalar
    std::vector<Rat> ratio_exp;
    std::vector<size_t> ratio_chan;
    for (size_t c = 0; c < p.channels.size(); ++c) {
        const Channel& ch = p.channels[c];
        Matrix b1 = j1.blocks[c];
        Matrix b2 = j2.blocks[c];
        if (b1.ctx()->conductor != b2.ctx()->conductor) {
            unsigned long n = (unsigned long)to_long(
                lcm(Int((long)b1.ctx()->conductor), Int((long)b2.ctx()->conductor)));
            CtxPtr big = make_context(n);
            Matrix e1(big, b1.rows(), b1.cols()), e2(big, b2.rows(), b2.cols());
            for (size_t i = 0; i < b1.rows(); ++i)
                for (size_t j = 0; j < b1.cols(); ++j) {
                    e1(i, j) = embed(b1(i, j), big);
                    e2(i, j) = embed(b2(i, j), big);
                }
            b1 = std::move(e1);
            b2 = std::move(e2);
        }
        // find scalar rho with b2 = rho b1
        Cyclo rho(b1.ctx());
        bool found = false;
        for (size_t i = 0; i < b1.rows() && !found; ++i)
            for (size_t j = 0; j < b1.cols() && !found; ++j)
                if (!b1(i, j).is_zero()) {
                    rho = b2(i, j) / b1(i, j);
                    found = true;
                }
        if (!found) throw std::invalid_argument("zero channel block");
        if (b2 != rho * b1) return std::nullopt; // different shapes: gauge cannot connect
        if (ch.counital) {
            if (!rho.is_one()) return std::nullopt; // counital blocks are pinned
            continue;
        }
        auto q = root_of_unity_exponent(rho);
        if (!q) throw std::runtime_error("channel ratio is not a root of unity: unsupported");
        ratio_exp.push_back(*q);
        ratio_chan.push_back(c);
    }
    (void)mode; // root-of-unity witnesses are unit modulus in both modes
    // Solve gauge * h = ratio over Q/Z: rows = channels with unknowns.
    size_t k = p.in.labels.size();
    std::vector<long> col_of(k, -1);
    long cc = 0;
    for (size_t i = 0; i < k; ++i)
        if (i != p.in.unit) col_of[i] = cc++;
    size_t m = ratio_chan.size(), n = k - 1;
    IntMatrix g(m, n);
    for (size_t r = 0; r < m; ++r) {
        const Channel& ch = p.channels[ratio_chan[r]];
        if (ch.x != p.in.unit) g(r, (size_t)col_of[ch.x]) += 1;
        if (ch.y != p.in.unit) g(r, (size_t)col_of[ch.y]) += 1;
        if (ch.z != p.in.unit) g(r, (size_t)col_of[ch.z]) -= 1;
    }
    Int need(1);
    for (const auto& q : ratio_exp) need = lcm(need, q.get_den());
    CtxPtr rctx = make_context((unsigned long)to_long(need));
    std::vector<Cyclo> rhs;
    rhs.reserve(m);
    for (const auto& q : ratio_exp) rhs.push_back(root_from_exponent(rctx, q));
    SnfWithRhs snf = smith_with_rhs(g, rhs);
    for (size_t i = snf.rank; i < m; ++i)
        if (!snf.rhs[i].is_one()) return std::nullopt;
    std::vector<Rat> wv(n, Rat(0));
    for (size_t i = 0; i < snf.rank; ++i) {
        auto q = root_of_unity_exponent(snf.rhs[i]);
        if (!q) throw std::runtime_error("gauge witness constant is not a root of unity");
        wv[i] = *q / Rat(snf.s(i, i));
    }
    std::vector<Rat> h(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        Rat acc(0);
        for (size_t j = 0; j < n; ++j)
            if (snf.v(i, j) != 0) acc += Rat(snf.v(i, j)) * wv[j];
        h[i] = detail::frac_mod1(acc);
    }
    return h;
}

// Channelwise product of two tensor structures (the product of the underlying
// cocycles has multiplied Fourier blocks).
inline TensorStructure product(const CoherenceProblem& p, const TensorStructure& j1,
                               const TensorStructure& j2) {
    TensorStructure out;
    for (size_t c = 0; c < p.channels.size(); ++c) {
        const Matrix& b1 = j1.blocks[c];
        const Matrix& b2 = j2.blocks[c];
        if (b1.ctx()->conductor == b2.ctx()->conductor) {
            out.blocks.push_back(b1 * b2);
        } else {
            unsigned long n = (unsigned long)to_long(
                lcm(Int((long)b1.ctx()->conductor), Int((long)b2.ctx()->conductor)));
            CtxPtr big = make_context(n);
            Matrix e1(big, b1.rows(), b1.cols()), e2(big, b2.rows(), b2.cols());
            for (size_t i = 0; i < b1.rows(); ++i)
                for (size_t j = 0; j < b1.cols(); ++j) {
                    e1(i, j) = embed(b1(i, j), big);
                    e2(i, j) = embed(b2(i, j), big);
                }
            out.blocks.push_back(e1 * e2);
        }
    }
    return out;
}

inline TensorStructure trivial_structure(const CoherenceProblem& p) {
    TensorStructure ts;
    for (const auto& ch : p.channels) ts.blocks.push_back(Matrix::identity(p.in.ctx, (size_t)ch.n));
    return ts;
}

// Random gauge application, used by the property suite.
inline TensorStructure apply_gauge(const CoherenceProblem& p, const TensorStructure& ts,
                                   const std::vector<Rat>& h_exponents) {
    size_t k = p.in.labels.size();
    std::vector<Rat> h(k, Rat(0));
    size_t c = 0;
    for (size_t i = 0; i < k; ++i)
        if (i != p.in.unit) h[i] = h_exponents[c++];
    Int need(1);
    for (const auto& q : h) need = lcm(need, Int(q.get_den()));
    CtxPtr ctx0 = ts.blocks.empty() ? p.in.ctx : ts.blocks[0].ctx();
    need = lcm(need, Int((long)ctx0->conductor));
    CtxPtr ctx = make_context((unsigned long)to_long(need));
    TensorStructure out;
    for (size_t ci = 0; ci < p.channels.size(); ++ci) {
        const Channel& ch = p.channels[ci];
        Rat q = detail::frac_mod1(h[ch.x] + h[ch.y] - h[ch.z]);
        Cyclo s = root_from_exponent(ctx, q);
        const Matrix& b = ts.blocks[ci];
        Matrix m(ctx, b.rows(), b.cols());
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) m(i, j) = s * embed(b(i, j), ctx);
        out.blocks.push_back(std::move(m));
    }
    return out;
}

inline bool verify_tensor_structure(const CoherenceProblem& p, const TensorStructure& ts,
                                    std::string* why = nullptr);

// Full pipeline: build, branch, solve, verify, classify.
inline ClassifyResult compute_invariant_h2(const SolverInput& input, CoeffMode mode) {
    CoherenceProblem p = build_problem(input);
    ClassifyResult out;
    out.hsize = p.hgroup.size();

    std::vector<BranchCharacter> psis;
    if (p.matrix_channels.empty()) {
        BranchCharacter triv;
        triv.exponent.assign(p.hgroup.size(), Rat(0));
        psis.push_back(std::move(triv));
    } else {
        psis = enumerate_h_characters(p);
    }

    struct ClassRep {
        TensorStructure ts;
        size_t branch;
    };
    std::vector<ClassRep> reps;

    BranchContext bctx = build_branch_context(p);
    std::set<std::vector<Rat>> seen_psi_restrictions;
    for (const auto& psi : psis) {
        // branches that only differ on unused character values coincide
        std::vector<Rat> used;
        for (size_t i = 0; i < p.hgroup.size(); ++i)
            used.push_back(bctx.nu[i].empty() && i > 0 ? Rat(0) : psi.exponent[i]);
        if (!seen_psi_restrictions.insert(used).second) continue;
        BranchOutcome bo;
        bo.psi = psi;
        std::vector<Matrix> shapes;
        std::string why;
        if (!solve_branch_shapes(p, bctx, psi, shapes, why)) {
            bo.status = "dead: " + why;
            out.branches.push_back(std::move(bo));
            continue;
        }
        bo.shapes = shapes;
        CtxPtr wctx = shapes.empty() ? p.in.ctx : shapes[0].ctx();
        // assemble the monomial system: base rows + collapsed mixed relations
        std::vector<MonomialRow> rows;
        for (const auto& br : p.base_rows) {
            MonomialRow row = br;
            row.rhs = embed(row.rhs, wctx);
            rows.push_back(std::move(row));
        }
        std::map<std::vector<long>, std::set<std::string>> seen;
        bool dead = false;
        for (const auto& r : p.mixed) {
            Cyclo kl = detail::collapse_lhs(p, r, shapes, wctx);
            Cyclo kr = detail::collapse_rhs(p, r, shapes, wctx);
            if (kl.is_zero() && kr.is_zero()) continue;
            if (kl.is_zero() || kr.is_zero()) {
                bo.status = "dead: relation forces an invertible unknown to vanish";
                dead = true;
                break;
            }
            MonomialRow row;
            row.e.assign(p.total_unknowns(), 0);
            detail::add_channel_exponent(row.e, p, r.a, 1);
            detail::add_channel_exponent(row.e, p, r.b, 1);
            detail::add_channel_exponent(row.e, p, r.c, -1);
            detail::add_channel_exponent(row.e, p, r.d, -1);
            row.rhs = kr / kl;
            if (!detail::normalize_row(row)) {
                bo.status = "dead: contradictory constant relation";
                dead = true;
                break;
            }
            bool allzero = true;
            for (long vv : row.e)
                if (vv) allzero = false;
            if (allzero) continue;
            auto key = row.e;
            std::string srhs = to_string(row.rhs);
            auto& slot = seen[key];
            if (!slot.count(srhs)) {
                slot.insert(srhs);
                rows.push_back(std::move(row));
            }
        }
        if (dead) {
            out.branches.push_back(std::move(bo));
            continue;
        }
        MonomialSolveResult ms = solve_monomials(p, rows, mode, true);
        if (!ms.consistent) {
            bo.status = "dead: " + ms.why;
            out.branches.push_back(std::move(bo));
            continue;
        }
        bo.survived = true;
        bo.solution_group = ms.class_group;
        bo.free_rank = ms.free_rank;
        bo.class_exponents = ms.class_exponents;
        if (ms.free_rank > 0) {
            bo.status = "solutions form an infinite component (free rank " +
                        std::to_string(ms.free_rank) + "); classes not enumerated";
            out.branches.push_back(std::move(bo));
            throw std::runtime_error("positive-dimensional solution family: " + bo.status);
        }
        bo.status = "solutions modulo gauge: " + bo.solution_group.str();
        for (const auto& exps : ms.class_exponents) {
            TensorStructure ts = materialize(p, exps, shapes);
            std::string vwhy;
            if (!verify_tensor_structure(p, ts, &vwhy))
                throw std::logic_error("emitted representative fails re-verification: " + vwhy);
            reps.push_back({std::move(ts), out.branches.size()});
        }
        out.branches.push_back(std::move(bo));
    }

    // Classification: trivial class first, then dedupe (certified pairwise).
    TensorStructure triv = trivial_structure(p);
    out.reps.push_back(triv);
    for (auto& cr : reps) {
        bool fresh = true;
        for (const auto& existing : out.reps)
            if (cohomologous_witness(p, existing, cr.ts, mode)) {
                fresh = false;
                break;
            }
        if (fresh) out.reps.push_back(std::move(cr.ts));
    }
    // pairwise certification
    for (size_t i = 0; i < out.reps.size(); ++i)
        for (size_t j = i + 1; j < out.reps.size(); ++j)
            if (cohomologous_witness(p, out.reps[i], out.reps[j], mode))
                throw std::logic_error("classification inconsistency: duplicate classes");
    // group law
    size_t nc = out.reps.size();
    out.table.assign(nc, std::vector<size_t>(nc, nc));
    for (size_t i = 0; i < nc; ++i)
        for (size_t j = 0; j < nc; ++j) {
            TensorStructure prod = product(p, out.reps[i], out.reps[j]);
            std::string vwhy;
            if (!verify_tensor_structure(p, prod, &vwhy))
                throw std::logic_error("product of cocycles fails coherence: " + vwhy);
            size_t found = nc;
            for (size_t t = 0; t < nc; ++t)
                if (cohomologous_witness(p, out.reps[t], prod, mode)) {
                    found = t;
                    break;
                }
            if (found == nc)
                throw std::logic_error("classification inconsistency: product lands outside known classes");
            out.table[i][j] = found;
        }
    // the table must be a group table: identity, inverses, associativity
    for (size_t i = 0; i < nc; ++i)
        if (out.table[0][i] != i || out.table[i][0] != i)
            throw std::logic_error("class table has no identity");
    for (size_t i = 0; i < nc; ++i) {
        bool has_inverse = false;
        for (size_t j = 0; j < nc; ++j)
            if (out.table[i][j] == 0) has_inverse = true;
        if (!has_inverse) throw std::logic_error("class table misses an inverse");
    }
    for (size_t i = 0; i < nc; ++i)
        for (size_t j = 0; j < nc; ++j)
            for (size_t k = 0; k < nc; ++k)
                if (out.table[out.table[i][j]][k] != out.table[i][out.table[j][k]])
                    throw std::logic_error("class table is not associative");
    for (size_t i = 0; i < nc && out.abelian; ++i)
        for (size_t j = 0; j < nc; ++j)
            if (out.table[i][j] != out.table[j][i]) {
                out.abelian = false;
                break;
            }
    if (out.abelian) {
        // presentation from the multiplication table
        if (nc == 1) {
            out.presentation = {};
        } else {
            IntMatrix rel(nc * nc, nc - 1);
            size_t r = 0;
            for (size_t i = 0; i < nc; ++i)
                for (size_t j = 0; j < nc; ++j, ++r) {
                    if (i > 0) rel(r, i - 1) += 1;
                    if (j > 0) rel(r, j - 1) += 1;
                    if (out.table[i][j] > 0) rel(r, out.table[i][j] - 1) -= 1;
                }
            out.presentation = quotient_group(rel, nc - 1);
        }
    }
    return out;
}

// Exact re-check of every coherence relation for a concrete tensor structure,
// evaluated directly from the stored bilinear relations and base rows.
inline bool verify_tensor_structure(const CoherenceProblem& p, const TensorStructure& ts,
                                    std::string* why) {
    CtxPtr ctx = ts.blocks.empty() ? p.in.ctx : ts.blocks[0].ctx();
    auto block = [&](int chan) { return ts.blocks[chan]; };
    // base rows: v^e = rhs
    for (const auto& row : p.base_rows) {
        Cyclo acc(ctx, Rat(1));
        for (size_t j = 0; j < p.total_unknowns(); ++j) {
            if (row.e[j] == 0) continue;
            // find the channel owning unknown j
            // (scalar unknowns only in base rows)
            for (size_t cidx = 0; cidx < p.channels.size(); ++cidx) {
                const Channel& ch = p.channels[cidx];
                if (ch.unknown == (int)j) {
                    acc *= block((int)cidx)(0, 0).pow(row.e[j]);
                    break;
                }
            }
        }
        if (acc != embed(row.rhs, ctx)) {
            if (why) *why = "base monomial relation violated";
            return false;
        }
    }
    for (const auto& r : p.mixed) {
        Matrix ma = block(r.a), mb = block(r.b), mc = block(r.c), md = block(r.d);
        Cyclo lhs(ctx), rhs(ctx);
        for (size_t i = 0; i < r.coefL.rows(); ++i)
            for (size_t j = 0; j < r.coefL.cols(); ++j)
                if (!r.coefL(i, j).is_zero())
                    lhs += embed(r.coefL(i, j), ctx) * ma(r.ra, i) * mb(r.rb, j);
        for (size_t k = 0; k < r.coefR.rows(); ++k)
            for (size_t l = 0; l < r.coefR.cols(); ++l)
                if (!r.coefR(k, l).is_zero())
                    rhs += embed(r.coefR(k, l), ctx) * mc(k, r.ck) * md(l, r.cl);
        if (lhs != rhs) {
            if (why) *why = "bilinear coherence relation violated";
            return false;
        }
    }
    return true;
}

} // namespace invcoh
