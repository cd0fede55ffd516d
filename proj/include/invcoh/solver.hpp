#pragma once

// The coherence solver: parametrize tensor structures on the identity functor
// by invertible channel matrices J^{xy}_z, generate the coherence constraints
// from the fusion trees, solve exactly, and classify solutions modulo gauge.
//
// Channels of multiplicity one carry scalar unknowns; channels of higher
// multiplicity carry matrix unknowns. A branch fixes one character psi of the
// group H of invertible labels that fix every non-invertible label; the
// twisted pencil relations then reduce each matrix unknown to scalar * fixed
// shape, and the remaining system is monomial and solved by Smith reduction
// over the divisible coefficient group.

#include <functional>
#include <set>

#include "fusion.hpp"

namespace invcoh {

enum class CoeffMode { invertible, unitary };

inline const char* coeff_mode_name(CoeffMode m) {
    return m == CoeffMode::invertible ? "invertible" : "unitary";
}

struct SolverInput {
    std::string name;
    CtxPtr ctx;
    std::vector<std::string> labels;
    size_t unit = 0;
    FusionTable fus;
    std::function<Matrix(size_t, size_t, size_t, size_t)> right_in_left; // E-matrix per (x,y,z,w)
};

// R-tree expansion in the L-tree basis via dual trees, concrete backend.
// The model is copied into shared ownership so the input outlives its source.
inline SolverInput solver_input(const ConcreteModel& m) {
    SolverInput in;
    in.name = m.name;
    in.ctx = m.ctx;
    for (const auto& r : m.irreps) in.labels.push_back(r.label());
    in.unit = m.unit;
    in.fus = m.fus;
    auto mp = std::make_shared<ConcreteModel>(m);
    in.right_in_left = [mp](size_t x, size_t y, size_t z, size_t w) {
        auto lt = left_trees(mp->fus, x, y, z, w);
        auto rt = right_trees(mp->fus, x, y, z, w);
        Matrix e(mp->ctx, rt.size(), lt.size());
        Matrix idz = Matrix::identity(mp->ctx, mp->irreps[z].dim());
        size_t dw = mp->irreps[w].dim();
        for (size_t b = 0; b < rt.size(); ++b) {
            Matrix r = concrete_right_tree(*mp, x, y, z, w, rt[b]);
            for (size_t a = 0; a < lt.size(); ++a) {
                const auto& t = lt[a];
                const Matrix& innerdual = mp->basis(x, y, t.mid).duals[t.i];
                const Matrix& outerdual = mp->basis(t.mid, z, w).duals[t.j];
                Matrix coeff = outerdual * (kron(innerdual, idz) * r);
                Cyclo scal = coeff(0, 0);
                if (coeff != scal * Matrix::identity(mp->ctx, dw))
                    throw std::logic_error("tree expansion is not scalar");
                e(b, a) = scal;
            }
        }
        return e;
    };
    return in;
}

inline SolverInput solver_input(const SkeletalCategory& c, std::string name) {
    SolverInput in;
    in.name = std::move(name);
    in.ctx = c.ctx;
    in.labels = c.labels;
    in.unit = c.unit;
    in.fus = c.fus;
    auto cp = std::make_shared<SkeletalCategory>(c);
    in.right_in_left = [cp](size_t x, size_t y, size_t z, size_t w) {
        return inverse(cp->f(x, y, z, w));
    };
    return in;
}

// ---------------------------------------------------------------------------

struct Channel {
    size_t x, y, z;
    long n = 0;
    bool counital = false; // x or y is the unit: J fixed to the identity
    int unknown = -1;      // scalar unknown index (multiplicity-one channels)
    int matrix_id = -1;    // matrix channel index (multiplicity >= 2)
};

struct TensorStructure {
    std::vector<Matrix> blocks; // aligned with CoherenceProblem::channels
};

// One bilinear coherence relation, channel-pure on both sides:
//   sum_{i,j} coefL(i,j) (A)_{ra,i} (B)_{rb,j}
//     = sum_{k,l} coefR(k,l) (C)_{k,ck} (D)_{l,cl}
struct BilinRel {
    int a, b, c, d;       // channel indices
    size_t ra, rb, ck, cl;
    Matrix coefL, coefR;
    int htag = -1;        // index into H of the generating invertible label
};

struct MonomialRow {
    std::vector<long> e; // exponents over scalar unknowns (incl. branch scalars)
    Cyclo rhs;           // v^e = rhs
};

struct CoherenceProblem {
    SolverInput in;
    std::vector<Channel> channels;
    std::map<std::array<size_t, 3>, int> channel_index;
    size_t n_scalar = 0;                        // scalar unknowns from channels
    std::vector<int> matrix_channels;           // channel index per matrix id
    std::vector<size_t> hgroup;                 // labels of H (unit first)
    std::vector<MonomialRow> base_rows;         // scalar-only relations
    std::vector<BilinRel> mixed;                // relations touching matrix channels

    size_t total_unknowns() const { return n_scalar + matrix_channels.size(); }
    int channel_of(size_t x, size_t y, size_t z) const {
        auto it = channel_index.find({x, y, z});
        return it == channel_index.end() ? -1 : it->second;
    }
};

namespace detail {

// exponent-vector helpers for monomial bookkeeping
inline void add_channel_exponent(std::vector<long>& e, const CoherenceProblem& p, int chan,
                                 long delta) {
    const Channel& ch = p.channels[chan];
    if (ch.counital) return;
    if (ch.unknown >= 0) e[ch.unknown] += delta;
    else e[p.n_scalar + ch.matrix_id] += delta;
}

inline bool normalize_row(MonomialRow& row) {
    // returns false if the row is unsatisfiable
    bool allzero = true;
    for (long v : row.e)
        if (v != 0) {
            allzero = false;
            if (v < 0) {
                for (auto& t : row.e) t = -t;
                row.rhs = row.rhs.inverse();
            }
            break;
        }
    if (allzero) return row.rhs.is_one();
    return true;
}

} // namespace detail

inline CoherenceProblem build_problem(SolverInput in, bool with_relations = true) {
    CoherenceProblem p;
    p.in = std::move(in);
    size_t k = p.in.labels.size();
    for (size_t x = 0; x < k; ++x)
        for (size_t y = 0; y < k; ++y)
            for (size_t z = 0; z < k; ++z) {
                long n = p.in.fus.n(x, y, z);
                if (n == 0) continue;
                Channel ch{x, y, z, n, x == p.in.unit || y == p.in.unit, -1, -1};
                if (!ch.counital) {
                    if (n == 1) ch.unknown = (int)p.n_scalar++;
                    else {
                        ch.matrix_id = (int)p.matrix_channels.size();
                        p.matrix_channels.push_back(-1); // patched below
                    }
                }
                p.channel_index[{x, y, z}] = (int)p.channels.size();
                p.channels.push_back(ch);
            }
    for (size_t i = 0; i < p.channels.size(); ++i)
        if (p.channels[i].matrix_id >= 0) p.matrix_channels[p.channels[i].matrix_id] = (int)i;

    // H: invertible labels fixing every non-invertible label on both sides.
    std::vector<size_t> invs;
    for (size_t x = 0; x < k; ++x) {
        bool ok = true;
        for (size_t y = 0; y < k && ok; ++y) {
            long s = 0;
            for (size_t z = 0; z < k; ++z) s += p.in.fus.n(x, y, z);
            if (s != 1) ok = false;
        }
        if (ok) invs.push_back(x);
    }
    std::set<size_t> invset(invs.begin(), invs.end());
    auto tensor_label = [&](size_t a, size_t b) {
        for (size_t z = 0; z < k; ++z)
            if (p.in.fus.n(a, b, z) > 0) return z;
        throw std::logic_error("empty fusion row");
    };
    p.hgroup.push_back(p.in.unit);
    for (size_t g : invs) {
        if (g == p.in.unit) continue;
        bool fixes = true;
        for (size_t x = 0; x < k && fixes; ++x) {
            if (invset.count(x)) continue;
            if (tensor_label(g, x) != x || tensor_label(x, g) != x) fixes = false;
        }
        if (fixes) p.hgroup.push_back(g);
    }

    if (!with_relations) return p;

    // Relation generation over all non-unit triples.
    auto hindex = [&](size_t label) {
        for (size_t i = 0; i < p.hgroup.size(); ++i)
            if (p.hgroup[i] == label) return (int)i;
        return -1;
    };
    std::map<std::vector<long>, std::set<std::string>> seen; // dedup by exponents+rhs
    auto push_base_row = [&](MonomialRow row) {
        if (!detail::normalize_row(row))
            throw std::runtime_error("contradictory scalar relation in coherence system");
        bool allzero = true;
        for (long v : row.e)
            if (v) allzero = false;
        if (allzero) return;
        auto key = row.e;
        std::string rhs = to_string(row.rhs);
        auto& slot = seen[key];
        if (slot.count(rhs)) return;
        slot.insert(rhs);
        p.base_rows.push_back(std::move(row));
    };

    for (size_t x = 0; x < k; ++x)
        for (size_t y = 0; y < k; ++y)
            for (size_t z = 0; z < k; ++z) {
                if (x == p.in.unit || y == p.in.unit || z == p.in.unit) continue;
                int tag = -1;
                {
                    int cnt = 0;
                    for (size_t t : {x, y, z}) {
                        int h = hindex(t);
                        if (h > 0) {
                            ++cnt;
                            tag = h;
                        }
                    }
                    if (cnt != 1) tag = -1;
                }
                for (size_t w = 0; w < k; ++w) {
                    auto lt = left_trees(p.in.fus, x, y, z, w);
                    if (lt.empty()) continue;
                    auto rt = right_trees(p.in.fus, x, y, z, w);
                    Matrix e = p.in.right_in_left(x, y, z, w);
                    if (e.rows() != rt.size() || e.cols() != lt.size())
                        throw std::logic_error("expansion matrix shape mismatch");
                    // Row lookup helpers by (mid) label blocks.
                    for (size_t rpos = 0; rpos < rt.size(); ++rpos) {
                        size_t v = rt[rpos].mid;
                        int chC = p.channel_of(y, z, v);
                        int chD = p.channel_of(x, v, w);
                        for (size_t lpos = 0; lpos < lt.size(); ++lpos) {
                            size_t u = lt[lpos].mid;
                            int chA = p.channel_of(x, y, u);
                            int chB = p.channel_of(u, z, w);
                            const Channel& A = p.channels[chA];
                            const Channel& B = p.channels[chB];
                            const Channel& C = p.channels[chC];
                            const Channel& D = p.channels[chD];
                            // coefL over (i,j): E[rpos, (u,i,j)]
                            Matrix coefL(p.in.ctx, (size_t)A.n, (size_t)B.n);
                            for (size_t q = 0; q < lt.size(); ++q)
                                if (lt[q].mid == u) coefL(lt[q].i, lt[q].j) = e(rpos, q);
                            // coefR over (k',l'): E[(v,k',l'), lpos]
                            Matrix coefR(p.in.ctx, (size_t)C.n, (size_t)D.n);
                            for (size_t q = 0; q < rt.size(); ++q)
                                if (rt[q].mid == v) coefR(rt[q].i, rt[q].j) = e(q, lpos);
                            bool lzero = coefL.is_zero(), rzero = coefR.is_zero();
                            if (lzero && rzero) continue;
                            bool has_matrix = A.matrix_id >= 0 || B.matrix_id >= 0 ||
                                              C.matrix_id >= 0 || D.matrix_id >= 0;
                            if (!has_matrix) {
                                // scalar relation: coefL * a*b = coefR * c*d
                                if (lzero || rzero)
                                    throw std::runtime_error(
                                        "scalar coherence relation forces an invertible unknown to vanish");
                                MonomialRow row;
                                row.e.assign(p.total_unknowns(), 0);
                                detail::add_channel_exponent(row.e, p, chA, 1);
                                detail::add_channel_exponent(row.e, p, chB, 1);
                                detail::add_channel_exponent(row.e, p, chC, -1);
                                detail::add_channel_exponent(row.e, p, chD, -1);
                                row.rhs = coefR(0, 0) / coefL(0, 0);
                                push_base_row(std::move(row));
                            } else {
                                BilinRel rel{chA, chB, chC, chD,
                                             lt[lpos].i, lt[lpos].j,
                                             rt[rpos].i, rt[rpos].j,
                                             std::move(coefL), std::move(coefR), tag};
                                p.mixed.push_back(std::move(rel));
                            }
                        }
                    }
                }
            }
    return p;
}

// ---------------------------------------------------------------------------
// Branch enumeration: characters of H.

struct BranchCharacter {
    std::vector<Rat> exponent; // per H element, value = e^{2 pi i q}
    std::string str(const CoherenceProblem& p) const {
        std::ostringstream os;
        os << "psi{";
        bool first = true;
        for (size_t i = 1; i < p.hgroup.size(); ++i) {
            if (!first) os << ", ";
            first = false;
            os << p.in.labels[p.hgroup[i]] << " -> " << to_string(root_from_exponent(
                      make_context((unsigned long)to_long(exponent[i].get_den())), exponent[i]));
        }
        os << "}";
        return os.str();
    }
};

inline std::vector<BranchCharacter> enumerate_h_characters(const CoherenceProblem& p) {
    size_t h = p.hgroup.size();
    // H multiplication table in H-indices.
    auto tensor_label = [&](size_t a, size_t b) {
        for (size_t z = 0; z < p.in.labels.size(); ++z)
            if (p.in.fus.n(a, b, z) > 0) return z;
        throw std::logic_error("empty fusion row");
    };
    std::vector<std::vector<size_t>> mul(h, std::vector<size_t>(h));
    auto hindex = [&](size_t label) {
        for (size_t i = 0; i < h; ++i)
            if (p.hgroup[i] == label) return i;
        throw std::logic_error("H is not closed under fusion");
    };
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < h; ++j) mul[i][j] = hindex(tensor_label(p.hgroup[i], p.hgroup[j]));
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < h; ++j)
            if (mul[i][j] != mul[j][i])
                throw std::runtime_error("invertible-object stabilizer is not abelian: unsupported");

    // element orders
    std::vector<long> order(h, 1);
    for (size_t i = 0; i < h; ++i) {
        size_t x = i;
        long o = 1;
        while (x != 0) {
            x = mul[x][i];
            ++o;
        }
        order[i] = o;
    }
    // greedy generating set
    std::vector<size_t> gens;
    std::vector<bool> gen_span(h, false);
    gen_span[0] = true;
    size_t covered = 1;
    while (covered < h) {
        size_t best = 0;
        for (size_t i = 1; i < h; ++i)
            if (!gen_span[i] && (best == 0 || order[i] > order[best])) best = i;
        gens.push_back(best);
        // close span
        std::vector<size_t> frontier;
        for (size_t i = 0; i < h; ++i)
            if (gen_span[i]) frontier.push_back(i);
        for (size_t fi = 0; fi < frontier.size(); ++fi) {
            size_t nxt = mul[frontier[fi]][best];
            size_t cur = nxt;
            while (!gen_span[cur]) {
                gen_span[cur] = true;
                ++covered;
                frontier.push_back(cur);
                cur = mul[cur][best];
            }
        }
    }
    // candidate generator values, checked for multiplicativity
    std::vector<BranchCharacter> out;
    std::vector<long> choice(gens.size(), 0);
    std::set<std::vector<Rat>> distinct;
    while (true) {
        // build psi by BFS over products
        std::vector<std::optional<Rat>> val(h);
        val[0] = Rat(0);
        bool progress = true, ok = true;
        std::vector<Rat> genval(gens.size());
        for (size_t i = 0; i < gens.size(); ++i) genval[i] = rat(choice[i], order[gens[i]]);
        while (progress && ok) {
            progress = false;
            for (size_t i = 0; i < h && ok; ++i) {
                if (!val[i]) continue;
                for (size_t gi = 0; gi < gens.size(); ++gi) {
                    size_t j = mul[i][gens[gi]];
                    Rat q = *val[i] + genval[gi];
                    q -= fdiv_q(q.get_num(), q.get_den());
                    if (!val[j]) {
                        val[j] = q;
                        progress = true;
                    } else if (*val[j] != q) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        for (size_t i = 0; i < h; ++i)
            if (!val[i]) ok = false;
        if (ok) {
            // verify full multiplicativity
            for (size_t i = 0; i < h && ok; ++i)
                for (size_t j = 0; j < h; ++j) {
                    Rat q = *val[i] + *val[j];
                    q -= fdiv_q(q.get_num(), q.get_den());
                    if (q != *val[mul[i][j]]) {
                        ok = false;
                        break;
                    }
                }
        }
        if (ok) {
            std::vector<Rat> v(h);
            for (size_t i = 0; i < h; ++i) v[i] = *val[i];
            if (distinct.insert(v).second) {
                BranchCharacter bc;
                bc.exponent = std::move(v);
                out.push_back(std::move(bc));
            }
        }
        // next tuple
        size_t pos = 0;
        while (pos < choice.size()) {
            if (++choice[pos] < order[gens[pos]]) break;
            choice[pos] = 0;
            ++pos;
        }
        if (pos == choice.size()) break;
        if (choice.empty()) break;
    }
    if (out.empty()) {
        BranchCharacter triv;
        triv.exponent.assign(h, Rat(0));
        out.push_back(std::move(triv));
    }
    return out;
}

} // namespace invcoh
