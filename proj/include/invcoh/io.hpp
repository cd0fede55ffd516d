#pragma once

// Plain-text line-oriented file formats. All exact values use the cyclotomic
// literal syntax; '#' starts a comment; writers emit canonical forms so that
// write(read(x)) is byte-stable.

#include <fstream>

#include "cocycle.hpp"

namespace invcoh {
namespace io {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tok;
    std::istringstream is(line);
    std::string t;
    while (is >> t) {
        if (t[0] == '#') break;
        tok.push_back(t);
    }
    return tok;
}

class LineReader {
public:
    explicit LineReader(std::istream& is) : is_(is) {}
    // next non-empty, non-comment token line
    std::optional<std::vector<std::string>> next() {
        if (peeked_) {
            auto t = std::move(*peeked_);
            peeked_.reset();
            return t;
        }
        std::string line;
        while (std::getline(is_, line)) {
            auto tok = tokenize(line);
            if (!tok.empty()) return tok;
        }
        return std::nullopt;
    }
    void push_back(std::vector<std::string> tok) { peeked_ = std::move(tok); }

private:
    std::istream& is_;
    std::optional<std::vector<std::string>> peeked_;
};

[[noreturn]] inline void fail(const std::string& what) {
    throw std::runtime_error("parse error: " + what);
}

inline std::string kv(const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0) fail("expected " + key + "=..., got " + tok);
    return tok.substr(key.size() + 1);
}

// --------------------------------------------------------------------------
// group file

inline void write_group(std::ostream& os, const FiniteGroup& g) {
    os << "group order=" << g.order() << "\n";
    os << "table\n";
    for (size_t i = 0; i < g.order(); ++i) {
        for (size_t j = 0; j < g.order(); ++j) os << (j ? " " : "") << g.mul((int)i, (int)j);
        os << "\n";
    }
    os << "names";
    for (size_t i = 0; i < g.order(); ++i) os << " " << g.name((int)i);
    os << "\n";
    os << "generators";
    for (int x : g.generators()) os << " " << x;
    os << "\n";
}

inline std::vector<int> parse_cycles(const std::vector<std::string>& toks, size_t start) {
    // cycle notation over 0-based points: (0 1 2)(3 4)
    std::string all;
    for (size_t i = start; i < toks.size(); ++i) all += toks[i] + " ";
    int maxpt = -1;
    std::vector<std::vector<int>> cycles;
    size_t pos = 0;
    while (pos < all.size()) {
        while (pos < all.size() && (std::isspace((unsigned char)all[pos]))) ++pos;
        if (pos >= all.size()) break;
        if (all[pos] != '(') fail("expected '(' in cycle notation");
        ++pos;
        std::vector<int> cyc;
        while (pos < all.size() && all[pos] != ')') {
            while (pos < all.size() && std::isspace((unsigned char)all[pos])) ++pos;
            if (pos < all.size() && all[pos] == ')') break;
            size_t end = pos;
            while (end < all.size() && std::isdigit((unsigned char)all[end])) ++end;
            if (end == pos) fail("expected point index in cycle");
            int v = std::stoi(all.substr(pos, end - pos));
            cyc.push_back(v);
            maxpt = std::max(maxpt, v);
            pos = end;
        }
        if (pos >= all.size()) fail("unterminated cycle");
        ++pos;
        cycles.push_back(std::move(cyc));
    }
    std::vector<int> perm(maxpt + 1);
    for (int i = 0; i <= maxpt; ++i) perm[i] = i;
    for (const auto& cyc : cycles)
        for (size_t i = 0; i < cyc.size(); ++i) perm[cyc[i]] = cyc[(i + 1) % cyc.size()];
    return perm;
}

inline FiniteGroup read_group(std::istream& is) {
    LineReader r(is);
    auto head = r.next();
    if (!head || (*head)[0] != "group") fail("expected group header");
    std::optional<size_t> order;
    if (head->size() > 1) order = std::stoul(kv((*head)[1], "order"));
    auto sect = r.next();
    if (!sect) fail("truncated group file");
    if ((*sect)[0] == "table") {
        if (!order) fail("table form requires group order=<n>");
        size_t n = *order;
        std::vector<int> table(n * n);
        for (size_t i = 0; i < n; ++i) {
            auto row = r.next();
            if (!row || row->size() != n) fail("bad table row");
            for (size_t j = 0; j < n; ++j) table[i * n + j] = std::stoi((*row)[j]);
        }
        std::vector<std::string> names;
        std::vector<int> gens;
        while (auto extra = r.next()) {
            if ((*extra)[0] == "names") {
                names.assign(extra->begin() + 1, extra->end());
            } else if ((*extra)[0] == "generators") {
                for (size_t i = 1; i < extra->size(); ++i) gens.push_back(std::stoi((*extra)[i]));
            } else {
                fail("unexpected section " + (*extra)[0]);
            }
        }
        return FiniteGroup::from_table(std::move(table), n, std::move(names), std::move(gens));
    }
    if ((*sect)[0] == "generators") {
        std::vector<std::vector<int>> perms;
        size_t width = 0;
        while (auto line = r.next()) {
            auto perm = parse_cycles(*line, 0);
            width = std::max(width, perm.size());
            perms.push_back(std::move(perm));
        }
        for (auto& p : perms)
            for (size_t i = p.size(); i < width; ++i) p.push_back((int)i);
        FiniteGroup g = FiniteGroup::from_permutations(perms);
        if (order && g.order() != *order) fail("closure order disagrees with header");
        return g;
    }
    fail("expected table or generators section");
}

// --------------------------------------------------------------------------
// irrep file (one or more irreps, matrices per group generator)

inline void write_irreps(std::ostream& os, const FiniteGroup& g, const std::vector<Irrep>& irreps) {
    for (const auto& rep : irreps) {
        os << "irrep " << rep.label() << " dim=" << rep.dim()
           << " conductor=" << rep.ctx()->conductor << "\n";
        for (int gen : g.generators()) {
            os << "generator\n";
            const Matrix& m = rep.at(gen);
            for (size_t i = 0; i < m.rows(); ++i) {
                for (size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
                os << "\n";
            }
        }
    }
}

inline std::vector<Irrep> read_irreps(std::istream& is, const FiniteGroup& g) {
    LineReader r(is);
    std::vector<Irrep> out;
    while (auto head = r.next()) {
        if ((*head)[0] != "irrep" || head->size() != 4) fail("expected irrep header");
        std::string label = (*head)[1];
        size_t dim = std::stoul(kv((*head)[2], "dim"));
        unsigned long cond = std::stoul(kv((*head)[3], "conductor"));
        CtxPtr ctx = make_context(cond);
        std::vector<Matrix> gens;
        for (size_t gi = 0; gi < g.generators().size(); ++gi) {
            auto mark = r.next();
            if (!mark || (*mark)[0] != "generator") fail("expected generator marker");
            Matrix m(ctx, dim, dim);
            for (size_t i = 0; i < dim; ++i) {
                auto row = r.next();
                if (!row || row->size() != dim) fail("bad matrix row in irrep " + label);
                for (size_t j = 0; j < dim; ++j) m(i, j) = parse_cyclo((*row)[j], ctx);
            }
            gens.push_back(std::move(m));
        }
        out.push_back(Irrep::from_generator_matrices(g, label, gens));
    }
    return out;
}

// --------------------------------------------------------------------------
// skeletal fusion file

inline void write_skeletal(std::ostream& os, const SkeletalCategory& c,
                           const std::vector<std::string>& comments = {}) {
    for (const auto& line : comments) os << "# " << line << "\n";
    os << "fusion\n";
    os << "conductor " << c.ctx->conductor << "\n";
    os << "labels";
    for (const auto& l : c.labels) os << " " << l;
    os << "\n";
    os << "unit " << c.labels[c.unit] << "\n";
    for (size_t x = 0; x < c.nlabels(); ++x)
        for (size_t y = 0; y < c.nlabels(); ++y)
            for (size_t z = 0; z < c.nlabels(); ++z)
                if (c.fus.n(x, y, z) != 0)
                    os << "N " << c.labels[x] << " " << c.labels[y] << " " << c.labels[z] << " "
                       << c.fus.n(x, y, z) << "\n";
    os << "assoc\n";
    for (const auto& [key, f] : c.f_table) {
        auto [x, y, z, w] = key;
        os << "F " << c.labels[x] << " " << c.labels[y] << " " << c.labels[z] << " " << c.labels[w]
           << "\n";
        for (size_t i = 0; i < f.rows(); ++i) {
            for (size_t j = 0; j < f.cols(); ++j) os << (j ? " " : "") << to_string(f(i, j));
            os << "\n";
        }
    }
}

inline SkeletalCategory read_skeletal(std::istream& is) {
    LineReader r(is);
    auto head = r.next();
    if (!head || (*head)[0] != "fusion") fail("expected fusion header");
    SkeletalCategory c;
    std::string unit_label;
    std::vector<std::array<std::string, 3>> triples;
    std::vector<long> mults;
    while (auto line = r.next()) {
        const auto& t = *line;
        if (t[0] == "conductor") {
            c.ctx = make_context(std::stoul(t.at(1)));
        } else if (t[0] == "labels") {
            c.labels.assign(t.begin() + 1, t.end());
        } else if (t[0] == "unit") {
            unit_label = t.at(1);
        } else if (t[0] == "N") {
            if (t.size() != 5) fail("bad N line");
            triples.push_back({t[1], t[2], t[3]});
            mults.push_back(std::stol(t[4]));
        } else if (t[0] == "assoc") {
            r.push_back(t);
            break;
        } else {
            fail("unexpected line in fusion section: " + t[0]);
        }
    }
    if (!c.ctx) c.ctx = make_context(1);
    if (c.labels.empty()) fail("missing labels");
    c.unit = c.label_index(unit_label);
    size_t k = c.nlabels();
    c.fus.k = k;
    c.fus.mult.assign(k * k * k, 0);
    for (size_t i = 0; i < triples.size(); ++i) {
        size_t x = c.label_index(triples[i][0]);
        size_t y = c.label_index(triples[i][1]);
        size_t z = c.label_index(triples[i][2]);
        c.fus.mult[x * k * k + y * k + z] = mults[i];
    }
    compute_duals(c);
    auto sect = r.next();
    if (!sect || (*sect)[0] != "assoc") fail("expected assoc section");
    while (auto line = r.next()) {
        const auto& t = *line;
        if (t[0] != "F" || t.size() != 5) fail("expected F <x> <y> <z> <w>");
        size_t x = c.label_index(t[1]), y = c.label_index(t[2]), z = c.label_index(t[3]),
               w = c.label_index(t[4]);
        size_t rows = left_trees(c.fus, x, y, z, w).size();
        size_t cols = right_trees(c.fus, x, y, z, w).size();
        Matrix f(c.ctx, rows, cols);
        for (size_t i = 0; i < rows; ++i) {
            auto row = r.next();
            if (!row || row->size() != cols) fail("bad F-matrix row");
            for (size_t j = 0; j < cols; ++j) f(i, j) = parse_cyclo((*row)[j], c.ctx);
        }
        c.f_table[{x, y, z, w}] = std::move(f);
    }
    // every tuple with trees needs an F-matrix
    for (size_t x = 0; x < k; ++x)
        for (size_t y = 0; y < k; ++y)
            for (size_t z = 0; z < k; ++z)
                for (size_t w = 0; w < k; ++w)
                    if (c.has_trees(x, y, z, w) && !c.f_table.count({x, y, z, w}))
                        fail("missing F-matrix for a tuple with fusion trees");
    return c;
}

// --------------------------------------------------------------------------
// cocycle file (group-coefficient form)

inline void write_cocycle(std::ostream& os, const std::string& group_name, const GroupCocycle& om) {
    os << "cocycle group=" << group_name << " conductor=" << om.ctx->conductor << "\n";
    size_t n = om.group->order();
    for (size_t g = 0; g < n; ++g)
        for (size_t h = 0; h < n; ++h)
            if (!om.at((int)g, (int)h).is_zero())
                os << g << " " << h << " " << to_string(om.at((int)g, (int)h)) << "\n";
}

inline GroupCocycle read_cocycle(std::istream& is, const FiniteGroup& g, std::string* group_name) {
    LineReader r(is);
    auto head = r.next();
    if (!head || (*head)[0] != "cocycle" || head->size() != 3) fail("expected cocycle header");
    if (group_name) *group_name = kv((*head)[1], "group");
    CtxPtr ctx = make_context(std::stoul(kv((*head)[2], "conductor")));
    GroupCocycle om;
    om.group = &g;
    om.ctx = ctx;
    om.omega.assign(g.order() * g.order(), Cyclo(ctx));
    while (auto line = r.next()) {
        if (line->size() < 3) fail("bad cocycle entry");
        size_t a = std::stoul((*line)[0]), b = std::stoul((*line)[1]);
        if (a >= g.order() || b >= g.order()) fail("cocycle entry out of range");
        std::string expr;
        for (size_t i = 2; i < line->size(); ++i) expr += (*line)[i];
        om.at((int)a, (int)b) = parse_cyclo(expr, ctx);
    }
    return om;
}

// --------------------------------------------------------------------------
// tensor-structure (representative) file

inline void write_tensor(std::ostream& os, const CoherenceProblem& p, const TensorStructure& ts,
                         const std::string& input_name, CoeffMode mode) {
    unsigned long cond = ts.blocks.empty() ? p.in.ctx->conductor : ts.blocks[0].ctx()->conductor;
    os << "tensor input=" << input_name << " coeff=" << coeff_mode_name(mode)
       << " conductor=" << cond << "\n";
    for (size_t c = 0; c < p.channels.size(); ++c) {
        const Channel& ch = p.channels[c];
        os << "J " << p.in.labels[ch.x] << " " << p.in.labels[ch.y] << " " << p.in.labels[ch.z]
           << "\n";
        const Matrix& m = ts.blocks[c];
        for (size_t i = 0; i < m.rows(); ++i) {
            for (size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
            os << "\n";
        }
    }
}

inline TensorStructure read_tensor(std::istream& is, const CoherenceProblem& p,
                                   std::string* input_name = nullptr, std::string* mode = nullptr) {
    LineReader r(is);
    auto head = r.next();
    if (!head || (*head)[0] != "tensor" || head->size() != 4) fail("expected tensor header");
    if (input_name) *input_name = kv((*head)[1], "input");
    if (mode) *mode = kv((*head)[2], "coeff");
    CtxPtr ctx = make_context(std::stoul(kv((*head)[3], "conductor")));
    TensorStructure ts;
    ts.blocks.assign(p.channels.size(), Matrix());
    std::vector<bool> got(p.channels.size(), false);
    while (auto line = r.next()) {
        if ((*line)[0] != "J" || line->size() != 4) fail("expected J <x> <y> <z>");
        size_t x = 0, y = 0, z = 0, k = p.in.labels.size();
        auto idx = [&](const std::string& s) {
            for (size_t i = 0; i < k; ++i)
                if (p.in.labels[i] == s) return i;
            fail("unknown label " + s);
        };
        x = idx((*line)[1]);
        y = idx((*line)[2]);
        z = idx((*line)[3]);
        int chan = p.channel_of(x, y, z);
        if (chan < 0) fail("J line for a non-channel");
        size_t n = (size_t)p.channels[chan].n;
        Matrix m(ctx, n, n);
        for (size_t i = 0; i < n; ++i) {
            auto row = r.next();
            if (!row || row->size() != n) fail("bad J-matrix row");
            for (size_t j = 0; j < n; ++j) m(i, j) = parse_cyclo((*row)[j], ctx);
        }
        ts.blocks[chan] = std::move(m);
        got[chan] = true;
    }
    for (size_t c = 0; c < p.channels.size(); ++c)
        if (!got[c]) fail("missing J block for a fusion channel");
    return ts;
}

// --------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

} // namespace io

// Deterministic text report of a classification run.
inline std::string render_report(const CoherenceProblem& p, const ClassifyResult& r, CoeffMode mode,
                                 bool branch_detail) {
    std::ostringstream os;
    os << "input: " << p.in.name << " (" << p.in.labels.size() << " simple objects)\n";
    os << "coefficient mode: " << coeff_mode_name(mode) << "\n";
    os << "unknowns: " << p.n_scalar << " scalar channels, " << p.matrix_channels.size()
       << " matrix channels\n";
    os << "invertible-object stabilizer: order " << r.hsize << "\n";
    os << "branch candidates: " << r.branches.size() << "\n";
    size_t surv = 0;
    for (const auto& b : r.branches) {
        if (b.survived) ++surv;
        if (branch_detail) os << "  " << b.psi.str(p) << " -> " << b.status << "\n";
    }
    os << "surviving branches: " << surv << "\n";
    os << "cohomology classes: " << r.reps.size() << "\n";
    if (r.abelian) {
        os << "cohomology group: " << r.presentation.str() << "\n";
    } else {
        os << "cohomology group: nonabelian of order " << r.reps.size() << "\n";
        os << "multiplication table:\n";
        for (const auto& row : r.table) {
            os << " ";
            for (size_t v : row) os << " " << v;
            os << "\n";
        }
    }
    return os.str();
}

} // namespace invcoh
