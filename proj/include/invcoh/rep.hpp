#pragma once

// Unitary irreducible representations with exact cyclotomic matrix entries,
// character arithmetic, fusion multiplicities and intertwiner spaces.

#include "group.hpp"
#include "matrix.hpp"

namespace invcoh {

class Irrep {
public:
    Irrep() = default;

    // Matrices for the group generators, extended to all elements by word
    // evaluation.
    static Irrep from_generator_matrices(const FiniteGroup& g, std::string label,
                                         const std::vector<Matrix>& gen_mats) {
        if (gen_mats.size() != g.generators().size())
            throw std::invalid_argument("one matrix per generator required");
        Irrep r;
        r.label_ = std::move(label);
        r.dim_ = gen_mats.empty() ? 1 : gen_mats[0].rows();
        r.ctx_ = gen_mats.empty() ? make_context(1) : gen_mats[0].ctx();
        r.mats_.reserve(g.order());
        for (size_t i = 0; i < g.order(); ++i) {
            Matrix m = Matrix::identity(r.ctx_, r.dim_);
            for (int w : g.word((int)i)) m = m * gen_mats[w];
            r.mats_.push_back(std::move(m));
        }
        return r;
    }

    static Irrep from_character_values(const FiniteGroup& g, std::string label,
                                       const std::vector<Cyclo>& values) {
        if (values.size() != g.order()) throw std::invalid_argument("one value per element required");
        Irrep r;
        r.label_ = std::move(label);
        r.dim_ = 1;
        r.ctx_ = values[0].ctx();
        for (const auto& v : values) {
            Matrix m(r.ctx_, 1, 1);
            m(0, 0) = v;
            r.mats_.push_back(std::move(m));
        }
        return r;
    }

    const std::string& label() const { return label_; }
    size_t dim() const { return dim_; }
    const CtxPtr& ctx() const { return ctx_; }
    const Matrix& at(int g) const { return mats_[g]; }

    Cyclo character(int g) const { return mats_[g].trace(); }

    Irrep tensor_sign(const Irrep& chi, std::string label) const {
        // this (x) one-dimensional chi
        Irrep r;
        r.label_ = std::move(label);
        r.dim_ = dim_;
        r.ctx_ = ctx_;
        for (size_t i = 0; i < mats_.size(); ++i) r.mats_.push_back(chi.mats_[i](0, 0) * mats_[i]);
        return r;
    }

private:
    std::string label_;
    size_t dim_ = 0;
    CtxPtr ctx_;
    std::vector<Matrix> mats_;
};

struct IrrepReport {
    bool homomorphism = true;
    bool unitary = true;
    bool irreducible = true;
    std::string detail;
    bool ok() const { return homomorphism && unitary && irreducible; }
};

inline IrrepReport validate_irrep(const FiniteGroup& g, const Irrep& r) {
    IrrepReport rep;
    size_t n = g.order();
    Matrix id = Matrix::identity(r.ctx(), r.dim());
    if (r.at(0) != id) {
        rep.homomorphism = false;
        rep.detail += "R(e) != id; ";
    }
    for (size_t a = 0; a < n && rep.homomorphism; ++a)
        for (size_t b = 0; b < n; ++b)
            if (r.at((int)a) * r.at((int)b) != r.at(g.mul((int)a, (int)b))) {
                rep.homomorphism = false;
                rep.detail += "R(a)R(b) != R(ab) at (" + g.name((int)a) + "," + g.name((int)b) + "); ";
                break;
            }
    for (size_t a = 0; a < n; ++a)
        if (r.at((int)a).dagger() != r.at(g.inv((int)a))) {
            rep.unitary = false;
            rep.detail += "R(a)* != R(a^-1) at " + g.name((int)a) + "; ";
            break;
        }
    // <chi,chi> must be 1 for an irreducible.
    Cyclo ip(r.ctx());
    for (size_t a = 0; a < n; ++a) ip += r.character((int)a) * r.character((int)a).conjugate();
    Cyclo expected(r.ctx(), Rat((long)n));
    if (ip != expected) {
        rep.irreducible = false;
        rep.detail += "character norm |G|<chi,chi> = " + to_string(ip) + "; ";
    }
    return rep;
}

struct FusionTable {
    size_t k = 0;                 // number of irreps
    std::vector<long> mult;       // N^{xy}_z at [x*k*k + y*k + z]
    long n(size_t x, size_t y, size_t z) const { return mult[x * k * k + y * k + z]; }
};

// Multiplicities via exact character inner products. Requires an exhaustive
// irrep list (sum of squared dimensions equals |G|).
inline FusionTable fusion_table(const FiniteGroup& g, const std::vector<Irrep>& irreps) {
    size_t total = 0;
    for (const auto& r : irreps) total += r.dim() * r.dim();
    if (total != g.order())
        throw std::invalid_argument("irrep list not exhaustive: sum d^2 = " + std::to_string(total) +
                                    " but |G| = " + std::to_string(g.order()));
    size_t k = irreps.size();
    CtxPtr ctx = irreps[0].ctx();
    FusionTable t;
    t.k = k;
    t.mult.assign(k * k * k, 0);
    // Precompute characters.
    std::vector<std::vector<Cyclo>> ch(k);
    for (size_t x = 0; x < k; ++x)
        for (size_t a = 0; a < g.order(); ++a) ch[x].push_back(irreps[x].character((int)a));
    for (size_t x = 0; x < k; ++x)
        for (size_t y = 0; y < k; ++y)
            for (size_t z = 0; z < k; ++z) {
                Cyclo acc(ctx);
                for (size_t a = 0; a < g.order(); ++a)
                    acc += ch[x][a] * ch[y][a] * ch[z][a].conjugate();
                Rat v = acc.rational_value() / Rat((long)g.order());
                if (v.get_den() != 1 || v < 0)
                    throw std::logic_error("fusion multiplicity is not a nonnegative integer");
                t.mult[x * k * k + y * k + z] = (long)v.get_num().get_si();
            }
    return t;
}

struct IntertwinerBasis {
    size_t x = 0, y = 0, z = 0;     // irrep indices, maps H_z -> H_x (x) H_y
    std::vector<Matrix> maps;       // dim(x)dim(y) x dim(z) matrices
    std::vector<Matrix> duals;      // dim(z) x dim(x)dim(y), duals[i]*maps[j] = delta_ij id
};

// Exact basis of Mor(z, x (x) y) = { T : (x(g) (x) y(g)) T = T z(g) } via the
// null space of the stacked generator conditions, T flattened column-major.
inline IntertwinerBasis intertwiner_basis(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                          size_t x, size_t y, size_t z) {
    const Irrep& rx = irreps[x];
    const Irrep& ry = irreps[y];
    const Irrep& rz = irreps[z];
    CtxPtr ctx = rx.ctx();
    size_t dxy = rx.dim() * ry.dim(), dz = rz.dim();
    size_t nunk = dxy * dz;
    const auto& gens = g.generators();
    Matrix cond(ctx, gens.size() * nunk, nunk);
    size_t row0 = 0;
    for (int gen : gens) {
        // vec(A T - T B) = (I (x) A - B^T (x) I) vec(T), column-major vec.
        Matrix a = kron(rx.at(gen), ry.at(gen));
        Matrix bt = rz.at(gen).transpose();
        // Rows indexed by the (i, j) entry of the dxy x dz result, column-major.
        for (size_t j = 0; j < dz; ++j)
            for (size_t i = 0; i < dxy; ++i) {
                size_t row = row0 + j * dxy + i;
                // sum_k A[i,k] T[k,j]
                for (size_t kk = 0; kk < dxy; ++kk)
                    if (!a(i, kk).is_zero()) cond(row, j * dxy + kk) += a(i, kk);
                // - sum_k T[i,k] B[k,j] = - sum_k B^T[j,k] T[i,k]
                for (size_t kk = 0; kk < dz; ++kk)
                    if (!bt(j, kk).is_zero()) cond(row, kk * dxy + i) -= bt(j, kk);
            }
        row0 += nunk;
    }
    IntertwinerBasis b;
    b.x = x;
    b.y = y;
    b.z = z;
    for (const auto& v : nullspace(cond)) b.maps.push_back(Matrix::unvec(ctx, v, dxy, dz));
    if (!b.maps.empty()) b.duals = dual_basis(b.maps);
    return b;
}

// Full exact check of the intertwining relation over every group element.
inline bool is_intertwiner(const FiniteGroup& g, const Irrep& rx, const Irrep& ry, const Irrep& rz,
                           const Matrix& t) {
    for (size_t a = 0; a < g.order(); ++a)
        if (kron(rx.at((int)a), ry.at((int)a)) * t != t * rz.at((int)a)) return false;
    return true;
}

} // namespace invcoh
