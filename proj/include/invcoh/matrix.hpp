#pragma once

// Dense exact linear algebra over Q(zeta_N): elimination with exact pivot
// tests and a deterministic pivot order (leftmost nonzero column, topmost
// row), null spaces, linear solves with explicit free variables, and dual
// bases of intertwiner families.

#include "cyclotomic.hpp"

namespace invcoh {

class Matrix {
public:
    Matrix() : ctx_(make_context(1)), rows_(0), cols_(0) {}
    Matrix(CtxPtr ctx, size_t rows, size_t cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols), a_(rows * cols, Cyclo(ctx_)) {}

    static Matrix identity(const CtxPtr& ctx, size_t n) {
        Matrix m(ctx, n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = Cyclo(ctx, Rat(1));
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const CtxPtr& ctx() const { return ctx_; }

    Cyclo& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Cyclo& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_shape(b);
        Matrix r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_shape(b);
        Matrix r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
        return r;
    }
    friend Matrix operator*(const Cyclo& s, const Matrix& a) {
        Matrix r = a;
        for (auto& x : r.a_) x *= s;
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.ctx_, a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const Cyclo& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    const Cyclo& bkj = b(k, j);
                    if (bkj.is_zero()) continue;
                    r(i, j) += aik * bkj;
                }
            }
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }

    Matrix transpose() const {
        Matrix r(ctx_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    // Conjugate transpose.
    Matrix dagger() const {
        Matrix r(ctx_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conjugate();
        return r;
    }

    Cyclo trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
        Cyclo t(ctx_);
        for (size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    friend Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix r(a.ctx_, a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t j = 0; j < a.cols_; ++j) {
                if (a(i, j).is_zero()) continue;
                for (size_t k = 0; k < b.rows_; ++k)
                    for (size_t l = 0; l < b.cols_; ++l) {
                        if (b(k, l).is_zero()) continue;
                        r(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
                    }
            }
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    // Column-major flattening, the frozen convention for vectorized unknowns.
    std::vector<Cyclo> vec() const {
        std::vector<Cyclo> v;
        v.reserve(a_.size());
        for (size_t j = 0; j < cols_; ++j)
            for (size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }
    static Matrix unvec(const CtxPtr& ctx, const std::vector<Cyclo>& v, size_t rows, size_t cols) {
        if (v.size() != rows * cols) throw std::invalid_argument("unvec size mismatch");
        Matrix m(ctx, rows, cols);
        size_t idx = 0;
        for (size_t j = 0; j < cols; ++j)
            for (size_t i = 0; i < rows; ++i) m(i, j) = v[idx++];
        return m;
    }

private:
    void check_shape(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    CtxPtr ctx_;
    size_t rows_, cols_;
    std::vector<Cyclo> a_;
};

struct RrefResult {
    Matrix m;                      // reduced row echelon form
    std::vector<size_t> pivot_cols;
    size_t rank = 0;
};

inline RrefResult rref(Matrix m) {
    RrefResult res{Matrix(m.ctx(), 0, 0), {}, 0};
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t piv = r;
        while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
        Cyclo inv = m(r, c).inverse();
        for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Cyclo f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    res.m = std::move(m);
    return res;
}

// Exact basis of the right null space { v : M v = 0 }, ordered by ascending
// free column.
inline std::vector<std::vector<Cyclo>> nullspace(const Matrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Cyclo>> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Cyclo> v(m.cols(), Cyclo(m.ctx()));
        v[f] = Cyclo(m.ctx(), Rat(1));
        for (size_t r = 0; r < rr.rank; ++r) v[rr.pivot_cols[r]] = -rr.m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

struct LinearSolution {
    bool consistent = false;
    std::vector<Cyclo> particular;              // empty if inconsistent
    std::vector<std::vector<Cyclo>> nullbasis;  // free directions
};

// One exact solution of M x = b together with the null space.
inline LinearSolution solve_linear(const Matrix& m, const std::vector<Cyclo>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("rhs length mismatch");
    Matrix aug(m.ctx(), m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    RrefResult rr = rref(aug);
    LinearSolution sol;
    for (size_t r = 0; r < rr.rank; ++r)
        if (rr.pivot_cols[r] == m.cols()) return sol; // pivot in rhs column
    sol.consistent = true;
    sol.particular.assign(m.cols(), Cyclo(m.ctx()));
    for (size_t r = 0; r < rr.rank; ++r) sol.particular[rr.pivot_cols[r]] = rr.m(r, m.cols());
    sol.nullbasis = nullspace(m);
    return sol;
}

inline Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    size_t n = m.rows();
    Matrix aug(m.ctx(), n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Cyclo(m.ctx(), Rat(1));
    }
    RrefResult rr = rref(aug);
    if (rr.rank < n || rr.pivot_cols[n - 1] != n - 1)
        throw std::invalid_argument("matrix is singular");
    Matrix inv(m.ctx(), n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = rr.m(i, n + j);
    return inv;
}

inline size_t rank(const Matrix& m) { return rref(m).rank; }

inline bool is_invertible(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

// Dual family of a linearly independent intertwiner family S_i : H_z -> H_x (x) H_y
// between unitary representations with H_z irreducible: S_i^+ S_j = delta_ij id.
// Uses the normalized Gram matrix tr(S_i^* S_j)/dim(z); a singular Gram matrix
// signals a dependent family.
inline std::vector<Matrix> dual_basis(const std::vector<Matrix>& s) {
    if (s.empty()) return {};
    const CtxPtr& ctx = s[0].ctx();
    size_t n = s.size();
    size_t dz = s[0].cols();
    Matrix gram(ctx, n, n);
    Rat inv_dz = rat(1, (long)dz);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            gram(i, j) = inv_dz * (s[i].dagger() * s[j]).trace();
    Matrix ginv;
    try {
        ginv = inverse(gram);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("singular Gram matrix: intertwiner family is dependent");
    }
    std::vector<Matrix> duals;
    duals.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        Matrix d(ctx, dz, s[0].rows());
        for (size_t j = 0; j < n; ++j) d = d + ginv(i, j) * s[j].dagger();
        duals.push_back(std::move(d));
    }
    // Exact postcondition check; failure indicates the family was not an
    // intertwiner family over an irreducible source.
    Matrix id = Matrix::identity(ctx, dz);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Matrix p = duals[i] * s[j];
            if (i == j ? (p != id) : !p.is_zero())
                throw std::invalid_argument("dual basis postcondition failed");
        }
    return duals;
}

} // namespace invcoh
