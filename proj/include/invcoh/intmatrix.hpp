#pragma once

// Exact integer matrix algebra: Smith normal form by elementary reduction
// (pivot = smallest nonzero absolute value, ties broken by row then column),
// invariant-factor presentations of abelian groups, integer kernels and
// integer linear solves. Everything here is deterministic.

#include <algorithm>
#include <cassert>
#include <sstream>

#include "rational.hpp"

namespace invcoh {

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    static IntMatrix identity(size_t n) {
        IntMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Int& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("integer matrix product shape mismatch");
        IntMatrix r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const Int& aik = a(i, k);
                if (aik == 0) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    const Int& bkj = b(k, j);
                    if (bkj != 0) r(i, j) += aik * bkj;
                }
            }
        return r;
    }

    IntMatrix transpose() const {
        IntMatrix r(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream os;
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
            os << "\n";
        }
        return os.str();
    }

private:
    size_t rows_, cols_;
    std::vector<Int> a_;
};

struct SnfResult {
    IntMatrix s;          // diagonal, divisibility chain
    IntMatrix u, v;       // unimodular, u*a*v = s (empty when not requested)
    size_t rank = 0;
    std::vector<Int> diagonal() const {
        std::vector<Int> d;
        size_t n = std::min(s.rows(), s.cols());
        for (size_t i = 0; i < n; ++i) d.push_back(s(i, i));
        return d;
    }
};

// Smith normal form U*A*V = S. U and V are tracked only when requested.
inline SnfResult smith_normal_form(IntMatrix a, bool want_u = true, bool want_v = true) {
    size_t m = a.rows(), n = a.cols();
    SnfResult res;
    IntMatrix u = want_u ? IntMatrix::identity(m) : IntMatrix();
    IntMatrix v = want_v ? IntMatrix::identity(n) : IntMatrix();

    auto swap_rows = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
        if (want_u)
            for (size_t c = 0; c < m; ++c) std::swap(u(i, c), u(j, c));
    };
    auto swap_cols = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t r = 0; r < m; ++r) std::swap(a(r, i), a(r, j));
        if (want_v)
            for (size_t r = 0; r < n; ++r) std::swap(v(r, i), v(r, j));
    };
    auto add_row = [&](size_t dst, size_t src, const Int& f) {
        if (f == 0) return;
        for (size_t c = 0; c < n; ++c) a(dst, c) += f * a(src, c);
        if (want_u)
            for (size_t c = 0; c < m; ++c) u(dst, c) += f * u(src, c);
    };
    auto add_col = [&](size_t dst, size_t src, const Int& f) {
        if (f == 0) return;
        for (size_t r = 0; r < m; ++r) a(r, dst) += f * a(r, src);
        if (want_v)
            for (size_t r = 0; r < n; ++r) v(r, dst) += f * v(r, src);
    };
    auto negate_row = [&](size_t i) {
        for (size_t c = 0; c < n; ++c) a(i, c) = -a(i, c);
        if (want_u)
            for (size_t c = 0; c < m; ++c) u(i, c) = -u(i, c);
    };

    size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // Locate smallest nonzero |entry| in the trailing block.
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
                Int q = fdiv_q(a(i, t), a(t, t));
                add_row(i, t, -q);
                if (a(i, t) != 0) {
                    // Remainder smaller than pivot: promote it.
                    swap_rows(t, i);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                Int q = fdiv_q(a(t, j), a(t, t));
                add_col(j, t, -q);
                if (a(t, j) != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Pivot must divide every remaining entry; if not, fold the
            // offending row in and continue reducing.
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
        if (a(t, t) < 0) negate_row(t);
    }
    res.rank = t;
    // By construction diag entries divide successors; keep a defensive check.
    for (size_t i = 0; i + 1 < t; ++i)
        assert(a(i + 1, i + 1) % a(i, i) == 0);
    res.s = std::move(a);
    res.u = std::move(u);
    res.v = std::move(v);
    return res;
}

// Finitely generated abelian group in invariant-factor form.
struct AbelianGroup {
    size_t free_rank = 0;
    std::vector<Int> factors; // d1 | d2 | ..., each >= 2

    bool trivial() const { return free_rank == 0 && factors.empty(); }
    Int order() const {
        if (free_rank > 0) return 0; // infinite
        Int n = 1;
        for (const auto& d : factors) n *= d;
        return n;
    }
    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
        return a.free_rank == b.free_rank && a.factors == b.factors;
    }
    friend bool operator!=(const AbelianGroup& a, const AbelianGroup& b) { return !(a == b); }

    std::string str() const {
        if (trivial()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& d : factors) {
            if (!first) os << " x ";
            os << "Z/" << d.get_str();
            first = false;
        }
        if (free_rank > 0) {
            if (!first) os << " x ";
            os << "Z";
            if (free_rank > 1) os << "^" << free_rank;
        }
        return os.str();
    }
};

// Z^n modulo the row space of `relations`.
inline AbelianGroup quotient_group(const IntMatrix& relations, size_t n) {
    if (relations.cols() != n && relations.rows() != 0)
        throw std::invalid_argument("relation width mismatch");
    AbelianGroup g;
    if (relations.rows() == 0) {
        g.free_rank = n;
        return g;
    }
    SnfResult snf = smith_normal_form(relations, false, false);
    g.free_rank = n - snf.rank;
    for (const auto& d : snf.diagonal())
        if (d >= 2) g.factors.push_back(d);
    return g;
}

inline AbelianGroup quotient_group(const IntMatrix& relations) {
    return quotient_group(relations, relations.cols());
}

// Integer basis of { x in Z^n : A x = 0 }, as matrix columns.
inline IntMatrix kernel_lattice(const IntMatrix& a) {
    SnfResult snf = smith_normal_form(a, false, true);
    size_t n = a.cols(), r = snf.rank;
    IntMatrix basis(n, n - r);
    for (size_t j = r; j < n; ++j)
        for (size_t i = 0; i < n; ++i) basis(i, j - r) = snf.v(i, j);
    return basis;
}

// Basis of the lattice { x in Z^n : A x = 0 (mod m) }, as matrix columns.
// Derived from U A V = S: x = V y with y_i divisible by m / gcd(s_i, m).
inline IntMatrix kernel_lattice_mod(const IntMatrix& a, const Int& m) {
    if (m <= 0) throw std::invalid_argument("modulus must be positive");
    SnfResult snf = smith_normal_form(a, false, true);
    size_t n = a.cols();
    IntMatrix basis(n, n);
    auto diag = snf.diagonal();
    for (size_t j = 0; j < n; ++j) {
        Int t = j < snf.rank ? m / gcd(diag[j], m) : Int(1);
        for (size_t i = 0; i < n; ++i) basis(i, j) = t * snf.v(i, j);
    }
    return basis;
}

// One integer solution of A x = b, if any.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
    SnfResult snf = smith_normal_form(a, true, true);
    size_t m = a.rows(), n = a.cols();
    std::vector<Int> ub(m, Int(0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (snf.u(i, j) != 0) ub[i] += snf.u(i, j) * b[j];
    std::vector<Int> y(n, Int(0));
    auto diag = snf.diagonal();
    for (size_t i = 0; i < m; ++i) {
        if (i < snf.rank) {
            if (ub[i] % diag[i] != 0) return std::nullopt;
            y[i] = ub[i] / diag[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> x(n, Int(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (snf.v(i, j) != 0) x[i] += snf.v(i, j) * y[j];
    return x;
}

// Express every column of B as an integer combination of the columns of L
// (full column rank). Throws if some column is not in the lattice.
inline IntMatrix lattice_coordinates(const IntMatrix& l, const IntMatrix& b) {
    if (l.rows() != b.rows()) throw std::invalid_argument("lattice coordinate shape mismatch");
    SnfResult snf = smith_normal_form(l, true, true);
    if (snf.rank != l.cols()) throw std::invalid_argument("lattice basis is degenerate");
    auto diag = snf.diagonal();
    IntMatrix x(l.cols(), b.cols());
    for (size_t c = 0; c < b.cols(); ++c) {
        std::vector<Int> ub(l.rows(), Int(0));
        for (size_t i = 0; i < l.rows(); ++i)
            for (size_t j = 0; j < l.rows(); ++j)
                if (snf.u(i, j) != 0) ub[i] += snf.u(i, j) * b(j, c);
        std::vector<Int> y(l.cols(), Int(0));
        for (size_t i = 0; i < l.rows(); ++i) {
            if (i < snf.rank) {
                if (ub[i] % diag[i] != 0) throw std::invalid_argument("vector outside lattice");
                y[i] = ub[i] / diag[i];
            } else if (ub[i] != 0) {
                throw std::invalid_argument("vector outside lattice");
            }
        }
        for (size_t i = 0; i < l.cols(); ++i) {
            Int acc = 0;
            for (size_t j = 0; j < l.cols(); ++j)
                if (snf.v(i, j) != 0) acc += snf.v(i, j) * y[j];
            x(i, c) = acc;
        }
    }
    return x;
}

inline Int det(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    // Fraction-free Bareiss elimination.
    IntMatrix m = a;
    size_t n = m.rows();
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return n == 0 ? Int(1) : Int(sign) * m(n - 1, n - 1);
}

} // namespace invcoh
