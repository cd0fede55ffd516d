#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_N), elements stored on the
// power basis 1, zeta, ..., zeta^{phi(N)-1} reduced modulo the N-th
// cyclotomic polynomial. The representation is canonical: two values are
// equal iff their coefficient vectors are equal.

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>

#include "rational.hpp"

namespace invcoh {

namespace poly {

// Polynomials as coefficient vectors, index = degree. Trailing zeros trimmed.
inline void trim(std::vector<Int>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::vector<Int> x_pow_minus_one(unsigned long n) {
    std::vector<Int> p(n + 1, Int(0));
    p[0] = -1;
    p[n] = 1;
    return p;
}

// Exact division of integer polynomials, divisor monic. Throws if not exact.
inline std::vector<Int> div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    trim(num);
    if (den.empty() || den.back() != 1) throw std::invalid_argument("divisor must be monic");
    if (num.empty()) return {};
    if (num.size() < den.size()) throw std::invalid_argument("inexact polynomial division");
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    for (size_t i = num.size(); i-- >= den.size();) {
        Int c = num[i];
        if (c == 0) continue;
        size_t shift = i - (den.size() - 1);
        q[shift] = c;
        for (size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
        if (i == den.size() - 1) break;
    }
    for (const auto& c : num)
        if (c != 0) throw std::invalid_argument("inexact polynomial division");
    return q;
}

} // namespace poly

// Cyclotomic polynomial Phi_N by repeated exact division of x^N - 1 by the
// Phi_d of the proper divisors d of N.
inline std::vector<Int> cyclotomic_polynomial(unsigned long n) {
    if (n == 0) throw std::invalid_argument("conductor must be positive");
    std::vector<Int> p = poly::x_pow_minus_one(n);
    for (unsigned long d : divisors(n)) {
        if (d == n) continue;
        p = poly::div_exact(std::move(p), cyclotomic_polynomial(d));
    }
    return p;
}

struct CycloContext {
    unsigned long conductor = 1;
    unsigned long degree = 1;       // phi(conductor)
    std::vector<Int> minpoly;       // Phi_N, monic, size degree+1
    // Reduction of zeta^k for k = 0 .. 2*degree-2 on the power basis.
    std::vector<std::vector<Int>> power_table;
};

using CtxPtr = std::shared_ptr<const CycloContext>;

inline CtxPtr make_context(unsigned long n) {
    if (n == 0) throw std::invalid_argument("conductor must be positive");
    static std::map<unsigned long, CtxPtr> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    auto ctx = std::make_shared<CycloContext>();
    ctx->conductor = n;
    ctx->minpoly = cyclotomic_polynomial(n);
    ctx->degree = ctx->minpoly.size() - 1;
    if (ctx->degree != euler_phi(n)) throw std::logic_error("cyclotomic degree mismatch");

    size_t d = ctx->degree;
    ctx->power_table.resize(2 * d - 1 > 0 ? 2 * d - 1 : 1);
    for (size_t k = 0; k < d; ++k) {
        ctx->power_table[k].assign(d, Int(0));
        ctx->power_table[k][k] = 1;
    }
    // zeta^k = zeta * zeta^{k-1} reduced: shifting may spill into degree d,
    // which reduces to -(lower coefficients of Phi).
    for (size_t k = d; k + 1 <= 2 * d - 1; ++k) {
        const auto& prev = ctx->power_table[k - 1];
        std::vector<Int> cur(d, Int(0));
        for (size_t j = 0; j + 1 < d; ++j) cur[j + 1] = prev[j];
        const Int& top = prev[d - 1];
        if (top != 0)
            for (size_t j = 0; j < d; ++j) cur[j] -= top * ctx->minpoly[j];
        ctx->power_table[k] = std::move(cur);
    }
    cache[n] = ctx;
    return ctx;
}

class Cyclo {
public:
    Cyclo() : ctx_(make_context(1)), c_(1, Rat(0)) {}
    explicit Cyclo(CtxPtr ctx) : ctx_(std::move(ctx)), c_(ctx_->degree, Rat(0)) {}
    Cyclo(CtxPtr ctx, Rat r) : ctx_(std::move(ctx)), c_(ctx_->degree, Rat(0)) { c_[0] = std::move(r); }
    Cyclo(CtxPtr ctx, std::vector<Rat> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        if (c_.size() != ctx_->degree) throw std::invalid_argument("coefficient vector has wrong length");
    }

    const CtxPtr& ctx() const { return ctx_; }
    unsigned long conductor() const { return ctx_->conductor; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_one() const { return is_rational() && c_[0] == 1; }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rat rational_value() const {
        if (!is_rational()) throw std::invalid_argument("value is not rational");
        return c_[0];
    }

    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        return a.conductor() == b.conductor() && a.c_ == b.c_;
    }
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    // Strict total order, used only for deterministic sorting/keys.
    friend bool operator<(const Cyclo& a, const Cyclo& b) {
        if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
        for (size_t i = 0; i < a.c_.size(); ++i) {
            int cmp = ::cmp(a.c_[i], b.c_[i]);
            if (cmp != 0) return cmp < 0;
        }
        return false;
    }

    Cyclo operator-() const {
        Cyclo r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        check_same(a, b);
        Cyclo r = a;
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
        check_same(a, b);
        Cyclo r = a;
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        check_same(a, b);
        size_t d = a.ctx_->degree;
        std::vector<Rat> conv(2 * d - 1 > 0 ? 2 * d - 1 : 1, Rat(0));
        for (size_t i = 0; i < d; ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < d; ++j) {
                if (b.c_[j] == 0) continue;
                conv[i + j] += a.c_[i] * b.c_[j];
            }
        }
        std::vector<Rat> out(d, Rat(0));
        for (size_t k = 0; k < conv.size(); ++k) {
            if (conv[k] == 0) continue;
            if (k < d) {
                out[k] += conv[k];
            } else {
                const auto& row = a.ctx_->power_table[k];
                for (size_t j = 0; j < d; ++j)
                    if (row[j] != 0) out[j] += conv[k] * Rat(row[j]);
            }
        }
        return Cyclo(a.ctx_, std::move(out));
    }
    Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
    Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
    Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }

    friend Cyclo operator*(const Rat& s, const Cyclo& a) {
        Cyclo r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    Cyclo inverse() const;
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

    // Image under zeta |-> zeta^(N-1), i.e. complex conjugation.
    Cyclo conjugate() const;

    Cyclo pow(long e) const {
        if (is_zero()) {
            if (e <= 0) throw std::invalid_argument("zero to non-positive power");
            return *this;
        }
        Cyclo base = e < 0 ? inverse() : *this;
        unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
        Cyclo r(ctx_, Rat(1));
        while (k) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    std::complex<double> to_float() const {
        std::complex<double> z = 0;
        double two_pi = 6.283185307179586476925287;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            double arg = two_pi * double(i) / double(ctx_->conductor);
            z += c_[i].get_d() * std::complex<double>(std::cos(arg), std::sin(arg));
        }
        return z;
    }

    static void check_same(const Cyclo& a, const Cyclo& b) {
        if (a.conductor() != b.conductor())
            throw std::invalid_argument("cyclotomic context mismatch (embed explicitly)");
    }

private:
    CtxPtr ctx_;
    std::vector<Rat> c_;
};

// zeta_N^k in canonical form, k taken mod N.
inline Cyclo root(const CtxPtr& ctx, long k) {
    unsigned long n = ctx->conductor;
    unsigned long kk = ((k % (long)n) + (long)n) % (long)n;
    size_t d = ctx->degree;
    std::vector<Rat> out(d, Rat(0));
    // Reduce x^kk by repeated squaring through the power table: for the small
    // conductors used here a simple loop multiplication is fine.
    Cyclo acc(ctx, Rat(1));
    if (kk < d) {
        out[kk] = 1;
        return Cyclo(ctx, std::move(out));
    }
    Cyclo z(ctx);
    {
        std::vector<Rat> zc(d, Rat(0));
        if (d == 1) {
            // N = 1 or 2: zeta is rational.
            zc[0] = (n == 1) ? 1 : -1;
        } else {
            zc[1] = 1;
        }
        z = Cyclo(ctx, std::move(zc));
    }
    for (unsigned long i = 0; i < kk; ++i) acc *= z;
    return acc;
}

inline Cyclo Cyclo::conjugate() const {
    Cyclo r(ctx_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        r += c_[i] * root(ctx_, -(long)i);
    }
    return r;
}

// Extended Euclid in Q[x] against the minimal polynomial.
inline Cyclo Cyclo::inverse() const {
    if (is_zero()) throw std::invalid_argument("division by zero");
    if (is_rational()) return Cyclo(ctx_, Rat(1) / c_[0]);
    using Poly = std::vector<Rat>;
    auto deg = [](const Poly& p) -> long {
        for (size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return (long)i;
        return -1;
    };
    Poly r0(ctx_->minpoly.size());
    for (size_t i = 0; i < ctx_->minpoly.size(); ++i) r0[i] = Rat(ctx_->minpoly[i]);
    Poly r1(c_.begin(), c_.end());
    Poly s0(1, Rat(0)), s1(1, Rat(1));
    while (true) {
        long d1 = deg(r1);
        if (d1 < 0) throw std::logic_error("element not invertible");
        if (d1 == 0) break;
        long d0 = deg(r0);
        // r0 = q*r1 + r : one long-division, updating s0 accordingly.
        Poly q(d0 - d1 + 1, Rat(0));
        Poly rem = r0;
        for (long i = d0; i >= d1; --i) {
            if (rem[i] == 0) continue;
            Rat f = rem[i] / r1[d1];
            q[i - d1] = f;
            for (long j = 0; j <= d1; ++j) rem[i - d1 + j] -= f * r1[j];
        }
        Poly snew(std::max(s0.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < s0.size(); ++i) snew[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
        }
        r0.swap(r1);
        r1 = std::move(rem);
        s0.swap(s1);
        s1 = std::move(snew);
    }
    long d1 = deg(r1);
    Rat lead = r1[d1]; // constant
    std::vector<Rat> out(ctx_->degree, Rat(0));
    for (size_t i = 0; i < s1.size() && i < out.size() + 100; ++i) {
        if (i < s1.size() && s1[i] != 0) {
            if (i >= ctx_->degree) throw std::logic_error("inverse not reduced");
            out[i] = s1[i] / lead;
        }
    }
    return Cyclo(ctx_, std::move(out));
}

// Embed a value of conductor M into conductor N, requires M | N.
inline Cyclo embed(const Cyclo& x, const CtxPtr& target) {
    unsigned long m = x.conductor(), n = target->conductor;
    if (m == n) return x;
    if (n % m != 0) throw std::invalid_argument("embedding requires old conductor to divide new");
    unsigned long f = n / m;
    Cyclo r(target);
    const auto& c = x.coeffs();
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        r += c[i] * root(target, (long)(i * f));
    }
    return r;
}

// If x is a root of unity, return its exponent q in [0,1) with x = e^{2 pi i q}.
// Roots of unity inside Q(zeta_N) are exactly +-zeta_N^j.
inline std::optional<Rat> root_of_unity_exponent(const Cyclo& x) {
    unsigned long n = x.conductor();
    for (unsigned long j = 0; j < n; ++j) {
        Cyclo r = root(x.ctx(), (long)j);
        if (x == r) return rat(Int((long)j), Int((long)n));
        if (x == -r) {
            Rat q = rat(Int((long)j), Int((long)n)) + rat(1, 2);
            if (q >= 1) q -= 1;
            return q;
        }
    }
    return std::nullopt;
}

// Materialize e^{2 pi i q} in a context whose conductor is divisible by the
// denominator of q.
inline Cyclo root_from_exponent(const CtxPtr& ctx, const Rat& q) {
    Int den = q.get_den();
    if (Int((long)ctx->conductor) % den != 0)
        throw std::invalid_argument("conductor too small for requested root of unity");
    Int k = q.get_num() * (Int((long)ctx->conductor) / den);
    return root(ctx, to_long(fdiv_r(k, Int((long)ctx->conductor))));
}

// Canonical text form: sum of terms `rat` / `rat*c(N,k)`, highest power last.
inline std::string to_string(const Cyclo& x) {
    std::ostringstream os;
    bool first = true;
    const auto& c = x.coeffs();
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Rat v = c[i];
        if (first) {
            if (::sgn(v) < 0) { os << "-"; v = -v; }
        } else {
            os << (::sgn(v) < 0 ? "-" : "+");
            if (::sgn(v) < 0) v = -v;
        }
        first = false;
        if (i == 0) {
            os << to_string(v);
        } else {
            if (v != 1) os << to_string(v) << "*";
            os << "c(" << x.conductor() << "," << i << ")";
        }
    }
    if (first) os << "0";
    return os.str();
}

} // namespace invcoh
