#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace invcoh {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// Floor division and the matching remainder (sign of divisor irrelevant,
// remainder in [0, |b|) ).
inline Int fdiv_q(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int fdiv_r(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Rat rat(long p, long q = 1) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& p, const Int& q) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline long to_long(const Int& a) {
    if (!a.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return a.get_si();
}

inline std::string to_string(const Int& a) { return a.get_str(); }

inline std::string to_string(const Rat& a) {
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_num().get_str() + "/" + a.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n, m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline std::vector<unsigned long> divisors(unsigned long n) {
    std::vector<unsigned long> small, large;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

} // namespace invcoh
