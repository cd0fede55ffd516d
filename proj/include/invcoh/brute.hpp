#pragma once

// Two independent oracles for H^2(A, C*) of a finite abelian group A:
// the gcd formula on invariant factors, and a brute-force computation over
// Z_m coefficients. Both return invariant-factor presentations.

#include "group.hpp"

namespace invcoh {

// H^2(A, C*) = (+)_{i<j} Z_{gcd(n_i, n_j)} for invariant factors n_1 | ... | n_k.
inline AbelianGroup schur_multiplier(const std::vector<long>& invariants) {
    std::vector<long> parts;
    for (size_t i = 0; i < invariants.size(); ++i)
        for (size_t j = i + 1; j < invariants.size(); ++j) {
            long g = (long)gcd(Int(invariants[i]), Int(invariants[j])).get_si();
            if (g >= 2) parts.push_back(g);
        }
    if (parts.empty()) return {};
    // Canonicalize the direct sum into an invariant-factor chain.
    IntMatrix rel(parts.size(), parts.size());
    for (size_t i = 0; i < parts.size(); ++i) rel(i, i) = parts[i];
    return quotient_group(rel, parts.size());
}

// Brute-force H^2(A, C*) using Z_m-valued normalized 2-cochains as the exact
// computational substrate; requires exp(A) | m so that every cohomology class
// of H^2(A, C*) has a mu_m-valued representative cocycle. Cocycles are
// quotiented by the coboundaries of circle-valued 1-cochains that happen to
// land in Z_m-valued 2-cochains; those are exactly the symmetric Z_m-valued
// cocycles, since C* is divisible and A is abelian.
inline AbelianGroup h2_brute(const FiniteGroup& a, long m, size_t guard = 64) {
    if (!a.is_abelian()) throw std::invalid_argument("h2_brute requires an abelian group");
    if (a.order() > guard) throw std::invalid_argument("group exceeds brute-force size guard");
    if (m <= 0 || m % a.exponent() != 0)
        throw std::invalid_argument("modulus must be a positive multiple of the exponent");
    size_t n = a.order();
    if (n == 1) return {};
    size_t nu = (n - 1) * (n - 1); // unknowns f(g,h), g,h != e (normalized cochains)
    auto idx = [&](int g, int h) { return (size_t)(g - 1) * (n - 1) + (size_t)(h - 1); };

    // Cocycle identity f(g,h) + f(gh,k) - f(h,k) - f(g,hk) = 0 (mod m).
    IntMatrix d2((n - 1) * (n - 1) * (n - 1), nu);
    size_t r = 0;
    for (size_t g = 1; g < n; ++g)
        for (size_t h = 1; h < n; ++h)
            for (size_t k = 1; k < n; ++k, ++r) {
                int gh = a.mul((int)g, (int)h), hk = a.mul((int)h, (int)k);
                d2(r, idx((int)g, (int)h)) += 1;
                if (gh != 0) d2(r, idx(gh, (int)k)) += 1;
                d2(r, idx((int)h, (int)k)) -= 1;
                if (hk != 0) d2(r, idx((int)g, hk)) -= 1;
            }

    // Lattice of mod-m cocycles.
    IntMatrix zlat = kernel_lattice_mod(d2, Int(m));

    // Lattice of symmetric mod-m cocycles: add f(g,h) = f(h,g) (mod m).
    size_t extra = (n - 1) * (n - 2) / 2;
    IntMatrix d2s(d2.rows() + extra, nu);
    for (size_t i = 0; i < d2.rows(); ++i)
        for (size_t j = 0; j < nu; ++j) d2s(i, j) = d2(i, j);
    r = d2.rows();
    for (size_t g = 1; g < n; ++g)
        for (size_t h = g + 1; h < n; ++h, ++r) {
            d2s(r, idx((int)g, (int)h)) += 1;
            d2s(r, idx((int)h, (int)g)) -= 1;
        }
    IntMatrix slat = kernel_lattice_mod(d2s, Int(m));

    // Quotient Z-cocycle lattice by symmetric sublattice, in cocycle-lattice
    // coordinates.
    IntMatrix coords = lattice_coordinates(zlat, slat);
    return quotient_group(coords.transpose(), zlat.cols());
}

} // namespace invcoh
