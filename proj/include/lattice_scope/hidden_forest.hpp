#pragma once

/**
 * @file hidden_forest.hpp
 * @brief CRT construction of k x k blocks hidden from the origin.
 *
 * Lay the first k^2 primes out row-major in a k x k matrix. With d_i the
 * product of row i and D_j the product of column j, solve
 *
 *     a = -i (mod d_i),   b = -j (mod D_j),   i, j = 1..k.
 *
 * Then p_ij divides both a + i and b + j, so every point (a + r, b + s),
 * 1 <= r, s <= k, shares a factor with the origin's line of sight.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "types.hpp"

namespace lattice_scope {

struct ExtendedGcd {
    BigInt g;  // gcd(a, b) >= 0
    BigInt x;  // Bezout coefficients: a x + b y = g
    BigInt y;
};

/// Iterative extended Euclid.
inline ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
    BigInt old_r = a, r = b;
    BigInt old_s = 1, s = 0;
    BigInt old_t = 0, t = 1;
    while (r != 0) {
        const BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

/// Least non-negative residue of v mod m (m > 0).
inline BigInt mod_floor(const BigInt& v, const BigInt& m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r;
}

struct CrtSystem {
    std::vector<BigInt> residues;
    std::vector<BigInt> moduli;
};

struct CrtSolution {
    BigInt solution;  // in [0, modulus)
    BigInt modulus;
};

/// Solves x = residues[i] (mod moduli[i]) for pairwise coprime moduli by
/// merging congruences two at a time.
inline CrtSolution crt_solve(const CrtSystem& system) {
    if (system.moduli.empty()) throw std::invalid_argument("crt_solve: empty system");
    if (system.moduli.size() != system.residues.size())
        throw std::invalid_argument("crt_solve: residue and modulus counts differ");
    const std::size_t count = system.moduli.size();
    for (std::size_t i = 0; i < count; ++i)
        if (system.moduli[i] < 2)
            throw std::invalid_argument("crt_solve: modulus #" + std::to_string(i) + " = " +
                                        to_string(system.moduli[i]) + " is below 2");
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) {
            const BigInt g = gcd(system.moduli[i], system.moduli[j]);
            if (g != 1)
                throw std::invalid_argument("crt_solve: moduli #" + std::to_string(i) + " (" +
                                            to_string(system.moduli[i]) + ") and #" +
                                            std::to_string(j) + " (" +
                                            to_string(system.moduli[j]) + ") share factor " +
                                            to_string(g));
        }

    BigInt x = mod_floor(system.residues[0], system.moduli[0]);
    BigInt m = system.moduli[0];
    for (std::size_t i = 1; i < count; ++i) {
        const BigInt& mi = system.moduli[i];
        // m * inv = 1 (mod mi)
        const BigInt inv = mod_floor(extended_gcd(m, mi).x, mi);
        const BigInt step = mod_floor((system.residues[i] - x) * inv, mi);
        x += m * step;
        m *= mi;
    }
    return {x, m};
}

struct PrimeMatrix {
    std::size_t k = 0;
    std::vector<std::vector<std::uint64_t>> entries;  // row-major, first k^2 primes
    std::vector<BigInt> row_products;                 // d_1..d_k
    std::vector<BigInt> column_products;              // D_1..D_k
};

inline PrimeMatrix prime_matrix(std::size_t k) {
    if (k == 0) throw std::invalid_argument("prime_matrix: k must be >= 1");
    const auto primes = primes_first(k * k);
    PrimeMatrix pm;
    pm.k = k;
    pm.entries.assign(k, std::vector<std::uint64_t>(k));
    pm.row_products.assign(k, BigInt(1));
    pm.column_products.assign(k, BigInt(1));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint64_t p = primes[i * k + j];
            pm.entries[i][j] = p;
            pm.row_products[i] *= p;
            pm.column_products[j] *= p;
        }
    return pm;
}

struct HiddenGridWitness {
    std::size_t k = 0;
    BigInt a;
    BigInt b;
    BigInt modulus;  // product of the first k^2 primes
    bool verified = false;
};

/// True iff every point (a + r, b + s), 1 <= r, s <= k, shares a factor > 1.
inline bool verify_hidden(const BigInt& a, const BigInt& b, std::size_t k) {
    if (a < 0 || b < 0) throw std::invalid_argument("verify_hidden: corner must be non-negative");
    if (k == 0) throw std::invalid_argument("verify_hidden: k must be >= 1");
    for (std::size_t r = 1; r <= k; ++r) {
        const BigInt x = a + r;
        for (std::size_t s = 1; s <= k; ++s)
            if (gcd(x, BigInt(b + s)) == 1) return false;
    }
    return true;
}

/// Above this k the modulus passes ~10^4000 and verification gets slow.
inline constexpr std::size_t kHiddenGridCap = 40;

inline HiddenGridWitness hidden_grid_witness(std::size_t k) {
    if (k == 0) throw std::invalid_argument("hidden_grid_witness: k must be >= 1");
    if (k > kHiddenGridCap)
        throw resource_error("hidden_grid_witness: k=" + std::to_string(k) + " above cap " +
                             std::to_string(kHiddenGridCap));
    const PrimeMatrix pm = prime_matrix(k);
    CrtSystem rows, cols;
    for (std::size_t i = 0; i < k; ++i) {
        const BigInt offset = -static_cast<long long>(i + 1);
        rows.residues.push_back(offset);
        rows.moduli.push_back(pm.row_products[i]);
        cols.residues.push_back(offset);
        cols.moduli.push_back(pm.column_products[i]);
    }
    const CrtSolution xs = crt_solve(rows);
    const CrtSolution ys = crt_solve(cols);
    if (xs.modulus != ys.modulus)
        throw std::logic_error("row and column moduli products differ");
    HiddenGridWitness w{k, xs.solution, ys.solution, xs.modulus, false};
    w.verified = verify_hidden(w.a, w.b, k);
    return w;
}

inline constexpr std::uint64_t kHiddenSearchCap = 100'000;

/// Machine-width check used by the scanner; same predicate as verify_hidden.
inline bool is_hidden_corner(std::uint64_t a, std::uint64_t b, std::size_t k) noexcept {
    for (std::uint64_t r = 1; r <= k; ++r)
        for (std::uint64_t s = 1; s <= k; ++s)
            if (gcd_u64(a + r, b + s) == 1) return false;
    return true;
}

/// Lexicographically first corner (a-major) in [0, limit]^2 whose k x k block
/// is hidden, if any.
inline std::optional<LatticePoint> search_hidden_grid(std::size_t k, std::uint64_t limit,
                                                      std::uint64_t cap = kHiddenSearchCap) {
    if (k < 1 || k > 5) throw std::invalid_argument("search_hidden_grid: k must be in 1..5");
    if (limit > cap)
        throw resource_error("search_hidden_grid: limit " + std::to_string(limit) +
                             " exceeds work cap " + std::to_string(cap));
    for (std::uint64_t a = 0; a <= limit; ++a)
        for (std::uint64_t b = 0; b <= limit; ++b)
            if (is_hidden_corner(a, b, k))
                return LatticePoint{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
    return std::nullopt;
}

}  // namespace lattice_scope
