#pragma once

// Lattice-point visibility (two points see each other iff their coordinate
// differences are coprime) and brute-force density estimators.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "types.hpp"

namespace lattice_scope {

inline constexpr double kVisibleDensity = 6.0 / (std::numbers::pi * std::numbers::pi);

/// |a - b| for arbitrary int64 values, without signed overflow.
constexpr std::uint64_t abs_diff(std::int64_t a, std::int64_t b) noexcept {
    const auto ua = static_cast<std::uint64_t>(a);
    const auto ub = static_cast<std::uint64_t>(b);
    return a >= b ? ua - ub : ub - ua;
}

/// Visibility is irreflexive: asking whether a point sees itself is an error.
inline bool is_visible(const LatticePoint& p, const LatticePoint& q) {
    if (p == q) throw std::invalid_argument("is_visible: points coincide at " + to_string(p));
    return gcd_u64(abs_diff(p.x, q.x), abs_diff(p.y, q.y)) == 1;
}

inline bool is_visible(const BigLatticePoint& p, const BigLatticePoint& q) {
    if (p == q) throw std::invalid_argument("is_visible: points coincide");
    const BigInt dx = abs(BigInt(p.x - q.x));
    const BigInt dy = abs(BigInt(p.y - q.y));
    return gcd(dx, dy) == 1;
}

/// #{(a, b) in [1, n]^2 : gcd(a, b) = 1} by direct scan of the lower
/// triangle, mirrored (the diagonal only contributes (1, 1)). Row a strikes
/// out the multiples of each prime factor of a, found by trial division.
inline std::uint64_t coprime_census(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("census size must be >= 1");
    std::uint64_t below_diagonal = 0;
    std::vector<std::uint8_t> struck(n + 1);
    std::vector<std::uint64_t> factors;
    for (std::uint64_t a = 2; a <= n; ++a) {
        factors.clear();
        std::uint64_t rest = a;
        for (std::uint64_t p = 2; p * p <= rest; ++p)
            if (rest % p == 0) {
                factors.push_back(p);
                while (rest % p == 0) rest /= p;
            }
        if (rest > 1) factors.push_back(rest);
        std::fill(struck.begin(), struck.begin() + static_cast<std::ptrdiff_t>(a), std::uint8_t{0});
        for (const auto p : factors)
            for (std::uint64_t m = p; m < a; m += p) struck[m] = 1;
        std::uint64_t row = 0;
        for (std::uint64_t b = 1; b < a; ++b) row += struck[b] == 0;
        below_diagonal += row;
    }
    return 2 * below_diagonal + 1;
}

/// Points of [1, n]^2 visible from the origin. Cross-checked against the
/// closed form 2 Phi(n) - 1 from the table.
inline std::uint64_t visible_from_origin_count(std::uint64_t n, const SieveTable& table) {
    if (n == 0) throw std::invalid_argument("visible_from_origin_count: n must be >= 1");
    if (n > table.limit())
        throw std::out_of_range("visible_from_origin_count: n exceeds table limit");
    const std::uint64_t count = coprime_census(n);
    const u128 expected = 2 * totient_partial_sum(n, table).phi_sum - 1;
    if (static_cast<u128>(count) != expected)
        throw std::logic_error("census disagrees with 2*Phi(n)-1 at n=" + std::to_string(n));
    return count;
}

struct DensityReport {
    std::uint64_t n = 0;
    std::uint64_t visible_count = 0;
    std::uint64_t total_count = 0;
    double ratio = 0.0;
    double target = kVisibleDensity;
    double abs_gap = 0.0;
};

inline DensityReport density_visible(std::uint64_t n) {
    DensityReport r;
    r.n = n;
    r.visible_count = coprime_census(n);
    r.total_count = n * n;
    r.ratio = static_cast<double>(r.visible_count) / static_cast<double>(r.total_count);
    r.abs_gap = std::fabs(r.ratio - r.target);
    return r;
}

inline constexpr std::uint64_t kDensityNdWorkCap = 1'000'000'000ULL;

namespace detail {

// Counts tuples extending a prefix whose running gcd is `g`. Once the gcd
// reaches 1 every completion is primitive, so the subtree is counted whole.
inline std::uint64_t count_primitive(std::uint64_t n, int remaining, std::uint64_t g) {
    if (g == 1) {
        std::uint64_t all = 1;
        for (int i = 0; i < remaining; ++i) all *= n;
        return all;
    }
    if (remaining == 0) return 0;
    std::uint64_t total = 0;
    for (std::uint64_t x = 1; x <= n; ++x) total += count_primitive(n, remaining - 1, gcd_u64(g, x));
    return total;
}

}  // namespace detail

/// Fraction of [1, n]^d with gcd 1, by streaming scan. Tends to 1/zeta(d).
inline double density_nd(std::uint64_t n, int d, std::uint64_t work_cap = kDensityNdWorkCap) {
    if (n == 0) throw std::invalid_argument("density_nd: n must be >= 1");
    if (d < 2 || d > 4) throw std::invalid_argument("density_nd: dimension must be 2, 3 or 4");
    long double work = std::pow(static_cast<long double>(n), d);
    if (work > static_cast<long double>(work_cap))
        throw resource_error("density_nd: n^d = " + std::to_string(static_cast<double>(work)) +
                             " exceeds work cap " + std::to_string(work_cap) +
                             "; lower n or raise the budget");
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= n;
    return static_cast<double>(detail::count_primitive(n, d, 0)) / static_cast<double>(total);
}

}  // namespace lattice_scope
