#pragma once

/**
 * @file explicit_cover.hpp
 * @brief Explicit near-cover B_n built from two thin rectangles.
 *
 * Given a threshold g = g(n), set s = floor(10 g), t = floor(10 ln ln g),
 * t0 = floor(t / 10) + 1 and
 *
 *     E_n(g) = { m <= n : omega(m) >= g }
 *     X_i    = { m : (i - 1) t < m <= i t }
 *     I      = { i : |X_i & E_n(g)| >= t0 }
 *     Y_i    = { i t - m : m in X_i & E_n(g) }
 *     B_n    = ({1..2t} x {1..2s}) u ({1..2s} x {1..2t})
 *
 * A grid point can only fail to be seen from B_n when both of its t-block
 * indices fall in I, which bounds the exceptional count by 100 |E_n(g)|^2.
 * exceptional_scan does not rely on that argument; it checks every point
 * against B_n directly.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "cover.hpp"
#include "types.hpp"
#include "visibility.hpp"

namespace lattice_scope {

/// E_n(g), ascending. omega is compared against the real threshold directly.
inline std::vector<std::uint64_t> en_g(std::uint64_t n, double g_value, const SieveTable& table) {
    if (n > table.limit()) throw std::out_of_range("en_g: n exceeds table limit");
    if (!(g_value > 0)) throw std::invalid_argument("en_g: g must be positive");
    const auto omega = table.omega_values();
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 1; m <= n; ++m)
        if (static_cast<double>(omega[m]) >= g_value) out.push_back(m);
    return out;
}

struct ExplicitCoverPlan {
    std::uint64_t n = 0;
    double g_value = 0.0;
    std::int64_t s = 0;
    std::int64_t t = 0;
    std::int64_t t0 = 0;
    std::vector<std::uint64_t> en_g;
    std::uint64_t block_count = 0;             // X_1 .. X_block_count tile [1, n]
    std::vector<std::uint64_t> index_set;      // I, ascending
    std::map<std::uint64_t, std::vector<std::int64_t>> y_sets;  // nonempty Y_i only
    std::vector<LatticePoint> b_n;             // lexicographic

    bool in_index_set(std::uint64_t i) const {
        return std::binary_search(index_set.begin(), index_set.end(), i);
    }
    const std::vector<std::int64_t>& y_set(std::uint64_t i) const {
        static const std::vector<std::int64_t> empty;
        const auto it = y_sets.find(i);
        return it == y_sets.end() ? empty : it->second;
    }
};

inline ExplicitCoverPlan build_plan(std::uint64_t n, double g_value, const SieveTable& table) {
    if (!(g_value > 1.0) || std::floor(10.0 * std::log(std::log(g_value))) < 1.0)
        throw std::invalid_argument(
            "g too small for the explicit-cover parameterization (needs 10 ln ln g >= 1, g >= 3.02)");
    if (n > table.limit()) throw std::out_of_range("build_plan: n exceeds table limit");

    ExplicitCoverPlan plan;
    plan.n = n;
    plan.g_value = g_value;
    plan.s = static_cast<std::int64_t>(std::floor(10.0 * g_value));
    plan.t = static_cast<std::int64_t>(std::floor(10.0 * std::log(std::log(g_value))));
    plan.t0 = plan.t / 10 + 1;
    const auto nn = static_cast<std::int64_t>(n);
    if (nn < plan.s * plan.t || nn < 2 * plan.s)
        throw std::invalid_argument("build_plan: n=" + std::to_string(n) + " below s*t=" +
                                    std::to_string(plan.s * plan.t) + " or 2s=" +
                                    std::to_string(2 * plan.s));

    plan.en_g = lattice_scope::en_g(n, g_value, table);
    const auto t = static_cast<std::uint64_t>(plan.t);
    plan.block_count = (n + t - 1) / t;
    std::map<std::uint64_t, std::uint64_t> hits;
    for (const std::uint64_t m : plan.en_g) {
        const std::uint64_t i = (m + t - 1) / t;
        ++hits[i];
        plan.y_sets[i].push_back(static_cast<std::int64_t>(i * t - m));
    }
    for (auto& [i, ys] : plan.y_sets) std::sort(ys.begin(), ys.end());
    for (const auto& [i, c] : hits)
        if (c >= static_cast<std::uint64_t>(plan.t0)) plan.index_set.push_back(i);

    std::set<LatticePoint> pts;
    for (std::int64_t a = 1; a <= 2 * plan.t; ++a)
        for (std::int64_t b = 1; b <= 2 * plan.s; ++b) {
            pts.insert({a, b});
            pts.insert({b, a});
        }
    plan.b_n.assign(pts.begin(), pts.end());
    return plan;
}

struct CoprimePair {
    std::int64_t a = 0;
    std::int64_t b = 0;
};

/// First (a, b) in lexicographic order with 1 <= a <= t, a not in Y_i,
/// 1 <= b <= s and gcd(i t - a, j s - b) = 1. a = t reaches into the previous
/// block, so i t - a is also checked against E_n(g) directly.
inline CoprimePair coprime_pair_find(std::uint64_t i, std::uint64_t j, const ExplicitCoverPlan& plan) {
    const auto t = static_cast<std::uint64_t>(plan.t), s = static_cast<std::uint64_t>(plan.s);
    if (i < 1 || i * t > plan.n)
        throw std::invalid_argument("coprime_pair_find: i=" + std::to_string(i) + " outside 1..n/t");
    if (j < 1 || j * s > plan.n)
        throw std::invalid_argument("coprime_pair_find: j=" + std::to_string(j) + " outside 1..n/s");
    if (plan.in_index_set(i))
        throw std::invalid_argument("coprime_pair_find: i=" + std::to_string(i) + " lies in I");
    const auto& ys = plan.y_set(i);
    for (std::int64_t a = 1; a <= plan.t; ++a) {
        if (std::binary_search(ys.begin(), ys.end(), a)) continue;
        if (std::binary_search(plan.en_g.begin(), plan.en_g.end(), i * t - static_cast<std::uint64_t>(a)))
            continue;
        for (std::int64_t b = 1; b <= plan.s; ++b)
            if (gcd_u64(i * t - static_cast<std::uint64_t>(a), j * s - static_cast<std::uint64_t>(b)) == 1)
                return {a, b};
    }
    throw not_found_error("coprime_pair_find: no admissible pair for (i, j) = (" + std::to_string(i) +
                          ", " + std::to_string(j) + "); n is below the large-n regime");
}

struct ExceptionalReport {
    std::uint64_t n = 0;
    double g_value = 0.0;
    std::int64_t s = 0, t = 0, t0 = 0;
    std::uint64_t en_g_size = 0;
    std::uint64_t index_set_size = 0;
    std::uint64_t b_n_size = 0;
    std::uint64_t exceptional_count = 0;
    u128 bound_proof = 0;                 // 100 |E_n(g)|^2
    std::uint64_t bound_theorem_statement = 0;  // 100 |E_n(g)|, reported only
    double cardinality_bound = 0.0;       // 800 g ln ln g
    bool passed_proof_bound = false;
    bool passed_statement_bound = false;
    bool b_n_within_8st = false;
    bool b_n_within_cardinality_bound = false;
};

inline constexpr std::uint64_t kExceptionalScanBudget = 100'000'000ULL;

/// Whether some point of B_n other than q sees q. Early exit on first witness.
inline bool seen_from_plan(const ExplicitCoverPlan& plan, std::int64_t x, std::int64_t y) {
    for (const auto& p : plan.b_n)
        if (gcd_u64(abs_diff(x, p.x), abs_diff(y, p.y)) == 1) return true;
    return false;
}

inline ExceptionalReport make_report(const ExplicitCoverPlan& plan, std::uint64_t exceptional) {
    ExceptionalReport r;
    r.n = plan.n;
    r.g_value = plan.g_value;
    r.s = plan.s;
    r.t = plan.t;
    r.t0 = plan.t0;
    r.en_g_size = plan.en_g.size();
    r.index_set_size = plan.index_set.size();
    r.b_n_size = plan.b_n.size();
    r.exceptional_count = exceptional;
    const u128 e = r.en_g_size;
    r.bound_proof = 100 * e * e;
    r.bound_theorem_statement = 100 * r.en_g_size;
    r.cardinality_bound = 800.0 * plan.g_value * std::log(std::log(plan.g_value));
    r.passed_proof_bound = static_cast<u128>(exceptional) <= r.bound_proof;
    r.passed_statement_bound = exceptional <= r.bound_theorem_statement;
    r.b_n_within_8st = static_cast<std::int64_t>(r.b_n_size) <= 8 * plan.s * plan.t;
    r.b_n_within_cardinality_bound = static_cast<double>(r.b_n_size) <= r.cardinality_bound;
    return r;
}

/// Full scan of A_n against B_n. Rows are independent; counts add.
inline ExceptionalReport exceptional_scan(const ExplicitCoverPlan& plan,
                                          std::uint64_t budget = kExceptionalScanBudget) {
    const long double points = static_cast<long double>(plan.n + 1) * static_cast<long double>(plan.n + 1);
    if (points > static_cast<long double>(budget))
        throw resource_error("exceptional_scan: " + std::to_string(static_cast<double>(points)) +
                             " grid points exceed budget " + std::to_string(budget) +
                             "; use the sampled estimate instead");
    const auto n = static_cast<std::int64_t>(plan.n);
    std::uint64_t exceptional = 0;
    for (std::int64_t x = 0; x <= n; ++x)
        for (std::int64_t y = 0; y <= n; ++y) exceptional += !seen_from_plan(plan, x, y);
    return make_report(plan, exceptional);
}

struct SampledEstimate {
    std::uint64_t sample_size = 0;
    std::uint64_t hits = 0;     // sampled points not seen from B_n
    double fraction = 0.0;
    double ci_low = 0.0;        // 95% Wilson score interval
    double ci_high = 0.0;
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform-ish value in [0, range) via multiply-shift.
constexpr std::uint64_t reduce(std::uint64_t word, std::uint64_t range) noexcept {
    return static_cast<std::uint64_t>((static_cast<u128>(word) * range) >> 64);
}

}  // namespace detail

/// The i-th sample point depends only on (seed, i), so any partition of the
/// sample indices reproduces the same set.
inline LatticePoint sample_point(std::uint64_t n, std::uint64_t seed, std::uint64_t i) noexcept {
    const std::uint64_t base = detail::splitmix64(seed ^ detail::splitmix64(2 * i));
    const std::uint64_t other = detail::splitmix64(base);
    return {static_cast<std::int64_t>(detail::reduce(base, n + 1)),
            static_cast<std::int64_t>(detail::reduce(other, n + 1))};
}

inline SampledEstimate sampled_exceptional_estimate(const ExplicitCoverPlan& plan,
                                                    std::uint64_t sample_size, std::uint64_t seed) {
    if (sample_size < 1000)
        throw std::invalid_argument("sampled_exceptional_estimate: sample_size must be >= 1000");
    SampledEstimate est;
    est.sample_size = sample_size;
    for (std::uint64_t i = 0; i < sample_size; ++i) {
        const LatticePoint q = sample_point(plan.n, seed, i);
        est.hits += !seen_from_plan(plan, q.x, q.y);
    }
    const double m = static_cast<double>(sample_size);
    const double p = static_cast<double>(est.hits) / m;
    const double z = 1.959963984540054;
    const double denom = 1.0 + z * z / m;
    const double centre = (p + z * z / (2.0 * m)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / m + z * z / (4.0 * m * m)) / denom;
    est.fraction = p;
    est.ci_low = std::max(0.0, centre - half);
    est.ci_high = std::min(1.0, centre + half);
    return est;
}

/// All m in [16, limit] with omega(m) >= 2 ln m / ln ln m.
inline std::vector<std::uint64_t> omega_inequality_check(std::uint64_t limit, const SieveTable& table) {
    if (limit > table.limit()) throw std::out_of_range("omega_inequality_check: limit exceeds table");
    std::vector<std::uint64_t> violations;
    const auto omega = table.omega_values();
    for (std::uint64_t m = 16; m <= limit; ++m) {
        const double ln = std::log(static_cast<double>(m));
        if (!(static_cast<double>(omega[m]) < 2.0 * ln / std::log(ln))) violations.push_back(m);
    }
    return violations;
}

struct CorollaryConfig {
    std::string name;
    double g_value = 0.0;
    bool expects_empty_en_g = false;
    std::optional<double> exceptional_bound;  // 100 n^2 / (ln ln n)^2
    std::optional<double> cardinality_bound;  // 1600 ln n ln ln ln n / ln ln n
};

/// The two standard threshold choices: g = 2 ln ln n, and g = 2 ln n / ln ln n.
inline std::vector<CorollaryConfig> corollary_configs(std::uint64_t n) {
    if (n < 16) throw std::out_of_range("corollary_configs: n must be >= 16");
    const double ln = std::log(static_cast<double>(n));
    const double lnln = std::log(ln);
    CorollaryConfig loglog{"loglog", 2.0 * lnln, false, 100.0 * static_cast<double>(n) * n / (lnln * lnln),
                           std::nullopt};
    CorollaryConfig ratio{"log_over_loglog", 2.0 * ln / lnln, true, 0.0, std::nullopt};
    if (lnln > 1.0) ratio.cardinality_bound = 1600.0 * ln * std::log(lnln) / lnln;
    return {loglog, ratio};
}

}  // namespace lattice_scope
