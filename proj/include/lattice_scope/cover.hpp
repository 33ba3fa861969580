#pragma once

/**
 * @file cover.hpp
 * @brief Visibility covers of the grid A_n = {0..n} x {0..n}.
 *
 * A set B covers A_n when every q in A_n is visible from some p in B with
 * p != q. No point covers itself, so f(1) = 2.
 *
 * - greedy_cover: start at the origin, then repeatedly take the point that
 *   sees the most still-uncovered points (ties to the lexicographically
 *   smallest point).
 * - exact_min_cover: iterative deepening over subsets in lexicographic
 *   order, so the first hit is the lexicographically smallest minimum cover.
 * - blind_spot: the CRT point invisible from r given points.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"
#include "hidden_forest.hpp"
#include "types.hpp"
#include "visibility.hpp"

namespace lattice_scope {

struct Grid {
    std::int64_t n = 1;

    explicit Grid(std::int64_t size) : n(size) {
        if (size < 1) throw std::invalid_argument("grid size must be >= 1");
    }

    std::int64_t side() const noexcept { return n + 1; }
    std::size_t point_count() const noexcept { return static_cast<std::size_t>(side() * side()); }
    bool contains(const LatticePoint& p) const noexcept {
        return p.x >= 0 && p.y >= 0 && p.x <= n && p.y <= n;
    }
    std::size_t index(const LatticePoint& p) const noexcept {
        return static_cast<std::size_t>(p.x * side() + p.y);
    }
    LatticePoint point(std::size_t idx) const noexcept {
        const auto i = static_cast<std::int64_t>(idx);
        return {i / side(), i % side()};
    }
};

enum class CoverMethod { greedy, exact, explicit_construction };

inline std::string_view to_string(CoverMethod m) {
    switch (m) {
        case CoverMethod::greedy: return "greedy";
        case CoverMethod::exact: return "exact";
        case CoverMethod::explicit_construction: return "explicit";
    }
    return "unknown";
}

struct CoverSolution {
    std::int64_t n = 0;
    std::vector<LatticePoint> points;
    CoverMethod method = CoverMethod::greedy;
    std::uint64_t covered_count = 0;  // grid points seen by some cover point
    bool complete = false;
    std::vector<std::uint64_t> step_gains;  // greedy only: newly covered per step
};

/// Points of A_n visible from p, in lexicographic order.
inline std::vector<LatticePoint> visible_set(const LatticePoint& p, const Grid& grid) {
    if (!grid.contains(p))
        throw std::invalid_argument("visible_set: " + to_string(p) + " outside grid n=" +
                                    std::to_string(grid.n));
    std::vector<LatticePoint> out;
    for (std::int64_t x = 0; x <= grid.n; ++x)
        for (std::int64_t y = 0; y <= grid.n; ++y)
            if (gcd_u64(abs_diff(x, p.x), abs_diff(y, p.y)) == 1) out.push_back({x, y});
    return out;
}

/// Number of grid points covered by `points`, by direct rescan with early
/// exit per grid point.
inline std::uint64_t count_covered(const Grid& grid, const std::vector<LatticePoint>& points) {
    std::uint64_t covered = 0;
    for (std::int64_t x = 0; x <= grid.n; ++x)
        for (std::int64_t y = 0; y <= grid.n; ++y)
            for (const auto& p : points)
                if (gcd_u64(abs_diff(x, p.x), abs_diff(y, p.y)) == 1) {
                    ++covered;
                    break;
                }
    return covered;
}

namespace detail {

// coprime[d * (n+1) + e] = gcd(d, e) == 1 for d, e in [0, n].
inline std::vector<std::uint8_t> coprime_table(std::int64_t n) {
    const std::int64_t side = n + 1;
    std::vector<std::uint8_t> t(static_cast<std::size_t>(side * side));
    for (std::int64_t d = 0; d <= n; ++d)
        for (std::int64_t e = 0; e <= n; ++e)
            t[static_cast<std::size_t>(d * side + e)] =
                gcd_u64(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(e)) == 1;
    return t;
}

}  // namespace detail

/// |visible_set(p)| for every p in A_n (indexed by Grid::index), from 2-D
/// prefix sums of the coprimality table. O(n^2) total.
inline std::vector<std::uint32_t> visible_counts(const Grid& grid) {
    const std::int64_t n = grid.n, side = grid.side();
    const auto coprime = detail::coprime_table(n);
    // prefix[X][Y] = sum over d <= X, e <= Y of coprime(d, e)
    std::vector<std::uint32_t> prefix(static_cast<std::size_t>(side * side));
    for (std::int64_t d = 0; d <= n; ++d) {
        std::uint32_t row = 0;
        for (std::int64_t e = 0; e <= n; ++e) {
            row += coprime[static_cast<std::size_t>(d * side + e)];
            prefix[static_cast<std::size_t>(d * side + e)] =
                row + (d > 0 ? prefix[static_cast<std::size_t>((d - 1) * side + e)] : 0);
        }
    }
    const auto F = [&](std::int64_t X, std::int64_t Y) -> std::int64_t {
        return prefix[static_cast<std::size_t>(X * side + Y)];
    };
    std::vector<std::uint32_t> counts(grid.point_count());
    for (std::int64_t px = 0; px <= n; ++px)
        for (std::int64_t py = 0; py <= n; ++py) {
            // |dx| ranges over [0, px] and [1, n - px]; likewise |dy|.
            const auto column_block = [&](std::int64_t X) {
                return F(X, py) + F(X, n - py) - F(X, 0);
            };
            const std::int64_t zero_row = F(0, py) + F(0, n - py) - F(0, 0);
            const std::int64_t c = column_block(px) + column_block(n - px) - zero_row;
            counts[grid.index({px, py})] = static_cast<std::uint32_t>(c);
        }
    return counts;
}

inline CoverSolution greedy_cover(const Grid& grid) {
    const std::int64_t n = grid.n, side = grid.side();
    const std::size_t total = grid.point_count();

    // window[d * (2n+1) + k] = coprime(d, |k - n|). Row px of the gain table
    // seen from q uses window row |px - qx| starting at offset n - qy.
    const std::int64_t width = 2 * n + 1;
    std::vector<std::uint8_t> window(static_cast<std::size_t>(side * width));
    for (std::int64_t d = 0; d <= n; ++d)
        for (std::int64_t k = 0; k < width; ++k)
            window[static_cast<std::size_t>(d * width + k)] =
                gcd_u64(static_cast<std::uint64_t>(d), abs_diff(k, n)) == 1;

    const auto seen = visible_counts(grid);
    std::vector<std::int32_t> gain(seen.begin(), seen.end());
    std::vector<std::uint8_t> uncovered(total, 1);
    std::uint64_t remaining = total;

    CoverSolution sol;
    sol.n = n;
    sol.method = CoverMethod::greedy;

    std::vector<LatticePoint> fresh;
    LatticePoint next{0, 0};
    while (remaining > 0) {
        if (!sol.points.empty()) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < total; ++i)
                if (gain[i] > gain[best]) best = i;
            next = grid.point(best);
        }
        sol.points.push_back(next);

        fresh.clear();
        for (std::int64_t x = 0; x <= n; ++x)
            for (std::int64_t y = 0; y <= n; ++y) {
                const std::size_t idx = static_cast<std::size_t>(x * side + y);
                if (uncovered[idx] && gcd_u64(abs_diff(x, next.x), abs_diff(y, next.y)) == 1) {
                    uncovered[idx] = 0;
                    fresh.push_back({x, y});
                }
            }
        sol.step_gains.push_back(fresh.size());
        remaining -= fresh.size();

        // Every candidate that saw a freshly covered q loses one unit of gain.
        for (const auto& q : fresh)
            for (std::int64_t px = 0; px <= n; ++px) {
                const std::uint8_t* w =
                    window.data() + static_cast<std::size_t>(abs_diff(px, q.x)) * width + (n - q.y);
                std::int32_t* g = gain.data() + px * side;
                for (std::int64_t py = 0; py <= n; ++py) g[py] -= w[py];
            }
    }
    sol.covered_count = total;
    sol.complete = true;
    return sol;
}

inline constexpr std::int64_t kExactCoverCap = 8;

namespace detail {

using Mask = unsigned __int128;

inline int popcount(Mask m) noexcept {
    return std::popcount(static_cast<std::uint64_t>(m)) +
           std::popcount(static_cast<std::uint64_t>(m >> 64));
}

inline int lowest_bit(Mask m) noexcept {
    const auto lo = static_cast<std::uint64_t>(m);
    return lo != 0 ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(m >> 64));
}

struct ExactSearch {
    std::size_t count = 0;
    Mask full = 0;
    std::vector<Mask> sees;        // sees[i]: points visible from i
    std::vector<Mask> seen_by;     // seen_by[j]: points that see j
    std::vector<Mask> suffix;      // suffix[i]: candidates with index >= i
    std::vector<int> best_suffix;  // best_suffix[i]: max |sees| over index >= i
    std::vector<std::size_t> chosen;

    bool dfs(std::size_t start, int left, Mask covered) {
        if (covered == full) return true;
        if (left == 0 || start >= count) return false;
        const Mask open = full & ~covered;
        if (popcount(open) > left * best_suffix[start]) return false;
        if ((seen_by[static_cast<std::size_t>(lowest_bit(open))] & suffix[start]) == 0) return false;
        for (std::size_t i = start; i < count; ++i) {
            chosen.push_back(i);
            if (dfs(i + 1, left - 1, covered | sees[i])) return true;
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace detail

inline CoverSolution exact_min_cover(const Grid& grid) {
    if (grid.n > kExactCoverCap)
        throw resource_error("exact_min_cover: n=" + std::to_string(grid.n) + " above cap " +
                             std::to_string(kExactCoverCap) + "; use greedy_cover instead");
    using detail::Mask;
    detail::ExactSearch search;
    search.count = grid.point_count();
    search.full = search.count == 128 ? ~Mask{0} : (Mask{1} << search.count) - 1;
    search.sees.assign(search.count, 0);
    search.seen_by.assign(search.count, 0);
    for (std::size_t i = 0; i < search.count; ++i)
        for (std::size_t j = 0; j < search.count; ++j) {
            const LatticePoint p = grid.point(i), q = grid.point(j);
            if (i != j && gcd_u64(abs_diff(p.x, q.x), abs_diff(p.y, q.y)) == 1) {
                search.sees[i] |= Mask{1} << j;
                search.seen_by[j] |= Mask{1} << i;
            }
        }
    search.suffix.assign(search.count + 1, 0);
    search.best_suffix.assign(search.count + 1, 0);
    for (std::size_t i = search.count; i-- > 0;) {
        search.suffix[i] = search.suffix[i + 1] | (Mask{1} << i);
        search.best_suffix[i] = std::max(search.best_suffix[i + 1], detail::popcount(search.sees[i]));
    }

    CoverSolution sol;
    sol.n = grid.n;
    sol.method = CoverMethod::exact;
    for (int size = 1;; ++size) {
        search.chosen.clear();
        if (search.dfs(0, size, 0)) break;
    }
    for (const std::size_t i : search.chosen) sol.points.push_back(grid.point(i));
    sol.covered_count = search.count;
    sol.complete = true;
    return sol;
}

struct BlindSpot {
    BigLatticePoint point;
    BigInt modulus;        // product of the first r primes
    std::size_t shift = 0;  // point = base + shift * (modulus, modulus)
    BigInt containment_bound;  // (r + 1) * modulus
    std::optional<bool> in_grid;  // containment_bound < n, when a grid is given
};

inline constexpr std::size_t kBlindSpotCap = 12;

/// True iff no input sees `candidate` and none coincides with it.
inline bool is_blind_spot(const BigLatticePoint& candidate, const std::vector<LatticePoint>& points) {
    for (const auto& q : points) {
        const BigLatticePoint bq{q.x, q.y};
        if (bq == candidate || is_visible(bq, candidate)) return false;
    }
    return true;
}

/// A point invisible from each of `points`: x = a_i, y = b_i (mod p_i) for the
/// first r primes, shifted by a multiple of the primorial until it differs
/// from every input.
inline BlindSpot blind_spot(const std::vector<LatticePoint>& points,
                            std::optional<std::int64_t> grid_n = std::nullopt) {
    const std::size_t r = points.size();
    if (r < 1 || r > kBlindSpotCap)
        throw std::invalid_argument("blind_spot: need 1.." + std::to_string(kBlindSpotCap) +
                                    " points, got " + std::to_string(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("blind_spot: duplicate input " + to_string(points[i]));

    const auto primes = primes_first(r);
    CrtSystem xs, ys;
    for (std::size_t i = 0; i < r; ++i) {
        xs.moduli.emplace_back(primes[i]);
        ys.moduli.emplace_back(primes[i]);
        xs.residues.emplace_back(points[i].x);
        ys.residues.emplace_back(points[i].y);
    }
    const CrtSolution x0 = crt_solve(xs);
    const CrtSolution y0 = crt_solve(ys);

    BlindSpot out;
    out.modulus = x0.modulus;
    out.containment_bound = BigInt(r + 1) * out.modulus;
    if (grid_n) out.in_grid = out.containment_bound < *grid_n;
    // r inputs block at most r of the r + 1 shifts.
    for (std::size_t k = 0; k <= r; ++k) {
        BigLatticePoint cand{x0.solution + k * out.modulus, y0.solution + k * out.modulus};
        const bool clash = std::any_of(points.begin(), points.end(), [&](const LatticePoint& q) {
            return cand == BigLatticePoint{q.x, q.y};
        });
        if (!clash) {
            out.point = std::move(cand);
            out.shift = k;
            return out;
        }
    }
    throw std::logic_error("blind_spot: every shift collided with an input");
}

struct BoundReport {
    std::int64_t n = 0;
    double lower = 0.0;  // ln n / (2 ln ln n)
    double upper = 0.0;  // 4 ln n
    std::optional<std::size_t> greedy_size;
    std::optional<std::size_t> exact_size;
    bool greedy_within = true;  // flags only: the bounds are asymptotic
    bool exact_within = true;
};

/// Natural logs throughout.
inline BoundReport bound_report(std::int64_t n, std::optional<std::size_t> greedy_size = std::nullopt,
                                std::optional<std::size_t> exact_size = std::nullopt) {
    if (n < 16) throw std::out_of_range("bound_report: n must be >= 16");
    BoundReport r;
    r.n = n;
    const double ln = std::log(static_cast<double>(n));
    r.lower = ln / (2.0 * std::log(ln));
    r.upper = 4.0 * ln;
    r.greedy_size = greedy_size;
    r.exact_size = exact_size;
    const auto within = [&](std::size_t s) {
        return static_cast<double>(s) > r.lower && static_cast<double>(s) < r.upper;
    };
    if (greedy_size) r.greedy_within = within(*greedy_size);
    if (exact_size) r.exact_within = within(*exact_size);
    return r;
}

}  // namespace lattice_scope
