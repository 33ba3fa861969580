#pragma once

/**
 * @file arith.hpp
 * @brief Sieve tables for phi, mu, omega and totient partial sums.
 *
 * A single linear sieve fills smallest-prime-factor, Euler phi, Moebius mu
 * and omega (distinct prime count) in one pass over [2, N]. Every value of
 * n <= N is written exactly once, by its smallest prime factor, so the cost
 * is O(N) plus the prime list.
 *
 * Convention: phi(1) = 1, mu(1) = 1, omega(1) = 0.
 */

#include <bit>
#include <cmath>
#include <cstdint>
#include <new>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "types.hpp"

namespace lattice_scope {

using u128 = unsigned __int128;

/// Largest sieve bound accepted. Memory is ~10 bytes per entry, so the cap
/// costs ~10 GB; 10^7 needs ~100 MB.
inline constexpr std::uint64_t kSieveLimitCap = 1'000'000'000ULL;

/// Binary gcd on unsigned 64-bit values, gcd(0, m) = m.
constexpr std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = std::countr_zero(a | b);
    a >>= std::countr_zero(a);
    do {
        b >>= std::countr_zero(b);
        if (a > b) {
            const std::uint64_t t = a;
            a = b;
            b = t;
        }
        b -= a;
    } while (b != 0);
    return a << shift;
}

/// Immutable per-integer arithmetic data for 1..limit.
class SieveTable {
public:
    explicit SieveTable(std::uint64_t limit) : limit_(limit) {
        if (limit == 0) throw std::invalid_argument("sieve limit must be >= 1");
        if (limit > kSieveLimitCap)
            throw resource_error("sieve limit " + std::to_string(limit) + " exceeds cap " +
                                 std::to_string(kSieveLimitCap));
        try {
            build();
        } catch (const std::bad_alloc&) {
            throw resource_error("out of memory building sieve of size " + std::to_string(limit));
        }
    }

    std::uint64_t limit() const noexcept { return limit_; }

    /// Smallest prime factor; 0 for n < 2.
    std::uint32_t spf(std::uint64_t n) const { return spf_[check(n)]; }
    std::uint32_t phi(std::uint64_t n) const { return phi_[check(n)]; }
    int mu(std::uint64_t n) const { return mu_[check(n)]; }
    int omega(std::uint64_t n) const { return omega_[check(n)]; }
    bool is_prime(std::uint64_t n) const { return n >= 2 && spf(n) == n; }

    /// All primes <= limit, ascending.
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    // Raw views, indexed by n (entry 0 is unused).
    std::span<const std::uint32_t> phi_values() const noexcept { return phi_; }
    std::span<const std::int8_t> mu_values() const noexcept { return mu_; }
    std::span<const std::uint8_t> omega_values() const noexcept { return omega_; }

private:
    std::uint64_t check(std::uint64_t n) const {
        if (n < 1 || n > limit_)
            throw std::out_of_range("n=" + std::to_string(n) + " outside sieve range [1, " +
                                    std::to_string(limit_) + "]");
        return n;
    }

    void build() {
        const std::size_t size = static_cast<std::size_t>(limit_) + 1;
        spf_.assign(size, 0);
        phi_.assign(size, 0);
        mu_.assign(size, 0);
        omega_.assign(size, 0);
        phi_[1] = 1;
        mu_[1] = 1;
        for (std::uint64_t i = 2; i <= limit_; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = static_cast<std::uint32_t>(i);
                phi_[i] = static_cast<std::uint32_t>(i - 1);
                mu_[i] = -1;
                omega_[i] = 1;
                primes_.push_back(static_cast<std::uint32_t>(i));
            }
            const std::uint32_t smallest = spf_[i];
            for (const std::uint32_t p : primes_) {
                if (p > smallest) break;
                const std::uint64_t m = i * p;
                if (m > limit_) break;
                spf_[m] = p;
                if (p == smallest) {
                    phi_[m] = phi_[i] * p;
                    mu_[m] = 0;
                    omega_[m] = omega_[i];
                } else {
                    phi_[m] = phi_[i] * (p - 1);
                    mu_[m] = static_cast<std::int8_t>(-mu_[i]);
                    omega_[m] = static_cast<std::uint8_t>(omega_[i] + 1);
                }
            }
        }
    }

    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> phi_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint8_t> omega_;
    std::vector<std::uint32_t> primes_;
};

inline SieveTable sieve_build(std::uint64_t limit) { return SieveTable(limit); }

/// phi(n) by factoring n over the table's spf and applying n * prod(1 - 1/p).
inline std::uint64_t totient(std::uint64_t n, const SieveTable& table) {
    if (n < 1 || n > table.limit())
        throw std::out_of_range("totient: n=" + std::to_string(n) + " outside table range");
    std::uint64_t result = n;
    std::uint64_t m = n;
    while (m > 1) {
        const std::uint64_t p = table.spf(m);
        result = result / p * (p - 1);
        while (m % p == 0) m /= p;
    }
    return result;
}

struct PartialSumReport {
    std::uint64_t x = 0;
    u128 phi_sum = 0;          // exact sum of phi(n), n <= x
    double main_term = 0.0;    // 3x^2/pi^2
    double abs_error = 0.0;
    double normalized_error = 0.0;  // abs_error / (x ln x); NaN at x = 1
};

inline PartialSumReport totient_partial_sum(std::uint64_t x, const SieveTable& table) {
    if (x < 1 || x > table.limit())
        throw std::out_of_range("totient_partial_sum: x=" + std::to_string(x) +
                                " outside table range");
    PartialSumReport report;
    report.x = x;
    const auto phi = table.phi_values();
    for (std::uint64_t n = 1; n <= x; ++n) report.phi_sum += phi[n];
    const long double xd = static_cast<long double>(x);
    const long double main = 3.0L * xd * xd / (std::numbers::pi * std::numbers::pi);
    report.main_term = static_cast<double>(main);
    report.abs_error = static_cast<double>(std::fabs(static_cast<long double>(report.phi_sum) - main));
    report.normalized_error = x >= 2 ? report.abs_error / (static_cast<double>(x) * std::log(static_cast<double>(x)))
                                     : std::nan("");
    return report;
}

/// Decimal rendering of an unsigned 128-bit value.
inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

/// The first m primes, sieving up to a growing bound until enough are found.
inline std::vector<std::uint64_t> primes_first(std::size_t m) {
    if (m == 0) throw std::invalid_argument("primes_first: m must be >= 1");
    // p_m < m (ln m + ln ln m) for m >= 6; start there and double on shortfall.
    std::uint64_t bound = 16;
    if (m >= 6) {
        const double lm = std::log(static_cast<double>(m));
        bound = static_cast<std::uint64_t>(static_cast<double>(m) * (lm + std::log(lm))) + 16;
    }
    for (;;) {
        std::vector<bool> composite(bound + 1, false);
        std::vector<std::uint64_t> primes;
        primes.reserve(m);
        for (std::uint64_t i = 2; i <= bound && primes.size() < m; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
        }
        if (primes.size() == m) return primes;
        bound *= 2;
    }
}

}  // namespace lattice_scope
