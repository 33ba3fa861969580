#pragma once

// Shared value types and error classes used across lattice_scope.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lattice_scope {

using BigInt = boost::multiprecision::cpp_int;

/// An integer lattice point with machine-width coordinates.
struct LatticePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

    constexpr LatticePoint operator+(const LatticePoint& t) const { return {x + t.x, y + t.y}; }
};

/// Same shape as LatticePoint, for coordinates that outgrow 64 bits
/// (CRT witnesses, blind spots).
struct BigLatticePoint {
    BigInt x;
    BigInt y;

    friend bool operator==(const BigLatticePoint&, const BigLatticePoint&) = default;
};

/// A computation would exceed its documented work or memory cap.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search that is only guaranteed to succeed asymptotically came up empty.
class not_found_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const LatticePoint& p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

}  // namespace lattice_scope
