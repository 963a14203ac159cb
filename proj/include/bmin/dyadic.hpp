#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bmin {

using BigUint = boost::multiprecision::cpp_int;

/// Maximum dyadic level accepted by default. 2^-1000 is still a normal double.
inline constexpr unsigned kDefaultLevelCap = 1000;

/// Raised when a bisection would produce a point deeper than the level cap.
class DepthExceeded : public std::runtime_error {
public:
    DepthExceeded(unsigned level, unsigned cap);

    unsigned level() const noexcept { return level_; }
    unsigned cap() const noexcept { return cap_; }

private:
    unsigned level_;
    unsigned cap_;
};

/**
 * Exact binary rational numerator / 2^level in [0, 1].
 *
 * Always stored in canonical form: the numerator is odd, or the point is
 * 0 (0/2^0) or 1 (1/2^0). Two points compare equal iff they denote the same
 * number.
 */
class DyadicPoint {
public:
    DyadicPoint() = default;  // zero

    /// Builds numerator / 2^level and reduces it. Throws if the value exceeds 1.
    DyadicPoint(BigUint numerator, unsigned level);

    static DyadicPoint zero() { return {}; }
    static DyadicPoint one() { return DyadicPoint(BigUint(1), 0); }

    /// Parses the "k/2^m" form produced by to_string().
    static DyadicPoint parse(std::string_view text);

    const BigUint& numerator() const noexcept { return numerator_; }
    unsigned level() const noexcept { return level_; }

    bool is_zero() const noexcept { return numerator_.is_zero(); }
    bool is_one() const noexcept { return level_ == 0 && numerator_ == 1; }

    /// Exact for level <= 52, monotone non-decreasing for every level.
    double to_double() const;

    /// "numerator/2^level", e.g. "3/2^3".
    std::string to_string() const;

    friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
    friend std::strong_ordering operator<=>(const DyadicPoint& a, const DyadicPoint& b);

private:
    BigUint numerator_{0};
    unsigned level_ = 0;
};

/// Returns k if right - left == 2^-k, throws std::invalid_argument otherwise.
unsigned gap_level(const DyadicPoint& left, const DyadicPoint& right);

/**
 * Exact midpoint of [left, right] where right - left = 2^-k.
 *
 * The result has level k + 1. Throws std::invalid_argument when the gap is not
 * a power of two and DepthExceeded when k + 1 > level_cap.
 */
DyadicPoint midpoint(const DyadicPoint& left, const DyadicPoint& right,
                     unsigned level_cap = kDefaultLevelCap);

}  // namespace bmin
