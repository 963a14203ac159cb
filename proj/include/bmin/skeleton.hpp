#pragma once

#include <cstddef>
#include <vector>

#include "bmin/dyadic.hpp"

namespace bmin {

/// One observation (t, f(t)).
struct Site {
    DyadicPoint t;
    double value = 0.0;
};

/**
 * Ordered observation skeleton of a function on [0, 1] with f(0) = 0.
 *
 * Starts as the single site (0, 0). The first insertion must be t = 1; every
 * later insertion must be the midpoint of an existing gap, so all gaps stay
 * exact powers of two. The discrete minimum and the smallest gap are cached and
 * updated in O(1) per insertion (the vector insert itself is O(n)).
 */
class Skeleton {
public:
    Skeleton();

    /// Inserts (t, value) and returns the index of the new site.
    /// Throws std::invalid_argument on a duplicate or non-bisecting site.
    std::size_t insert(const DyadicPoint& t, double value);

    const std::vector<Site>& sites() const noexcept { return sites_; }
    const Site& operator[](std::size_t i) const { return sites_[i]; }

    /// Number of evaluations after t0 = 0.
    std::size_t evaluations() const noexcept { return sites_.size() - 1; }

    /// Number of subintervals; equals evaluations().
    std::size_t intervals() const noexcept { return gap_levels_.size(); }

    /// Level k of interval i, i.e. t[i+1] - t[i] = 2^-k (0-based interval index).
    unsigned gap_level(std::size_t interval) const { return gap_levels_[interval]; }
    double gap(std::size_t interval) const;
    const std::vector<unsigned>& gap_levels() const noexcept { return gap_levels_; }

    /// Cached min over stored values (M_n).
    double min_value() const noexcept { return min_value_; }

    /// Cached level of the smallest gap: tau_n = 2^-tau_level(). Requires n >= 1.
    unsigned tau_level() const noexcept { return tau_level_; }
    double tau() const;

    /// Index of the site equal to t, or npos.
    std::size_t find(const DyadicPoint& t) const;

    /// Index i of the interval with t[i] < t < t[i+1], or npos when t is a site
    /// or lies right of the last site.
    std::size_t enclosing_interval(const DyadicPoint& t) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<Site> sites_;
    std::vector<unsigned> gap_levels_;
    double min_value_ = 0.0;
    unsigned tau_level_ = 0;
};

}  // namespace bmin
