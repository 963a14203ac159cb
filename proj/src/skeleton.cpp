#include "bmin/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bmin {

Skeleton::Skeleton() { sites_.push_back(Site{DyadicPoint::zero(), 0.0}); }

double Skeleton::gap(std::size_t interval) const {
    return std::ldexp(1.0, -static_cast<int>(gap_levels_.at(interval)));
}

double Skeleton::tau() const {
    if (gap_levels_.empty()) throw std::logic_error("tau is undefined before the first evaluation");
    return std::ldexp(1.0, -static_cast<int>(tau_level_));
}

std::size_t Skeleton::find(const DyadicPoint& t) const {
    auto it = std::lower_bound(sites_.begin(), sites_.end(), t,
                               [](const Site& s, const DyadicPoint& p) { return s.t < p; });
    if (it != sites_.end() && it->t == t) return static_cast<std::size_t>(it - sites_.begin());
    return npos;
}

std::size_t Skeleton::enclosing_interval(const DyadicPoint& t) const {
    auto it = std::lower_bound(sites_.begin(), sites_.end(), t,
                               [](const Site& s, const DyadicPoint& p) { return s.t < p; });
    if (it == sites_.begin() || it == sites_.end() || it->t == t) return npos;
    return static_cast<std::size_t>(it - sites_.begin()) - 1;
}

std::size_t Skeleton::insert(const DyadicPoint& t, double value) {
    if (find(t) != npos) {
        throw std::invalid_argument("site " + t.to_string() + " is already in the skeleton");
    }
    if (sites_.size() == 1) {
        if (!t.is_one()) {
            throw std::invalid_argument("the first site after 0 must be 1, got " + t.to_string());
        }
        sites_.push_back(Site{t, value});
        gap_levels_.push_back(0);
        min_value_ = std::min(min_value_, value);
        tau_level_ = 0;
        return 1;
    }

    const std::size_t interval = enclosing_interval(t);
    if (interval == npos) {
        throw std::invalid_argument("site " + t.to_string() + " is outside the skeleton");
    }
    const unsigned level = gap_levels_[interval] + 1;
    // t must bisect the gap exactly: t - t[i] == 2^-level.
    if (bmin::gap_level(sites_[interval].t, t) != level) {
        throw std::invalid_argument("site " + t.to_string() +
                                    " is not the midpoint of its enclosing gap");
    }

    const std::size_t index = interval + 1;
    sites_.insert(sites_.begin() + static_cast<std::ptrdiff_t>(index), Site{t, value});
    gap_levels_[interval] = level;
    gap_levels_.insert(gap_levels_.begin() + static_cast<std::ptrdiff_t>(index), level);
    min_value_ = std::min(min_value_, value);
    tau_level_ = std::max(tau_level_, level);
    return index;
}

}  // namespace bmin
