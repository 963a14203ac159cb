#include "bmin/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "bmin/bridge.hpp"

namespace bmin {

double PathOracle::evaluate(const DyadicPoint& t) {
    if (const auto found = skeleton_.find(t); found != Skeleton::npos) {
        return skeleton_[found].value;
    }
    std::size_t interval = Skeleton::npos;
    if (skeleton_.evaluations() == 0) {
        if (!t.is_one()) {
            throw std::invalid_argument("t = 1 must be evaluated before " + t.to_string());
        }
    } else {
        interval = skeleton_.enclosing_interval(t);
        if (interval == Skeleton::npos) {
            throw std::invalid_argument("site " + t.to_string() + " is not inside the skeleton");
        }
        // Reject non-bisecting sites before any randomness is consumed.
        if (gap_level(skeleton_[interval].t, t) != skeleton_.gap_level(interval) + 1) {
            throw std::invalid_argument("site " + t.to_string() +
                                        " is not the midpoint of its enclosing gap");
        }
    }
    const double value = draw(t, interval);
    skeleton_.insert(t, value);
    return value;
}

double BrownianOracle::draw(const DyadicPoint&, std::size_t interval) {
    if (interval == Skeleton::npos) return stream_.gaussian();  // W(1) ~ N(0, 1)
    const Skeleton& sk = skeleton();
    const BridgeSegment seg{sk[interval].value, sk[interval + 1].value, sk.gap(interval)};
    return interior_sample(seg, seg.length / 2.0, stream_.gaussian());
}

DeterministicOracle::DeterministicOracle(Function f) : f_(std::move(f)) {
    if (!f_) throw std::invalid_argument("deterministic oracle needs a function");
}

double DeterministicOracle::draw(const DyadicPoint& t, std::size_t) { return f_(t.to_double()); }

double grid_reference_min(const DeterministicOracle& oracle, std::size_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("grid_reference_min needs grid_size >= 2");
    double best = oracle.value_at(0.0);
    const double n = static_cast<double>(grid_size);
    for (std::size_t i = 1; i <= grid_size; ++i) {
        best = std::min(best, oracle.value_at(static_cast<double>(i) / n));
    }
    return best;
}

}  // namespace bmin
