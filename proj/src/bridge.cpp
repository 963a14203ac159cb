#include "bmin/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bmin {

void BridgeSegment::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("bridge endpoint values must be finite");
    }
    if (!std::isfinite(length) || !(length > 0.0)) {
        throw std::invalid_argument("bridge length must be finite and positive, got " +
                                    std::to_string(length));
    }
}

double interior_sample(const BridgeSegment& seg, double s, double z) {
    seg.validate();
    if (!(s > 0.0 && s < seg.length)) {
        throw std::invalid_argument("interior_sample needs 0 < s < T");
    }
    const double mean = seg.a + (s / seg.length) * (seg.b - seg.a);
    return mean + std::sqrt(s * (seg.length - s) / seg.length) * z;
}

double bridge_min_cdf(const BridgeSegment& seg, double y) {
    seg.validate();
    if (y >= std::min(seg.a, seg.b)) return 1.0;
    return std::exp(-2.0 * (seg.a - y) * (seg.b - y) / seg.length);
}

double bridge_min_undershoot(const BridgeSegment& seg, double u) {
    seg.validate();
    if (!(u > 0.0 && u <= 1.0)) {
        throw std::invalid_argument("bridge_min_sample needs u in (0, 1]");
    }
    // Smaller root of (a - y)(b - y) = c, written as min(a,b) - 2c / (|a-b| + sqrt(D)).
    const double c = -seg.length * std::log(u) / 2.0;
    if (c == 0.0) return 0.0;
    const double spread = std::abs(seg.a - seg.b);
    const double root = std::sqrt(spread * spread + 4.0 * c);
    return 2.0 * c / (spread + root);
}

double bridge_min_sample(const BridgeSegment& seg, double u) {
    return std::min(seg.a, seg.b) - bridge_min_undershoot(seg, u);
}

}  // namespace bmin
