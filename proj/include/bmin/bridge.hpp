#pragma once

namespace bmin {

/// Brownian bridge from value `a` to value `b` over a segment of length `length`.
struct BridgeSegment {
    double a;
    double b;
    double length;

    /// Throws std::invalid_argument unless a, b are finite and length is finite and > 0.
    void validate() const;
};

/**
 * Value of the bridge at offset s in (0, length) given a standard normal z:
 * a + (s/T)(b - a) + sqrt(s (T - s) / T) z.
 */
double interior_sample(const BridgeSegment& seg, double s, double z);

/// P(min of the bridge < y): exp(-2 (a - y)(b - y) / T) below min(a, b), else 1.
double bridge_min_cdf(const BridgeSegment& seg, double y);

/// min(a, b) - y for the inverse-CDF draw at u; non-negative and free of cancellation.
double bridge_min_undershoot(const BridgeSegment& seg, double u);

/// Inverse-CDF draw of the bridge minimum for u in (0, 1]. Returns min(a, b) at u = 1.
double bridge_min_sample(const BridgeSegment& seg, double u);

}  // namespace bmin
