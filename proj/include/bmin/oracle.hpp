#pragma once

#include <cstddef>
#include <functional>

#include "bmin/rng.hpp"
#include "bmin/skeleton.hpp"

namespace bmin {

/**
 * Evaluation contract for f : [0, 1] -> R with f(0) = 0.
 *
 * Evaluations are memoized in the oracle's skeleton, so asking for the same
 * site twice returns the identical value. The skeleton rules apply: the first
 * new site must be t = 1 and later sites must bisect an existing gap.
 */
class PathOracle {
public:
    virtual ~PathOracle() = default;

    double evaluate(const DyadicPoint& t);

    const Skeleton& skeleton() const noexcept { return skeleton_; }

protected:
    /// Produces f(t) for a site not yet in the skeleton. `interval` is the
    /// enclosing gap, or Skeleton::npos for t = 1 on an empty skeleton.
    virtual double draw(const DyadicPoint& t, std::size_t interval) = 0;

private:
    Skeleton skeleton_;
};

/// Exact Brownian path revealed lazily through its conditional laws.
class BrownianOracle final : public PathOracle {
public:
    explicit BrownianOracle(RngStream stream) : stream_(std::move(stream)) {}

    const RngStream& stream() const noexcept { return stream_; }

private:
    double draw(const DyadicPoint& t, std::size_t interval) override;

    RngStream stream_;
};

/// Closed-form test function. The caller guarantees f(0) = 0.
class DeterministicOracle final : public PathOracle {
public:
    using Function = std::function<double(double)>;

    explicit DeterministicOracle(Function f);

    double value_at(double t) const { return f_(t); }

private:
    double draw(const DyadicPoint& t, std::size_t interval) override;

    Function f_;
};

/// Minimum of f over {i / grid_size : 0 <= i <= grid_size}; an upper bound on min f.
double grid_reference_min(const DeterministicOracle& oracle, std::size_t grid_size);

}  // namespace bmin
