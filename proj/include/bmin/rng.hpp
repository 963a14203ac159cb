#pragma once

#include <array>
#include <cstdint>

namespace bmin {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/**
 * Counter-based random stream.
 *
 * Stream `stream_index` under `master_seed` is keyed by the seed and owns the
 * counter range whose upper 64 bits equal the stream index, so its output is a
 * pure function of (master_seed, stream_index, draw count) and distinct
 * indices never share a Philox block.
 */
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const noexcept { return seed_; }
    std::uint64_t stream_index() const noexcept { return stream_; }

    std::uint64_t next_u64();

    /// Uniform on (0, 1] with 53 random bits.
    double uniform_open_closed();

    /// Standard normal variate (Marsaglia polar method).
    double gaussian();

    /// Number of 64-bit words consumed so far.
    std::uint64_t words_consumed() const noexcept { return words_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned buffered_ = 0;  // u64 words left in buffer_ (0, 1 or 2)
    std::uint64_t words_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline double gaussian(RngStream& stream) { return stream.gaussian(); }

/// Tags separating independent uses of one master seed.
enum class StreamPurpose : std::uint64_t {
    adaptive_path = 1,
    adaptive_min = 2,
    equidistant_path = 3,
    equidistant_min = 4,
    test = 0xff,
};

/// Stream index for (purpose, item): purpose in the top 8 bits, item below.
/// Throws std::out_of_range when item does not fit in 56 bits.
std::uint64_t stream_index(StreamPurpose purpose, std::uint64_t item);

}  // namespace bmin
