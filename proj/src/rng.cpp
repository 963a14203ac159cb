#include "bmin/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bmin {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : seed_(master_seed), stream_(stream_index) {}

std::uint64_t RngStream::next_u64() {
    if (buffered_ == 0) {
        buffer_ = philox4x32({static_cast<std::uint32_t>(block_),
                              static_cast<std::uint32_t>(block_ >> 32),
                              static_cast<std::uint32_t>(stream_),
                              static_cast<std::uint32_t>(stream_ >> 32)},
                             {static_cast<std::uint32_t>(seed_),
                              static_cast<std::uint32_t>(seed_ >> 32)});
        ++block_;
        buffered_ = 2;
    }
    const unsigned at = 2 * (2 - buffered_);
    --buffered_;
    ++words_;
    return (static_cast<std::uint64_t>(buffer_[at + 1]) << 32) | buffer_[at];
}

double RngStream::uniform_open_closed() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double x, y, r2;
    do {
        // Uniform on [-1, 1) with 53-bit resolution.
        x = static_cast<double>(next_u64() >> 11) * 0x1.0p-52 - 1.0;
        y = static_cast<double>(next_u64() >> 11) * 0x1.0p-52 - 1.0;
        r2 = x * x + y * y;
    } while (r2 >= 1.0 || r2 == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(r2) / r2);
    spare_ = y * scale;
    has_spare_ = true;
    return x * scale;
}

std::uint64_t stream_index(StreamPurpose purpose, std::uint64_t item) {
    constexpr std::uint64_t kItemBits = 56;
    if (item >> kItemBits) throw std::out_of_range("stream item index exceeds 56 bits");
    return (static_cast<std::uint64_t>(purpose) << kItemBits) | item;
}

}  // namespace bmin
