#include "bmin/dyadic.hpp"

#include <cctype>
#include <cmath>

namespace bmin {

namespace mp = boost::multiprecision;

DepthExceeded::DepthExceeded(unsigned level, unsigned cap)
    : std::runtime_error("dyadic depth exceeded: level " + std::to_string(level) +
                         " is above the cap " + std::to_string(cap)),
      level_(level),
      cap_(cap) {}

DyadicPoint::DyadicPoint(BigUint numerator, unsigned level)
    : numerator_(std::move(numerator)), level_(level) {
    if (numerator_ < 0) {
        throw std::invalid_argument("dyadic numerator must be non-negative");
    }
    if (numerator_ > (BigUint(1) << level_)) {
        throw std::invalid_argument("dyadic point " + numerator_.str() + "/2^" +
                                    std::to_string(level_) + " lies outside [0,1]");
    }
    if (numerator_.is_zero()) {
        level_ = 0;
        return;
    }
    const unsigned trailing = static_cast<unsigned>(mp::lsb(numerator_));
    const unsigned shift = trailing < level_ ? trailing : level_;
    numerator_ >>= shift;
    level_ -= shift;
}

DyadicPoint DyadicPoint::parse(std::string_view text) {
    const auto sep = text.find("/2^");
    if (sep == std::string_view::npos || sep == 0 || sep + 3 >= text.size()) {
        throw std::invalid_argument("malformed dyadic point '" + std::string(text) + "'");
    }
    const auto num = text.substr(0, sep);
    const auto lvl = text.substr(sep + 3);
    auto all_digits = [](std::string_view s) {
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };
    if (!all_digits(num) || !all_digits(lvl) || lvl.size() > 9) {
        throw std::invalid_argument("malformed dyadic point '" + std::string(text) + "'");
    }
    return DyadicPoint(BigUint(std::string(num)),
                       static_cast<unsigned>(std::stoul(std::string(lvl))));
}

double DyadicPoint::to_double() const {
    if (numerator_.is_zero()) return 0.0;
    const unsigned top = static_cast<unsigned>(mp::msb(numerator_));
    if (top < 64) {
        return std::ldexp(static_cast<double>(numerator_.convert_to<std::uint64_t>()),
                          -static_cast<int>(level_));
    }
    // Truncate to the leading 64 bits, then let the hardware round.
    const unsigned drop = top - 63;
    const BigUint head = numerator_ >> drop;
    return std::ldexp(static_cast<double>(head.convert_to<std::uint64_t>()),
                      static_cast<int>(drop) - static_cast<int>(level_));
}

std::string DyadicPoint::to_string() const {
    return numerator_.str() + "/2^" + std::to_string(level_);
}

std::strong_ordering operator<=>(const DyadicPoint& a, const DyadicPoint& b) {
    if (a.level_ == b.level_) {
        return a.numerator_ == b.numerator_ ? std::strong_ordering::equal
               : a.numerator_ < b.numerator_ ? std::strong_ordering::less
                                             : std::strong_ordering::greater;
    }
    const bool a_deeper = a.level_ > b.level_;
    const unsigned shift = a_deeper ? a.level_ - b.level_ : b.level_ - a.level_;
    const BigUint lhs = a_deeper ? a.numerator_ : BigUint(a.numerator_ << shift);
    const BigUint rhs = a_deeper ? BigUint(b.numerator_ << shift) : b.numerator_;
    if (lhs == rhs) return std::strong_ordering::equal;
    return lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater;
}

unsigned gap_level(const DyadicPoint& left, const DyadicPoint& right) {
    if (!(left < right)) {
        throw std::invalid_argument("gap_level requires left < right, got " +
                                    left.to_string() + " and " + right.to_string());
    }
    const unsigned depth = std::max(left.level(), right.level());
    const BigUint diff = (right.numerator() << (depth - right.level())) -
                         (left.numerator() << (depth - left.level()));
    const unsigned low = static_cast<unsigned>(mp::lsb(diff));
    if (mp::msb(diff) != low) {
        throw std::invalid_argument("gap between " + left.to_string() + " and " +
                                    right.to_string() + " is not a power of two");
    }
    return depth - low;
}

DyadicPoint midpoint(const DyadicPoint& left, const DyadicPoint& right, unsigned level_cap) {
    const unsigned k = gap_level(left, right);
    const unsigned depth = std::max(left.level(), k + 1);
    if (depth > level_cap) throw DepthExceeded(depth, level_cap);
    BigUint num = (left.numerator() << (depth - left.level())) + (BigUint(1) << (depth - k - 1));
    return DyadicPoint(std::move(num), depth);
}

}  // namespace bmin
