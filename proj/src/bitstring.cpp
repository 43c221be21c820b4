#include "sqcover/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqcover {

BitString BitString::parse(std::string_view text) {
    BitString out;
    out.bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("BitString::parse: character is not '0' or '1'");
        }
        out.bits_.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

BitString BitString::zeros(std::size_t length) {
    BitString out;
    out.bits_.assign(length, 0);
    return out;
}

BitString BitString::ones(std::size_t length) {
    BitString out;
    out.bits_.assign(length, 1);
    return out;
}

BitString BitString::from_code(std::uint64_t code, std::size_t length) {
    if (length > 63) {
        throw std::invalid_argument("BitString::from_code: length exceeds 63");
    }
    BitString out;
    out.bits_.resize(length);
    for (std::size_t i = 0; i < length; ++i) {
        out.bits_[i] = static_cast<std::uint8_t>((code >> (length - 1 - i)) & 1u);
    }
    return out;
}

BitString BitString::prefix(std::size_t k) const {
    if (k > bits_.size()) {
        throw std::out_of_range("BitString::prefix: k exceeds length");
    }
    BitString out;
    out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

BitString BitString::appended(bool b) const {
    BitString out = *this;
    out.push_back(b);
    return out;
}

std::uint64_t BitString::to_code() const {
    if (bits_.size() > 63) {
        throw std::length_error("BitString::to_code: length exceeds 63");
    }
    std::uint64_t code = 0;
    for (std::uint8_t b : bits_) {
        code = (code << 1) | b;
    }
    return code;
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (std::uint8_t b : bits_) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

std::size_t common_prefix_length(const BitString& a, const BitString& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return i;
    }
    return n;
}

Distance metric_distance(const BitString& x, const BitString& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("metric_distance: words have different lengths");
    }
    const std::size_t lcp = common_prefix_length(x, y);
    if (lcp == x.size()) return Distance::zero();
    return Distance::pow2_neg(lcp + 1);
}

}  // namespace sqcover
