#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sqcover {

/// A finite binary word. Nodes of the depth-n binary tree are words of
/// length n; prefixes of Cantor-space points are words of arbitrary length.
/// Length is exact: there is no implicit padding anywhere.
class BitString {
public:
    BitString() = default;

    /// Parse from a string of '0'/'1' characters. Throws std::invalid_argument
    /// on any other character.
    static BitString parse(std::string_view text);

    static BitString zeros(std::size_t length);
    static BitString ones(std::size_t length);

    /// Decode `length` bits from an integer code, most significant bit first,
    /// so that numeric order of codes equals lexicographic order of words.
    static BitString from_code(std::uint64_t code, std::size_t length);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    bool bit(std::size_t i) const { return bits_[i] != 0; }
    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    bool back() const { return bits_.back() != 0; }

    void push_back(bool b) { bits_.push_back(b ? 1 : 0); }

    /// First `k` bits as a new word. Requires k <= size().
    BitString prefix(std::size_t k) const;

    /// Copy with one bit appended.
    BitString appended(bool b) const;

    /// Encode as an integer, first bit most significant. Requires size() <= 63.
    std::uint64_t to_code() const;

    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString& a, const BitString& b) {
        return a.bits_ <=> b.bits_;
    }

private:
    std::vector<std::uint8_t> bits_;
};

/// Length of the longest common prefix of two words.
std::size_t common_prefix_length(const BitString& a, const BitString& b);

/// A value of the tree/Cantor ultrametric: either 0 or 2^-k with k >= 1.
/// Stored as the exponent, never as floating point.
class Distance {
public:
    static Distance zero() { return Distance(0, true); }
    static Distance pow2_neg(std::uint64_t exponent) { return Distance(exponent, false); }

    bool is_zero() const { return zero_; }

    /// The k in 2^-k. Only meaningful when !is_zero().
    std::uint64_t exponent() const { return exponent_; }

    friend bool operator==(const Distance&, const Distance&) = default;

    /// Numeric order of the distance values: 0 < 2^-k, and 2^-k < 2^-j iff k > j.
    friend bool operator<(const Distance& a, const Distance& b) {
        if (a.zero_) return !b.zero_;
        if (b.zero_) return false;
        return a.exponent_ > b.exponent_;
    }
    friend bool operator<=(const Distance& a, const Distance& b) { return a == b || a < b; }

private:
    Distance(std::uint64_t e, bool z) : exponent_(e), zero_(z) {}
    std::uint64_t exponent_ = 0;
    bool zero_ = true;
};

/// d(x,y) = 0 if x = y, else 2^-k where k is the smallest prefix length at
/// which x and y disagree. Throws std::invalid_argument on length mismatch.
Distance metric_distance(const BitString& x, const BitString& y);

}  // namespace sqcover
