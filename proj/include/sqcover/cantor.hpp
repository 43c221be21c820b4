#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "sqcover/bitstring.hpp"

namespace sqcover::cantor {

// ---------------------------------------------------------------------------
// Partition of the bit positions.
//
// Position i belongs to block n = v2(i + 1), the 2-adic valuation of i + 1;
// block n enumerates its positions as block_element(n, k) = (2k+1) 2^n - 1.
// Blocks are pairwise disjoint, infinite, and cover every position, and each
// enumeration is strictly increasing. Block 0 is the even positions.
// ---------------------------------------------------------------------------

/// The block containing position i.
std::uint32_t block_index(std::uint64_t i);

/// The k-th position of block n: (2k+1) 2^n - 1. Throws std::overflow_error
/// when the value does not fit in 64 bits.
std::uint64_t block_element(std::uint32_t n, std::uint64_t k);

/// The k with block_element(block_index(i), k) == i.
std::uint64_t position_in_block(std::uint64_t i);

// ---------------------------------------------------------------------------
// The covering family on Cantor space. Function 0 is the identity; function
// n >= 1 reads off block n: f_n(x)(i) = x(block_element(n, i)). Each f_n is
// continuous but, for n >= 1, not 1-Lipschitz: its modulus of continuity at
// output depth d needs input bits far beyond d.
// ---------------------------------------------------------------------------

/// A point of Cantor space presented as a bit oracle.
using BitOracle = std::function<bool(std::uint64_t)>;

/// The length-`depth` prefix of f_n(x).
BitString apply_block_fn(std::uint32_t n, const BitOracle& x, std::size_t depth);

/// Least input-prefix length that determines f_n(x) to `depth` bits:
/// `depth` itself for the identity, 1 + block_element(n, depth-1) otherwise.
std::uint64_t continuity_modulus(std::uint32_t n, std::uint64_t depth);

// ---------------------------------------------------------------------------
// Point store: a DAG of point definitions with memoized bit evaluation.
//
// A base point is an explicit prefix followed by a constant tail. An
// extension point over earlier points x_1..x_m is the diagonal witness
//   y(block_element(n, k)) = x_n(k)                     for 1 <= n <= m,
//   y(block_element(0, n)) = 1 - x_n(block_element(0, n)) for 1 <= n <= m,
//   y(i) = 0 at every other position,
// so f_n(y) = x_n for n <= m while y disagrees with each x_n at the even
// position 2n. Children precede parents, so evaluation terminates.
// ---------------------------------------------------------------------------

using PointId = std::size_t;

struct BasePoint {
    BitString prefix;
    bool tail = false;
    friend bool operator==(const BasePoint&, const BasePoint&) = default;
};

struct ExtensionPoint {
    std::vector<PointId> children;  // x_1..x_m in order
    friend bool operator==(const ExtensionPoint&, const ExtensionPoint&) = default;
};

using PointExpr = std::variant<BasePoint, ExtensionPoint>;

/// Single-owner: build and evaluate from one thread at a time (the memo is
/// not synchronized). Distinct stores are fully independent.
class PointStore {
public:
    PointId add_base(BitString prefix, bool tail);

    /// Appends an extension point. Throws std::invalid_argument when children
    /// is empty or references an id that is not already in the store.
    PointId add_extension(std::vector<PointId> children);

    bool eval(PointId id, std::uint64_t index) const;

    /// The bit at the k-th position of block n, computed without forming the
    /// position index itself, so block queries work even where
    /// block_element(n, k) would not fit in 64 bits.
    bool eval_in_block(PointId id, std::uint32_t n, std::uint64_t k) const;

    BitString prefix(PointId id, std::size_t depth) const;
    BitOracle oracle(PointId id) const;

    const std::vector<PointExpr>& expressions() const { return exprs_; }
    std::size_t size() const { return exprs_.size(); }

    /// Drops every cached bit. Re-evaluation must give identical results.
    void clear_memo() const;

private:
    bool eval_uncached(PointId id, std::uint64_t index) const;
    bool extension_block_bit(const ExtensionPoint& ext, std::uint32_t n, std::uint64_t k) const;

    std::vector<PointExpr> exprs_;
    mutable std::vector<std::unordered_map<std::uint64_t, bool>> memo_;
};

/// Diagonal extension: a fresh point y with
/// f_n(y) = x_n for every x_n in `covered` (n counted from 1) and
/// y != x_n witnessed at position 2n.
PointId diagonal_extend(PointStore& store, const std::vector<PointId>& covered);

/// Store-backed block function application; goes through eval_in_block, so it
/// has no 64-bit limit on the positions read.
BitString apply_block_fn(const PointStore& store, PointId id, std::uint32_t n, std::size_t depth);

// ---------------------------------------------------------------------------
// Chains: iterated diagonal extensions with recorded covering witnesses.
// ---------------------------------------------------------------------------

struct Chain {
    /// points[k] is x_{k+1}; indices alpha/beta below are 1-based.
    std::vector<PointId> points;

    struct Witness {
        std::size_t alpha = 0, beta = 0;  // alpha < beta
        std::uint32_t fn = 0;             // f_fn(x_beta) = x_alpha
        friend bool operator==(const Witness&, const Witness&) = default;
    };
    std::vector<Witness> witnesses;

    struct Disagreement {
        std::size_t point = 0;      // 1-based index k
        std::uint64_t index = 0;    // x_k differs from every later point here
        friend bool operator==(const Disagreement&, const Disagreement&) = default;
    };
    std::vector<Disagreement> disagreements;
};

/// x_1 = seed, x_{k+1} = diagonal_extend(store, [x_1..x_k]); the witness for
/// alpha < beta is fn = alpha, and x_alpha differs from all later points at
/// position 2*alpha. Requires count >= 1.
Chain build_chain(PointStore& store, std::size_t count, PointId seed);

struct ChainReport {
    struct PairResult {
        std::size_t alpha = 0, beta = 0;
        std::uint32_t fn = 0;
        bool witness_found = false;
        bool pass = false;
        std::uint64_t fail_bit = 0;  // first disagreeing output bit when !pass
    };
    struct DistinctResult {
        std::size_t alpha = 0, beta = 0;
        std::uint64_t index = 0;
        bool distinct = false;
    };
    std::vector<PairResult> pairs;
    std::vector<DistinctResult> distinct;

    bool all_pass() const;
};

/// Re-checks every ordered pair alpha < beta against its recorded witness,
/// bit for bit to `depth`, and re-checks pairwise distinctness up to
/// max(depth, largest recorded disagreement index + 1).
ChainReport verify_chain(const PointStore& store, const Chain& chain, std::size_t depth);

}  // namespace sqcover::cantor
