#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sqcover/bitstring.hpp"
#include "sqcover/cantor.hpp"
#include "sqcover/tree_map.hpp"

namespace sqcover::verifier {

enum class Direction { forward, inverse, identity };

std::string direction_text(Direction d);

/// Result of the covering check for one ordered pair (left, right): a witness
/// f with right = f(left) (forward), left = f(right) (inverse), or the
/// identity -- or, when every candidate misses, the bit index at which the
/// closest candidate diverged (0 when there were no candidates at all).
struct PairCheck {
    std::uint64_t left = 0;
    std::uint64_t right = 0;
    bool pass = false;
    Direction dir = Direction::identity;
    std::uint64_t fn = 0;  // meaningful when pass and dir != identity
    std::uint64_t fail_bit = 0;
};

struct CoverReport {
    std::vector<PairCheck> pairs;
    /// "exact" when equalities hold at the full length of finite words,
    /// "prefix" when they are prefix-level evidence at a chosen depth.
    std::string evidence;
    std::size_t depth = 0;

    bool all_pass() const;
};

/// Covering check for a finite-depth family: for every ordered pair of point
/// values, searches identity first (when enabled), then ascending function
/// index, forward before inverse. All points and maps must share one depth;
/// a mismatch throws std::invalid_argument. Equality is exact at full depth.
CoverReport covers_tree(const std::map<std::uint64_t, BitString>& points,
                        const std::map<std::uint64_t, TreeMap>& family,
                        bool include_identity);

/// Covering check against the Cantor-space block family, comparing
/// length-`depth` prefixes. The identity (function 0) is always a candidate;
/// further candidates come from fn_indices in the given order. Pairs are
/// reported by the point ids in the given list, one entry per ordered pair
/// of list positions. Passes are prefix-level evidence.
CoverReport covers_cantor(const cantor::PointStore& store,
                          const std::vector<cantor::PointId>& points,
                          const std::vector<std::uint32_t>& fn_indices, std::size_t depth);

}  // namespace sqcover::verifier
