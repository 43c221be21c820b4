#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "sqcover/bitstring.hpp"

namespace sqcover {

namespace detail {
struct TreeMapNode;
}

/// A level-preserving self-map of the depth-n binary tree, identified with its
/// action on the 2^n leaves in lexicographic input order.
///
/// The canonical external form is the dense leaf-image table: leaves[i] is the
/// image of the i-th input word. Prefix coherence of that table -- inputs that
/// agree on their first k bits have images that agree on their first k bits --
/// is exactly 1-Lipschitzness for the metric d(x,y) = 2^-k.
///
/// Internally a map is one of four nodes:
///   dense     explicit image table (what parsing and enumeration produce)
///   identity
///   constant  every image equals one fixed word
///   extend    one level on top of a base map g: f(w + e) = g(w) + e' where
///             e' = e when w lies in a designated copy set and 0 otherwise
/// The structural forms represent the maps arising from the poset operations
/// (trivial extensions, constants, the amalgamation case split) in O(layers)
/// space; conditions routinely reach depths where a 2^n table no longer fits.
/// All forms answer the same queries and compare extensionally equal.
class TreeMap {
public:
    /// Deepest map that will materialize a dense table (2^20 leaves).
    static constexpr std::uint32_t kMaterializeCap = 20;
    /// Full enumeration of the 1-Lipschitz maps is capped here; the class has
    /// 2^(2^(n+1)-2) elements and n = 4 already exceeds 2^30.
    static constexpr std::uint32_t kEnumerationCap = 3;

    /// The depth-0 identity (the unique self-map of the singleton tree).
    TreeMap();

    static TreeMap identity(std::uint32_t depth);

    /// Every leaf image is `value`. Requires value.size() == depth.
    static TreeMap constant(std::uint32_t depth, const BitString& value);

    /// Build from an explicit leaf-image table in lexicographic input order.
    /// The table length must be a power of two 2^n with every entry of length
    /// n; anything else throws std::invalid_argument. The table does NOT have
    /// to be prefix coherent: is_lipschitz() reports that separately.
    static TreeMap from_leaves(const std::vector<BitString>& leaves);

    std::uint32_t depth() const;

    /// Image of one input word. Requires input.size() == depth().
    BitString apply(const BitString& input) const;

    /// The depth-k map w -> apply(w + anything) restricted to k bits,
    /// well defined on Lipschitz maps by prefix coherence (on non-coherent
    /// dense tables it uses the all-zeros completion). Requires k <= depth().
    TreeMap restrict_to(std::uint32_t k) const;

    /// The depth+1 map f(w + e) = apply(w) + e.
    TreeMap extend_trivially() const;

    /// The depth+1 map f(w + e) = apply(w) + e for w in copy_inputs and
    /// f(w + e) = apply(w) + 0 otherwise. Every member of copy_inputs must
    /// have length depth().
    TreeMap extend_with_copy_set(const std::set<BitString>& copy_inputs) const;

    /// 1-Lipschitz test. Dense tables are checked for prefix coherence;
    /// structural forms are Lipschitz for every choice of copy set, which the
    /// unit tests cross-validate against materialized tables.
    bool is_lipschitz() const;

    /// Materialized leaf-image table in lexicographic input order. Throws
    /// std::length_error when depth() > kMaterializeCap.
    std::vector<BitString> leaves() const;

    /// Same table with images encoded as integers (see BitString::from_code).
    std::vector<std::uint64_t> leaf_codes() const;

    /// Extensional equality: same depth and same image on every input.
    bool operator==(const TreeMap& other) const;

private:
    explicit TreeMap(std::shared_ptr<const detail::TreeMapNode> node);
    std::shared_ptr<const detail::TreeMapNode> node_;
};

/// All of the 1-Lipschitz self-maps of the depth-n tree, in lexicographic
/// order of their leaf tables, generated structurally (one child choice per
/// non-root node). Throws std::invalid_argument when n > TreeMap::kEnumerationCap.
std::vector<TreeMap> enumerate_lipschitz(std::uint32_t n);

/// log2 of |L1(n)| = 2^(2^(n+1) - 2), exact for n <= 20.
std::uint64_t lipschitz_count_log2(std::uint32_t n);

}  // namespace sqcover
