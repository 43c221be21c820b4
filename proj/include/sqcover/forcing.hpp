#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sqcover/bitstring.hpp"
#include "sqcover/tree_map.hpp"

namespace sqcover::forcing {

/// Finite stand-in for a countable ordinal, ordered as an integer.
using Label = std::uint64_t;

/// Unordered pair of distinct labels, stored with first < second.
using LabelPair = std::pair<Label, Label>;

LabelPair make_pair_key(Label a, Label b);

/// A condition of the poset: a finite approximation, at tree depth n, of a
/// countable family of 1-Lipschitz functions (family, indexed by fn_indices),
/// an injective point assignment (points, on labels), and a coloring of label
/// pairs by function indices (coloring) such that the color of {a, b} maps the
/// point of the larger label to the point of the smaller one.
struct Condition {
    std::uint32_t depth = 0;                    // n
    std::set<std::uint64_t> fn_indices;         // s
    std::set<Label> labels;                     // v
    std::map<std::uint64_t, TreeMap> family;    // F, keyed by fn_indices
    std::map<Label, BitString> points;          // gamma, keyed by labels
    std::map<LabelPair, std::uint64_t> coloring;  // rho, keyed by label pairs

    /// depth 0, one index 0 carrying the empty map, no labels.
    static Condition trivial();

    bool operator==(const Condition&) const = default;
};

struct Violation {
    std::string clause;  // "1", "2", "2'", "3", "4"
    std::string detail;
};

/// Checks each defining clause independently and reports every violation:
/// (1) key sets and value shapes, (2) family members 1-Lipschitz and coloring
/// total into fn_indices, (2') colors toward a common larger label distinct,
/// (3) points injective, (4) family[coloring{a,b}](points[b]) == points[a].
std::vector<Violation> validate(const Condition& p);

bool is_valid(const Condition& p);

/// Extension order: `stronger` refines `weaker` -- depth/index/label growth,
/// family restriction equality, point prefix equality, coloring agreement.
/// Throws std::invalid_argument when either condition is invalid.
bool leq(const Condition& weaker, const Condition& stronger);

/// Least iterate of the one-step deepening that lands in D(k) = {p : depth >= k
/// and k in fn_indices}. Every step deepens by one: existing maps extend
/// trivially, points get a 0 appended, and k joins fn_indices on the first
/// step carrying the identity map. Throws on invalid input.
Condition extend_with_index(const Condition& p, std::uint64_t k);

/// One-step extension into E(xi) = {p : xi in labels}; returns p unchanged
/// when xi is already present. The new label's point is the all-ones word;
/// each pair {xi, a} is colored by a fresh index (smallest naturals outside
/// fn_indices, assigned in increasing a) whose map is the constant at the
/// point of the smaller of xi, a. Throws on invalid input.
Condition extend_with_label(const Condition& p, Label xi);

/// Whether p belongs to the dense set D(k).
bool in_index_dense_set(const Condition& p, std::uint64_t k);
/// Whether p belongs to the dense set E(xi).
bool in_label_dense_set(const Condition& p, Label xi);

struct AmalgamationCheck {
    std::vector<std::string> failures;
    std::set<Label> root;          // a = labels(p) cap labels(q)
    std::map<Label, Label> iso;    // the order isomorphism labels(p) -> labels(q)
    bool ok() const { return failures.empty(); }
};

/// Hypotheses of the amalgamation: equal depth, indices and family; the two
/// label sets form a Delta-system whose root sits below both tails and whose
/// p-tail sits below the q-tail; and the unique order isomorphism fixes the
/// root and transports points and coloring.
AmalgamationCheck amalgamation_preconditions(const Condition& p, const Condition& q);

/// The common extension r of two conditions satisfying the hypotheses above:
/// one level deeper, labels merged, new cross pairs colored by fresh indices
/// carrying constants, p-points padded with 0, q-tail points padded with 1,
/// and each old map extended so that the copied bit appears exactly on the
/// points of larger p-tail labels it serves. Throws std::invalid_argument
/// naming the failed hypothesis when the preconditions do not hold.
Condition amalgamate(const Condition& p, const Condition& q);

struct PairParams {
    std::uint32_t depth = 1;       // n
    std::size_t index_count = 1;   // |s|
    std::size_t root_size = 0;     // |a|
    std::size_t tail_size = 1;     // |v^p \ a|
};

/// Seed-deterministic valid condition with root_size + tail_size labels; the
/// first root_size labels lie below every tail label. Throws when the
/// parameters cannot produce a valid condition (injective points need
/// root_size + tail_size <= 2^depth; the coloring needs index_count >=
/// root_size + tail_size - 1).
Condition random_condition(const PairParams& params, std::uint64_t seed);

/// A pair (p, q) satisfying amalgamation_preconditions: q is p with its tail
/// relabeled order-preservingly above max(labels(p)).
std::pair<Condition, Condition> random_isomorphic_pair(const PairParams& params,
                                                       std::uint64_t seed);

struct ScheduleStep {
    bool is_index = false;  // true: extend_with_index(value); false: extend_with_label(value)
    std::uint64_t value = 0;
    friend bool operator==(const ScheduleStep&, const ScheduleStep&) = default;
};

/// The finite-depth limit object of a generic run: the final condition's
/// family, point assignment and coloring, together with the schedule that
/// produced them.
struct GenericOutput {
    std::uint32_t depth = 0;
    std::map<std::uint64_t, TreeMap> family;
    std::map<Label, BitString> points;
    std::map<LabelPair, std::uint64_t> coloring;
    std::vector<ScheduleStep> schedule;

    bool operator==(const GenericOutput&) const = default;
};

struct GenericRun {
    GenericOutput output;
    /// The increasing chain of conditions, trivial() first, final last.
    std::vector<Condition> chain;
};

/// Repackages a generic output as a condition so that validate() can re-check
/// its invariants (family Lipschitz, points injective, equation (4), ...).
Condition to_condition(const GenericOutput& out);

/// Starting from the trivial condition, meets D(k) for every k < index_count
/// and E(xi) for every xi in labels, in a seed-determined interleaving, and
/// returns the final condition's data. Requires index_count >= 1 and labels
/// nonempty.
GenericOutput generic_run(std::size_t index_count, const std::set<Label>& labels,
                          std::uint64_t seed);

/// Same, also returning the recorded chain for order-law checks.
GenericRun generic_run_trace(std::size_t index_count, const std::set<Label>& labels,
                             std::uint64_t seed);

}  // namespace sqcover::forcing
