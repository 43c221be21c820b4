#include "sqcover/forcing.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "sqcover/rng.hpp"

namespace sqcover::forcing {

LabelPair make_pair_key(Label a, Label b) {
    if (a == b) {
        throw std::invalid_argument("make_pair_key: labels must be distinct");
    }
    return a < b ? LabelPair{a, b} : LabelPair{b, a};
}

Condition Condition::trivial() {
    Condition p;
    p.fn_indices = {0};
    p.family.emplace(0, TreeMap::identity(0));
    return p;
}

namespace {

template <typename K, typename V>
std::set<K> key_set(const std::map<K, V>& m) {
    std::set<K> keys;
    for (const auto& [k, v] : m) keys.insert(k);
    return keys;
}

std::string pair_text(const LabelPair& key) {
    std::ostringstream os;
    os << "{" << key.first << "," << key.second << "}";
    return os.str();
}

}  // namespace

std::vector<Violation> validate(const Condition& p) {
    std::vector<Violation> out;
    const auto report = [&out](const char* clause, std::string detail) {
        out.push_back({clause, std::move(detail)});
    };

    // (1) key sets line up with the carrier sets
    if (key_set(p.family) != p.fn_indices) {
        report("1", "family is not keyed exactly by fn_indices");
    }
    if (key_set(p.points) != p.labels) {
        report("1", "points are not keyed exactly by labels");
    }

    // (2) family members are depth-n Lipschitz maps; coloring is total into fn_indices
    for (const auto& [i, f] : p.family) {
        if (f.depth() != p.depth) {
            report("2", "family[" + std::to_string(i) + "] has wrong depth");
        } else if (!f.is_lipschitz()) {
            report("2", "family[" + std::to_string(i) + "] is not 1-Lipschitz");
        }
    }
    std::set<LabelPair> expected_pairs;
    for (auto a = p.labels.begin(); a != p.labels.end(); ++a) {
        for (auto b = std::next(a); b != p.labels.end(); ++b) {
            expected_pairs.insert({*a, *b});
        }
    }
    if (key_set(p.coloring) != expected_pairs) {
        report("2", "coloring is not total on the label pairs");
    }
    for (const auto& [key, i] : p.coloring) {
        if (!p.fn_indices.contains(i)) {
            report("2", "coloring" + pair_text(key) + " is not an fn index");
        }
    }

    // (2') colors toward a common larger label are pairwise distinct
    for (auto b = p.labels.begin(); b != p.labels.end(); ++b) {
        std::map<std::uint64_t, Label> seen;
        for (auto a = p.labels.begin(); a != b; ++a) {
            const auto it = p.coloring.find({*a, *b});
            if (it == p.coloring.end()) continue;
            auto [prev, fresh] = seen.emplace(it->second, *a);
            if (!fresh) {
                report("2'", "pairs " + pair_text({prev->second, *b}) + " and " +
                                 pair_text({*a, *b}) + " share color " +
                                 std::to_string(it->second));
            }
        }
    }

    // (3) points are length-n words, pairwise distinct
    std::map<BitString, Label> images;
    for (const auto& [a, w] : p.points) {
        if (w.size() != p.depth) {
            report("3", "point of label " + std::to_string(a) + " has wrong length");
            continue;
        }
        auto [prev, fresh] = images.emplace(w, a);
        if (!fresh) {
            report("3", "labels " + std::to_string(prev->second) + " and " +
                            std::to_string(a) + " share one point");
        }
    }

    // (4) the colored map carries the larger label's point to the smaller one's
    for (const auto& [key, i] : p.coloring) {
        const auto fa = p.points.find(key.first);
        const auto fb = p.points.find(key.second);
        const auto ff = p.family.find(i);
        if (fa == p.points.end() || fb == p.points.end() || ff == p.family.end()) continue;
        if (fa->second.size() != p.depth || fb->second.size() != p.depth ||
            ff->second.depth() != p.depth) {
            continue;  // already reported under (2)/(3)
        }
        if (ff->second.apply(fb->second) != fa->second) {
            report("4", "family[" + std::to_string(i) + "] does not map the point of " +
                            std::to_string(key.second) + " to the point of " +
                            std::to_string(key.first));
        }
    }
    return out;
}

bool is_valid(const Condition& p) { return validate(p).empty(); }

namespace {

void require_valid(const Condition& p, const char* who) {
    const auto violations = validate(p);
    if (!violations.empty()) {
        throw std::invalid_argument(std::string(who) + ": condition violates clause (" +
                                    violations.front().clause + "): " +
                                    violations.front().detail);
    }
}

}  // namespace

bool leq(const Condition& weaker, const Condition& stronger) {
    require_valid(weaker, "leq");
    require_valid(stronger, "leq");
    // (5) growth of depth, indices, labels
    if (weaker.depth > stronger.depth) return false;
    if (!std::includes(stronger.fn_indices.begin(), stronger.fn_indices.end(),
                       weaker.fn_indices.begin(), weaker.fn_indices.end())) {
        return false;
    }
    if (!std::includes(stronger.labels.begin(), stronger.labels.end(), weaker.labels.begin(),
                       weaker.labels.end())) {
        return false;
    }
    // (6) each old map is the restriction of the new one
    for (const auto& [i, f] : weaker.family) {
        if (!(stronger.family.at(i).restrict_to(weaker.depth) == f)) return false;
    }
    // (7) old points are prefixes of new points
    for (const auto& [a, w] : weaker.points) {
        if (stronger.points.at(a).prefix(weaker.depth) != w) return false;
    }
    // (8) coloring agreement on old pairs
    for (const auto& [key, i] : weaker.coloring) {
        if (stronger.coloring.at(key) != i) return false;
    }
    return true;
}

namespace {

/// One deepening step of the density argument: everything grows one level,
/// and optionally one index joins fn_indices carrying the identity map.
Condition deepen_once(const Condition& p, std::optional<std::uint64_t> add_index) {
    Condition q;
    q.depth = p.depth + 1;
    q.fn_indices = p.fn_indices;
    q.labels = p.labels;
    for (const auto& [i, f] : p.family) q.family.emplace(i, f.extend_trivially());
    if (add_index && !q.fn_indices.contains(*add_index)) {
        q.fn_indices.insert(*add_index);
        q.family.emplace(*add_index, TreeMap::identity(q.depth));
    }
    for (const auto& [a, w] : p.points) q.points.emplace(a, w.appended(false));
    q.coloring = p.coloring;
    return q;
}

std::vector<std::uint64_t> fresh_indices(const std::set<std::uint64_t>& used, std::size_t count) {
    std::vector<std::uint64_t> fresh;
    for (std::uint64_t candidate = 0; fresh.size() < count; ++candidate) {
        if (!used.contains(candidate)) fresh.push_back(candidate);
    }
    return fresh;
}

}  // namespace

Condition extend_with_index(const Condition& p, std::uint64_t k) {
    require_valid(p, "extend_with_index");
    Condition q = deepen_once(p, k);
    while (q.depth < k) q = deepen_once(q, k);
    return q;
}

Condition extend_with_label(const Condition& p, Label xi) {
    require_valid(p, "extend_with_label");
    if (p.labels.contains(xi)) return p;

    Condition q;
    q.depth = p.depth + 1;
    q.fn_indices = p.fn_indices;
    q.labels = p.labels;
    q.labels.insert(xi);
    for (const auto& [i, f] : p.family) q.family.emplace(i, f.extend_trivially());
    for (const auto& [a, w] : p.points) q.points.emplace(a, w.appended(false));
    q.points.emplace(xi, BitString::ones(q.depth));
    q.coloring = p.coloring;

    const std::vector<std::uint64_t> fresh = fresh_indices(p.fn_indices, p.labels.size());
    std::size_t next = 0;
    for (Label a : p.labels) {
        const std::uint64_t i = fresh[next++];
        q.fn_indices.insert(i);
        q.coloring.emplace(make_pair_key(xi, a), i);
        const Label smaller = std::min(xi, a);
        q.family.emplace(i, TreeMap::constant(q.depth, q.points.at(smaller)));
    }
    return q;
}

bool in_index_dense_set(const Condition& p, std::uint64_t k) {
    return p.depth >= k && p.fn_indices.contains(k);
}

bool in_label_dense_set(const Condition& p, Label xi) { return p.labels.contains(xi); }

AmalgamationCheck amalgamation_preconditions(const Condition& p, const Condition& q) {
    AmalgamationCheck check;
    const auto fail = [&check](std::string what) { check.failures.push_back(std::move(what)); };

    if (!is_valid(p)) fail("first condition is invalid");
    if (!is_valid(q)) fail("second condition is invalid");
    if (!check.ok()) return check;

    if (p.depth != q.depth) fail("depths differ");
    if (p.fn_indices != q.fn_indices) fail("fn index sets differ");
    if (p.fn_indices == q.fn_indices) {
        for (const auto& [i, f] : p.family) {
            if (!(q.family.at(i) == f)) {
                fail("family members at index " + std::to_string(i) + " differ");
            }
        }
    }

    std::set_intersection(p.labels.begin(), p.labels.end(), q.labels.begin(), q.labels.end(),
                          std::inserter(check.root, check.root.begin()));
    std::vector<Label> tail_p, tail_q;
    std::set_difference(p.labels.begin(), p.labels.end(), check.root.begin(), check.root.end(),
                        std::back_inserter(tail_p));
    std::set_difference(q.labels.begin(), q.labels.end(), check.root.begin(), check.root.end(),
                        std::back_inserter(tail_q));

    if (!check.root.empty() && !tail_p.empty() && *check.root.rbegin() >= tail_p.front()) {
        fail("root does not sit below the first tail");
    }
    if (!p.labels.empty() && !tail_q.empty() && *p.labels.rbegin() >= tail_q.front()) {
        fail("first label set does not sit below the second tail");
    }

    if (p.labels.size() != q.labels.size()) {
        fail("label sets have different sizes, no order isomorphism");
        return check;
    }
    auto itp = p.labels.begin();
    auto itq = q.labels.begin();
    for (; itp != p.labels.end(); ++itp, ++itq) check.iso.emplace(*itp, *itq);
    for (Label a : check.root) {
        if (check.iso.at(a) != a) {
            fail("order isomorphism moves root label " + std::to_string(a));
        }
    }
    for (const auto& [a, b] : check.iso) {
        if (p.points.at(a) != q.points.at(b)) {
            fail("points of " + std::to_string(a) + " and " + std::to_string(b) + " differ");
        }
    }
    for (const auto& [key, i] : p.coloring) {
        const LabelPair mapped = make_pair_key(check.iso.at(key.first), check.iso.at(key.second));
        if (q.coloring.at(mapped) != i) {
            fail("coloring transport fails at " + pair_text(key));
        }
    }
    return check;
}

Condition amalgamate(const Condition& p, const Condition& q) {
    const AmalgamationCheck check = amalgamation_preconditions(p, q);
    if (!check.ok()) {
        std::string what = "amalgamate: hypothesis failed:";
        for (const std::string& f : check.failures) what += " " + f + ";";
        throw std::invalid_argument(what);
    }

    std::vector<Label> tail_p, tail_q;
    std::set_difference(p.labels.begin(), p.labels.end(), check.root.begin(), check.root.end(),
                        std::back_inserter(tail_p));
    std::set_difference(q.labels.begin(), q.labels.end(), check.root.begin(), check.root.end(),
                        std::back_inserter(tail_q));

    Condition r;
    r.depth = p.depth + 1;
    r.fn_indices = p.fn_indices;
    r.labels = p.labels;
    r.labels.insert(q.labels.begin(), q.labels.end());

    for (const auto& [a, w] : p.points) r.points.emplace(a, w.appended(false));
    for (Label b : tail_q) r.points.emplace(b, q.points.at(b).appended(true));

    r.coloring = p.coloring;
    for (const auto& [key, i] : q.coloring) r.coloring.emplace(key, i);

    // cross pairs in lexicographic (alpha, beta) order get the smallest fresh indices
    const std::vector<std::uint64_t> fresh =
        fresh_indices(p.fn_indices, tail_p.size() * tail_q.size());
    std::size_t next = 0;
    std::map<std::uint64_t, Label> constant_source;
    for (Label a : tail_p) {
        for (Label b : tail_q) {
            const std::uint64_t i = fresh[next++];
            r.fn_indices.insert(i);
            r.coloring.emplace(make_pair_key(a, b), i);
            constant_source.emplace(i, a);
        }
    }
    for (const auto& [i, a] : constant_source) {
        r.family.emplace(i, TreeMap::constant(r.depth, r.points.at(a)));
    }

    // an old map copies the appended bit exactly on the points of the larger
    // labels of the first tail's pairs it colors
    std::map<std::uint64_t, std::set<BitString>> copy_sets;
    for (std::size_t x = 0; x < tail_p.size(); ++x) {
        for (std::size_t y = x + 1; y < tail_p.size(); ++y) {
            const std::uint64_t i = p.coloring.at(make_pair_key(tail_p[x], tail_p[y]));
            copy_sets[i].insert(p.points.at(tail_p[y]));
        }
    }
    for (const auto& [i, f] : p.family) {
        const auto it = copy_sets.find(i);
        r.family.emplace(
            i, f.extend_with_copy_set(it == copy_sets.end() ? std::set<BitString>{} : it->second));
    }
    return r;
}

Condition random_condition(const PairParams& params, std::uint64_t seed) {
    const std::size_t total = params.root_size + params.tail_size;
    if (params.depth > 16) {
        throw std::invalid_argument("random_condition: depth above generator cap 16");
    }
    const std::uint64_t space = std::uint64_t{1} << params.depth;
    if (total > space) {
        throw std::invalid_argument("random_condition: too many labels for injective points");
    }
    if (total >= 2 && params.index_count < total - 1) {
        throw std::invalid_argument("random_condition: not enough fn indices for the coloring");
    }

    SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);

    const auto sample_distinct = [&rng](std::uint64_t lo, std::uint64_t hi, std::size_t count) {
        std::set<std::uint64_t> seen;
        std::vector<std::uint64_t> out;
        while (out.size() < count) {
            const std::uint64_t x = lo + rng.below(hi - lo);
            if (seen.insert(x).second) out.push_back(x);
        }
        return out;
    };

    Condition p;
    p.depth = params.depth;

    std::vector<Label> labels;
    for (std::uint64_t a : sample_distinct(0, 100, params.root_size)) labels.push_back(a);
    for (std::uint64_t a : sample_distinct(100, 200, params.tail_size)) labels.push_back(a);
    std::sort(labels.begin(), labels.end());
    p.labels.insert(labels.begin(), labels.end());

    std::set<std::uint64_t> point_codes;
    std::vector<BitString> words;
    while (words.size() < total) {
        const std::uint64_t code = rng.below(space);
        if (point_codes.insert(code).second) {
            words.push_back(BitString::from_code(code, params.depth));
        }
    }
    for (std::size_t i = 0; i < total; ++i) p.points.emplace(labels[i], words[i]);

    std::vector<std::uint64_t> indices =
        sample_distinct(0, 8 * std::max<std::uint64_t>(params.index_count, 1) + 8,
                        params.index_count);
    p.fn_indices.insert(indices.begin(), indices.end());
    rng.shuffle(indices);

    // label i (all but the largest) colors every pair it is the smaller of,
    // and its map is the constant at its own point
    for (std::size_t i = 0; i + 1 < total; ++i) {
        for (std::size_t j = i + 1; j < total; ++j) {
            p.coloring.emplace(make_pair_key(labels[i], labels[j]), indices[i]);
        }
        p.family.emplace(indices[i], TreeMap::constant(params.depth, p.points.at(labels[i])));
    }

    // the remaining indices carry seed-determined Lipschitz maps: one child
    // choice per non-root node
    for (std::size_t i = (total >= 2 ? total - 1 : 0); i < indices.size(); ++i) {
        std::vector<std::vector<std::uint8_t>> choice(params.depth + 1);
        for (std::uint32_t k = 1; k <= params.depth; ++k) {
            choice[k].resize(std::size_t{1} << k);
            for (auto& bit : choice[k]) bit = static_cast<std::uint8_t>(rng.below(2));
        }
        std::vector<BitString> leaves;
        leaves.reserve(space);
        for (std::uint64_t x = 0; x < space; ++x) {
            std::uint64_t image = 0;
            for (std::uint32_t k = 1; k <= params.depth; ++k) {
                image = (image << 1) | choice[k][x >> (params.depth - k)];
            }
            leaves.push_back(BitString::from_code(image, params.depth));
        }
        p.family.emplace(indices[i], TreeMap::from_leaves(leaves));
    }
    return p;
}

std::pair<Condition, Condition> random_isomorphic_pair(const PairParams& params,
                                                       std::uint64_t seed) {
    const Condition p = random_condition(params, seed);

    SplitMix64 rng(seed * 0xbf58476d1ce4e5b9ULL + 2);
    std::set<std::uint64_t> fresh;
    while (fresh.size() < params.tail_size) fresh.insert(200 + rng.below(100));

    std::vector<Label> sorted_p(p.labels.begin(), p.labels.end());
    std::vector<Label> sorted_q(sorted_p.begin(), sorted_p.begin() + params.root_size);
    sorted_q.insert(sorted_q.end(), fresh.begin(), fresh.end());

    std::map<Label, Label> iso;
    for (std::size_t i = 0; i < sorted_p.size(); ++i) iso.emplace(sorted_p[i], sorted_q[i]);

    Condition q;
    q.depth = p.depth;
    q.fn_indices = p.fn_indices;
    q.family = p.family;
    q.labels.insert(sorted_q.begin(), sorted_q.end());
    for (const auto& [a, w] : p.points) q.points.emplace(iso.at(a), w);
    for (const auto& [key, i] : p.coloring) {
        q.coloring.emplace(make_pair_key(iso.at(key.first), iso.at(key.second)), i);
    }
    return {p, q};
}

GenericRun generic_run_trace(std::size_t index_count, const std::set<Label>& labels,
                             std::uint64_t seed) {
    if (index_count == 0) {
        throw std::invalid_argument("generic_run: index_count must be at least 1");
    }
    if (labels.empty()) {
        throw std::invalid_argument("generic_run: labels must be nonempty");
    }

    std::vector<ScheduleStep> schedule;
    for (std::uint64_t k = 0; k < index_count; ++k) schedule.push_back({true, k});
    for (Label xi : labels) schedule.push_back({false, xi});
    SplitMix64 rng(seed);
    rng.shuffle(schedule);

    GenericRun run;
    run.chain.push_back(Condition::trivial());
    for (const ScheduleStep& step : schedule) {
        const Condition& last = run.chain.back();
        run.chain.push_back(step.is_index ? extend_with_index(last, step.value)
                                          : extend_with_label(last, step.value));
    }

    const Condition& final = run.chain.back();
    run.output.depth = final.depth;
    run.output.family = final.family;
    run.output.points = final.points;
    run.output.coloring = final.coloring;
    run.output.schedule = std::move(schedule);
    return run;
}

GenericOutput generic_run(std::size_t index_count, const std::set<Label>& labels,
                          std::uint64_t seed) {
    return generic_run_trace(index_count, labels, seed).output;
}

Condition to_condition(const GenericOutput& out) {
    Condition p;
    p.depth = out.depth;
    p.family = out.family;
    p.points = out.points;
    p.coloring = out.coloring;
    p.fn_indices = key_set(out.family);
    p.labels = key_set(out.points);
    return p;
}

}  // namespace sqcover::forcing
