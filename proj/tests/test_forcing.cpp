#include <doctest.h>

#include <stdexcept>

#include <set>
#include <vector>

#include "sqcover/forcing.hpp"
#include "sqcover/verifier.hpp"

using namespace sqcover::forcing;
using sqcover::BitString;
using sqcover::TreeMap;

namespace {

BitString bs(const char* text) { return BitString::parse(text); }

Condition one_label_condition() {
    Condition p;
    p.depth = 1;
    p.fn_indices = {0};
    p.family.emplace(0, TreeMap::identity(1));
    p.labels = {5};
    p.points.emplace(5, bs("0"));
    return p;
}

bool has_violation(const std::vector<Violation>& violations, const char* clause) {
    for (const Violation& v : violations) {
        if (v.clause == clause) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("validate accepts the basic conditions") {
    CHECK(validate(Condition::trivial()).empty());
    CHECK(validate(one_label_condition()).empty());
}

TEST_CASE("validate reports each clause with a witness") {
    SUBCASE("(3) non-injective points") {
        Condition p = one_label_condition();
        p.labels.insert(9);
        p.points.emplace(9, bs("0"));
        p.coloring.emplace(make_pair_key(5, 9), 0);
        const auto violations = validate(p);
        CHECK(has_violation(violations, "3"));
    }
    SUBCASE("(1) family keys out of step with fn_indices") {
        Condition p = one_label_condition();
        p.fn_indices.insert(7);
        CHECK(has_violation(validate(p), "1"));
    }
    SUBCASE("(2) non-Lipschitz family member") {
        Condition p = one_label_condition();
        p.depth = 2;
        p.points[5] = bs("00");
        p.family.erase(0);
        p.family.emplace(0, TreeMap::from_leaves({bs("00"), bs("11"), bs("10"), bs("11")}));
        CHECK(has_violation(validate(p), "2"));
    }
    SUBCASE("(2) missing pair color") {
        Condition p = one_label_condition();
        p.labels.insert(9);
        p.points.emplace(9, bs("1"));
        CHECK(has_violation(validate(p), "2"));
    }
    SUBCASE("(2') two pairs toward one larger label share a color") {
        Condition p;
        p.depth = 2;
        p.fn_indices = {0};
        p.family.emplace(0, TreeMap::constant(2, bs("00")));
        p.labels = {1, 2, 3};
        p.points.emplace(1, bs("00"));
        p.points.emplace(2, bs("01"));
        p.points.emplace(3, bs("10"));
        p.coloring.emplace(make_pair_key(1, 3), 0);
        p.coloring.emplace(make_pair_key(2, 3), 0);
        p.coloring.emplace(make_pair_key(1, 2), 0);
        const auto violations = validate(p);
        CHECK(has_violation(violations, "2'"));
        // and (4) fails for the pair whose smaller point is not "00"
        CHECK(has_violation(violations, "4"));
    }
    SUBCASE("(4) map does not carry the larger point to the smaller") {
        Condition p = one_label_condition();
        p.labels.insert(9);
        p.points.emplace(9, bs("1"));
        p.coloring.emplace(make_pair_key(5, 9), 0);  // identity maps "1" to "1", not "0"
        CHECK(has_violation(validate(p), "4"));
    }
}

TEST_CASE("order: reflexivity, growth, and the invalid-input error") {
    const Condition p = one_label_condition();
    CHECK(leq(p, p));
    CHECK(leq(Condition::trivial(), Condition::trivial()));

    const Condition q = extend_with_index(p, 0);
    CHECK(leq(p, q));
    CHECK(!leq(q, p));  // depth grew

    Condition broken = p;
    broken.points[5] = bs("01");
    CHECK_THROWS_AS(leq(broken, q), std::invalid_argument);
}

TEST_CASE("density via a function index") {
    SUBCASE("one step from the trivial condition") {
        const Condition q = extend_with_index(Condition::trivial(), 0);
        CHECK(q.depth == 1);
        CHECK(q.fn_indices == std::set<std::uint64_t>{0});
        CHECK(q.family.at(0) == TreeMap::identity(1));
        CHECK(validate(q).empty());
        CHECK(leq(Condition::trivial(), q));
        CHECK(in_index_dense_set(q, 0));
    }
    SUBCASE("a large index forces the depth up to it") {
        const Condition q = extend_with_index(Condition::trivial(), 8);
        CHECK(q.depth == 8);
        CHECK(in_index_dense_set(q, 8));
        CHECK(validate(q).empty());
        CHECK(leq(Condition::trivial(), q));
    }
    SUBCASE("missing indices arrive as the identity") {
        const Condition q = extend_with_index(one_label_condition(), 3);
        CHECK(q.family.at(3) == TreeMap::identity(q.depth));
        CHECK(validate(q).empty());
    }
    SUBCASE("repeating the same index is idempotent on fn_indices but still deepens") {
        const Condition q1 = extend_with_index(one_label_condition(), 2);
        const Condition q2 = extend_with_index(q1, 2);
        CHECK(q1.fn_indices == q2.fn_indices);
        CHECK(q2.depth > q1.depth);
        CHECK(leq(q1, q2));
    }
}

TEST_CASE("density via a label") {
    SUBCASE("one step from the trivial condition") {
        const Condition q = extend_with_label(Condition::trivial(), 7);
        CHECK(q.depth == 1);
        CHECK(q.labels == std::set<Label>{7});
        CHECK(q.points.at(7) == bs("1"));
        CHECK(q.coloring.empty());
        CHECK(validate(q).empty());
        CHECK(leq(Condition::trivial(), q));
        CHECK(in_label_dense_set(q, 7));
    }
    SUBCASE("a second label colors the new pair with a fresh constant map") {
        const Condition q = extend_with_label(one_label_condition(), 9);
        CHECK(q.depth == 2);
        CHECK(q.labels == std::set<Label>{5, 9});
        CHECK(q.points.at(5) == bs("00"));
        CHECK(q.points.at(9) == bs("11"));
        CHECK(q.fn_indices == std::set<std::uint64_t>{0, 1});
        CHECK(q.coloring.at({5, 9}) == 1);
        // 5 < 9, so the fresh map is the constant at the point of 5
        CHECK(q.family.at(1) == TreeMap::constant(2, bs("00")));
        CHECK(q.family.at(0) == TreeMap::identity(2));
        CHECK(validate(q).empty());
        CHECK(leq(one_label_condition(), q));
    }
    SUBCASE("an existing label returns the condition unchanged") {
        const Condition p = one_label_condition();
        CHECK(extend_with_label(p, 5) == p);
    }
    SUBCASE("a label below the existing one gets the constant at its own point") {
        const Condition q = extend_with_label(one_label_condition(), 2);
        CHECK(q.points.at(2) == bs("11"));
        // 2 < 5: the map must send the point of 5 to the point of 2
        CHECK(q.family.at(q.coloring.at({2, 5})) == TreeMap::constant(2, bs("11")));
        CHECK(validate(q).empty());
    }
}

TEST_CASE("amalgamation preconditions") {
    const Condition p = one_label_condition();

    SUBCASE("a condition amalgamates with itself, root = all labels") {
        const auto check = amalgamation_preconditions(p, p);
        CHECK(check.ok());
        CHECK(check.root == p.labels);
    }
    SUBCASE("disjoint label sets with transported points pass with empty root") {
        Condition q = p;
        q.labels = {9};
        q.points.clear();
        q.points.emplace(9, bs("0"));
        const auto check = amalgamation_preconditions(p, q);
        CHECK(check.ok());
        CHECK(check.root.empty());
        CHECK(check.iso.at(5) == 9);
    }
    SUBCASE("the second tail must sit above the first label set") {
        Condition q = p;
        q.labels = {3};
        q.points.clear();
        q.points.emplace(3, bs("0"));
        const auto check = amalgamation_preconditions(p, q);
        CHECK(!check.ok());
    }
    SUBCASE("differing families are rejected") {
        Condition q = p;
        q.labels = {9};
        q.points.clear();
        q.points.emplace(9, bs("0"));
        q.family.erase(0);
        q.family.emplace(0, TreeMap::constant(1, bs("0")));
        CHECK(!amalgamation_preconditions(p, q).ok());
        try {
            amalgamate(p, q);
            FAIL("amalgamate accepted a pair with differing families");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("family members at index 0 differ") !=
                  std::string::npos);
        }
    }
}

TEST_CASE("the worked amalgamation example, field for field") {
    const Condition p = one_label_condition();
    Condition q = p;
    q.labels = {9};
    q.points.clear();
    q.points.emplace(9, bs("0"));

    const Condition r = amalgamate(p, q);
    CHECK(r.depth == 2);
    CHECK(r.labels == std::set<Label>{5, 9});
    CHECK(r.points.at(5) == bs("00"));
    CHECK(r.points.at(9) == bs("01"));
    CHECK(r.fn_indices == std::set<std::uint64_t>{0, 1});
    CHECK(r.coloring.at({5, 9}) == 1);
    CHECK(r.family.at(1) == TreeMap::constant(2, bs("00")));
    CHECK(r.family.at(0) ==
          TreeMap::from_leaves({bs("00"), bs("00"), bs("10"), bs("10")}));
    // the new color satisfies equation (4): it carries the point of 9 to the point of 5
    CHECK(r.family.at(1).apply(bs("01")) == bs("00"));

    CHECK(validate(r).empty());
    CHECK(leq(p, r));
    CHECK(leq(q, r));
}

TEST_CASE("amalgamating a condition with itself deepens it") {
    const Condition p = extend_with_label(extend_with_label(Condition::trivial(), 4), 11);
    const Condition r = amalgamate(p, p);
    CHECK(r.depth == p.depth + 1);
    CHECK(r.labels == p.labels);
    CHECK(r.fn_indices == p.fn_indices);
    CHECK(validate(r).empty());
    CHECK(leq(p, r));
}

TEST_CASE("the pair generator") {
    const PairParams params{2, 3, 1, 2};

    SUBCASE("pairs satisfy the hypotheses and are seed-deterministic") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto [p, q] = random_isomorphic_pair(params, seed);
            CHECK(validate(p).empty());
            CHECK(validate(q).empty());
            CHECK(amalgamation_preconditions(p, q).ok());
            const auto [p2, q2] = random_isomorphic_pair(params, seed);
            CHECK(p == p2);
            CHECK(q == q2);
        }
    }
    SUBCASE("tail size zero gives two equal conditions") {
        const auto [p, q] = random_isomorphic_pair({2, 2, 2, 0}, 3);
        CHECK(p == q);
    }
    SUBCASE("infeasible parameters are rejected") {
        CHECK_THROWS_AS(random_isomorphic_pair({1, 5, 2, 3}, 0), std::invalid_argument);
        CHECK_THROWS_AS(random_isomorphic_pair({2, 1, 1, 2}, 0), std::invalid_argument);
    }
}

TEST_CASE("randomized amalgamation keeps the invariants") {
    int built = 0;
    for (std::uint32_t depth = 1; depth <= 3; ++depth) {
        for (std::size_t root = 0; root <= 2; ++root) {
            for (std::size_t tail = 1; tail <= 3; ++tail) {
                const std::size_t total = root + tail;
                if (total > (std::size_t{1} << depth)) continue;
                const std::size_t indices = total >= 2 ? total - 1 : 1;
                for (std::uint64_t seed = 0; seed < 3; ++seed) {
                    const auto [p, q] =
                        random_isomorphic_pair({depth, indices + seed % 2, root, tail}, seed);
                    const Condition r = amalgamate(p, q);
                    CHECK(validate(r).empty());
                    CHECK(leq(p, r));
                    CHECK(leq(q, r));
                    ++built;
                }
            }
        }
    }
    CHECK(built > 40);
}

TEST_CASE("generic runs") {
    SUBCASE("one index, one label") {
        const GenericOutput out = generic_run(1, {42}, 0);
        CHECK(out.points.size() == 1);
        CHECK(out.points.contains(42));
        CHECK(out.schedule.size() == 2);
        CHECK(validate(to_condition(out)).empty());
    }
    SUBCASE("a mid-size run covers its points") {
        const GenericOutput out = generic_run(4, {3, 17, 200, 9001}, 1);
        CHECK(validate(to_condition(out)).empty());
        const auto report = sqcover::verifier::covers_tree(out.points, out.family, true);
        CHECK(report.pairs.size() == 16);
        CHECK(report.all_pass());
    }
    SUBCASE("same seed, same output; different seeds still valid") {
        const GenericOutput a = generic_run(3, {1, 2, 30}, 7);
        const GenericOutput b = generic_run(3, {1, 2, 30}, 7);
        CHECK(a == b);
        const GenericOutput c = generic_run(3, {1, 2, 30}, 8);
        CHECK(validate(to_condition(c)).empty());
        CHECK(sqcover::verifier::covers_tree(c.points, c.family, true).all_pass());
    }
    SUBCASE("every condition along the chain is valid and the order holds pairwise") {
        const GenericRun run = generic_run_trace(3, {3, 17, 200}, 5);
        for (const Condition& p : run.chain) CHECK(validate(p).empty());
        for (std::size_t i = 0; i < run.chain.size(); ++i) {
            for (std::size_t j = i; j < run.chain.size(); ++j) {
                CHECK(leq(run.chain[i], run.chain[j]));
            }
        }
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(generic_run(0, {1}, 0), std::invalid_argument);
        CHECK_THROWS_AS(generic_run(1, {}, 0), std::invalid_argument);
    }
}
