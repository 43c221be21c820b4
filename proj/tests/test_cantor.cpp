#include <doctest.h>

#include <stdexcept>

#include <map>
#include <vector>

#include "sqcover/bitstring.hpp"
#include "sqcover/cantor.hpp"

using namespace sqcover::cantor;
using sqcover::BitString;

namespace {

BitString bs(const char* text) { return BitString::parse(text); }

}  // namespace

TEST_CASE("partition blocks and their enumerations") {
    CHECK(block_index(0) == 0);
    CHECK(block_index(1) == 1);
    CHECK(block_index(5) == 1);
    for (std::uint64_t k = 0; k < 16; ++k) {
        CHECK(block_element(0, k) == 2 * k);
        CHECK(block_element(1, k) == 4 * k + 1);
    }

    SUBCASE("round-trip: every position lies in exactly one block") {
        for (std::uint64_t i = 0; i < 100000; ++i) {
            const std::uint32_t n = block_index(i);
            CHECK(block_element(n, position_in_block(i)) == i);
        }
    }
    SUBCASE("enumerations are strictly increasing and land in their block") {
        for (std::uint32_t n = 0; n < 12; ++n) {
            std::uint64_t prev = 0;
            for (std::uint64_t k = 0; k < 64; ++k) {
                const std::uint64_t i = block_element(n, k);
                CHECK(block_index(i) == n);
                if (k > 0) CHECK(i > prev);
                prev = i;
            }
        }
    }
    SUBCASE("positions too large for 64 bits are rejected") {
        CHECK_THROWS_AS(block_element(64, 0), std::overflow_error);
        CHECK_THROWS_AS(block_element(10, std::uint64_t{1} << 60), std::overflow_error);
    }
}

TEST_CASE("block functions read off their block") {
    const BitOracle zeros = [](std::uint64_t) { return false; };
    CHECK(apply_block_fn(0, zeros, 5) == bs("00000"));
    CHECK(apply_block_fn(7, zeros, 6) == bs("000000"));

    const BitOracle custom = [](std::uint64_t i) { return i == 1 || i == 9; };
    // function 1 reads positions 1, 5, 9
    CHECK(apply_block_fn(1, custom, 3) == bs("101"));
    // function 0 is the identity
    CHECK(apply_block_fn(0, custom, 4) == bs("0100"));
}

TEST_CASE("oracle failures propagate out of block function application") {
    const BitOracle failing = [](std::uint64_t i) -> bool {
        if (i > 4) throw std::runtime_error("bit source exhausted");
        return false;
    };
    CHECK(apply_block_fn(0, failing, 4) == BitString::zeros(4));
    CHECK_THROWS_AS(apply_block_fn(1, failing, 3), std::runtime_error);
}

TEST_CASE("continuity modulus") {
    for (std::uint64_t d = 0; d < 20; ++d) CHECK(continuity_modulus(0, d) == d);
    CHECK(continuity_modulus(1, 3) == 10);
    for (std::uint32_t n = 0; n < 10; ++n) CHECK(continuity_modulus(n, 0) == 0);
    SUBCASE("non-identity functions look past the output depth") {
        for (std::uint32_t n = 1; n <= 8; ++n) {
            for (std::uint64_t d = 1; d <= 64; ++d) {
                CHECK(continuity_modulus(n, d) > d);
            }
        }
    }
}

TEST_CASE("base point evaluation") {
    PointStore store;
    const PointId p = store.add_base(bs("101"), false);
    CHECK(store.eval(p, 0));
    CHECK(!store.eval(p, 1));
    CHECK(store.eval(p, 2));
    CHECK(!store.eval(p, 7));

    const PointId q = store.add_base(bs("0"), true);
    CHECK(store.eval(q, 100));
    CHECK_THROWS_AS(store.eval(99, 0), std::out_of_range);
}

TEST_CASE("diagonal extension of a single all-zeros point") {
    PointStore store;
    const PointId x1 = store.add_base(BitString{}, false);
    const PointId y = diagonal_extend(store, {x1});

    // the only set bit below 64 is position 2 = block_element(0, 1)
    for (std::uint64_t i = 0; i < 64; ++i) {
        CHECK(store.eval(y, i) == (i == 2));
    }
    CHECK(apply_block_fn(store, y, 1, 40) == BitString::zeros(40));

    SUBCASE("a second extension differs from the first at position 4") {
        const PointId z = diagonal_extend(store, {x1, y});
        CHECK(store.eval(z, 4) != store.eval(y, 4));
        CHECK(store.eval(z, 4));
        // and it still projects onto both earlier points
        CHECK(apply_block_fn(store, z, 1, 32) == store.prefix(x1, 32));
        CHECK(apply_block_fn(store, z, 2, 32) == store.prefix(y, 32));
    }
}

TEST_CASE("diagonal extension flips one even bit per covered point") {
    PointStore store;
    std::vector<PointId> points;
    points.push_back(store.add_base(bs("1101"), true));
    points.push_back(diagonal_extend(store, points));
    points.push_back(diagonal_extend(store, points));
    const PointId y = diagonal_extend(store, points);
    for (std::size_t n = 1; n <= points.size(); ++n) {
        const std::uint64_t bit = block_element(0, n);
        CHECK(store.eval(y, bit) != store.eval(points[n - 1], bit));
    }
}

TEST_CASE("diagonal extension rejects bad input") {
    PointStore store;
    const std::vector<PointId> empty;
    const std::vector<PointId> unknown{7};
    CHECK_THROWS_AS(diagonal_extend(store, empty), std::invalid_argument);
    CHECK_THROWS_AS(diagonal_extend(store, unknown), std::invalid_argument);
}

TEST_CASE("chain seeds must be base points") {
    PointStore store;
    CHECK_THROWS_AS(build_chain(store, 2, 0), std::invalid_argument);
    const PointId base = store.add_base(bs("1"), false);
    const PointId ext = store.add_extension({base});
    CHECK_THROWS_AS(build_chain(store, 2, ext), std::invalid_argument);
}

TEST_CASE("evaluation is deterministic and memo-independent") {
    const auto build = [](PointStore& store) {
        std::vector<PointId> points;
        points.push_back(store.add_base(bs("01"), false));
        for (int i = 0; i < 5; ++i) points.push_back(diagonal_extend(store, points));
        return points.back();
    };
    PointStore a;
    PointStore b;
    const PointId pa = build(a);
    const PointId pb = build(b);
    const BitString first = a.prefix(pa, 200);
    CHECK(first == b.prefix(pb, 200));
    a.clear_memo();
    CHECK(a.prefix(pa, 200) == first);
}

TEST_CASE("chains verify against their recorded witnesses") {
    PointStore store;
    const PointId seed = store.add_base(bs("0110"), false);

    SUBCASE("length 1 is vacuous") {
        const Chain chain = build_chain(store, 1, seed);
        const ChainReport report = verify_chain(store, chain, 16);
        CHECK(report.pairs.empty());
        CHECK(report.distinct.empty());
        CHECK(report.all_pass());
    }

    SUBCASE("length 3 at depth 32") {
        const Chain chain = build_chain(store, 3, seed);
        CHECK(chain.witnesses.size() == 3);
        const ChainReport report = verify_chain(store, chain, 32);
        CHECK(report.pairs.size() == 3);
        CHECK(report.distinct.size() == 3);
        CHECK(report.all_pass());
    }

    SUBCASE("a corrupted witness fails with an explicit bit") {
        Chain chain = build_chain(store, 4, seed);
        const ChainReport good = verify_chain(store, chain, 48);
        CHECK(good.all_pass());
        for (Chain::Witness& w : chain.witnesses) {
            if (w.alpha == 1 && w.beta == 3) w.fn = 2;  // f_2(x_3) is x_2, not x_1
        }
        const ChainReport bad = verify_chain(store, chain, 48);
        CHECK(!bad.all_pass());
        for (const auto& pair : bad.pairs) {
            if (pair.alpha == 1 && pair.beta == 3) {
                CHECK(!pair.pass);
                CHECK(pair.fail_bit < 48);
            } else {
                CHECK(pair.pass);
            }
        }
    }

    SUBCASE("a missing witness entry is reported as a failure") {
        Chain chain = build_chain(store, 3, seed);
        chain.witnesses.pop_back();
        const ChainReport report = verify_chain(store, chain, 16);
        CHECK(!report.all_pass());
    }
}

TEST_CASE("block queries agree with plain evaluation and reach past 64-bit positions") {
    PointStore store;
    const PointId p = store.add_base(bs("11010011"), false);
    for (std::uint32_t n = 0; n < 6; ++n) {
        for (std::uint64_t k = 0; k < 40; ++k) {
            CHECK(store.eval_in_block(p, n, k) == store.eval(p, block_element(n, k)));
        }
    }
    // positions beyond any prefix are the tail, even where the index itself
    // would not fit in 64 bits
    CHECK(!store.eval_in_block(p, 80, 5));
    CHECK(!store.eval_in_block(p, 63, 300));
    const PointId q = store.add_base(bs("1"), true);
    CHECK(store.eval_in_block(q, 63, 300));
}

TEST_CASE("a chain of 64 points verifies at depth 256") {
    PointStore store;
    const PointId seed = store.add_base(bs("10"), false);
    const Chain chain = build_chain(store, 64, seed);
    const ChainReport report = verify_chain(store, chain, 256);
    CHECK(report.pairs.size() == 64 * 63 / 2);
    CHECK(report.all_pass());
}

TEST_CASE("block functions are not 1-Lipschitz: certificates from the modulus") {
    for (std::uint32_t n = 1; n <= 8; ++n) {
        const std::uint64_t probe = block_element(n, 0);
        PointStore store;
        const PointId x = store.add_base(BitString::zeros(probe + 1), false);
        BitString flipped = BitString::zeros(probe);
        flipped.push_back(true);
        const PointId y = store.add_base(flipped, false);

        const auto input_distance =
            sqcover::metric_distance(store.prefix(x, probe + 1), store.prefix(y, probe + 1));
        const auto image_distance = sqcover::metric_distance(apply_block_fn(store, x, n, 1),
                                                             apply_block_fn(store, y, n, 1));
        REQUIRE(!input_distance.is_zero());
        REQUIRE(!image_distance.is_zero());
        CHECK(input_distance < image_distance);
        CHECK(continuity_modulus(n, 1) > 1);
        CHECK(input_distance.exponent() == probe + 1);
        CHECK(image_distance.exponent() == 1);
    }
}
