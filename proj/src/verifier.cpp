#include "sqcover/verifier.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqcover::verifier {

std::string direction_text(Direction d) {
    switch (d) {
        case Direction::forward: return "fwd";
        case Direction::inverse: return "inv";
        case Direction::identity: return "id";
    }
    throw std::logic_error("direction_text: unreachable");
}

bool CoverReport::all_pass() const {
    return std::all_of(pairs.begin(), pairs.end(),
                       [](const PairCheck& p) { return p.pass; });
}

namespace {

/// Tracks the best near-miss so a failing pair reports how far the closest
/// candidate got before diverging.
struct CandidateScan {
    bool matched = false;
    std::uint64_t closest_miss = 0;

    bool offer(const BitString& got, const BitString& want) {
        if (got == want) {
            matched = true;
            return true;
        }
        closest_miss = std::max(closest_miss, common_prefix_length(got, want));
        return false;
    }
};

}  // namespace

CoverReport covers_tree(const std::map<std::uint64_t, BitString>& points,
                        const std::map<std::uint64_t, TreeMap>& family,
                        bool include_identity) {
    std::size_t depth = 0;
    bool depth_known = false;
    const auto note_depth = [&](std::size_t d) {
        if (!depth_known) {
            depth = d;
            depth_known = true;
        } else if (d != depth) {
            throw std::invalid_argument("covers_tree: points and maps do not share one depth");
        }
    };
    for (const auto& [label, w] : points) note_depth(w.size());
    for (const auto& [i, f] : family) note_depth(f.depth());

    CoverReport report;
    report.evidence = "exact";
    report.depth = depth;
    for (const auto& [left, x] : points) {
        for (const auto& [right, y] : points) {
            PairCheck check;
            check.left = left;
            check.right = right;
            CandidateScan scan;
            if (include_identity && scan.offer(x, y)) {
                check.pass = true;
                check.dir = Direction::identity;
            }
            if (!check.pass) {
                for (const auto& [i, f] : family) {
                    if (scan.offer(f.apply(x), y)) {
                        check.pass = true;
                        check.dir = Direction::forward;
                        check.fn = i;
                        break;
                    }
                    if (scan.offer(f.apply(y), x)) {
                        check.pass = true;
                        check.dir = Direction::inverse;
                        check.fn = i;
                        break;
                    }
                }
            }
            if (!check.pass) check.fail_bit = scan.closest_miss;
            report.pairs.push_back(check);
        }
    }
    return report;
}

CoverReport covers_cantor(const cantor::PointStore& store,
                          const std::vector<cantor::PointId>& points,
                          const std::vector<std::uint32_t>& fn_indices, std::size_t depth) {
    CoverReport report;
    report.evidence = "prefix";
    report.depth = depth;

    std::vector<BitString> prefixes;
    prefixes.reserve(points.size());
    for (cantor::PointId id : points) prefixes.push_back(store.prefix(id, depth));

    // images cached per (function, point list position)
    std::map<std::pair<std::uint32_t, std::size_t>, BitString> images;
    const auto image = [&](std::uint32_t n, std::size_t pos) -> const BitString& {
        auto it = images.find({n, pos});
        if (it == images.end()) {
            it = images.emplace(std::pair{n, pos},
                                cantor::apply_block_fn(store, points[pos], n, depth))
                     .first;
        }
        return it->second;
    };

    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            PairCheck check;
            check.left = points[i];
            check.right = points[j];
            CandidateScan scan;
            if (scan.offer(prefixes[i], prefixes[j])) {
                check.pass = true;
                check.dir = Direction::identity;
            }
            if (!check.pass) {
                for (std::uint32_t n : fn_indices) {
                    if (scan.offer(image(n, i), prefixes[j])) {
                        check.pass = true;
                        check.dir = Direction::forward;
                        check.fn = n;
                        break;
                    }
                    if (scan.offer(image(n, j), prefixes[i])) {
                        check.pass = true;
                        check.dir = Direction::inverse;
                        check.fn = n;
                        break;
                    }
                }
            }
            if (!check.pass) check.fail_bit = scan.closest_miss;
            report.pairs.push_back(check);
        }
    }
    return report;
}

}  // namespace sqcover::verifier
