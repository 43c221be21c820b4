#include "sqcover/sierpinski.hpp"

#include <stdexcept>

namespace sqcover::sierpinski {

std::uint64_t surjection_value(std::uint64_t beta, std::uint64_t n) {
    if (beta == 0) {
        throw std::invalid_argument("surjection_value: beta must be positive");
    }
    return n % beta;
}

std::uint64_t family_fn(std::uint64_t n, std::uint64_t beta) {
    if (beta == 0) return 0;
    return surjection_value(beta, n);
}

CoverOutcome cover_check(std::uint64_t side, std::uint64_t fn_count) {
    if (side == 0) {
        throw std::invalid_argument("cover_check: side must be at least 1");
    }
    CoverOutcome out;
    out.side = side;
    out.fn_count = fn_count;
    out.pairs_checked = side * side;
    out.covered = true;

    for (std::uint64_t lo = 0; lo < side; ++lo) {
        for (std::uint64_t hi = lo + 1; hi < side; ++hi) {
            bool found = false;
            for (std::uint64_t n = 0; n < fn_count; ++n) {
                if (family_fn(n, hi) == lo) {
                    out.witnesses.push_back({lo, hi, n});
                    out.witnesses.push_back({hi, lo, n});
                    found = true;
                    break;
                }
            }
            if (!found) {
                out.covered = false;
                out.uncovered.emplace_back(lo, hi);
                out.uncovered.emplace_back(hi, lo);
            }
        }
    }
    return out;
}

std::vector<std::uint64_t> ulam_cell(std::uint64_t n, std::uint64_t alpha, std::uint64_t side) {
    std::vector<std::uint64_t> cell;
    for (std::uint64_t beta = 1; beta < side; ++beta) {
        if (family_fn(n, beta) == alpha) cell.push_back(beta);
    }
    return cell;
}

}  // namespace sqcover::sierpinski
