#pragma once

#include <cstdint>
#include <vector>

namespace sqcover::sierpinski {

// The classical covering of {0..N-1}^2 by countably many functions and their
// inverses, with the stand-in surjection g_beta(n) = n mod beta. Under that
// choice the pair (alpha, beta) with alpha < beta is witnessed by n = alpha,
// and the preimage cells form an Ulam matrix: rows disjoint, columns covering.

/// Value of the chosen surjection onto {0..beta-1} at n. Throws
/// std::invalid_argument when beta == 0 (no surjection has empty codomain).
std::uint64_t surjection_value(std::uint64_t beta, std::uint64_t n);

/// The n-th covering function: family_fn(n, 0) = 0 and
/// family_fn(n, beta) = surjection_value(beta, n) for beta >= 1.
std::uint64_t family_fn(std::uint64_t n, std::uint64_t beta);

struct CoverOutcome {
    std::uint64_t side = 0;      // N
    std::uint64_t fn_count = 0;
    bool covered = false;
    std::uint64_t pairs_checked = 0;  // all N^2 ordered pairs

    struct Witness {
        std::uint64_t alpha = 0, beta = 0, fn = 0;
        friend bool operator==(const Witness&, const Witness&) = default;
    };
    /// One entry per ordered pair with alpha != beta; diagonal pairs are
    /// covered by the identity and carry no entry.
    std::vector<Witness> witnesses;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> uncovered;
};

/// Checks that {identity} + {f_n : n < fn_count} + inverses covers the square
/// of {0..N-1}: for each ordered pair a deterministic ascending scan finds the
/// least n with f_n(max) = min. Requires side >= 1.
CoverOutcome cover_check(std::uint64_t side, std::uint64_t fn_count);

/// The Ulam cell {beta in 1..N-1 : family_fn(n, beta) == alpha}.
std::vector<std::uint64_t> ulam_cell(std::uint64_t n, std::uint64_t alpha, std::uint64_t side);

}  // namespace sqcover::sierpinski
