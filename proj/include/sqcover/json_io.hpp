#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "sqcover/cantor.hpp"
#include "sqcover/forcing.hpp"
#include "sqcover/sierpinski.hpp"
#include "sqcover/tree_map.hpp"
#include "sqcover/verifier.hpp"

namespace sqcover::jsonio {

using json = nlohmann::json;

// All emitters are deterministic (object keys serialize sorted, arrays are
// built in a fixed order), so equal values produce byte-identical text.
// Parsers throw nlohmann exceptions or std::invalid_argument on malformed
// input; semantic violations (a corrupted witness, a non-Lipschitz map) are
// left for the checkers to report.

json tree_map_to_json(const TreeMap& map);
TreeMap tree_map_from_json(const json& j);

json condition_to_json(const forcing::Condition& p);
forcing::Condition condition_from_json(const json& j);

json generic_output_to_json(const forcing::GenericOutput& out);
forcing::GenericOutput generic_output_from_json(const json& j);

/// {"points": [expr...], "witness": [[a,b,n]...], "distinctness": [[k,i]...],
///  "depth": d, "prefixes": [words]} where expr is
/// {"base": {"prefix": word, "tail": 0|1}} or {"ext": {"children": [ids]}}.
/// The chain consists of every stored point in order, so chain.points must be
/// 0..N-1.
json chain_artifact_to_json(const cantor::PointStore& store, const cantor::Chain& chain,
                            std::size_t depth, bool with_prefixes);

struct ChainArtifact {
    cantor::PointStore store;
    cantor::Chain chain;
    std::size_t depth = 0;
    std::vector<BitString> prefixes;  // empty when the artifact carries none
};
ChainArtifact chain_artifact_from_json(const json& j);

json cover_report_to_json(const verifier::CoverReport& report);
json chain_report_to_json(const cantor::ChainReport& report);

/// {"N", "fns", "covered", "pairs_checked", "witness", "uncovered",
///  "cells": {"n,alpha": [betas]}} with one cell row per function checked.
json sierpinski_to_json(const sierpinski::CoverOutcome& outcome);

}  // namespace sqcover::jsonio
