#include "sqcover/json_io.hpp"

#include <stdexcept>
#include <string>

namespace sqcover::jsonio {

namespace {

std::uint64_t key_to_int(const std::string& key) {
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(key, &used);
    if (used != key.size()) {
        throw std::invalid_argument("object key is not a decimal integer: " + key);
    }
    return value;
}

BitString word_from_json(const json& j) { return BitString::parse(j.get<std::string>()); }

const json& require_array(const json& j, const char* field) {
    const json& value = j.at(field);
    if (!value.is_array()) {
        throw std::invalid_argument(std::string(field) + " is not an array");
    }
    return value;
}

}  // namespace

json tree_map_to_json(const TreeMap& map) {
    json leaves = json::array();
    for (const BitString& leaf : map.leaves()) leaves.push_back(leaf.to_string());
    return json{{"depth", map.depth()}, {"leaves", std::move(leaves)}};
}

TreeMap tree_map_from_json(const json& j) {
    const auto depth = j.at("depth").get<std::uint32_t>();
    std::vector<BitString> leaves;
    for (const json& leaf : require_array(j, "leaves")) leaves.push_back(word_from_json(leaf));
    TreeMap map = TreeMap::from_leaves(leaves);
    if (map.depth() != depth) {
        throw std::invalid_argument("tree map depth does not match its leaf table");
    }
    return map;
}

json condition_to_json(const forcing::Condition& p) {
    json family = json::object();
    for (const auto& [i, f] : p.family) family[std::to_string(i)] = tree_map_to_json(f);
    json points = json::object();
    for (const auto& [a, w] : p.points) points[std::to_string(a)] = w.to_string();
    json coloring = json::array();
    for (const auto& [key, i] : p.coloring) {
        coloring.push_back(json::array({key.first, key.second, i}));
    }
    return json{{"n", p.depth},
                {"s", p.fn_indices},
                {"v", p.labels},
                {"F", std::move(family)},
                {"gamma", std::move(points)},
                {"rho", std::move(coloring)}};
}

forcing::Condition condition_from_json(const json& j) {
    forcing::Condition p;
    p.depth = j.at("n").get<std::uint32_t>();
    for (const json& i : require_array(j, "s")) p.fn_indices.insert(i.get<std::uint64_t>());
    for (const json& a : require_array(j, "v")) p.labels.insert(a.get<std::uint64_t>());
    for (const auto& [key, value] : j.at("F").items()) {
        p.family.emplace(key_to_int(key), tree_map_from_json(value));
    }
    for (const auto& [key, value] : j.at("gamma").items()) {
        p.points.emplace(key_to_int(key), word_from_json(value));
    }
    for (const json& triple : require_array(j, "rho")) {
        if (!triple.is_array() || triple.size() != 3) {
            throw std::invalid_argument("rho entry is not a triple");
        }
        const auto a = triple[0].get<std::uint64_t>();
        const auto b = triple[1].get<std::uint64_t>();
        if (a >= b) {
            throw std::invalid_argument("rho entry is not ordered");
        }
        p.coloring.emplace(forcing::LabelPair{a, b}, triple[2].get<std::uint64_t>());
    }
    return p;
}

json generic_output_to_json(const forcing::GenericOutput& out) {
    json family = json::object();
    for (const auto& [i, f] : out.family) family[std::to_string(i)] = tree_map_to_json(f);
    json points = json::object();
    for (const auto& [a, w] : out.points) points[std::to_string(a)] = w.to_string();
    json coloring = json::array();
    for (const auto& [key, i] : out.coloring) {
        coloring.push_back(json::array({key.first, key.second, i}));
    }
    json schedule = json::array();
    for (const forcing::ScheduleStep& step : out.schedule) {
        schedule.push_back(json::array({step.is_index ? "index" : "label", step.value}));
    }
    return json{{"depth", out.depth},
                {"family", std::move(family)},
                {"gamma", std::move(points)},
                {"rho", std::move(coloring)},
                {"schedule", std::move(schedule)}};
}

forcing::GenericOutput generic_output_from_json(const json& j) {
    forcing::GenericOutput out;
    out.depth = j.at("depth").get<std::uint32_t>();
    for (const auto& [key, value] : j.at("family").items()) {
        out.family.emplace(key_to_int(key), tree_map_from_json(value));
    }
    for (const auto& [key, value] : j.at("gamma").items()) {
        out.points.emplace(key_to_int(key), word_from_json(value));
    }
    for (const json& triple : require_array(j, "rho")) {
        if (!triple.is_array() || triple.size() != 3) {
            throw std::invalid_argument("rho entry is not a triple");
        }
        const auto a = triple[0].get<std::uint64_t>();
        const auto b = triple[1].get<std::uint64_t>();
        if (a >= b) {
            throw std::invalid_argument("rho entry is not ordered");
        }
        out.coloring.emplace(forcing::LabelPair{a, b}, triple[2].get<std::uint64_t>());
    }
    for (const json& step : require_array(j, "schedule")) {
        if (!step.is_array() || step.size() != 2) {
            throw std::invalid_argument("schedule entry is not a pair");
        }
        const std::string kind = step[0].get<std::string>();
        if (kind != "index" && kind != "label") {
            throw std::invalid_argument("schedule entry kind is unknown: " + kind);
        }
        out.schedule.push_back({kind == "index", step[1].get<std::uint64_t>()});
    }
    return out;
}

json chain_artifact_to_json(const cantor::PointStore& store, const cantor::Chain& chain,
                            std::size_t depth, bool with_prefixes) {
    if (chain.points.size() != store.size()) {
        throw std::logic_error("chain_artifact_to_json: store holds points outside the chain");
    }
    for (std::size_t k = 0; k < chain.points.size(); ++k) {
        if (chain.points[k] != k) {
            throw std::logic_error("chain_artifact_to_json: chain points are not the store order");
        }
    }
    json points = json::array();
    for (const cantor::PointExpr& expr : store.expressions()) {
        if (const auto* base = std::get_if<cantor::BasePoint>(&expr)) {
            points.push_back(json{{"base", json{{"prefix", base->prefix.to_string()},
                                                {"tail", base->tail ? 1 : 0}}}});
        } else {
            const auto& ext = std::get<cantor::ExtensionPoint>(expr);
            points.push_back(json{{"ext", json{{"children", ext.children}}}});
        }
    }
    json witness = json::array();
    for (const cantor::Chain::Witness& w : chain.witnesses) {
        witness.push_back(json::array({w.alpha, w.beta, w.fn}));
    }
    json distinctness = json::array();
    for (const cantor::Chain::Disagreement& d : chain.disagreements) {
        distinctness.push_back(json::array({d.point, d.index}));
    }
    json out{{"points", std::move(points)},
             {"witness", std::move(witness)},
             {"distinctness", std::move(distinctness)},
             {"depth", depth}};
    if (with_prefixes) {
        json prefixes = json::array();
        for (cantor::PointId id : chain.points) {
            prefixes.push_back(store.prefix(id, depth).to_string());
        }
        out["prefixes"] = std::move(prefixes);
    }
    return out;
}

ChainArtifact chain_artifact_from_json(const json& j) {
    ChainArtifact artifact;
    artifact.depth = j.at("depth").get<std::size_t>();
    for (const json& expr : require_array(j, "points")) {
        if (expr.contains("base")) {
            const json& base = expr.at("base");
            const int tail = base.at("tail").get<int>();
            if (tail != 0 && tail != 1) {
                throw std::invalid_argument("base point tail is not a bit");
            }
            artifact.store.add_base(word_from_json(base.at("prefix")), tail == 1);
        } else if (expr.contains("ext")) {
            artifact.store.add_extension(
                expr.at("ext").at("children").get<std::vector<cantor::PointId>>());
        } else {
            throw std::invalid_argument("point expression is neither base nor ext");
        }
    }
    for (std::size_t k = 0; k < artifact.store.size(); ++k) artifact.chain.points.push_back(k);
    for (const json& triple : require_array(j, "witness")) {
        if (!triple.is_array() || triple.size() != 3) {
            throw std::invalid_argument("witness entry is not a triple");
        }
        artifact.chain.witnesses.push_back({triple[0].get<std::size_t>(),
                                            triple[1].get<std::size_t>(),
                                            triple[2].get<std::uint32_t>()});
    }
    for (const json& pair : require_array(j, "distinctness")) {
        if (!pair.is_array() || pair.size() != 2) {
            throw std::invalid_argument("distinctness entry is not a pair");
        }
        artifact.chain.disagreements.push_back(
            {pair[0].get<std::size_t>(), pair[1].get<std::uint64_t>()});
    }
    if (j.contains("prefixes")) {
        for (const json& w : require_array(j, "prefixes")) artifact.prefixes.push_back(word_from_json(w));
    }
    return artifact;
}

json cover_report_to_json(const verifier::CoverReport& report) {
    json pairs = json::array();
    for (const verifier::PairCheck& check : report.pairs) {
        json witness;
        if (check.pass) {
            witness = json{{"dir", verifier::direction_text(check.dir)}};
            if (check.dir != verifier::Direction::identity) witness["index"] = check.fn;
        } else {
            witness = json{{"fail_bit", check.fail_bit}};
        }
        pairs.push_back(json{{"left", check.left},
                             {"right", check.right},
                             {"status", check.pass ? "pass" : "fail"},
                             {"witness", std::move(witness)}});
    }
    return json{{"pairs", std::move(pairs)},
                {"evidence", report.evidence},
                {"depth", report.depth}};
}

json chain_report_to_json(const cantor::ChainReport& report) {
    json pairs = json::array();
    for (const cantor::ChainReport::PairResult& r : report.pairs) {
        json witness;
        if (r.pass) {
            witness = json{{"dir", "inv"}, {"index", r.fn}};
        } else if (r.witness_found) {
            witness = json{{"fail_bit", r.fail_bit}};
        } else {
            witness = json{{"missing", true}};
        }
        pairs.push_back(json{{"left", r.alpha},
                             {"right", r.beta},
                             {"status", r.pass ? "pass" : "fail"},
                             {"witness", std::move(witness)}});
    }
    json distinct = json::array();
    for (const cantor::ChainReport::DistinctResult& r : report.distinct) {
        distinct.push_back(json{{"alpha", r.alpha},
                                {"beta", r.beta},
                                {"index", r.index},
                                {"distinct", r.distinct}});
    }
    return json{{"pairs", std::move(pairs)},
                {"distinct", std::move(distinct)},
                {"evidence", "exact"},
                {"all_pass", report.all_pass()}};
}

json sierpinski_to_json(const sierpinski::CoverOutcome& outcome) {
    json witness = json::array();
    for (const sierpinski::CoverOutcome::Witness& w : outcome.witnesses) {
        witness.push_back(json::array({w.alpha, w.beta, w.fn}));
    }
    json uncovered = json::array();
    for (const auto& [a, b] : outcome.uncovered) uncovered.push_back(json::array({a, b}));
    json cells = json::object();
    for (std::uint64_t n = 0; n < outcome.fn_count; ++n) {
        for (std::uint64_t alpha = 0; alpha < outcome.side; ++alpha) {
            cells[std::to_string(n) + "," + std::to_string(alpha)] =
                sierpinski::ulam_cell(n, alpha, outcome.side);
        }
    }
    return json{{"N", outcome.side},
                {"fns", outcome.fn_count},
                {"covered", outcome.covered},
                {"pairs_checked", outcome.pairs_checked},
                {"witness", std::move(witness)},
                {"uncovered", std::move(uncovered)},
                {"cells", std::move(cells)}};
}

}  // namespace sqcover::jsonio
