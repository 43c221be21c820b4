// Command-line surface: run the constructions, verify artifacts, emit JSON.
// Exit codes: 0 = all checks passed, 1 = checks ran and failed, 2 = usage or
// parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqcover/cantor.hpp"
#include "sqcover/forcing.hpp"
#include "sqcover/json_io.hpp"
#include "sqcover/rng.hpp"
#include "sqcover/sierpinski.hpp"
#include "sqcover/tree_map.hpp"
#include "sqcover/verifier.hpp"

namespace {

using sqcover::jsonio::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void write_output(const json& artifact, const std::string& path) {
    const std::string text = artifact.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << text;
}

/// The seed point of a chain run: an 8-bit prefix drawn from the seed,
/// followed by constant 0.
sqcover::BitString seed_prefix(std::uint64_t seed) {
    sqcover::SplitMix64 rng(seed);
    const std::uint64_t bits = rng.next();
    sqcover::BitString prefix;
    for (int i = 0; i < 8; ++i) prefix.push_back((bits >> i) & 1u);
    return prefix;
}

std::vector<std::uint64_t> parse_label_list(const std::string& text) {
    std::vector<std::uint64_t> labels;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        labels.push_back(std::stoull(item, &used));
        if (used != item.size()) {
            throw std::invalid_argument("label is not a decimal integer: " + item);
        }
    }
    if (labels.empty()) {
        throw std::invalid_argument("label list is empty");
    }
    return labels;
}

int run_sierpinski(std::uint64_t side, std::uint64_t fn_count, const std::string& output) {
    const auto outcome = sqcover::sierpinski::cover_check(side, fn_count);
    write_output(sqcover::jsonio::sierpinski_to_json(outcome), output);
    return outcome.covered ? kExitPass : kExitFail;
}

int run_chain(std::size_t count, std::size_t depth, std::uint64_t seed,
              const std::string& output) {
    sqcover::cantor::PointStore store;
    const auto seed_id = store.add_base(seed_prefix(seed), false);
    const auto chain = sqcover::cantor::build_chain(store, count, seed_id);
    const auto report = sqcover::cantor::verify_chain(store, chain, depth);

    json artifact = sqcover::jsonio::chain_artifact_to_json(store, chain, depth, true);
    artifact["report"] = sqcover::jsonio::chain_report_to_json(report);
    write_output(artifact, output);
    return report.all_pass() ? kExitPass : kExitFail;
}

int run_forcing(std::size_t index_count, const std::vector<std::uint64_t>& labels,
                std::uint64_t seed, const std::string& output) {
    const std::set<sqcover::forcing::Label> label_set(labels.begin(), labels.end());
    // the run deepens at least once per scheduled step
    if (index_count + label_set.size() > sqcover::TreeMap::kMaterializeCap) {
        throw std::invalid_argument(
            "k plus the label count exceeds the serialization cap of " +
            std::to_string(sqcover::TreeMap::kMaterializeCap));
    }
    const auto out = sqcover::forcing::generic_run(index_count, label_set, seed);
    if (out.depth > sqcover::TreeMap::kMaterializeCap) {
        throw std::invalid_argument(
            "resulting depth " + std::to_string(out.depth) +
            " exceeds the serialization cap; use fewer indices or labels");
    }
    const bool valid = sqcover::forcing::is_valid(sqcover::forcing::to_condition(out));
    const auto report = sqcover::verifier::covers_tree(out.points, out.family, true);

    json artifact = sqcover::jsonio::generic_output_to_json(out);
    artifact["report"] = sqcover::jsonio::cover_report_to_json(report);
    artifact["valid"] = valid;
    write_output(artifact, output);
    return (valid && report.all_pass()) ? kExitPass : kExitFail;
}

int run_lipschitz(std::uint32_t n, bool count_only, const std::string& output) {
    json artifact{{"n", n}, {"count_log2", sqcover::lipschitz_count_log2(n)}};
    const std::uint64_t log2 = artifact["count_log2"].get<std::uint64_t>();
    if (log2 <= 63) {
        artifact["count"] = std::uint64_t{1} << log2;
    }
    if (!count_only) {
        json maps = json::array();
        for (const sqcover::TreeMap& map : sqcover::enumerate_lipschitz(n)) {
            maps.push_back(sqcover::jsonio::tree_map_to_json(map));
        }
        artifact["maps"] = std::move(maps);
    }
    write_output(artifact, output);
    return kExitPass;
}

int verify_chain_artifact(const json& input, const std::string& output) {
    const auto artifact = sqcover::jsonio::chain_artifact_from_json(input);
    const auto report =
        sqcover::cantor::verify_chain(artifact.store, artifact.chain, artifact.depth);
    bool prefixes_ok = true;
    for (std::size_t k = 0; k < artifact.prefixes.size(); ++k) {
        if (k >= artifact.chain.points.size() ||
            artifact.store.prefix(artifact.chain.points[k], artifact.depth) !=
                artifact.prefixes[k]) {
            prefixes_ok = false;
        }
    }
    const bool pass = report.all_pass() && prefixes_ok;
    json result{{"kind", "chain"},
                {"pass", pass},
                {"prefixes_ok", prefixes_ok},
                {"report", sqcover::jsonio::chain_report_to_json(report)}};
    write_output(result, output);
    return pass ? kExitPass : kExitFail;
}

int verify_generic_artifact(const json& input, const std::string& output) {
    const auto out = sqcover::jsonio::generic_output_from_json(input);
    const auto violations = sqcover::forcing::validate(sqcover::forcing::to_condition(out));
    json violation_list = json::array();
    for (const auto& v : violations) {
        violation_list.push_back(json{{"clause", v.clause}, {"detail", v.detail}});
    }
    const auto report = sqcover::verifier::covers_tree(out.points, out.family, true);
    const bool pass = violations.empty() && report.all_pass();
    json result{{"kind", "generic"},
                {"pass", pass},
                {"violations", std::move(violation_list)},
                {"report", sqcover::jsonio::cover_report_to_json(report)}};
    write_output(result, output);
    return pass ? kExitPass : kExitFail;
}

int run_verify(const std::string& input_path, const std::string& output) {
    std::ifstream in(input_path, std::ios::binary);
    if (!in) {
        std::cerr << "verify: cannot open input file: " << input_path << "\n";
        return kExitUsage;
    }
    json input;
    try {
        input = json::parse(in);
    } catch (const json::parse_error& e) {
        std::cerr << "verify: parse error at byte " << e.byte << ": " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        if (input.contains("points") && input.contains("witness")) {
            return verify_chain_artifact(input, output);
        }
        if (input.contains("family") && input.contains("gamma")) {
            return verify_generic_artifact(input, output);
        }
    } catch (const json::exception& e) {
        std::cerr << "verify: malformed artifact: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "verify: malformed artifact: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cerr << "verify: input is neither a chain nor a generic-run artifact\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive coverings of squares by countably many functions"};
    app.require_subcommand(1);

    std::string output;
    std::string format = "json";
    const auto add_io_options = [&output, &format](CLI::App* sub) {
        sub->add_option("--output", output, "write the artifact here instead of stdout");
        sub->add_option("--format", format, "artifact format (json)")
            ->check(CLI::IsMember({"json"}));
    };

    auto* sier = app.add_subcommand("sierpinski", "cover an N x N square, emit witnesses and Ulam cells");
    std::uint64_t side = 0;
    std::uint64_t fn_count = 0;
    sier->add_option("--n", side, "side of the square")->required()->check(CLI::PositiveNumber);
    sier->add_option("--fns", fn_count, "number of covering functions")->required();
    add_io_options(sier);

    auto* chain = app.add_subcommand("chain", "build and verify an iterated diagonal chain");
    std::size_t chain_count = 0;
    std::size_t chain_depth = 64;
    std::uint64_t chain_seed = 0;
    chain->add_option("--n", chain_count, "chain length")->required()->check(CLI::PositiveNumber);
    chain->add_option("--depth", chain_depth, "verification prefix depth");
    chain->add_option("--seed", chain_seed, "seed of the base point");
    add_io_options(chain);

    auto* forc = app.add_subcommand("forcing", "run a generic extension schedule and verify the output");
    std::size_t index_count = 0;
    std::string labels_text;
    std::uint64_t forcing_seed = 0;
    forc->add_option("--k", index_count, "dense sets D(0)..D(k-1) to meet")
        ->required()
        ->check(CLI::PositiveNumber);
    forc->add_option("--labels", labels_text, "comma-separated labels to schedule")->required();
    forc->add_option("--seed", forcing_seed, "schedule interleaving seed");
    add_io_options(forc);

    auto* lips = app.add_subcommand("lipschitz", "count or enumerate the 1-Lipschitz tree maps");
    std::uint32_t lipschitz_n = 0;
    bool count_only = false;
    lips->add_option("--n", lipschitz_n, "tree depth")->required();
    lips->add_flag("--count-only", count_only, "emit the count without the maps");
    add_io_options(lips);

    auto* veri = app.add_subcommand("verify", "re-verify a serialized chain or generic-run artifact");
    std::string input_path;
    veri->add_option("--input", input_path, "artifact to verify")->required();
    add_io_options(veri);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sier->parsed()) return run_sierpinski(side, fn_count, output);
        if (chain->parsed()) return run_chain(chain_count, chain_depth, chain_seed, output);
        if (forc->parsed()) {
            return run_forcing(index_count, parse_label_list(labels_text), forcing_seed, output);
        }
        if (lips->parsed()) {
            if (lipschitz_n > 20 || (!count_only && lipschitz_n > sqcover::TreeMap::kEnumerationCap)) {
                std::cerr << "lipschitz: n is above the cap (3 for enumeration, 20 for counts)\n";
                return kExitUsage;
            }
            return run_lipschitz(lipschitz_n, count_only, output);
        }
        if (veri->parsed()) return run_verify(input_path, output);
    } catch (const std::exception& e) {
        std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
