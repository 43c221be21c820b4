#include "sqcover/cantor.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace sqcover::cantor {

std::uint32_t block_index(std::uint64_t i) {
    return static_cast<std::uint32_t>(std::countr_zero(i + 1));
}

std::uint64_t block_element(std::uint32_t n, std::uint64_t k) {
    if (n >= 64 || k > (((~std::uint64_t{0}) >> n) - 1) / 2) {
        throw std::overflow_error("block_element: position does not fit in 64 bits");
    }
    return ((2 * k + 1) << n) - 1;
}

std::uint64_t position_in_block(std::uint64_t i) {
    const std::uint32_t n = block_index(i);
    return (((i + 1) >> n) - 1) / 2;
}

BitString apply_block_fn(std::uint32_t n, const BitOracle& x, std::size_t depth) {
    BitString out;
    for (std::size_t j = 0; j < depth; ++j) {
        out.push_back(n == 0 ? x(j) : x(block_element(n, j)));
    }
    return out;
}

std::uint64_t continuity_modulus(std::uint32_t n, std::uint64_t depth) {
    if (depth == 0) return 0;
    if (n == 0) return depth;
    return 1 + block_element(n, depth - 1);
}

PointId PointStore::add_base(BitString prefix, bool tail) {
    exprs_.push_back(BasePoint{std::move(prefix), tail});
    memo_.emplace_back();
    return exprs_.size() - 1;
}

PointId PointStore::add_extension(std::vector<PointId> children) {
    if (children.empty()) {
        throw std::invalid_argument("PointStore::add_extension: no points to extend");
    }
    for (PointId c : children) {
        if (c >= exprs_.size()) {
            throw std::invalid_argument("PointStore::add_extension: unknown point id");
        }
    }
    exprs_.push_back(ExtensionPoint{std::move(children)});
    memo_.emplace_back();
    return exprs_.size() - 1;
}

bool PointStore::eval(PointId id, std::uint64_t index) const {
    if (id >= exprs_.size()) {
        throw std::out_of_range("PointStore::eval: unknown point id");
    }
    auto& cache = memo_[id];
    if (auto it = cache.find(index); it != cache.end()) return it->second;
    const bool value = eval_uncached(id, index);
    cache.emplace(index, value);
    return value;
}

bool PointStore::eval_uncached(PointId id, std::uint64_t index) const {
    const PointExpr& expr = exprs_[id];
    if (const auto* base = std::get_if<BasePoint>(&expr)) {
        if (index < base->prefix.size()) return base->prefix[index];
        return base->tail;
    }
    const auto& ext = std::get<ExtensionPoint>(expr);
    return extension_block_bit(ext, block_index(index), position_in_block(index));
}

bool PointStore::extension_block_bit(const ExtensionPoint& ext, std::uint32_t n,
                                     std::uint64_t k) const {
    const std::size_t m = ext.children.size();
    if (n >= 1) {
        if (n <= m) return eval(ext.children[n - 1], k);
        return false;
    }
    // block 0, position k: the diagonal bits live at k in 1..m
    if (k >= 1 && k <= m) return !eval(ext.children[k - 1], 2 * k);
    return false;
}

bool PointStore::eval_in_block(PointId id, std::uint32_t n, std::uint64_t k) const {
    if (id >= exprs_.size()) {
        throw std::out_of_range("PointStore::eval_in_block: unknown point id");
    }
    const PointExpr& expr = exprs_[id];
    if (const auto* base = std::get_if<BasePoint>(&expr)) {
        // position (2k+1) 2^n - 1 lies in the prefix iff 2k+1 <= len >> n
        const std::uint64_t len = base->prefix.size();
        if (n < 64 && k < (std::uint64_t{1} << 62) && 2 * k + 1 <= (len >> n)) {
            return base->prefix[((2 * k + 1) << n) - 1];
        }
        return base->tail;
    }
    return extension_block_bit(std::get<ExtensionPoint>(expr), n, k);
}

BitString PointStore::prefix(PointId id, std::size_t depth) const {
    BitString out;
    for (std::size_t i = 0; i < depth; ++i) out.push_back(eval(id, i));
    return out;
}

BitOracle PointStore::oracle(PointId id) const {
    if (id >= exprs_.size()) {
        throw std::out_of_range("PointStore::oracle: unknown point id");
    }
    return [this, id](std::uint64_t index) { return eval(id, index); };
}

void PointStore::clear_memo() const {
    for (auto& cache : memo_) cache.clear();
}

PointId diagonal_extend(PointStore& store, const std::vector<PointId>& covered) {
    return store.add_extension(covered);
}

BitString apply_block_fn(const PointStore& store, PointId id, std::uint32_t n, std::size_t depth) {
    if (n == 0) return store.prefix(id, depth);
    BitString out;
    for (std::size_t j = 0; j < depth; ++j) out.push_back(store.eval_in_block(id, n, j));
    return out;
}

Chain build_chain(PointStore& store, std::size_t count, PointId seed) {
    if (count == 0) {
        throw std::invalid_argument("build_chain: count must be at least 1");
    }
    if (seed >= store.size() ||
        !std::holds_alternative<BasePoint>(store.expressions()[seed])) {
        throw std::invalid_argument("build_chain: seed must be a base point in the store");
    }
    Chain chain;
    chain.points.push_back(seed);
    for (std::size_t k = 1; k < count; ++k) {
        chain.points.push_back(diagonal_extend(store, chain.points));
    }
    for (std::size_t beta = 2; beta <= count; ++beta) {
        for (std::size_t alpha = 1; alpha < beta; ++alpha) {
            chain.witnesses.push_back({alpha, beta, static_cast<std::uint32_t>(alpha)});
        }
    }
    for (std::size_t k = 1; k + 1 <= count; ++k) {
        chain.disagreements.push_back({k, block_element(0, k)});
    }
    return chain;
}

bool ChainReport::all_pass() const {
    return std::all_of(pairs.begin(), pairs.end(),
                       [](const PairResult& r) { return r.pass; }) &&
           std::all_of(distinct.begin(), distinct.end(),
                       [](const DistinctResult& r) { return r.distinct; });
}

ChainReport verify_chain(const PointStore& store, const Chain& chain, std::size_t depth) {
    ChainReport report;
    const std::size_t count = chain.points.size();

    std::unordered_map<std::uint64_t, std::uint32_t> witness_by_pair;
    for (const Chain::Witness& w : chain.witnesses) {
        witness_by_pair[(std::uint64_t{static_cast<std::uint32_t>(w.alpha)} << 32) | w.beta] = w.fn;
    }

    for (std::size_t beta = 2; beta <= count; ++beta) {
        for (std::size_t alpha = 1; alpha < beta; ++alpha) {
            ChainReport::PairResult r;
            r.alpha = alpha;
            r.beta = beta;
            const auto it =
                witness_by_pair.find((std::uint64_t{static_cast<std::uint32_t>(alpha)} << 32) | beta);
            if (it == witness_by_pair.end()) {
                report.pairs.push_back(r);  // no witness recorded: fail
                continue;
            }
            r.witness_found = true;
            r.fn = it->second;
            const BitString image =
                apply_block_fn(store, chain.points[beta - 1], r.fn, depth);
            const BitString target = store.prefix(chain.points[alpha - 1], depth);
            if (image == target) {
                r.pass = true;
            } else {
                r.fail_bit = common_prefix_length(image, target);
            }
            report.pairs.push_back(r);
        }
    }

    std::uint64_t scan_depth = depth;
    std::unordered_map<std::size_t, std::uint64_t> recorded;
    for (const Chain::Disagreement& d : chain.disagreements) {
        recorded[d.point] = d.index;
        scan_depth = std::max(scan_depth, d.index + 1);
    }
    for (std::size_t beta = 2; beta <= count; ++beta) {
        for (std::size_t alpha = 1; alpha < beta; ++alpha) {
            ChainReport::DistinctResult r;
            r.alpha = alpha;
            r.beta = beta;
            const PointId a = chain.points[alpha - 1];
            const PointId b = chain.points[beta - 1];
            if (auto it = recorded.find(alpha); it != recorded.end()) {
                r.index = it->second;
                r.distinct = store.eval(a, r.index) != store.eval(b, r.index);
            } else {
                for (std::uint64_t i = 0; i < scan_depth; ++i) {
                    if (store.eval(a, i) != store.eval(b, i)) {
                        r.index = i;
                        r.distinct = true;
                        break;
                    }
                }
            }
            report.distinct.push_back(r);
        }
    }
    return report;
}

}  // namespace sqcover::cantor
