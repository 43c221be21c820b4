#include "sqcover/tree_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqcover {

namespace detail {

struct TreeMapNode {
    enum class Kind { dense, identity, constant, extend };

    Kind kind = Kind::identity;
    std::uint32_t depth = 0;

    // constant
    BitString value;

    // dense: image codes indexed by input code
    std::vector<std::uint64_t> table;

    // extend
    std::shared_ptr<const TreeMapNode> base;
    bool copy_all = false;
    std::set<BitString> copy_inputs;

    // true when a dense node occurs anywhere below; such maps are compared
    // pointwise instead of structurally
    bool has_dense = false;
};

}  // namespace detail

namespace {

using Node = detail::TreeMapNode;
using Kind = Node::Kind;

std::shared_ptr<const Node> make_identity_node(std::uint32_t depth) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::identity;
    n->depth = depth;
    return n;
}

std::shared_ptr<const Node> make_constant_node(std::uint32_t depth, const BitString& value) {
    if (value.size() != depth) {
        throw std::invalid_argument("TreeMap::constant: value length does not equal depth");
    }
    if (depth == 0) return make_identity_node(0);
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->depth = depth;
    n->value = value;
    return n;
}

// A depth-0 node and a constant node both have a single image value.
bool is_constant_like(const Node& n) {
    return n.kind == Kind::constant || (n.kind == Kind::identity && n.depth == 0);
}

BitString constant_value(const Node& n) {
    return n.kind == Kind::constant ? n.value : BitString{};
}

BitString apply_node(const Node& n, const BitString& input);

std::shared_ptr<const Node> make_extend_node(std::shared_ptr<const Node> base,
                                             bool copy_all,
                                             std::set<BitString> copy_inputs) {
    const std::uint32_t base_depth = base->depth;
    if (!copy_all) {
        for (const BitString& w : copy_inputs) {
            if (w.size() != base_depth) {
                throw std::invalid_argument(
                    "TreeMap::extend_with_copy_set: copy-set word length does not equal depth");
            }
        }
        if (base_depth <= 20 && copy_inputs.size() == (std::uint64_t{1} << base_depth)) {
            copy_all = true;
            copy_inputs.clear();
        }
    }
    // Normal forms keep extensional equality decidable structurally:
    // a full-copy extension of the identity is the identity, and a no-copy
    // extension of a constant is a constant.
    if (copy_all && base->kind == Kind::identity) {
        return make_identity_node(base_depth + 1);
    }
    if (!copy_all && copy_inputs.empty() && is_constant_like(*base)) {
        return make_constant_node(base_depth + 1, constant_value(*base).appended(false));
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::extend;
    n->depth = base_depth + 1;
    n->copy_all = copy_all;
    n->copy_inputs = std::move(copy_inputs);
    n->has_dense = base->has_dense;
    n->base = std::move(base);
    return n;
}

BitString apply_node(const Node& n, const BitString& input) {
    switch (n.kind) {
        case Kind::identity:
            return input;
        case Kind::constant:
            return n.value;
        case Kind::dense:
            return BitString::from_code(n.table[input.to_code()], n.depth);
        case Kind::extend: {
            const BitString head = input.prefix(n.depth - 1);
            BitString image = apply_node(*n.base, head);
            const bool copy = n.copy_all || n.copy_inputs.contains(head);
            image.push_back(copy && input.back());
            return image;
        }
    }
    throw std::logic_error("TreeMap: unreachable node kind");
}

std::vector<std::uint64_t> materialize_codes(const Node& n) {
    if (n.depth > TreeMap::kMaterializeCap) {
        throw std::length_error("TreeMap: table too deep to materialize");
    }
    const std::uint64_t size = std::uint64_t{1} << n.depth;
    switch (n.kind) {
        case Kind::dense:
            return n.table;
        case Kind::identity: {
            std::vector<std::uint64_t> t(size);
            for (std::uint64_t i = 0; i < size; ++i) t[i] = i;
            return t;
        }
        case Kind::constant:
            return std::vector<std::uint64_t>(size, n.value.to_code());
        case Kind::extend: {
            const std::vector<std::uint64_t> base = materialize_codes(*n.base);
            std::vector<std::uint64_t> copy_codes;
            copy_codes.reserve(n.copy_inputs.size());
            for (const BitString& w : n.copy_inputs) copy_codes.push_back(w.to_code());
            std::sort(copy_codes.begin(), copy_codes.end());
            std::vector<std::uint64_t> t(size);
            for (std::uint64_t i = 0; i < size; ++i) {
                const std::uint64_t head = i >> 1;
                const bool copy =
                    n.copy_all || std::binary_search(copy_codes.begin(), copy_codes.end(), head);
                t[i] = (base[head] << 1) | (copy ? (i & 1u) : 0u);
            }
            return t;
        }
    }
    throw std::logic_error("TreeMap: unreachable node kind");
}

// Prefix coherence of a dense table: inputs sharing their first k bits have
// images sharing their first k bits. Checked per tree level with running
// block minima/maxima (the top-k-bits function is monotone in the code).
bool dense_coherent(const std::vector<std::uint64_t>& table, std::uint32_t depth) {
    std::vector<std::uint64_t> lo = table;
    std::vector<std::uint64_t> hi = table;
    for (std::uint32_t level = depth; level-- > 1;) {
        const std::size_t half = std::size_t{1} << level;
        for (std::size_t i = 0; i < half; ++i) {
            lo[i] = std::min(lo[2 * i], lo[2 * i + 1]);
            hi[i] = std::max(hi[2 * i], hi[2 * i + 1]);
        }
        const std::uint32_t shift = depth - level;
        for (std::size_t i = 0; i < half; ++i) {
            if ((lo[i] >> shift) != (hi[i] >> shift)) return false;
        }
    }
    return true;
}

bool node_lipschitz(const Node& n) {
    switch (n.kind) {
        case Kind::identity:
        case Kind::constant:
            return true;
        case Kind::dense:
            return dense_coherent(n.table, n.depth);
        case Kind::extend:
            // One extend level preserves coherence for every copy set: images of
            // inputs with a common head share the base image, and distinct heads
            // reduce to the base map.
            return node_lipschitz(*n.base);
    }
    throw std::logic_error("TreeMap: unreachable node kind");
}

bool nodes_equal(const Node& a, const Node& b) {
    if (a.depth != b.depth) return false;
    if (a.has_dense || b.has_dense) {
        // Pointwise comparison; dense nodes only exist at materializable depth.
        const std::uint64_t size = std::uint64_t{1} << a.depth;
        for (std::uint64_t i = 0; i < size; ++i) {
            const BitString input = BitString::from_code(i, a.depth);
            if (apply_node(a, input) != apply_node(b, input)) return false;
        }
        return true;
    }
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::identity:
            return true;
        case Kind::constant:
            return a.value == b.value;
        case Kind::extend:
            if (a.copy_all != b.copy_all || a.copy_inputs != b.copy_inputs) return false;
            return nodes_equal(*a.base, *b.base);
        case Kind::dense:
            break;
    }
    throw std::logic_error("TreeMap: unreachable node kind");
}

}  // namespace

TreeMap::TreeMap() : node_(make_identity_node(0)) {}

TreeMap::TreeMap(std::shared_ptr<const detail::TreeMapNode> node) : node_(std::move(node)) {}

TreeMap TreeMap::identity(std::uint32_t depth) { return TreeMap(make_identity_node(depth)); }

TreeMap TreeMap::constant(std::uint32_t depth, const BitString& value) {
    return TreeMap(make_constant_node(depth, value));
}

TreeMap TreeMap::from_leaves(const std::vector<BitString>& leaves) {
    const std::size_t count = leaves.size();
    if (count == 0 || (count & (count - 1)) != 0) {
        throw std::invalid_argument("TreeMap::from_leaves: table length is not a power of two");
    }
    std::uint32_t depth = 0;
    while ((std::size_t{1} << depth) < count) ++depth;
    if (depth > kMaterializeCap) {
        throw std::invalid_argument("TreeMap::from_leaves: table too deep");
    }
    for (const BitString& leaf : leaves) {
        if (leaf.size() != depth) {
            throw std::invalid_argument("TreeMap::from_leaves: image length does not equal depth");
        }
    }
    if (depth == 0) return TreeMap();
    auto n = std::make_shared<Node>();
    n->kind = Kind::dense;
    n->depth = depth;
    n->has_dense = true;
    n->table.reserve(count);
    for (const BitString& leaf : leaves) n->table.push_back(leaf.to_code());
    return TreeMap(std::move(n));
}

std::uint32_t TreeMap::depth() const { return node_->depth; }

BitString TreeMap::apply(const BitString& input) const {
    if (input.size() != node_->depth) {
        throw std::invalid_argument("TreeMap::apply: input length does not equal depth");
    }
    return apply_node(*node_, input);
}

TreeMap TreeMap::restrict_to(std::uint32_t k) const {
    if (k > node_->depth) {
        throw std::out_of_range("TreeMap::restrict_to: k exceeds depth");
    }
    if (k == node_->depth) return *this;
    switch (node_->kind) {
        case Kind::identity:
            return identity(k);
        case Kind::constant:
            return constant(k, node_->value.prefix(k));
        case Kind::extend:
            return TreeMap(node_->base).restrict_to(k);
        case Kind::dense: {
            const std::uint32_t shift = node_->depth - k;
            auto out = std::make_shared<Node>();
            out->kind = Kind::dense;
            out->depth = k;
            out->has_dense = true;
            const std::uint64_t size = std::uint64_t{1} << k;
            out->table.resize(size);
            for (std::uint64_t i = 0; i < size; ++i) {
                out->table[i] = node_->table[i << shift] >> shift;
            }
            return TreeMap(std::move(out));
        }
    }
    throw std::logic_error("TreeMap: unreachable node kind");
}

TreeMap TreeMap::extend_trivially() const {
    return TreeMap(make_extend_node(node_, true, {}));
}

TreeMap TreeMap::extend_with_copy_set(const std::set<BitString>& copy_inputs) const {
    return TreeMap(make_extend_node(node_, false, copy_inputs));
}

bool TreeMap::is_lipschitz() const { return node_lipschitz(*node_); }

std::vector<std::uint64_t> TreeMap::leaf_codes() const { return materialize_codes(*node_); }

std::vector<BitString> TreeMap::leaves() const {
    const std::vector<std::uint64_t> codes = leaf_codes();
    std::vector<BitString> out;
    out.reserve(codes.size());
    for (std::uint64_t c : codes) out.push_back(BitString::from_code(c, node_->depth));
    return out;
}

bool TreeMap::operator==(const TreeMap& other) const {
    return nodes_equal(*node_, *other.node_);
}

std::vector<TreeMap> enumerate_lipschitz(std::uint32_t n) {
    if (n > TreeMap::kEnumerationCap) {
        throw std::invalid_argument("enumerate_lipschitz: n exceeds the enumeration cap");
    }
    if (n == 0) return {TreeMap()};

    // A coherent map chooses one child bit per non-root node; the node for the
    // input prefix of length k and code c owns choice bit (2^k - 2) + c.
    const std::uint32_t free_bits = (std::uint32_t{1} << (n + 1)) - 2;
    const std::uint64_t total = std::uint64_t{1} << free_bits;
    const std::uint64_t leaf_count = std::uint64_t{1} << n;

    std::vector<std::vector<BitString>> tables;
    tables.reserve(total);
    for (std::uint64_t choice = 0; choice < total; ++choice) {
        std::vector<BitString> leaves;
        leaves.reserve(leaf_count);
        for (std::uint64_t input = 0; input < leaf_count; ++input) {
            std::uint64_t image = 0;
            for (std::uint32_t k = 1; k <= n; ++k) {
                const std::uint64_t prefix_code = input >> (n - k);
                const std::uint32_t bit_index =
                    ((std::uint32_t{1} << k) - 2) + static_cast<std::uint32_t>(prefix_code);
                image = (image << 1) | ((choice >> bit_index) & 1u);
            }
            leaves.push_back(BitString::from_code(image, n));
        }
        tables.push_back(std::move(leaves));
    }
    std::sort(tables.begin(), tables.end());

    std::vector<TreeMap> out;
    out.reserve(tables.size());
    for (const auto& t : tables) out.push_back(TreeMap::from_leaves(t));
    return out;
}

std::uint64_t lipschitz_count_log2(std::uint32_t n) {
    if (n > 20) {
        throw std::invalid_argument("lipschitz_count_log2: n exceeds 20");
    }
    return (std::uint64_t{1} << (n + 1)) - 2;
}

}  // namespace sqcover
