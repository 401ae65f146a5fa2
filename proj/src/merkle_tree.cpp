#include "cmmp/merkle_tree.hpp"

#include <stdexcept>

namespace cmmp {

MerkleTree MerkleTree::build(std::span<const Bytes> elements) {
    if (elements.empty())
        throw std::invalid_argument("empty tree not supported");

    MerkleTree tree;
    tree.leaf_count_ = elements.size();

    const std::uint64_t padded = padded_leaf_count_for(elements.size());
    std::vector<Digest> layer;
    layer.reserve(padded);
    for (const Bytes& e : elements)
        layer.push_back(hash_leaf(std::span(e)));
    layer.resize(padded, padding_digest());

    tree.layers_.push_back(std::move(layer));
    while (tree.layers_.back().size() > 1) {
        const auto& below = tree.layers_.back();
        std::vector<Digest> above;
        above.reserve(below.size() / 2);
        for (std::size_t i = 0; i < below.size(); i += 2)
            above.push_back(hash_node(below[i], below[i + 1]));
        tree.layers_.push_back(std::move(above));
    }
    return tree;
}

SingleProof MerkleTree::generate_single_proof(std::uint64_t leaf_index) const {
    if (leaf_index >= leaf_count_)
        throw std::out_of_range("leaf index " + std::to_string(leaf_index) +
                                " out of range for " + std::to_string(leaf_count_) +
                                " leaves");
    SingleProof proof;
    proof.leaf_index = leaf_index;
    proof.siblings.reserve(depth());
    std::uint64_t current = leaf_index;
    for (std::size_t level = 0; level < depth(); ++level) {
        proof.siblings.push_back(layers_[level][sibling_index(current)]);
        current >>= 1;
    }
    return proof;
}

bool verify_single_proof(const SingleProof& proof,
                         std::span<const std::uint8_t> element,
                         std::uint64_t leaf_count,
                         const Digest& expected_root) {
    if (leaf_count == 0)
        throw std::invalid_argument("leaf_count must be positive");
    const std::size_t depth = tree_depth_for(leaf_count);
    if (proof.siblings.size() != depth)
        throw std::invalid_argument("sibling count does not match tree depth");
    if (proof.leaf_index >= leaf_count)
        throw std::invalid_argument("leaf index out of range");

    Digest acc = hash_leaf(element);
    std::uint64_t current = proof.leaf_index;
    for (const Digest& sibling : proof.siblings) {
        acc = (current & 1) ? hash_node(sibling, acc) : hash_node(acc, sibling);
        current >>= 1;
    }
    return acc == expected_root;
}

} // namespace cmmp
