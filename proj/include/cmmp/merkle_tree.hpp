#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cmmp/digest.hpp"
#include "cmmp/hash.hpp"

namespace cmmp {

/// Sibling index of a node within its layer.
constexpr std::uint64_t sibling_index(std::uint64_t i) { return i ^ 1; }

/// Next power of two >= n (n >= 1).
constexpr std::uint64_t padded_leaf_count_for(std::uint64_t n) {
    std::uint64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// log2 of the padded leaf count; the number of hashing levels.
constexpr std::size_t tree_depth_for(std::uint64_t leaf_count) {
    std::size_t d = 0;
    for (std::uint64_t p = 1; p < leaf_count; p <<= 1) ++d;
    return d;
}

/// Classic single-element Merkle proof: one sibling per level, bottom up.
struct SingleProof {
    std::uint64_t leaf_index = 0;
    std::vector<Digest> siblings;
};

/**
 * Complete binary hash tree over a list of elements.
 *
 * Layer 0 holds hash_leaf of each element in order, padded with
 * padding_digest() up to the next power of two; every higher layer is the
 * pairwise hash_node of the layer below; the last layer is the root.
 * Immutable after construction.
 */
class MerkleTree {
public:
    static MerkleTree build(std::span<const Bytes> elements);

    const Digest& root() const { return layers_.back().front(); }

    std::uint64_t leaf_count() const { return leaf_count_; }
    std::uint64_t padded_leaf_count() const { return layers_.front().size(); }
    std::size_t depth() const { return layers_.size() - 1; }

    /// layers()[0] = leaf digests, layers().back() = {root}.
    const std::vector<std::vector<Digest>>& layers() const { return layers_; }

    const Digest& node(std::size_t layer, std::uint64_t index) const {
        return layers_[layer][index];
    }

    SingleProof generate_single_proof(std::uint64_t leaf_index) const;

private:
    MerkleTree() = default;

    std::uint64_t leaf_count_ = 0;
    std::vector<std::vector<Digest>> layers_;
};

/**
 * Folds hash_leaf(element) upward through the siblings and compares with
 * expected_root. leaf_count stands in for the tree itself: the verifier
 * only derives depth and checks ranges from it.
 *
 * Throws std::invalid_argument when the sibling count does not match the
 * depth implied by leaf_count; a mismatching root is a clean false.
 */
bool verify_single_proof(const SingleProof& proof,
                         std::span<const std::uint8_t> element,
                         std::uint64_t leaf_count,
                         const Digest& expected_root);

inline bool verify_single_proof(const SingleProof& proof, std::string_view element,
                                std::uint64_t leaf_count, const Digest& expected_root) {
    return verify_single_proof(
        proof,
        std::span(reinterpret_cast<const std::uint8_t*>(element.data()), element.size()),
        leaf_count, expected_root);
}

} // namespace cmmp
