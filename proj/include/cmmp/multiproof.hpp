#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmmp/digest.hpp"
#include "cmmp/merkle_tree.hpp"

namespace cmmp {

/// Structural defect in a proof (wrong hash count, bad shape). Distinct
/// from a clean `false`, which means the proof is well-formed but wrong.
class MalformedProof : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using IndexPair = std::pair<std::uint64_t, std::uint64_t>;

/**
 * Multiproof carrying only the leaf indices and an ordered hash list.
 * Every internal position is re-derived from the indices during
 * verification; hashes are ordered bottom layer to top, ascending index
 * within each layer.
 */
struct CompactMultiproof {
    std::uint64_t leaf_count = 0;
    std::vector<std::uint64_t> leaf_indices; // strictly increasing
    std::vector<Digest> hashes;

    bool operator==(const CompactMultiproof&) const = default;
};

/// Baseline sparse multiproof: every hash carries its (layer, index).
struct StandardEntry {
    std::uint8_t layer = 0;
    std::uint64_t index = 0;
    Digest digest{};

    bool operator==(const StandardEntry&) const = default;
};

struct StandardMultiproof {
    std::uint64_t leaf_count = 0;
    std::vector<StandardEntry> entries; // sorted by (layer, index), unique

    bool operator==(const StandardMultiproof&) const = default;
};

/// Per-layer index bookkeeping, recorded identically by generation and
/// verification. Test introspection hook.
struct MultiproofTrace {
    /// Active index lists, one per layer visited, ending with {0}.
    std::vector<std::vector<std::uint64_t>> active;
    /// Sibling pairs with multiplicity, per hashing level.
    std::vector<std::vector<IndexPair>> pairs;
    /// Deduplicated sibling pairs, per hashing level.
    std::vector<std::vector<IndexPair>> pairs_pruned;
    /// (layer, index) of every hash appended to / consumed from the proof.
    std::vector<std::pair<std::size_t, std::uint64_t>> hash_positions;
};

struct SiblingPairs {
    std::vector<IndexPair> pairs;        // one per active index
    std::vector<IndexPair> pairs_pruned; // adjacent duplicates removed
};

/// Pairs each active index with its sibling: index i maps to
/// (i & ~1, (i & ~1) + 1). Input must be strictly increasing.
SiblingPairs sibling_pairs(std::span<const std::uint64_t> active);

/// Active indices for the next layer up: first member of each pruned
/// pair, halved.
std::vector<std::uint64_t> advance_active(std::span<const IndexPair> pairs_pruned);

/**
 * Generates the compact multiproof for the given leaves. Input indices
 * may be unsorted and may repeat; they are sorted and deduplicated.
 * Indices must address real leaves (padding is not provable).
 */
CompactMultiproof generate_compact(const MerkleTree& tree,
                                   std::span<const std::uint64_t> leaf_indices,
                                   MultiproofTrace* trace = nullptr);

/**
 * Verifies a compact multiproof. element_hashes are the leaf digests for
 * proof.leaf_indices, in the same (ascending) order.
 *
 * Returns false on root mismatch. Throws MalformedProof when the hash
 * list runs out ("hash list exhausted") or is not fully consumed
 * ("surplus hashes"), and std::invalid_argument on count mismatch.
 */
bool verify_compact(const CompactMultiproof& proof,
                    std::span<const Digest> element_hashes,
                    const Digest& expected_root,
                    MultiproofTrace* trace = nullptr);

/// Convenience wrapper over raw (index, element) pairs in any order;
/// hashes and sorts them, then checks the indices match the proof's.
bool verify_compact(const CompactMultiproof& proof,
                    std::span<const std::pair<std::uint64_t, Bytes>> elements,
                    const Digest& expected_root);

StandardMultiproof generate_standard(const MerkleTree& tree,
                                     std::span<const std::uint64_t> leaf_indices);

/**
 * Verifies a position-tagged multiproof by seeding a position map with the
 * entries plus the element hashes and computing parents until the root.
 * Throws MalformedProof on an incomplete proof or conflicting positions.
 */
bool verify_standard(const StandardMultiproof& proof,
                     std::span<const std::uint64_t> leaf_indices,
                     std::span<const Digest> element_hashes,
                     const Digest& expected_root);

/// (layer, index) positions a multiproof must supply for the subset;
/// geometry only, no digests. Positions come out sorted bottom-up,
/// ascending index within each layer.
std::vector<std::pair<std::size_t, std::uint64_t>> multiproof_positions(
    std::uint64_t leaf_count, std::span<const std::uint64_t> leaf_indices);

/// Hash counts and serialized sizes of the three proof schemes for one
/// (tree size, subset) instance.
struct ProofSizeReport {
    std::uint64_t leaf_count = 0;
    std::size_t subset_size = 0;
    std::size_t depth = 0;

    std::size_t single_hashes = 0;   // k independent single proofs
    std::size_t standard_hashes = 0; // position-tagged multiproof
    std::size_t compact_hashes = 0;  // leaf-indices-only multiproof

    std::size_t single_bytes = 0;
    std::size_t standard_bytes = 0;
    std::size_t compact_bytes = 0;

    double compact_saving_vs_single_pct() const;
    double compact_saving_vs_standard_pct() const;
};

ProofSizeReport proof_size_report(std::uint64_t leaf_count,
                                  std::span<const std::uint64_t> leaf_indices);

} // namespace cmmp
