#include "cmmp/multiproof.hpp"

#include <algorithm>
#include <map>

#include "cmmp/codec.hpp"

namespace cmmp {

namespace {

std::vector<std::uint64_t> normalize_indices(std::uint64_t leaf_count,
                                             std::span<const std::uint64_t> indices) {
    if (indices.empty())
        throw std::invalid_argument("empty index list");
    std::vector<std::uint64_t> out(indices.begin(), indices.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.back() >= leaf_count)
        throw std::invalid_argument("leaf index " + std::to_string(out.back()) +
                                    " out of range for " + std::to_string(leaf_count) +
                                    " leaves");
    return out;
}

void record_layer(MultiproofTrace* trace, const std::vector<std::uint64_t>& active,
                  const SiblingPairs& sp) {
    if (!trace) return;
    trace->active.push_back(active);
    trace->pairs.push_back(sp.pairs);
    trace->pairs_pruned.push_back(sp.pairs_pruned);
}

} // namespace

SiblingPairs sibling_pairs(std::span<const std::uint64_t> active) {
    SiblingPairs sp;
    sp.pairs.reserve(active.size());
    std::uint64_t prev = 0;
    bool first = true;
    for (std::uint64_t i : active) {
        if (!first && i <= prev)
            throw std::invalid_argument("active indices must be strictly increasing");
        prev = i;
        first = false;
        IndexPair p{i & ~std::uint64_t{1}, (i & ~std::uint64_t{1}) + 1};
        // duplicates are always adjacent because the input is sorted
        if (sp.pairs_pruned.empty() || sp.pairs_pruned.back() != p)
            sp.pairs_pruned.push_back(p);
        sp.pairs.push_back(p);
    }
    return sp;
}

std::vector<std::uint64_t> advance_active(std::span<const IndexPair> pairs_pruned) {
    std::vector<std::uint64_t> next;
    next.reserve(pairs_pruned.size());
    for (const auto& [even, odd] : pairs_pruned)
        next.push_back(even / 2);
    return next;
}

CompactMultiproof generate_compact(const MerkleTree& tree,
                                   std::span<const std::uint64_t> leaf_indices,
                                   MultiproofTrace* trace) {
    CompactMultiproof proof;
    proof.leaf_count = tree.leaf_count();
    proof.leaf_indices = normalize_indices(tree.leaf_count(), leaf_indices);

    std::vector<std::uint64_t> active = proof.leaf_indices;
    for (std::size_t level = 0; level < tree.depth(); ++level) {
        SiblingPairs sp = sibling_pairs(active);
        record_layer(trace, active, sp);

        // indices present in the pruned pairs but not in the active set;
        // both lists are sorted, so one pass suffices
        std::size_t ai = 0;
        for (const auto& [even, odd] : sp.pairs_pruned) {
            for (std::uint64_t j : {even, odd}) {
                while (ai < active.size() && active[ai] < j) ++ai;
                if (ai < active.size() && active[ai] == j) continue;
                proof.hashes.push_back(tree.node(level, j));
                if (trace) trace->hash_positions.emplace_back(level, j);
            }
        }
        active = advance_active(sp.pairs_pruned);
    }
    if (trace) trace->active.push_back(active);
    return proof;
}

bool verify_compact(const CompactMultiproof& proof,
                    std::span<const Digest> element_hashes,
                    const Digest& expected_root,
                    MultiproofTrace* trace) {
    if (proof.leaf_indices.empty())
        throw std::invalid_argument("empty index list");
    if (element_hashes.size() != proof.leaf_indices.size())
        throw std::invalid_argument("element hash count does not match leaf indices");
    if (proof.leaf_count == 0 || proof.leaf_indices.back() >= proof.leaf_count)
        throw std::invalid_argument("leaf index out of range");

    const std::size_t depth = tree_depth_for(proof.leaf_count);
    std::vector<std::uint64_t> active = proof.leaf_indices;
    std::vector<Digest> working(element_hashes.begin(), element_hashes.end());
    std::size_t consumed = 0;

    for (std::size_t level = 0; level < depth; ++level) {
        SiblingPairs sp = sibling_pairs(active);
        record_layer(trace, active, sp);

        std::vector<Digest> next;
        next.reserve(sp.pairs_pruned.size());
        std::size_t ai = 0; // lockstep cursor into pairs / active / working
        for (const auto& pair : sp.pairs_pruned) {
            const bool both_active =
                ai + 1 < sp.pairs.size() && sp.pairs[ai + 1] == pair;
            if (both_active) {
                next.push_back(hash_node(working[ai], working[ai + 1]));
                ai += 2;
            } else {
                if (consumed == proof.hashes.size())
                    throw MalformedProof("malformed proof: hash list exhausted");
                const Digest& sibling = proof.hashes[consumed++];
                if (trace)
                    trace->hash_positions.emplace_back(level, sibling_index(active[ai]));
                next.push_back((active[ai] & 1) ? hash_node(sibling, working[ai])
                                                : hash_node(working[ai], sibling));
                ai += 1;
            }
        }
        working = std::move(next);
        active = advance_active(sp.pairs_pruned);
    }
    if (trace) trace->active.push_back(active);

    if (consumed != proof.hashes.size())
        throw MalformedProof("malformed proof: surplus hashes");
    return working.size() == 1 && working.front() == expected_root;
}

bool verify_compact(const CompactMultiproof& proof,
                    std::span<const std::pair<std::uint64_t, Bytes>> elements,
                    const Digest& expected_root) {
    std::vector<std::pair<std::uint64_t, Bytes>> sorted(elements.begin(), elements.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::uint64_t> indices;
    std::vector<Digest> hashes;
    for (const auto& [index, bytes] : sorted) {
        indices.push_back(index);
        hashes.push_back(hash_leaf(std::span(bytes)));
    }
    if (indices != proof.leaf_indices)
        throw std::invalid_argument("element indices do not match proof leaf indices");
    return verify_compact(proof, hashes, expected_root);
}

StandardMultiproof generate_standard(const MerkleTree& tree,
                                     std::span<const std::uint64_t> leaf_indices) {
    StandardMultiproof proof;
    proof.leaf_count = tree.leaf_count();
    for (auto [layer, index] : multiproof_positions(tree.leaf_count(), leaf_indices))
        proof.entries.push_back({static_cast<std::uint8_t>(layer), index,
                                 tree.node(layer, index)});
    return proof;
}

bool verify_standard(const StandardMultiproof& proof,
                     std::span<const std::uint64_t> leaf_indices,
                     std::span<const Digest> element_hashes,
                     const Digest& expected_root) {
    if (leaf_indices.empty())
        throw std::invalid_argument("empty index list");
    if (element_hashes.size() != leaf_indices.size())
        throw std::invalid_argument("element hash count does not match leaf indices");

    const std::size_t depth = tree_depth_for(proof.leaf_count);
    const std::uint64_t padded = padded_leaf_count_for(proof.leaf_count);

    std::map<std::pair<std::size_t, std::uint64_t>, Digest> known;
    auto seed = [&](std::size_t layer, std::uint64_t index, const Digest& d) {
        if (layer > depth || index >= (padded >> layer))
            throw MalformedProof("position outside tree geometry");
        auto [it, inserted] = known.try_emplace({layer, index}, d);
        if (!inserted && it->second != d)
            throw MalformedProof("conflicting duplicate positions");
    };
    for (const StandardEntry& e : proof.entries)
        seed(e.layer, e.index, e.digest);
    for (std::size_t i = 0; i < leaf_indices.size(); ++i) {
        if (leaf_indices[i] >= proof.leaf_count)
            throw std::invalid_argument("leaf index out of range");
        seed(0, leaf_indices[i], element_hashes[i]);
    }

    for (std::size_t level = 0; level < depth; ++level) {
        const std::uint64_t width = padded >> level;
        for (std::uint64_t i = 0; i < width; i += 2) {
            auto left = known.find({level, i});
            auto right = known.find({level, i + 1});
            if (left != known.end() && right != known.end())
                seed(level + 1, i / 2, hash_node(left->second, right->second));
        }
    }

    auto root = known.find({depth, 0});
    if (root == known.end())
        throw MalformedProof("incomplete proof");
    return root->second == expected_root;
}

std::vector<std::pair<std::size_t, std::uint64_t>> multiproof_positions(
    std::uint64_t leaf_count, std::span<const std::uint64_t> leaf_indices) {
    std::vector<std::uint64_t> active = normalize_indices(leaf_count, leaf_indices);
    std::vector<std::pair<std::size_t, std::uint64_t>> positions;
    const std::size_t depth = tree_depth_for(leaf_count);
    for (std::size_t level = 0; level < depth; ++level) {
        SiblingPairs sp = sibling_pairs(active);
        std::size_t ai = 0;
        for (const auto& [even, odd] : sp.pairs_pruned) {
            for (std::uint64_t j : {even, odd}) {
                while (ai < active.size() && active[ai] < j) ++ai;
                if (ai < active.size() && active[ai] == j) continue;
                positions.emplace_back(level, j);
            }
        }
        active = advance_active(sp.pairs_pruned);
    }
    return positions;
}

double ProofSizeReport::compact_saving_vs_single_pct() const {
    return 100.0 * (1.0 - static_cast<double>(compact_bytes) /
                              static_cast<double>(single_bytes));
}

double ProofSizeReport::compact_saving_vs_standard_pct() const {
    return 100.0 * (1.0 - static_cast<double>(compact_bytes) /
                              static_cast<double>(standard_bytes));
}

ProofSizeReport proof_size_report(std::uint64_t leaf_count,
                                  std::span<const std::uint64_t> leaf_indices) {
    const std::vector<std::uint64_t> subset = normalize_indices(leaf_count, leaf_indices);
    const std::size_t k = subset.size();
    const std::size_t depth = tree_depth_for(leaf_count);
    const std::size_t h = multiproof_positions(leaf_count, subset).size();

    ProofSizeReport report;
    report.leaf_count = leaf_count;
    report.subset_size = k;
    report.depth = depth;
    report.single_hashes = k * depth;
    report.standard_hashes = h;
    report.compact_hashes = h;
    report.single_bytes = k * single_encoded_size(depth);
    report.standard_bytes = standard_encoded_size(h);
    report.compact_bytes = compact_encoded_size(k, h);
    return report;
}

} // namespace cmmp
