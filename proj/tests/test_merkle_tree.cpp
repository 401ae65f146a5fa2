#include <doctest.h>

#include <random>

#include "cmmp/merkle_tree.hpp"
#include "support/test_util.hpp"

using namespace cmmp;
using namespace cmmp_test;

namespace {

// Straight-line bottom-up fold, kept separate from MerkleTree::build.
Digest brute_force_root(const std::vector<Bytes>& elements) {
    std::vector<Digest> layer;
    for (const auto& e : elements) layer.push_back(hash_leaf(std::span(e)));
    while ((layer.size() & (layer.size() - 1)) != 0)
        layer.push_back(padding_digest());
    while (layer.size() > 1) {
        std::vector<Digest> next;
        for (std::size_t i = 0; i < layer.size(); i += 2)
            next.push_back(hash_node(layer[i], layer[i + 1]));
        layer = next;
    }
    return layer[0];
}

} // namespace

TEST_CASE("single-element tree") {
    auto elements = make_elements(1);
    auto tree = MerkleTree::build(elements);
    CHECK(tree.leaf_count() == 1);
    CHECK(tree.padded_leaf_count() == 1);
    CHECK(tree.depth() == 0);
    CHECK(tree.layers().size() == 1);
    CHECK(tree.root() == hash_leaf(std::span(elements[0])));
}

TEST_CASE("empty element list is rejected") {
    std::vector<Bytes> none;
    CHECK_THROWS_AS(MerkleTree::build(none), std::invalid_argument);
}

TEST_CASE("16-element tree has layers 16,8,4,2,1") {
    auto tree = MerkleTree::build(make_elements(16));
    REQUIRE(tree.layers().size() == 5);
    CHECK(tree.layers()[0].size() == 16);
    CHECK(tree.layers()[1].size() == 8);
    CHECK(tree.layers()[2].size() == 4);
    CHECK(tree.layers()[3].size() == 2);
    CHECK(tree.layers()[4].size() == 1);
}

TEST_CASE("5-element tree pads to 8 and matches brute-force root") {
    auto elements = make_elements(5);
    auto tree = MerkleTree::build(elements);
    CHECK(tree.padded_leaf_count() == 8);
    REQUIRE(tree.layers()[0].size() == 8);
    for (std::size_t j = 5; j < 8; ++j)
        CHECK(tree.layers()[0][j] == padding_digest());
    CHECK(tree.root() == brute_force_root(elements));
}

TEST_CASE("layer recomputation reproduces each layer bytewise") {
    auto tree = MerkleTree::build(make_elements(11));
    for (std::size_t l = 1; l < tree.layers().size(); ++l)
        for (std::size_t i = 0; i < tree.layers()[l].size(); ++i)
            CHECK(tree.layers()[l][i] ==
                  hash_node(tree.layers()[l - 1][2 * i], tree.layers()[l - 1][2 * i + 1]));
}

TEST_CASE("single proof: hand-traced siblings for 16 leaves, index 3") {
    auto tree = MerkleTree::build(make_elements(16));
    auto proof = tree.generate_single_proof(3);
    REQUIRE(proof.siblings.size() == 4);
    CHECK(proof.siblings[0] == tree.node(0, 2));
    CHECK(proof.siblings[1] == tree.node(1, 0));
    CHECK(proof.siblings[2] == tree.node(2, 1));
    CHECK(proof.siblings[3] == tree.node(3, 1));
}

TEST_CASE("single proof: depth and edge cases") {
    auto one = MerkleTree::build(make_elements(1));
    CHECK(one.generate_single_proof(0).siblings.empty());
    CHECK(verify_single_proof(one.generate_single_proof(0), "e-0", 1, one.root()));

    auto eight = MerkleTree::build(make_elements(8));
    for (std::uint64_t i = 0; i < 8; ++i)
        CHECK(eight.generate_single_proof(i).siblings.size() == 3);

    CHECK_THROWS_AS(eight.generate_single_proof(8), std::out_of_range);
}

TEST_CASE("single proof: sibling/depth mismatch is an error, not false") {
    auto tree = MerkleTree::build(make_elements(8));
    auto proof = tree.generate_single_proof(2);
    proof.siblings.pop_back();
    CHECK_THROWS_AS(verify_single_proof(proof, "e-2", 8, tree.root()),
                    std::invalid_argument);
}

TEST_CASE("single proof round trip for every N in 1..256 (sampled indices)") {
    std::mt19937_64 rng(101);
    for (std::uint64_t n = 1; n <= 256; ++n) {
        auto elements = make_elements(n);
        auto tree = MerkleTree::build(elements);
        // every index for small trees, a handful for large ones
        std::vector<std::uint64_t> indices;
        if (n <= 16)
            for (std::uint64_t i = 0; i < n; ++i) indices.push_back(i);
        else
            for (int t = 0; t < 6; ++t) indices.push_back(rng() % n);
        for (std::uint64_t i : indices) {
            auto proof = tree.generate_single_proof(i);
            CHECK(proof.siblings.size() == tree.depth());
            CHECK(verify_single_proof(proof, std::span(elements[i]), n, tree.root()));
        }
    }
}

TEST_CASE("single proof: single-bit tampering never verifies") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t n = 2 + rng() % 120;
        auto elements = make_elements(n, "tamper" + std::to_string(trial));
        auto tree = MerkleTree::build(elements);
        const std::uint64_t i = rng() % n;
        auto proof = tree.generate_single_proof(i);

        const int what = static_cast<int>(rng() % 3);
        if (what == 0) {
            Bytes mutated = elements[i];
            mutated[rng() % mutated.size()] ^= std::uint8_t(1 << (rng() % 8));
            CHECK_FALSE(verify_single_proof(proof, std::span(mutated), n, tree.root()));
        } else if (what == 1) {
            auto& sib = proof.siblings[rng() % proof.siblings.size()];
            sib[rng() % 32] ^= std::uint8_t(1 << (rng() % 8));
            CHECK_FALSE(verify_single_proof(proof, std::span(elements[i]), n, tree.root()));
        } else {
            Digest root = tree.root();
            root[rng() % 32] ^= std::uint8_t(1 << (rng() % 8));
            CHECK_FALSE(verify_single_proof(proof, std::span(elements[i]), n, root));
        }
    }
}
