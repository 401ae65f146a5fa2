// cmmp - Merkle tree CLI: roots, compact multiproofs, size comparison.
//
// Commands:
//   cmmp root FILE
//   cmmp prove FILE --indices I1,I2,... --out PATH
//   cmmp verify --root HEX --proof PATH --elements FILE
//   cmmp compare --leaf-count N (--indices ... | --random K [--seed S])
//
// Data goes to stdout, diagnostics to stderr. verify exits 0 on success,
// 1 on root mismatch, 2 on malformed proof or input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmmp/codec.hpp"
#include "cmmp/hash.hpp"
#include "cmmp/merkle_tree.hpp"
#include "cmmp/multiproof.hpp"

namespace {

// One element per line; trailing newline optional, the final empty line
// produced by it is not an element. Interior empty lines are elements.
std::vector<cmmp::Bytes> read_elements(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    if (content.empty())
        throw std::runtime_error(path + " is empty");
    if (content.back() == '\n')
        content.pop_back();

    std::vector<cmmp::Bytes> elements;
    std::size_t start = 0;
    while (true) {
        std::size_t nl = content.find('\n', start);
        std::string_view line(content.data() + start,
                              (nl == std::string::npos ? content.size() : nl) - start);
        elements.push_back(cmmp::to_bytes(line));
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    return elements;
}

std::vector<std::uint64_t> parse_indices(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long long v = std::stoull(item, &used);
        if (used != item.size())
            throw std::runtime_error("bad index '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw std::runtime_error("no indices given");
    return out;
}

std::vector<std::uint64_t> sample_indices(std::uint64_t leaf_count, std::uint64_t k,
                                          std::uint64_t seed) {
    if (k > leaf_count)
        throw std::runtime_error("cannot sample " + std::to_string(k) +
                                 " distinct indices from " + std::to_string(leaf_count) +
                                 " leaves");
    std::mt19937_64 rng(seed);
    std::set<std::uint64_t> picked;
    while (picked.size() < k)
        picked.insert(rng() % leaf_count);
    return {picked.begin(), picked.end()};
}

int cmd_root(const std::string& file) {
    auto elements = read_elements(file);
    auto tree = cmmp::MerkleTree::build(elements);
    std::cout << cmmp::to_hex(tree.root()) << "\n";
    return 0;
}

int cmd_prove(const std::string& file, const std::string& indices_csv,
              const std::string& out_path) {
    auto elements = read_elements(file);
    auto indices = parse_indices(indices_csv);
    auto tree = cmmp::MerkleTree::build(elements);
    auto proof = cmmp::generate_compact(tree, indices);
    cmmp::Bytes wire = cmmp::encode_compact(proof);

    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + out_path);
    out.write(reinterpret_cast<const char*>(wire.data()),
              static_cast<std::streamsize>(wire.size()));
    if (!out)
        throw std::runtime_error("short write to " + out_path);
    std::cout << wire.size() << "\n";
    return 0;
}

int cmd_verify(const std::string& root_hex, const std::string& proof_path,
               const std::string& elements_path) {
    auto root = cmmp::digest_from_hex(root_hex);
    if (!root) {
        std::cerr << "bad root hex\n";
        return 2;
    }
    cmmp::Bytes wire;
    {
        std::ifstream in(proof_path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot open " << proof_path << "\n";
            return 2;
        }
        wire.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        auto proof = cmmp::decode_compact(wire);
        auto elements = read_elements(elements_path);
        if (elements.size() != proof.leaf_indices.size()) {
            std::cerr << "element count " << elements.size()
                      << " does not match proof's " << proof.leaf_indices.size()
                      << " indices\n";
            return 2;
        }
        std::vector<cmmp::Digest> hashes;
        hashes.reserve(elements.size());
        for (const auto& e : elements)
            hashes.push_back(cmmp::hash_leaf(std::span(e)));
        if (cmmp::verify_compact(proof, hashes, *root)) {
            std::cout << "OK\n";
            return 0;
        }
        std::cout << "INVALID\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << "\n";
        return 2;
    }
}

int cmd_compare(std::uint64_t leaf_count, const std::string& indices_csv,
                std::uint64_t random_k, std::uint64_t seed) {
    std::vector<std::uint64_t> indices;
    if (!indices_csv.empty())
        indices = parse_indices(indices_csv);
    else
        indices = sample_indices(leaf_count, random_k, seed);

    auto report = cmmp::proof_size_report(leaf_count, indices);

    auto saving = [&](std::size_t bytes) {
        return 100.0 * (1.0 - static_cast<double>(bytes) /
                                  static_cast<double>(report.single_bytes));
    };
    std::printf("leaf_count=%llu k=%zu depth=%zu\n",
                static_cast<unsigned long long>(report.leaf_count), report.subset_size,
                report.depth);
    std::printf("%-10s %10s %12s %18s\n", "scheme", "hashes", "bytes",
                "saving_vs_single");
    std::printf("%-10s %10zu %12zu %17.2f%%\n", "single", report.single_hashes,
                report.single_bytes, 0.0);
    std::printf("%-10s %10zu %12zu %17.2f%%\n", "standard", report.standard_hashes,
                report.standard_bytes, saving(report.standard_bytes));
    std::printf("%-10s %10zu %12zu %17.2f%%\n", "compact", report.compact_hashes,
                report.compact_bytes, saving(report.compact_bytes));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Merkle tree roots and compact multiproofs"};
    app.require_subcommand(1);

    std::string file, indices_csv, out_path, root_hex, proof_path, elements_path;
    std::uint64_t leaf_count = 0, random_k = 0, seed = 0;

    auto* root_cmd = app.add_subcommand("root", "Print the Merkle root of a file");
    root_cmd->add_option("file", file, "elements, one per line")->required();

    auto* prove_cmd = app.add_subcommand("prove", "Write a compact multiproof");
    prove_cmd->add_option("file", file, "elements, one per line")->required();
    prove_cmd->add_option("--indices", indices_csv, "comma-separated leaf indices")
        ->required();
    prove_cmd->add_option("--out", out_path, "proof output path")->required();

    auto* verify_cmd = app.add_subcommand("verify", "Verify a compact multiproof");
    verify_cmd->add_option("--root", root_hex, "expected root, lowercase hex")
        ->required();
    verify_cmd->add_option("--proof", proof_path, "proof file")->required();
    verify_cmd->add_option("--elements", elements_path,
                           "proven elements in ascending index order")
        ->required();

    auto* compare_cmd = app.add_subcommand("compare", "Proof size comparison table");
    compare_cmd->add_option("--leaf-count", leaf_count, "tree size")->required();
    auto* opt_indices =
        compare_cmd->add_option("--indices", indices_csv, "comma-separated leaf indices");
    auto* opt_random =
        compare_cmd->add_option("--random", random_k, "sample K distinct indices");
    compare_cmd->add_option("--seed", seed, "RNG seed for --random");
    opt_indices->excludes(opt_random);

    CLI11_PARSE(app, argc, argv);

    try {
        if (root_cmd->parsed()) return cmd_root(file);
        if (prove_cmd->parsed()) return cmd_prove(file, indices_csv, out_path);
        if (verify_cmd->parsed())
            return cmd_verify(root_hex, proof_path, elements_path);
        if (compare_cmd->parsed()) {
            if (indices_csv.empty() && random_k == 0)
                throw std::runtime_error("compare needs --indices or --random K");
            return cmd_compare(leaf_count, indices_csv, random_k, seed);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
