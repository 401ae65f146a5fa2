#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "cmmp/codec.hpp"
#include "cmmp/hash.hpp"
#include "support/test_util.hpp"

namespace fs = std::filesystem;
using namespace cmmp;
using namespace cmmp_test;

namespace {

const std::string kCli = CMMP_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd =
        kCli + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class TempDir {
public:
    TempDir() {
        dir_ = fs::temp_directory_path() /
               ("cmmp-cli-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~TempDir() { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& content) {
        const fs::path p = dir_ / name;
        std::ofstream(p, std::ios::binary) << content;
        return p.string();
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    static inline int counter_ = 0;
    fs::path dir_;
};

std::string lines_for(int count) {
    std::string out;
    for (int i = 0; i < count; ++i) out += "T" + std::to_string(i) + "\n";
    return out;
}

Bytes slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("root: golden value and determinism") {
    TempDir tmp;
    auto file = tmp.write("one.txt", "a\n");
    auto first = run("root " + file);
    CHECK(first.exit_code == 0);
    CHECK(first.out == to_hex(hash_leaf("a")) + "\n");
    CHECK(run("root " + file).out == first.out);
}

TEST_CASE("root: 16-line file matches the library") {
    TempDir tmp;
    auto file = tmp.write("leaves.txt", lines_for(16));
    std::vector<Bytes> elements;
    for (int i = 0; i < 16; ++i)
        elements.push_back(to_bytes("T" + std::to_string(i)));
    auto tree = MerkleTree::build(elements);
    auto r = run("root " + file);
    CHECK(r.exit_code == 0);
    CHECK(r.out == to_hex(tree.root()) + "\n");
}

TEST_CASE("root: missing and empty files fail") {
    TempDir tmp;
    CHECK(run("root " + tmp.path("absent.txt")).exit_code != 0);
    auto empty = tmp.write("empty.txt", "");
    CHECK(run("root " + empty).exit_code != 0);
}

TEST_CASE("prove: worked example writes a 242-byte proof") {
    TempDir tmp;
    auto file = tmp.write("leaves.txt", lines_for(16));
    auto out = tmp.path("proof.bin");
    auto r = run("prove " + file + " --indices 2,3,8,13 --out " + out);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "242\n");
    CHECK(fs::file_size(out) == 242);

    // the CLI's proof decodes and verifies through the library directly
    auto proof = decode_compact(slurp(out));
    CHECK(proof.leaf_count == 16);
    CHECK(proof.leaf_indices == std::vector<std::uint64_t>{2, 3, 8, 13});
}

TEST_CASE("prove: single-line file gives the minimal 26-byte proof") {
    TempDir tmp;
    auto file = tmp.write("one.txt", "a\n");
    auto out = tmp.path("proof.bin");
    auto r = run("prove " + file + " --indices 0 --out " + out);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "26\n");
}

TEST_CASE("prove: out-of-range index names the offender") {
    TempDir tmp;
    auto file = tmp.write("leaves.txt", lines_for(16));
    auto r = run("prove " + file + " --indices 99 --out " + tmp.path("p.bin"), true);
    CHECK(r.exit_code != 0);
    CHECK(r.out.find("99") != std::string::npos);
}

TEST_CASE("verify: three-way exit code contract") {
    TempDir tmp;
    auto file = tmp.write("leaves.txt", lines_for(16));
    auto proof_path = tmp.path("proof.bin");
    REQUIRE(run("prove " + file + " --indices 2,3,8,13 --out " + proof_path).exit_code ==
            0);
    auto root_hex = run("root " + file).out;
    root_hex.pop_back(); // newline
    auto subset = tmp.write("subset.txt", "T2\nT3\nT8\nT13\n");

    auto ok = run("verify --root " + root_hex + " --proof " + proof_path +
                  " --elements " + subset);
    CHECK(ok.exit_code == 0);
    CHECK(ok.out == "OK\n");

    std::string wrong_root(64, '0');
    auto invalid = run("verify --root " + wrong_root + " --proof " + proof_path +
                       " --elements " + subset);
    CHECK(invalid.exit_code == 1);
    CHECK(invalid.out == "INVALID\n");

    auto wire = slurp(proof_path);
    wire.pop_back();
    auto truncated = tmp.path("truncated.bin");
    std::ofstream(truncated, std::ios::binary)
        .write(reinterpret_cast<const char*>(wire.data()),
               static_cast<std::streamsize>(wire.size()));
    CHECK(run("verify --root " + root_hex + " --proof " + truncated + " --elements " +
              subset)
              .exit_code == 2);

    // wrong subset elements: structurally fine, wrong digests
    auto bad_subset = tmp.write("bad_subset.txt", "T2\nT3\nT8\nT14\n");
    CHECK(run("verify --root " + root_hex + " --proof " + proof_path + " --elements " +
              bad_subset)
              .exit_code == 1);

    CHECK(run("verify --root nothex --proof " + proof_path + " --elements " + subset)
              .exit_code == 2);
}

TEST_CASE("compare: Fig-3-style counts and fixed-seed determinism") {
    auto r = run("compare --leaf-count 8 --indices 0,2,5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("single") != std::string::npos);
    CHECK(r.out.find("compact") != std::string::npos);
    // 9 single-proof hashes vs 4 multiproof hashes
    CHECK(r.out.find(" 9 ") != std::string::npos);
    CHECK(r.out.find(" 4 ") != std::string::npos);

    auto a = run("compare --leaf-count 1024 --random 16 --seed 7");
    auto b = run("compare --leaf-count 1024 --random 16 --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    CHECK(run("compare --leaf-count 4 --random 5", true).exit_code != 0);
    CHECK(run("compare --leaf-count 4", true).exit_code != 0);
}

TEST_CASE("compare: degenerate one-leaf table") {
    auto r = run("compare --leaf-count 1 --indices 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("leaf_count=1 k=1 depth=0") != std::string::npos);
}
