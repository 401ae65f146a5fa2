#include "cmmp/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace cmmp {

namespace {

struct CtxFree {
    void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};

Digest sha256(std::initializer_list<std::span<const std::uint8_t>> parts) {
    std::unique_ptr<EVP_MD_CTX, CtxFree> ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 init failed");
    for (auto part : parts)
        if (EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1)
            throw std::runtime_error("sha256 update failed");
    Digest out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != kDigestSize)
        throw std::runtime_error("sha256 final failed");
    return out;
}

constexpr std::uint8_t kLeafPrefix = 0x00;
constexpr std::uint8_t kNodePrefix = 0x01;
constexpr std::uint8_t kPaddingPrefix = 0x02;

} // namespace

Digest hash_leaf(std::span<const std::uint8_t> data) {
    return sha256({std::span(&kLeafPrefix, 1), data});
}

Digest hash_node(const Digest& left, const Digest& right) {
    return sha256({std::span(&kNodePrefix, 1), std::span(left), std::span(right)});
}

Digest padding_digest() {
    static const Digest d = sha256({std::span(&kPaddingPrefix, 1)});
    return d;
}

} // namespace cmmp
