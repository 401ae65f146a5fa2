#include "cmmp/digest.hpp"

namespace cmmp {

std::string to_hex(const Digest& d) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * kDigestSize);
    for (std::uint8_t b : d) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

namespace {
int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
} // namespace

std::optional<Digest> digest_from_hex(std::string_view hex) {
    if (hex.size() != 2 * kDigestSize) return std::nullopt;
    Digest d{};
    for (std::size_t i = 0; i < kDigestSize; ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        d[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return d;
}

} // namespace cmmp
