#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmmp {

/// Fixed 32-byte hash value; the unit of all tree nodes and proofs.
using Digest = std::array<std::uint8_t, 32>;

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::size_t kDigestSize = 32;

std::string to_hex(const Digest& d);

/// Parses 64 lowercase/uppercase hex chars; nullopt on bad length or char.
std::optional<Digest> digest_from_hex(std::string_view hex);

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

} // namespace cmmp
