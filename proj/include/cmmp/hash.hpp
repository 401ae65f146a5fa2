#pragma once

#include <span>
#include <string_view>

#include "cmmp/digest.hpp"

namespace cmmp {

// Domain-separated SHA-256. All digests in the tree go through one of
// these three entry points; the prefix byte keeps the roles disjoint:
//   0x00 leaf data, 0x01 internal node, 0x02 padding.

Digest hash_leaf(std::span<const std::uint8_t> data);

inline Digest hash_leaf(std::string_view data) {
    return hash_leaf(std::span(reinterpret_cast<const std::uint8_t*>(data.data()),
                               data.size()));
}

/// Parent digest from two children; order-sensitive (left first).
Digest hash_node(const Digest& left, const Digest& right);

/// Constant digest filling the leaf layer up to a power of two.
Digest padding_digest();

} // namespace cmmp
