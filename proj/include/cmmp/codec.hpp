#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "cmmp/merkle_tree.hpp"
#include "cmmp/multiproof.hpp"

namespace cmmp {

// Wire envelope: "CMMP" magic, version byte, kind byte, body.
// All integers little-endian fixed width; digests raw 32 bytes.
//
//   compact  (0x01): leaf_count u64, k u32, k leaf indices u64 each
//                    (strictly increasing), then the hash list. The hash
//                    count is implied: the remainder must be a whole
//                    number of digests.
//   standard (0x02): leaf_count u64, entry count u32, then per entry
//                    layer u8, index u64, digest (41 bytes each).
//   single   (0x03): leaf_count u64, leaf_index u64, sibling count u32,
//                    then the siblings bottom-up.

inline constexpr char kWireMagic[4] = {'C', 'M', 'M', 'P'};
inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::uint8_t kKindCompact = 0x01;
inline constexpr std::uint8_t kKindStandard = 0x02;
inline constexpr std::uint8_t kKindSingle = 0x03;

constexpr std::size_t compact_encoded_size(std::size_t k, std::size_t h) {
    return 6 + 8 + 4 + 8 * k + 32 * h;
}
constexpr std::size_t standard_encoded_size(std::size_t h) {
    return 6 + 8 + 4 + 41 * h;
}
constexpr std::size_t single_encoded_size(std::size_t depth) {
    return 6 + 8 + 8 + 4 + 32 * depth;
}

enum class DecodeErrc {
    bad_magic,
    bad_version,
    bad_kind,
    truncated,
    trailing_bytes,
    non_monotonic_indices,
    index_out_of_range,
    bad_entry_order,
    bad_geometry,
};

const char* to_string(DecodeErrc e);

class DecodeError : public std::runtime_error {
public:
    DecodeError(DecodeErrc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    DecodeErrc code() const { return code_; }

private:
    DecodeErrc code_;
};

Bytes encode_compact(const CompactMultiproof& proof);
CompactMultiproof decode_compact(std::span<const std::uint8_t> bytes);

Bytes encode_standard(const StandardMultiproof& proof);
StandardMultiproof decode_standard(std::span<const std::uint8_t> bytes);

Bytes encode_single(const SingleProof& proof, std::uint64_t leaf_count);
/// Returns the proof plus the encoded leaf count.
std::pair<SingleProof, std::uint64_t> decode_single(std::span<const std::uint8_t> bytes);

} // namespace cmmp
