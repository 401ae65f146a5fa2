#include "cmmp/codec.hpp"

#include <cstring>

namespace cmmp {

const char* to_string(DecodeErrc e) {
    switch (e) {
        case DecodeErrc::bad_magic: return "bad magic";
        case DecodeErrc::bad_version: return "unsupported version";
        case DecodeErrc::bad_kind: return "unknown proof kind";
        case DecodeErrc::truncated: return "truncated input";
        case DecodeErrc::trailing_bytes: return "trailing bytes";
        case DecodeErrc::non_monotonic_indices: return "indices not strictly increasing";
        case DecodeErrc::index_out_of_range: return "index out of range";
        case DecodeErrc::bad_entry_order: return "entries not sorted by (layer, index)";
        case DecodeErrc::bad_geometry: return "position outside tree geometry";
    }
    return "decode error";
}

namespace {

void put_u32(Bytes& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(Bytes& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_digest(Bytes& out, const Digest& d) {
    out.insert(out.end(), d.begin(), d.end());
}

void put_header(Bytes& out, std::uint8_t kind) {
    out.insert(out.end(), kWireMagic, kWireMagic + 4);
    out.push_back(kWireVersion);
    out.push_back(kind);
}

[[noreturn]] void fail(DecodeErrc code) { throw DecodeError(code, to_string(code)); }

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes_[pos_++]} << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t{bytes_[pos_++]} << (8 * i);
        return v;
    }

    Digest digest() {
        need(kDigestSize);
        Digest d{};
        std::memcpy(d.data(), bytes_.data() + pos_, kDigestSize);
        pos_ += kDigestSize;
        return d;
    }

    void header(std::uint8_t expected_kind) {
        need(6);
        if (std::memcmp(bytes_.data(), kWireMagic, 4) != 0) fail(DecodeErrc::bad_magic);
        pos_ = 4;
        if (u8() != kWireVersion) fail(DecodeErrc::bad_version);
        const std::uint8_t kind = u8();
        if (kind != kKindCompact && kind != kKindStandard && kind != kKindSingle)
            fail(DecodeErrc::bad_kind);
        if (kind != expected_kind) fail(DecodeErrc::bad_kind);
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

    void finish() {
        if (pos_ != bytes_.size()) fail(DecodeErrc::trailing_bytes);
    }

private:
    void need(std::size_t n) {
        if (remaining() < n) fail(DecodeErrc::truncated);
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

Bytes encode_compact(const CompactMultiproof& proof) {
    Bytes out;
    out.reserve(compact_encoded_size(proof.leaf_indices.size(), proof.hashes.size()));
    put_header(out, kKindCompact);
    put_u64(out, proof.leaf_count);
    put_u32(out, static_cast<std::uint32_t>(proof.leaf_indices.size()));
    for (std::uint64_t i : proof.leaf_indices) put_u64(out, i);
    for (const Digest& d : proof.hashes) put_digest(out, d);
    return out;
}

CompactMultiproof decode_compact(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    r.header(kKindCompact);

    CompactMultiproof proof;
    proof.leaf_count = r.u64();
    const std::uint32_t k = r.u32();
    if (proof.leaf_count == 0 || k == 0) fail(DecodeErrc::bad_geometry);
    // count fields are untrusted; never reserve more than the input can hold
    if (r.remaining() < std::size_t{k} * 8) fail(DecodeErrc::truncated);
    proof.leaf_indices.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        const std::uint64_t index = r.u64();
        if (!proof.leaf_indices.empty() && index <= proof.leaf_indices.back())
            fail(DecodeErrc::non_monotonic_indices);
        if (index >= proof.leaf_count) fail(DecodeErrc::index_out_of_range);
        proof.leaf_indices.push_back(index);
    }
    // hash count is implied; whatever remains must be whole digests
    if (r.remaining() % kDigestSize != 0) fail(DecodeErrc::trailing_bytes);
    proof.hashes.reserve(r.remaining() / kDigestSize);
    while (r.remaining() > 0) proof.hashes.push_back(r.digest());
    r.finish();
    return proof;
}

Bytes encode_standard(const StandardMultiproof& proof) {
    Bytes out;
    out.reserve(standard_encoded_size(proof.entries.size()));
    put_header(out, kKindStandard);
    put_u64(out, proof.leaf_count);
    put_u32(out, static_cast<std::uint32_t>(proof.entries.size()));
    for (const StandardEntry& e : proof.entries) {
        out.push_back(e.layer);
        put_u64(out, e.index);
        put_digest(out, e.digest);
    }
    return out;
}

StandardMultiproof decode_standard(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    r.header(kKindStandard);

    StandardMultiproof proof;
    proof.leaf_count = r.u64();
    const std::size_t depth = tree_depth_for(proof.leaf_count);
    const std::uint64_t padded = padded_leaf_count_for(proof.leaf_count);
    const std::uint32_t count = r.u32();
    if (r.remaining() < std::size_t{count} * 41) fail(DecodeErrc::truncated);
    proof.entries.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        StandardEntry e;
        e.layer = r.u8();
        e.index = r.u64();
        e.digest = r.digest();
        if (e.layer > depth || e.index >= (padded >> e.layer))
            fail(DecodeErrc::bad_geometry);
        if (!proof.entries.empty()) {
            const StandardEntry& prev = proof.entries.back();
            if (std::pair(e.layer, e.index) <= std::pair(prev.layer, prev.index))
                fail(DecodeErrc::bad_entry_order);
        }
        proof.entries.push_back(e);
    }
    r.finish();
    return proof;
}

Bytes encode_single(const SingleProof& proof, std::uint64_t leaf_count) {
    Bytes out;
    out.reserve(single_encoded_size(proof.siblings.size()));
    put_header(out, kKindSingle);
    put_u64(out, leaf_count);
    put_u64(out, proof.leaf_index);
    put_u32(out, static_cast<std::uint32_t>(proof.siblings.size()));
    for (const Digest& d : proof.siblings) put_digest(out, d);
    return out;
}

std::pair<SingleProof, std::uint64_t> decode_single(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    r.header(kKindSingle);

    const std::uint64_t leaf_count = r.u64();
    SingleProof proof;
    proof.leaf_index = r.u64();
    if (leaf_count == 0 || proof.leaf_index >= leaf_count)
        fail(DecodeErrc::index_out_of_range);
    const std::uint32_t count = r.u32();
    if (count != tree_depth_for(leaf_count)) fail(DecodeErrc::bad_geometry);
    if (r.remaining() < std::size_t{count} * kDigestSize) fail(DecodeErrc::truncated);
    proof.siblings.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) proof.siblings.push_back(r.digest());
    r.finish();
    return {std::move(proof), leaf_count};
}

} // namespace cmmp
