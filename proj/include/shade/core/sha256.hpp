#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace shade {

// SHA-256 (FIPS 180-4), used for content digests, fixture keys, and
// manifest entries. Streaming interface plus a one-shot helper.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(const void* data, std::size_t len);
    void update(std::string_view s) { update(s.data(), s.size()); }

    // Finalizes and returns the lowercase hex digest. The object must be
    // reset() before reuse.
    std::string hex_digest();

private:
    void process_block(const std::uint8_t* block);

    std::uint32_t state_[8];
    std::uint64_t total_len_;
    std::uint8_t buffer_[64];
    std::size_t buffer_len_;
};

std::string sha256_hex(std::string_view data);

} // namespace shade
