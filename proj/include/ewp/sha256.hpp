#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace ewp {

// Incremental SHA-256 (FIPS 180-2).
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(const void* data, std::size_t len);

    // Finalizes and returns the digest as 64 lowercase hex characters.
    std::string hex_digest();

private:
    void process_block(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_{};
    std::array<std::uint8_t, 64> buffer_{};
    std::size_t buffered_ = 0;
    std::uint64_t total_bytes_ = 0;
};

std::string sha256_hex(std::string_view data);

// Streams the file through Sha256; throws Error{io_failure} if unreadable.
std::string sha256_file(const std::filesystem::path& path);

} // namespace ewp
