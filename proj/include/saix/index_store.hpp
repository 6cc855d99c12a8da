#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "saix/overlap.hpp"

namespace saix {

/// Binary index layout (".saix"), every integer little-endian u64:
///
///   magic "SAIX1\0\0\0" | version = 1 | flags | n | sigma
///   text: n bytes of ranks | sa: n u64 | lcp: n u64
///   CRC-32 of all preceding bytes, zero-extended to u64
///
/// flags bit 0 marks the five-letter alphabet (N kept). The RMQ structure is
/// rebuilt on load.
namespace index_format {
inline constexpr char kMagic[8] = {'S', 'A', 'I', 'X', '1', '\0', '\0', '\0'};
inline constexpr std::uint64_t kVersion = 1;
inline constexpr std::uint64_t kFlagAlphabetN = 1;
inline constexpr std::size_t kHeaderBytes = 40;
inline constexpr std::size_t kChecksumBytes = 8;
inline constexpr const char* kExtension = ".saix";

inline constexpr std::size_t file_size(std::uint64_t n) {
    return kHeaderBytes + n + 16 * n + kChecksumBytes;
}
}  // namespace index_format

enum class IndexErrorKind { bad_magic, unsupported_version, checksum_mismatch, truncated, invalid_payload, io };

class IndexError : public std::runtime_error {
public:
    IndexError(IndexErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    IndexErrorKind kind() const noexcept { return kind_; }

private:
    IndexErrorKind kind_;
};

const char* to_string(IndexErrorKind kind);

/// Writes the engine and returns the byte count. Throws IndexError(io) on sink failure.
std::size_t save_index(const LcpQueryEngine& engine, std::ostream& out);
std::string save_index_bytes(const LcpQueryEngine& engine);
void save_index_file(const LcpQueryEngine& engine, const std::string& path);

/// Throws IndexError with a kind naming the first problem found.
LcpQueryEngine load_index(std::istream& in, rmq::Engine engine = rmq::Engine::sparse);
LcpQueryEngine load_index_bytes(const std::string& bytes, rmq::Engine engine = rmq::Engine::sparse);
LcpQueryEngine load_index_file(const std::string& path, rmq::Engine engine = rmq::Engine::sparse);

}  // namespace saix
