#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace saix {

/// How the ambiguity code N is treated during parsing and encoding.
enum class NPolicy { reject, keep };

struct DnaSequence {
    std::string id;
    std::string description;
    std::string residues;

    friend bool operator==(const DnaSequence&, const DnaSequence&) = default;
};

/// Integer-encoded text. Ranks are in [1, sigma]; 0 is reserved for the
/// implicit end padding used by suffix sorting and never stored.
struct RankedText {
    std::vector<std::uint32_t> ranks;
    std::uint32_t sigma = 0;

    std::size_t size() const noexcept { return ranks.size(); }
    bool empty() const noexcept { return ranks.empty(); }

    friend bool operator==(const RankedText&, const RankedText&) = default;
};

inline constexpr std::uint32_t kDnaSigma = 4;
inline constexpr std::uint32_t kDnaSigmaWithN = 5;

class FastaError : public std::runtime_error {
public:
    FastaError(std::string record_id, std::size_t line, int byte, const std::string& what);

    /// Empty when the error precedes the first header.
    const std::string& record_id() const noexcept { return record_id_; }
    std::size_t line() const noexcept { return line_; }
    /// Offending byte, or -1 when the error is not about a single byte.
    int byte() const noexcept { return byte_; }

private:
    std::string record_id_;
    std::size_t line_;
    int byte_;
};

class EncodeError : public std::runtime_error {
public:
    EncodeError(std::size_t position, char residue);

    std::size_t position() const noexcept { return position_; }
    char residue() const noexcept { return residue_; }

private:
    std::size_t position_;
    char residue_;
};

/// Reads every FASTA record from `in`. Lowercase residues are uppercased and
/// whitespace inside sequence lines is dropped; both '\n' and "\r\n" endings
/// are accepted.
std::vector<DnaSequence> parse_fasta(std::istream& in, NPolicy policy = NPolicy::reject);
std::vector<DnaSequence> parse_fasta_string(const std::string& text, NPolicy policy = NPolicy::reject);

/// Writes records with sequence lines wrapped at `line_width` residues.
void write_fasta(std::ostream& out, const std::vector<DnaSequence>& records,
                 std::size_t line_width = 60);

/// A->1, C->2, G->3, T->4 and, under NPolicy::keep, N->5.
RankedText encode(const DnaSequence& seq, NPolicy policy = NPolicy::reject);
RankedText encode(const std::string& residues, NPolicy policy = NPolicy::reject);

/// Inverse of encode.
std::string decode(const RankedText& text);

/// Deterministic random DNA. Draws come from std::mt19937_64 (fully specified
/// by the standard) and are mapped to bases through the top 53 bits, so the
/// output is identical on every conforming platform.
/// Weights are ordered A, C, G, T.
DnaSequence gen_random(std::size_t n, std::uint64_t seed,
                       const std::array<double, 4>& weights = {1.0, 1.0, 1.0, 1.0});

}  // namespace saix
