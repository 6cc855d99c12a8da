#include "saix/sequence.hpp"

#include <cctype>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace saix {

namespace {

std::string describe_byte(int byte) {
    std::ostringstream os;
    if (std::isprint(byte)) {
        os << '\'' << static_cast<char>(byte) << '\'';
    } else {
        os << "0x" << std::hex << byte;
    }
    return os.str();
}

// 0 for residues outside the active alphabet.
std::uint32_t rank_of(char c, NPolicy policy) {
    switch (c) {
        case 'A': return 1;
        case 'C': return 2;
        case 'G': return 3;
        case 'T': return 4;
        case 'N': return policy == NPolicy::keep ? 5 : 0;
        default: return 0;
    }
}

constexpr char kDecode[] = {'\0', 'A', 'C', 'G', 'T', 'N'};

}  // namespace

FastaError::FastaError(std::string record_id, std::size_t line, int byte, const std::string& what)
    : std::runtime_error(what), record_id_(std::move(record_id)), line_(line), byte_(byte) {}

EncodeError::EncodeError(std::size_t position, char residue)
    : std::runtime_error("illegal residue " + describe_byte(static_cast<unsigned char>(residue)) +
                         " at position " + std::to_string(position)),
      position_(position),
      residue_(residue) {}

std::vector<DnaSequence> parse_fasta(std::istream& in, NPolicy policy) {
    std::vector<DnaSequence> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty() && line.front() == '>') {
            auto header = std::string_view(line).substr(1);
            auto id_end = header.find_first_of(" \t");
            DnaSequence rec;
            rec.id = std::string(header.substr(0, id_end));
            if (id_end != std::string_view::npos) {
                auto rest = header.substr(id_end);
                auto first = rest.find_first_not_of(" \t");
                if (first != std::string_view::npos) {
                    rec.description = std::string(rest.substr(first));
                }
            }
            if (rec.id.empty()) {
                throw FastaError("", line_no, -1,
                                 "line " + std::to_string(line_no) + ": empty record id in header");
            }
            records.push_back(std::move(rec));
            continue;
        }
        bool blank = true;
        for (unsigned char c : line) {
            if (!std::isspace(c)) {
                blank = false;
                break;
            }
        }
        if (blank) {
            continue;
        }
        if (records.empty()) {
            throw FastaError("", line_no, -1,
                             "line " + std::to_string(line_no) +
                                 ": sequence data before the first '>' header (missing header)");
        }
        auto& rec = records.back();
        for (unsigned char raw : line) {
            if (std::isspace(raw)) {
                continue;
            }
            char c = static_cast<char>(std::toupper(raw));
            if (rank_of(c, policy) == 0) {
                throw FastaError(rec.id, line_no, raw,
                                 "record '" + rec.id + "', line " + std::to_string(line_no) +
                                     ": illegal residue " + describe_byte(raw));
            }
            rec.residues.push_back(c);
        }
    }
    if (in.bad()) {
        throw std::runtime_error("read error while parsing FASTA");
    }
    return records;
}

std::vector<DnaSequence> parse_fasta_string(const std::string& text, NPolicy policy) {
    std::istringstream in(text);
    return parse_fasta(in, policy);
}

void write_fasta(std::ostream& out, const std::vector<DnaSequence>& records, std::size_t line_width) {
    if (line_width == 0) {
        throw std::invalid_argument("FASTA line width must be positive");
    }
    for (const auto& rec : records) {
        out << '>' << rec.id;
        if (!rec.description.empty()) {
            out << ' ' << rec.description;
        }
        out << '\n';
        for (std::size_t i = 0; i < rec.residues.size(); i += line_width) {
            out << std::string_view(rec.residues).substr(i, line_width) << '\n';
        }
    }
}

RankedText encode(const std::string& residues, NPolicy policy) {
    RankedText text;
    text.sigma = policy == NPolicy::keep ? kDnaSigmaWithN : kDnaSigma;
    text.ranks.reserve(residues.size());
    for (std::size_t i = 0; i < residues.size(); ++i) {
        auto r = rank_of(residues[i], policy);
        if (r == 0) {
            throw EncodeError(i, residues[i]);
        }
        text.ranks.push_back(r);
    }
    return text;
}

RankedText encode(const DnaSequence& seq, NPolicy policy) {
    return encode(seq.residues, policy);
}

std::string decode(const RankedText& text) {
    std::string out;
    out.reserve(text.size());
    for (auto r : text.ranks) {
        if (r == 0 || r > kDnaSigmaWithN) {
            throw std::invalid_argument("rank " + std::to_string(r) + " has no residue");
        }
        out.push_back(kDecode[r]);
    }
    return out;
}

DnaSequence gen_random(std::size_t n, std::uint64_t seed, const std::array<double, 4>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("base weights must be nonnegative");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("base weights must have a positive sum");
    }
    std::array<double, 4> cumulative{};
    std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
    for (auto& c : cumulative) {
        c /= total;
    }
    // pin the tail at exactly 1 so rounding never selects a trailing zero-weight base
    std::size_t last = 3;
    while (weights[last] == 0.0) {
        --last;
    }
    for (std::size_t b = last; b < 4; ++b) {
        cumulative[b] = 1.0;
    }

    std::mt19937_64 gen(seed);
    DnaSequence seq;
    seq.id = "random-" + std::to_string(seed);
    seq.description = "n=" + std::to_string(n);
    seq.residues.resize(n);
    constexpr char kBases[] = {'A', 'C', 'G', 'T'};
    for (std::size_t i = 0; i < n; ++i) {
        double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        int b = 0;
        // zero-weight bases are never selected: u < cumulative[b] is strict
        while (b < 3 && !(u < cumulative[b])) {
            ++b;
        }
        seq.residues[i] = kBases[b];
    }
    return seq;
}

}  // namespace saix
