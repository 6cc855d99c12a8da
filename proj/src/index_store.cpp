#include "saix/index_store.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <zlib.h>

namespace saix {

namespace {

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        buf.push_back(static_cast<char>((v >> (8 * i)) & 0xffU));
    }
}

std::uint64_t get_u64(const std::string& buf, std::size_t offset) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | static_cast<unsigned char>(buf[offset + static_cast<std::size_t>(i)]);
    }
    return v;
}

std::uint32_t crc32_of(const std::string& buf, std::size_t len) {
    uLong crc = crc32(0L, Z_NULL, 0);
    const auto* data = reinterpret_cast<const Bytef*>(buf.data());
    // zlib takes uInt lengths
    while (len > 0) {
        uInt step = static_cast<uInt>(std::min<std::size_t>(len, 1U << 30));
        crc = crc32(crc, data, step);
        data += step;
        len -= step;
    }
    return static_cast<std::uint32_t>(crc);
}

}  // namespace

const char* to_string(IndexErrorKind kind) {
    switch (kind) {
        case IndexErrorKind::bad_magic: return "bad magic";
        case IndexErrorKind::unsupported_version: return "unsupported version";
        case IndexErrorKind::checksum_mismatch: return "checksum mismatch";
        case IndexErrorKind::truncated: return "truncated";
        case IndexErrorKind::invalid_payload: return "invalid payload";
        case IndexErrorKind::io: return "i/o error";
    }
    return "unknown";
}

std::string save_index_bytes(const LcpQueryEngine& engine) {
    namespace fmt = index_format;
    const auto& text = engine.text();
    const std::size_t n = text.size();
    if (text.sigma > 0xff) {
        throw IndexError(IndexErrorKind::invalid_payload,
                         "alphabet of " + std::to_string(text.sigma) + " ranks does not fit one byte");
    }
    std::string buf;
    buf.reserve(fmt::file_size(n));
    buf.append(fmt::kMagic, sizeof fmt::kMagic);
    put_u64(buf, fmt::kVersion);
    put_u64(buf, text.sigma == kDnaSigmaWithN ? fmt::kFlagAlphabetN : 0);
    put_u64(buf, n);
    put_u64(buf, text.sigma);
    for (auto r : text.ranks) {
        buf.push_back(static_cast<char>(r));
    }
    for (auto p : engine.suffix_array().sa) {
        put_u64(buf, p);
    }
    for (auto l : engine.lcp_array().lcp) {
        put_u64(buf, l);
    }
    put_u64(buf, crc32_of(buf, buf.size()));
    return buf;
}

std::size_t save_index(const LcpQueryEngine& engine, std::ostream& out) {
    const std::string buf = save_index_bytes(engine);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) {
        throw IndexError(IndexErrorKind::io, "failed to write index");
    }
    return buf.size();
}

void save_index_file(const LcpQueryEngine& engine, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IndexError(IndexErrorKind::io, "cannot open " + path + " for writing");
    }
    save_index(engine, out);
}

LcpQueryEngine load_index_bytes(const std::string& buf, rmq::Engine engine) {
    namespace fmt = index_format;
    const std::size_t magic_seen = std::min(buf.size(), sizeof fmt::kMagic);
    if (std::memcmp(buf.data(), fmt::kMagic, magic_seen) != 0) {
        throw IndexError(IndexErrorKind::bad_magic, "not an index file (bad magic)");
    }
    if (buf.size() < fmt::kHeaderBytes) {
        throw IndexError(IndexErrorKind::truncated, "index header is truncated");
    }
    const std::uint64_t version = get_u64(buf, 8);
    if (version != fmt::kVersion) {
        throw IndexError(IndexErrorKind::unsupported_version,
                         "unsupported index version " + std::to_string(version));
    }
    const std::uint64_t flags = get_u64(buf, 16);
    const std::uint64_t n = get_u64(buf, 24);
    const std::uint64_t sigma = get_u64(buf, 32);
    if (n > (buf.size() - fmt::kHeaderBytes) / 17 || buf.size() < fmt::file_size(n)) {
        throw IndexError(IndexErrorKind::truncated, "index payload is truncated");
    }
    const std::size_t body = fmt::file_size(n) - fmt::kChecksumBytes;
    if (buf.size() > fmt::file_size(n)) {
        throw IndexError(IndexErrorKind::invalid_payload, "trailing bytes after the index checksum");
    }
    if (get_u64(buf, body) != crc32_of(buf, body)) {
        throw IndexError(IndexErrorKind::checksum_mismatch, "index checksum mismatch");
    }

    auto invalid = [](const std::string& what) { return IndexError(IndexErrorKind::invalid_payload, what); };
    if ((flags & ~fmt::kFlagAlphabetN) != 0) {
        throw invalid("unknown index flags");
    }
    if (sigma == 0 || sigma > 0xff) {
        throw invalid("alphabet size out of range");
    }
    RankedText text;
    text.sigma = static_cast<std::uint32_t>(sigma);
    text.ranks.resize(n);
    std::size_t off = fmt::kHeaderBytes;
    for (std::size_t i = 0; i < n; ++i) {
        auto r = static_cast<unsigned char>(buf[off + i]);
        if (r == 0 || r > sigma) {
            throw invalid("text rank out of range at " + std::to_string(i));
        }
        text.ranks[i] = r;
    }
    off += n;
    std::vector<pos_t> order(n);
    for (std::size_t i = 0; i < n; ++i, off += 8) {
        std::uint64_t p = get_u64(buf, off);
        if (p >= n) {
            throw invalid("suffix array entry out of range at " + std::to_string(i));
        }
        order[i] = static_cast<pos_t>(p);
    }
    LcpArray lcp;
    lcp.lcp.resize(n);
    for (std::size_t i = 0; i < n; ++i, off += 8) {
        std::uint64_t l = get_u64(buf, off);
        if (l > n) {
            throw invalid("lcp entry out of range at " + std::to_string(i));
        }
        lcp.lcp[i] = static_cast<pos_t>(l);
    }
    SuffixArray sa;
    try {
        sa = SuffixArray::from_order(std::move(order));
    } catch (const std::invalid_argument&) {
        throw invalid("suffix array is not a permutation");
    }
    if (build_lcp(text, sa) != lcp) {
        throw invalid("lcp section does not match the text and suffix array");
    }
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t p = sa.sa[i - 1] + lcp.lcp[i];
        std::size_t q = sa.sa[i] + lcp.lcp[i];
        if (!(p == n || (q < n && text.ranks[p] < text.ranks[q]))) {
            throw invalid("suffix array is not sorted at " + std::to_string(i));
        }
    }
    return LcpQueryEngine::assemble(std::move(text), std::move(sa), std::move(lcp), engine);
}

LcpQueryEngine load_index(std::istream& in, rmq::Engine engine) {
    std::string buf{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) {
        throw IndexError(IndexErrorKind::io, "failed to read index");
    }
    return load_index_bytes(buf, engine);
}

LcpQueryEngine load_index_file(const std::string& path, rmq::Engine engine) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IndexError(IndexErrorKind::io, "cannot open " + path);
    }
    return load_index(in, engine);
}

}  // namespace saix
