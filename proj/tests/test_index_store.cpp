#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>

#include "saix/index_store.hpp"

using namespace saix;

namespace {

std::uint64_t u64_at(const std::string& bytes, std::size_t off) {
    std::uint64_t v = 0;
    for (int k = 7; k >= 0; --k) {
        v = (v << 8) | static_cast<unsigned char>(bytes[off + static_cast<std::size_t>(k)]);
    }
    return v;
}

IndexErrorKind kind_of(const std::string& bytes) {
    try {
        load_index_bytes(bytes);
    } catch (const IndexError& e) {
        return e.kind();
    }
    FAIL("load accepted a damaged index");
    return IndexErrorKind::io;
}

}  // namespace

TEST_CASE("layout of the worked example") {
    auto engine = LcpQueryEngine::build(encode(std::string("ATTGCTAC")));
    const std::string bytes = save_index_bytes(engine);
    REQUIRE(bytes.size() == index_format::file_size(8));
    CHECK(std::memcmp(bytes.data(), "SAIX1\0\0\0", 8) == 0);
    CHECK(u64_at(bytes, 8) == 1);
    CHECK(u64_at(bytes, 16) == 0);
    CHECK(u64_at(bytes, 24) == 8);
    CHECK(u64_at(bytes, 32) == 4);
    const std::vector<std::uint64_t> sa = {6, 0, 7, 4, 3, 5, 2, 1};
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(static_cast<unsigned char>(bytes[40 + i]) == engine.text().ranks[i]);
        CHECK(u64_at(bytes, 48 + 8 * i) == sa[i]);
    }
    CHECK(u64_at(bytes, bytes.size() - 8) <= 0xffffffffu);

    std::ostringstream os;
    CHECK(save_index(engine, os) == bytes.size());
    CHECK(os.str() == bytes);
    CHECK(save_index_bytes(engine) == bytes);

    auto back = load_index_bytes(bytes);
    CHECK(back.lcp(6, 0) == 1);
    CHECK(back.text() == engine.text());
    CHECK(back.suffix_array() == engine.suffix_array());
    CHECK(back.lcp_array() == engine.lcp_array());
}

TEST_CASE("empty and N-alphabet texts") {
    auto empty = LcpQueryEngine::build(RankedText{{}, 4});
    const std::string bytes = save_index_bytes(empty);
    CHECK(bytes.size() == index_format::file_size(0));
    CHECK(load_index_bytes(bytes).size() == 0);

    auto with_n = LcpQueryEngine::build(encode(std::string("ANNA"), NPolicy::keep));
    const std::string nbytes = save_index_bytes(with_n);
    CHECK(u64_at(nbytes, 16) == index_format::kFlagAlphabetN);
    CHECK(load_index_bytes(nbytes).text() == with_n.text());
}

TEST_CASE("round trip on random texts") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        auto engine = LcpQueryEngine::build(encode(gen_random(rng() % 3000, rng())));
        auto bytes = save_index_bytes(engine);
        auto back = load_index_bytes(bytes, trial % 2 ? rmq::Engine::euler : rmq::Engine::sparse);
        REQUIRE(back.text() == engine.text());
        REQUIRE(back.suffix_array() == engine.suffix_array());
        REQUIRE(back.lcp_array() == engine.lcp_array());
        CHECK(save_index_bytes(back) == bytes);
    }
}

TEST_CASE("damage is reported by kind") {
    auto engine = LcpQueryEngine::build(encode(std::string("ATTGCTACGGA")));
    const std::string good = save_index_bytes(engine);

    std::string magic = good;
    magic[0] = 'X';
    CHECK(kind_of(magic) == IndexErrorKind::bad_magic);
    CHECK(kind_of("nope") == IndexErrorKind::bad_magic);

    std::string version = good;
    version[8] = 2;
    CHECK(kind_of(version) == IndexErrorKind::unsupported_version);

    CHECK(kind_of(good.substr(0, 20)) == IndexErrorKind::truncated);
    CHECK(kind_of(good.substr(0, good.size() - 1)) == IndexErrorKind::truncated);
    CHECK(kind_of(good + "x") == IndexErrorKind::invalid_payload);

    // every single byte after the version field
    for (std::size_t i = 16; i < good.size(); ++i) {
        std::string bad = good;
        bad[i] = static_cast<char>(bad[i] ^ 0x01);
        CAPTURE(i);
        auto kind = kind_of(bad);
        if (i >= 24 && i < 32) {
            // n changes the expected size
            CHECK((kind == IndexErrorKind::truncated || kind == IndexErrorKind::invalid_payload));
        } else {
            CHECK(kind == IndexErrorKind::checksum_mismatch);
        }
    }
    CHECK(std::string(to_string(IndexErrorKind::checksum_mismatch)).size() > 0);
}

TEST_CASE("files") {
    auto path = (std::filesystem::temp_directory_path() / "saix_store_test.saix").string();
    auto engine = LcpQueryEngine::build(encode(std::string("GATTACA")));
    save_index_file(engine, path);
    CHECK(std::filesystem::file_size(path) == index_format::file_size(7));
    CHECK(load_index_file(path).suffix_array() == engine.suffix_array());
    std::remove(path.c_str());
    try {
        load_index_file(path);
        FAIL("expected an io error");
    } catch (const IndexError& e) {
        CHECK(e.kind() == IndexErrorKind::io);
    }
}
