#pragma once

// Brute-force references shared by the unit and acceptance suites. None of
// these call into the library beyond plain data types.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// Suffix order by direct string comparison.
inline std::vector<std::uint32_t> suffix_array(const std::string& s) {
    std::vector<std::uint32_t> order(s.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return s.compare(a, std::string::npos, s, b) < 0; });
    return order;
}

inline std::size_t common_prefix(const std::string& s, std::size_t a, std::size_t b) {
    std::size_t h = 0;
    while (a + h < s.size() && b + h < s.size() && s[a + h] == s[b + h]) {
        ++h;
    }
    return h;
}

inline std::vector<std::uint32_t> lcp(const std::string& s, const std::vector<std::uint32_t>& sa) {
    std::vector<std::uint32_t> out(sa.size(), 0);
    for (std::size_t i = 1; i < sa.size(); ++i) {
        out[i] = static_cast<std::uint32_t>(common_prefix(s, sa[i - 1], sa[i]));
    }
    return out;
}

// Leftmost minimum.
inline std::size_t range_min(const std::vector<std::int64_t>& v, std::size_t i, std::size_t j) {
    std::size_t best = i;
    for (std::size_t k = i + 1; k <= j; ++k) {
        if (v[k] < v[best]) {
            best = k;
        }
    }
    return best;
}

// Longest common substring length by dynamic programming.
inline std::size_t lcs_length(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    std::size_t best = 0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
            best = std::max(best, cur[j]);
        }
        std::swap(prev, cur);
    }
    return best;
}

inline std::string random_dna(std::mt19937_64& rng, std::size_t n, int alphabet = 4) {
    static const char kBases[] = "ACGT";
    std::uniform_int_distribution<int> pick(0, alphabet - 1);
    std::string s(n, 'A');
    for (auto& c : s) {
        c = kBases[pick(rng)];
    }
    return s;
}

// Every string of length k over the first `alphabet` bases, in counting order.
inline std::vector<std::string> all_strings(std::size_t k, int alphabet = 4) {
    static const char kBases[] = "ACGT";
    std::vector<std::string> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        total *= static_cast<std::size_t>(alphabet);
    }
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        std::string s(k, 'A');
        std::size_t c = code;
        for (std::size_t i = 0; i < k; ++i) {
            s[k - 1 - i] = kBases[c % static_cast<std::size_t>(alphabet)];
            c /= static_cast<std::size_t>(alphabet);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace oracle
