#include "saix/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace saix::bench {

namespace {

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line) {
    T value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::invalid_argument("bench CSV line " + std::to_string(line) + ": bad number '" +
                                    std::string(field) + "'");
    }
    return value;
}

SuffixArray build_with(Implementation impl, const RankedText& text, const par::SortConfig& config) {
    switch (impl) {
        case Implementation::serial_dc3: return build_sa_dc3(text);
        case Implementation::parallel_dc3: return par::parallel_build_sa(text, config);
        case Implementation::oracle: return build_sa_oracle(text);
    }
    throw std::logic_error("unknown implementation");
}

}  // namespace

const char* label(Implementation impl) {
    switch (impl) {
        case Implementation::serial_dc3: return "serial-dc3";
        case Implementation::parallel_dc3: return "parallel-dc3";
        case Implementation::oracle: return "oracle";
    }
    return "unknown";
}

std::optional<Implementation> parse_label(std::string_view text) {
    for (auto impl : {Implementation::serial_dc3, Implementation::parallel_dc3, Implementation::oracle}) {
        if (text == label(impl)) {
            return impl;
        }
    }
    return std::nullopt;
}

std::string SpeedupRow::ratio_text() const {
    return fixed(ratio, 2);
}

double median(std::vector<double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("median of no samples");
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    return samples.size() % 2 == 1 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2.0;
}

std::vector<BenchRecord> run_bench(const BenchOptions& options) {
    options.config.validate();
    if (options.reps == 0) {
        throw std::invalid_argument("at least one repetition is required");
    }
    if (options.implementations.empty()) {
        throw std::invalid_argument("no implementations selected");
    }
    for (auto n : options.sizes) {
        if (n == 0) {
            throw std::invalid_argument("benchmark sizes must be at least 1");
        }
    }

    std::vector<BenchRecord> records;
    for (auto n : options.sizes) {
        for (auto seed : options.seeds) {
            const RankedText text = encode(gen_random(n, seed));

            std::optional<SuffixArray> reference;
            for (auto impl : options.implementations) {
                SuffixArray sa = build_with(impl, text, options.config);
                if (!reference) {
                    reference = std::move(sa);
                } else if (sa != *reference) {
                    throw BenchMismatch(std::string(label(impl)) + " disagrees with " +
                                        label(options.implementations.front()) + " at n=" + std::to_string(n) +
                                        " seed=" + std::to_string(seed));
                }
            }

            for (auto impl : options.implementations) {
                std::vector<double> samples;
                samples.reserve(options.reps);
                for (std::size_t r = 0; r < options.reps; ++r) {
                    auto start = std::chrono::steady_clock::now();
                    SuffixArray sa = build_with(impl, text, options.config);
                    auto stop = std::chrono::steady_clock::now();
                    auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
                    samples.push_back(static_cast<double>(std::max<std::int64_t>(ns, 1)) / 1e9);
                }
                BenchRecord rec{impl, n, seed, options.config.chunk_multiple_of_32(), options.reps,
                                median(std::move(samples))};
                if (options.progress != nullptr) {
                    *options.progress << label(impl) << " n=" << n << " seed=" << seed << " "
                                      << fixed(rec.seconds, 6) << "s\n";
                }
                records.push_back(rec);
            }
        }
    }
    return records;
}

double speedup_ratio(double baseline_seconds, double subject_seconds) {
    if (!(baseline_seconds > 0.0) || !(subject_seconds > 0.0)) {
        throw std::invalid_argument("speedup needs positive times");
    }
    return baseline_seconds / subject_seconds;
}

SpeedupRow compute_speedup(const BenchRecord& baseline, const BenchRecord& subject) {
    if (baseline.n != subject.n) {
        throw std::invalid_argument("speedup between records of different sizes (" + std::to_string(baseline.n) +
                                    " vs " + std::to_string(subject.n) + ")");
    }
    if (baseline.seed != subject.seed) {
        throw std::invalid_argument("speedup between records of different seeds");
    }
    return {baseline.n, baseline.impl, subject.impl, speedup_ratio(baseline.seconds, subject.seconds)};
}

std::vector<SpeedupRow> speedup_table(const std::vector<BenchRecord>& records) {
    std::map<std::tuple<std::size_t, std::uint64_t, Implementation>, const BenchRecord*> index;
    for (const auto& r : records) {
        index[{r.n, r.seed, r.impl}] = &r;
    }
    std::vector<SpeedupRow> rows;
    const std::pair<Implementation, Implementation> pairs[] = {
        {Implementation::serial_dc3, Implementation::parallel_dc3},
        {Implementation::oracle, Implementation::serial_dc3},
    };
    for (auto [baseline, subject] : pairs) {
        for (const auto& [key, rec] : index) {
            auto [n, seed, impl] = key;
            if (impl != baseline) {
                continue;
            }
            auto other = index.find({n, seed, subject});
            if (other != index.end()) {
                rows.push_back(compute_speedup(*rec, *other->second));
            }
        }
    }
    return rows;
}

std::vector<std::string> monotonicity_advisories(const std::vector<BenchRecord>& records) {
    std::map<std::uint64_t, std::map<std::size_t, double>> serial;
    for (const auto& r : records) {
        if (r.impl == Implementation::serial_dc3) {
            serial[r.seed][r.n] = r.seconds;
        }
    }
    std::vector<std::string> notes;
    for (const auto& [seed, by_n] : serial) {
        const std::pair<const std::size_t, double>* prev = nullptr;
        for (const auto& cell : by_n) {
            if (prev != nullptr && cell.second < prev->second) {
                notes.push_back("advisory: serial-dc3 seed=" + std::to_string(seed) + " n=" +
                                std::to_string(cell.first) + " ran faster than n=" + std::to_string(prev->first));
            }
            prev = &cell;
        }
    }
    return notes;
}

void write_csv(std::ostream& out, std::vector<BenchRecord> records) {
    std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
        return std::tuple(std::string_view(label(a.impl)), a.n, a.seed) <
               std::tuple(std::string_view(label(b.impl)), b.n, b.seed);
    });
    out << "label,n,seed,chunk32,reps,seconds\n";
    for (const auto& r : records) {
        out << label(r.impl) << ',' << r.n << ',' << r.seed << ',' << (r.chunk32 ? 1 : 0) << ',' << r.reps << ','
            << fixed(r.seconds, 9) << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed to write bench CSV");
    }
}

void write_speedup_csv(std::ostream& out, const std::vector<SpeedupRow>& rows) {
    out << "n,baseline,subject,ratio\n";
    for (const auto& row : rows) {
        out << row.n << ',' << label(row.baseline) << ',' << label(row.subject) << ',' << row.ratio_text() << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed to write speedup CSV");
    }
}

std::vector<BenchRecord> parse_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line != "label,n,seed,chunk32,reps,seconds") {
        throw std::invalid_argument("bench CSV: missing or unexpected header");
    }
    std::vector<BenchRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (;;) {
            auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 6) {
            throw std::invalid_argument("bench CSV line " + std::to_string(line_no) + ": expected 6 fields");
        }
        auto impl = parse_label(fields[0]);
        if (!impl) {
            throw std::invalid_argument("bench CSV line " + std::to_string(line_no) + ": unknown label");
        }
        if (fields[3] != "0" && fields[3] != "1") {
            throw std::invalid_argument("bench CSV line " + std::to_string(line_no) + ": chunk32 must be 0 or 1");
        }
        BenchRecord r;
        r.impl = *impl;
        r.n = parse_number<std::size_t>(fields[1], line_no);
        r.seed = parse_number<std::uint64_t>(fields[2], line_no);
        r.chunk32 = fields[3] == "1";
        r.reps = parse_number<std::size_t>(fields[4], line_no);
        r.seconds = parse_number<double>(fields[5], line_no);
        records.push_back(r);
    }
    return records;
}

}  // namespace saix::bench
