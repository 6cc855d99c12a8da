#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "saix/parallel_sort.hpp"

namespace saix::bench {

enum class Implementation { serial_dc3, parallel_dc3, oracle };

/// "serial-dc3", "parallel-dc3" or "oracle".
const char* label(Implementation impl);
std::optional<Implementation> parse_label(std::string_view text);

/// Input sizes of the default ladder.
inline const std::vector<std::size_t> kDefaultSizes = {256, 1024, 4096, 16384, 65536, 262144, 1048576};

struct BenchRecord {
    Implementation impl = Implementation::serial_dc3;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    bool chunk32 = false;
    std::size_t reps = 0;
    /// Median wall time of `reps` timed runs.
    double seconds = 0.0;

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct SpeedupRow {
    std::size_t n = 0;
    Implementation baseline = Implementation::serial_dc3;
    Implementation subject = Implementation::parallel_dc3;
    /// baseline time / subject time; slowdowns stay below 1.
    double ratio = 0.0;

    /// Ratio with two decimals.
    std::string ratio_text() const;
};

class BenchMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BenchOptions {
    std::vector<std::size_t> sizes = kDefaultSizes;
    std::vector<std::uint64_t> seeds = {1};
    std::size_t reps = 5;
    std::vector<Implementation> implementations = {Implementation::serial_dc3, Implementation::parallel_dc3,
                                                   Implementation::oracle};
    par::SortConfig config;
    /// Receives one line per finished cell when set.
    std::ostream* progress = nullptr;
};

/// Times every (size, seed, implementation) cell. Before timing a cell all
/// selected implementations build the suffix array once and must agree; that
/// untimed build is the discarded warmup. Throws BenchMismatch on disagreement
/// and std::invalid_argument on bad options.
std::vector<BenchRecord> run_bench(const BenchOptions& options);

double median(std::vector<double> samples);

double speedup_ratio(double baseline_seconds, double subject_seconds);

/// Throws std::invalid_argument when n or seed differ or a time is not positive.
SpeedupRow compute_speedup(const BenchRecord& baseline, const BenchRecord& subject);

/// serial/parallel and oracle/serial rows for every (n, seed) with both records present.
std::vector<SpeedupRow> speedup_table(const std::vector<BenchRecord>& records);

/// Human-readable warnings where the serial time shrinks as n grows.
std::vector<std::string> monotonicity_advisories(const std::vector<BenchRecord>& records);

/// "label,n,seed,chunk32,reps,seconds", rows ordered by label, n, seed.
void write_csv(std::ostream& out, std::vector<BenchRecord> records);
/// "n,baseline,subject,ratio".
void write_speedup_csv(std::ostream& out, const std::vector<SpeedupRow>& rows);

/// Parses write_csv output. Throws std::invalid_argument on malformed input.
std::vector<BenchRecord> parse_csv(std::istream& in);

}  // namespace saix::bench
