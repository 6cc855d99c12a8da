#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "saix/bench.hpp"
#include "saix/index_store.hpp"
#include "saix/overlap.hpp"
#include "saix/parallel_sort.hpp"
#include "saix/selftest.hpp"
#include "saix/sequence.hpp"
#include "saix/suffix_index.hpp"

namespace saix::cli {

namespace {

struct Failure : std::runtime_error {
    Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

struct CliConfig {
    std::string input;
    std::vector<std::string> inputs;
    std::string out_path;
    std::string speedup_path;
    std::int64_t i = 0;
    std::int64_t j = 0;
    unsigned workers = default_workers();
    std::size_t chunk = 4096;
    unsigned digit_bits = 1;
    std::uint64_t seed = 1;
    std::string engine = "serial";
    int verbosity = 0;
    bool keep_n = false;
    std::vector<std::size_t> sizes = bench::kDefaultSizes;
    std::vector<std::uint64_t> seeds;
    std::size_t reps = 5;
    std::vector<std::string> implementations;
    std::size_t length = 0;
};

par::SortConfig sort_config(const CliConfig& cfg) {
    par::SortConfig sc;
    sc.workers = cfg.workers;
    sc.chunk_size = cfg.chunk;
    sc.digit_bits = cfg.digit_bits;
    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        throw Failure(kGeneric, e.what());
    }
    return sc;
}

NPolicy policy(const CliConfig& cfg) {
    return cfg.keep_n ? NPolicy::keep : NPolicy::reject;
}

void require_file(const std::string& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw Failure(kMissingInput, "no such file: " + path);
    }
}

std::vector<DnaSequence> read_fasta(const std::string& path, NPolicy pol) {
    require_file(path);
    std::ifstream in(path);
    if (!in) {
        throw Failure(kMissingInput, "cannot open " + path);
    }
    try {
        return parse_fasta(in, pol);
    } catch (const FastaError& e) {
        throw Failure(kBadInput, path + ": " + e.what());
    }
}

DnaSequence single_record(const std::string& path, NPolicy pol, bool reject_extra) {
    auto records = read_fasta(path, pol);
    if (records.empty()) {
        throw Failure(kBadInput, path + ": no FASTA records");
    }
    if (records.size() > 1 && reject_extra) {
        throw Failure(kBadInput, path + ": " + std::to_string(records.size()) +
                                     " records found; an index holds exactly one sequence "
                                     "(split the file or use 'overlap' for pairs)");
    }
    return std::move(records.front());
}

std::string seconds_text(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << s;
    return os.str();
}

int cmd_index(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string& path = cfg.input;
    DnaSequence seq = single_record(path, policy(cfg), true);
    std::string dest = cfg.out_path;
    if (dest.empty()) {
        dest = std::filesystem::path(path).replace_extension(index_format::kExtension).string();
    }
    const auto sc = sort_config(cfg);

    auto start = std::chrono::steady_clock::now();
    RankedText text = encode(seq, policy(cfg));
    SuffixArray sa = cfg.engine == "parallel" ? par::parallel_build_sa(text, sc) : build_sa_dc3(text);
    LcpArray lcp = build_lcp(text, sa);
    auto engine = LcpQueryEngine::assemble(std::move(text), std::move(sa), std::move(lcp));
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    try {
        save_index_file(engine, dest);
    } catch (const IndexError& e) {
        throw Failure(kGeneric, e.what());
    }
    if (cfg.verbosity > 0) {
        err << "engine=" << cfg.engine << " workers=" << sc.workers << " chunk=" << sc.chunk_size
            << " digit-bits=" << sc.digit_bits << " -> " << dest << '\n';
    }
    out << "indexed n=" << engine.size() << " sigma=" << engine.text().sigma << " in " << seconds_text(elapsed)
        << "s\n";
    return kOk;
}

int cmd_query(const CliConfig& cfg, std::ostream& out, std::ostream&) {
    const std::string& path = cfg.input;
    require_file(path);
    LcpQueryEngine engine;
    try {
        engine = load_index_file(path);
    } catch (const IndexError& e) {
        throw Failure(e.kind() == IndexErrorKind::io ? kMissingInput : kBadInput, path + ": " + e.what());
    }
    const auto n = static_cast<std::int64_t>(engine.size());
    if (cfg.i < 0 || cfg.j < 0 || cfg.i >= n || cfg.j >= n) {
        throw Failure(kBadQuery, "positions (" + std::to_string(cfg.i) + ", " + std::to_string(cfg.j) +
                                     ") outside [0, " + std::to_string(n) + ")");
    }
    const auto i = static_cast<std::size_t>(cfg.i);
    const std::size_t length = engine.lcp(i, static_cast<std::size_t>(cfg.j));
    RankedText prefix{{engine.text().ranks.begin() + static_cast<std::ptrdiff_t>(i),
                       engine.text().ranks.begin() + static_cast<std::ptrdiff_t>(i + length)},
                      engine.text().sigma};
    out << length << '\n' << decode(prefix) << '\n';
    return kOk;
}

int cmd_overlap(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    DnaSequence a = single_record(cfg.inputs.at(0), policy(cfg), false);
    DnaSequence b = single_record(cfg.inputs.at(1), policy(cfg), false);
    auto report = overlap_report(longest_overlap(a, b, policy(cfg)), a, b);
    if (cfg.verbosity > 0) {
        err << report.to_text() << '\n';
    }
    out << report.to_json() << '\n';
    return kOk;
}

int cmd_bench(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    bench::BenchOptions options;
    options.sizes = cfg.sizes;
    options.seeds = cfg.seeds.empty() ? std::vector<std::uint64_t>{cfg.seed} : cfg.seeds;
    options.reps = cfg.reps;
    options.config = sort_config(cfg);
    if (!cfg.implementations.empty()) {
        options.implementations.clear();
        for (const auto& name : cfg.implementations) {
            auto impl = bench::parse_label(name);
            if (!impl) {
                throw Failure(kGeneric, "unknown implementation '" + name + "'");
            }
            options.implementations.push_back(*impl);
        }
    }
    if (cfg.verbosity > 0) {
        options.progress = &err;
    }

    std::vector<bench::BenchRecord> records;
    try {
        records = bench::run_bench(options);
    } catch (const bench::BenchMismatch& e) {
        throw Failure(kMismatch, std::string("correctness pre-check failed: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw Failure(kGeneric, e.what());
    }
    const auto rows = bench::speedup_table(records);

    const std::string csv_path = cfg.out_path.empty() ? "bench.csv" : cfg.out_path;
    std::string speedup_path = cfg.speedup_path;
    if (speedup_path.empty()) {
        speedup_path = std::filesystem::path(csv_path).replace_extension(".speedup.csv").string();
    }
    {
        std::ofstream csv(csv_path);
        std::ofstream sp(speedup_path);
        if (!csv || !sp) {
            throw Failure(kGeneric, "cannot write " + csv_path + " / " + speedup_path);
        }
        bench::write_csv(csv, records);
        bench::write_speedup_csv(sp, rows);
    }

    out << std::left << std::setw(14) << "label" << std::right << std::setw(10) << "n" << std::setw(8) << "seed"
        << std::setw(14) << "seconds" << '\n';
    for (const auto& r : records) {
        out << std::left << std::setw(14) << bench::label(r.impl) << std::right << std::setw(10) << r.n
            << std::setw(8) << r.seed << std::setw(14) << seconds_text(r.seconds) << '\n';
    }
    for (const auto& row : rows) {
        out << "speedup " << bench::label(row.baseline) << " / " << bench::label(row.subject) << " n=" << row.n
            << ": " << row.ratio_text() << '\n';
    }
    for (const auto& note : bench::monotonicity_advisories(records)) {
        out << note << '\n';
    }
    out << "wrote " << csv_path << " and " << speedup_path << '\n';
    return kOk;
}

int cmd_selftest(std::ostream& out) {
    auto start = std::chrono::steady_clock::now();
    bool all = true;
    for (const auto& r : run_selftest()) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
        all = all && r.passed;
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << (all ? "all fixtures passed" : "fixture failures") << " in " << seconds_text(elapsed) << "s\n";
    return all ? kOk : kMismatch;
}

int cmd_generate(const CliConfig& cfg, std::ostream& out) {
    DnaSequence seq = gen_random(cfg.length, cfg.seed);
    if (cfg.out_path.empty()) {
        write_fasta(out, {seq});
        return kOk;
    }
    std::ofstream file(cfg.out_path);
    if (!file) {
        throw Failure(kGeneric, "cannot write " + cfg.out_path);
    }
    write_fasta(file, {seq});
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Suffix-array indexing and longest-overlap queries for DNA sequences"};
    app.name("saix");
    app.require_subcommand(1, 1);

    app.add_option("--workers", cfg.workers, "Worker threads for the parallel engine")->check(CLI::PositiveNumber);
    app.add_option("--chunk", cfg.chunk, "Chunk size for the parallel engine")->check(CLI::PositiveNumber);
    app.add_option("--digit-bits", cfg.digit_bits, "Radix digit width in bits (1 = one split per bit)")
        ->check(CLI::Range(1U, 16U));
    app.add_option("--seed", cfg.seed, "Seed for generated sequences");
    app.add_option("--engine", cfg.engine, "Suffix array construction")
        ->check(CLI::IsMember({"serial", "parallel"}));
    app.add_option("--out", cfg.out_path, "Output path");
    app.add_flag("-v,--verbose", cfg.verbosity, "More diagnostics on standard error");
    app.add_flag("--keep-n", cfg.keep_n, "Accept N as a fifth residue instead of rejecting it");

    auto* index = app.add_subcommand("index", "Build a .saix index from a single-record FASTA file");
    index->add_option("fasta", cfg.input, "Input FASTA")->required();
    index->fallthrough();

    auto* query = app.add_subcommand("query", "Longest common prefix of the suffixes at i and j");
    query->add_option("index", cfg.input, "Index file")->required();
    query->add_option("i", cfg.i, "First suffix position")->required();
    query->add_option("j", cfg.j, "Second suffix position")->required();
    query->fallthrough();

    auto* overlap = app.add_subcommand("overlap", "Longest region shared by two sequences, as JSON");
    overlap->add_option("fasta", cfg.inputs, "FASTA files A and B")->required()->expected(2);
    overlap->fallthrough();

    auto* bench_cmd = app.add_subcommand("bench", "Time serial vs parallel construction and write CSV");
    bench_cmd->add_option("--sizes", cfg.sizes, "Input sizes")->delimiter(',')->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seeds", cfg.seeds, "Seeds (default: --seed)")->delimiter(',');
    bench_cmd->add_option("--reps", cfg.reps, "Timed repetitions per cell")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--impl", cfg.implementations, "serial-dc3, parallel-dc3, oracle")->delimiter(',');
    bench_cmd->add_option("--speedup-out", cfg.speedup_path, "Speedup CSV path");
    bench_cmd->fallthrough();

    auto* selftest = app.add_subcommand("selftest", "Check the built-in worked examples");
    selftest->fallthrough();

    auto* generate = app.add_subcommand("generate", "Write a random DNA sequence as FASTA");
    generate->add_option("--length", cfg.length, "Sequence length")->required();
    generate->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "saix: " << e.what() << '\n';
        return kGeneric;
    }

    try {
        if (index->parsed()) {
            return cmd_index(cfg, out, err);
        }
        if (query->parsed()) {
            return cmd_query(cfg, out, err);
        }
        if (overlap->parsed()) {
            return cmd_overlap(cfg, out, err);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(cfg, out, err);
        }
        if (selftest->parsed()) {
            return cmd_selftest(out);
        }
        if (generate->parsed()) {
            return cmd_generate(cfg, out);
        }
    } catch (const Failure& f) {
        err << "saix: " << f.what() << '\n';
        return f.code;
    } catch (const std::exception& e) {
        err << "saix: " << e.what() << '\n';
        return kGeneric;
    }
    return kGeneric;
}

}  // namespace saix::cli
