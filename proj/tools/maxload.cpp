// maxload: exact max-occupancy distributions, recurrence guessing, long-range
// evaluation, asymptotic-constant extraction and Monte Carlo cross-checks for
// the r-balls-into-n-bins process.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "maxload/asymptotics.hpp"
#include "maxload/closed_form.hpp"
#include "maxload/engine.hpp"
#include "maxload/errors.hpp"
#include "maxload/evaluate.hpp"
#include "maxload/guess.hpp"
#include "maxload/io.hpp"
#include "maxload/problem.hpp"
#include "maxload/recurrence.hpp"
#include "maxload/simulate.hpp"
#include "maxload/types.hpp"
#include "maxload/version.hpp"

namespace {

using namespace maxload;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 64;
constexpr int kExitGuessExhausted = 65;
constexpr int kExitResourceLimit = 66;
constexpr int kExitPrecisionFailure = 67;
constexpr int kExitCompareMismatch = 69;
constexpr int kExitInternal = 70;

std::string join_command(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

class Stopwatch {
  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<long long> parse_ll_list(const std::string& csv, const char* flag) {
    std::vector<long long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidInputError(std::string(flag) + ": bad integer \"" + item + "\"");
        }
    }
    if (out.empty()) throw InvalidInputError(std::string(flag) + ": empty list");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// "t0:count" for geometric ladders.
std::pair<long long, int> parse_ladder_spec(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw InvalidInputError("--ladder expects \"t0:count\", got \"" + s + "\"");
    try {
        std::size_t p1 = 0, p2 = 0;
        long long t0 = std::stoll(s.substr(0, colon), &p1);
        int count = std::stoi(s.substr(colon + 1), &p2);
        if (p1 != colon || p2 != s.size() - colon - 1) throw std::invalid_argument(s);
        return {t0, count};
    } catch (const std::exception&) {
        throw InvalidInputError("--ladder expects \"t0:count\", got \"" + s + "\"");
    }
}

SolverKind parse_solver(const std::string& s) {
    if (s == "auto") return SolverKind::Auto;
    if (s == "exact") return SolverKind::Exact;
    if (s == "modular") return SolverKind::Modular;
    throw InvalidInputError("--solver must be auto|exact|modular, got \"" + s + "\"");
}

void write_artifact(const std::string& outPath, const std::string& bytes,
                    const std::string& command,
                    const std::vector<io::ManifestInput>& inputs, double wallMs) {
    io::write_file(outPath, bytes);
    io::write_manifest(outPath, command, inputs, wallMs);
}

io::ManifestInput digest_input(const std::string& path, const std::string& bytes) {
    return {path, io::fnv1a64_hex(bytes)};
}

// ---------------------------------------------------------------------------
// Subcommand state. All options live here; callbacks run after parsing.

struct Options {
    std::string command;

    // shared
    int n = 0, r = 0;
    long long tMax = 0, t = 0;
    std::string out, outDir, seqPath, recPath;
    std::size_t ceiling = EngineOptions{}.stateCeiling;
    std::string format = "json";
    int threads = 0;

    // guess
    int maxOrder = 6, maxDegree = 6, holdout = FitOptions{}.holdout;
    std::string solver = "auto";

    // eval
    bool floatMode = false;
    unsigned precisionBits = PrecisionPolicy{}.bits;
    bool noDoubleCheck = false;
    std::string samplesCsv, ladderSpec;
    long long exactCap = EvalOptions{}.exactCap;

    // cconst / pipeline
    long long t0 = 1024;
    int ladderCount = 11, depth = 3;

    // simulate
    long long samples = 0;
    std::uint64_t seed = 0;

    // heuristic
    int digits = 15;

    // compare
    std::string pathA, pathB;
    double tol = 1e-9;

    // pipeline
    long long tMaxExact = 60;
};

int cmd_exact(const Options& o) {
    Stopwatch sw;
    ProblemSpec spec{o.n, o.r};
    spec.validate();
    EngineOptions eng{o.ceiling};
    io::SequenceFile f{spec, a_sequence(spec, o.tMax, eng)};
    write_artifact(o.out, io::render_sequence(f), o.command, {}, sw.ms());
    std::cout << "wrote " << o.out << " (" << f.values.size() << " terms)\n";
    return kExitOk;
}

int cmd_pmf(const Options& o) {
    Stopwatch sw;
    ProblemSpec spec{o.n, o.r};
    spec.validate();
    EngineOptions eng{o.ceiling};
    io::PmfFile f{spec, o.t, max_pmf_at(spec, o.t, eng)};
    write_artifact(o.out, io::render_pmf(f), o.command, {}, sw.ms());
    std::cout << "wrote " << o.out << " (" << f.pmf.size() << " support points)\n";
    return kExitOk;
}

int cmd_guess(const Options& o) {
    Stopwatch sw;
    const std::string seqBytes = io::read_file(o.seqPath);
    io::SequenceFile seq = io::parse_sequence(seqBytes);
    FitOptions opts;
    opts.holdout = o.holdout;
    opts.solver = parse_solver(o.solver);
    GuessReport report = search(seq.spec, seq.values, o.maxOrder, o.maxDegree, opts);
    std::cout << io::render_guess_report_text(report);
    if (!report.found())
        throw GuessExhaustedError("no operator within maxOrder " +
                                  std::to_string(o.maxOrder) + ", maxDegree " +
                                  std::to_string(o.maxDegree));
    write_artifact(o.out, io::render_recurrence(*report.op), o.command,
                   {digest_input(o.seqPath, seqBytes)}, sw.ms());
    std::cout << "wrote " << o.out << "\n";
    return kExitOk;
}

int cmd_eval(const Options& o) {
    Stopwatch sw;
    const std::string recBytes = io::read_file(o.recPath);
    RecurrenceOperator op = io::parse_recurrence(recBytes);
    std::vector<long long> sampleAt;
    if (!o.samplesCsv.empty()) sampleAt = parse_ll_list(o.samplesCsv, "--samples");
    if (!o.ladderSpec.empty()) {
        auto [t0, count] = parse_ladder_spec(o.ladderSpec);
        auto ladder = geometric_ladder(t0, count);
        sampleAt.insert(sampleAt.end(), ladder.begin(), ladder.end());
        std::sort(sampleAt.begin(), sampleAt.end());
        sampleAt.erase(std::unique(sampleAt.begin(), sampleAt.end()), sampleAt.end());
    }
    EvaluationResult result;
    if (o.floatMode) {
        if (sampleAt.empty()) sampleAt.push_back(o.tMax);
        PrecisionPolicy policy{o.precisionBits, !o.noDoubleCheck};
        result = extend_float(op, o.tMax, policy, sampleAt);
    } else {
        EvalOptions opts{o.exactCap};
        result = extend_exact(op, o.tMax, sampleAt, opts);
    }
    write_artifact(o.out, io::render_samples(op.spec, o.tMax, result), o.command,
                   {digest_input(o.recPath, recBytes)}, sw.ms());
    std::cout << "wrote " << o.out;
    if (!result.isExact && result.minAgreedDigits >= 0)
        std::cout << " (min agreed digits " << result.minAgreedDigits << ")";
    std::cout << "\n";
    if (!result.agreementOk)
        throw PrecisionError("double-check agreement below 6 digits (got " +
                             std::to_string(result.minAgreedDigits) +
                             "); raise --precision-bits");
    return kExitOk;
}

int cmd_cconst(const Options& o) {
    Stopwatch sw;
    if (o.recPath.empty() == o.seqPath.empty())
        throw InvalidInputError("cconst needs exactly one of --rec / --seq");
    auto ladder = geometric_ladder(o.t0, o.ladderCount);
    std::vector<io::ManifestInput> inputs;
    std::vector<FloatSample> samples;
    ProblemSpec spec;
    if (!o.recPath.empty()) {
        const std::string recBytes = io::read_file(o.recPath);
        RecurrenceOperator op = io::parse_recurrence(recBytes);
        inputs.push_back(digest_input(o.recPath, recBytes));
        spec = op.spec;
        PrecisionPolicy policy{o.precisionBits, true};
        EvaluationResult res = extend_float(op, ladder.back(), policy, ladder);
        if (!res.agreementOk)
            throw PrecisionError("double-check agreement below 6 digits; raise "
                                 "--precision-bits");
        samples = res.floatSamples;
    } else {
        const std::string seqBytes = io::read_file(o.seqPath);
        io::SequenceFile seq = io::parse_sequence(seqBytes);
        inputs.push_back(digest_input(o.seqPath, seqBytes));
        spec = seq.spec;
        PrecisionGuard guard(digits_for_bits(o.precisionBits));
        for (long long t : ladder) {
            if (t < 1 || t > static_cast<long long>(seq.values.size()))
                throw InvalidInputError("sequence file has no term at T=" +
                                        std::to_string(t));
            FloatSample s;
            s.t = t;
            s.value = Real(seq.values[static_cast<std::size_t>(t - 1)]);
            samples.push_back(std::move(s));
        }
    }
    AsymptoticFit fit = estimate_constant(samples, o.depth);
    ComparisonReport rep = compare_report(spec, fit);
    const std::string table = io::render_comparison_table(rep);
    const std::string jsonOut = io::render_comparison_json(rep, fit);
    std::cout << (o.format == "table" ? table : jsonOut);
    if (!o.out.empty())
        write_artifact(o.out, jsonOut, o.command, inputs, sw.ms());
    return kExitOk;
}

int cmd_simulate(const Options& o) {
    Stopwatch sw;
    SimConfig cfg;
    cfg.spec = ProblemSpec{o.n, o.r};
    cfg.t = o.t;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.threads = o.threads > 0 ? o.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (cfg.threads < 1) cfg.threads = 1;
    SimResult res = run_simulation(cfg);
    write_artifact(o.out, io::render_simulation(res), o.command, {}, sw.ms());
    char line[160];
    std::snprintf(line, sizeof line, "mean max %.6f (std error %.2e), %.1f ms\n",
                  res.meanMax, res.stdError, res.wallClockMs);
    std::cout << "wrote " << o.out << "\n" << line;
    return kExitOk;
}

int cmd_heuristic(const Options& o) {
    ProblemSpec spec{o.n, o.r};
    spec.validate();
    if (o.digits < 1 || o.digits > 10000)
        throw InvalidInputError("--digits out of range");
    Real v = heuristic_constant_real(spec, static_cast<unsigned>(o.digits));
    std::cout << "C_heuristic(" << spec.n << "," << spec.r
              << ") = " << v.str(o.digits, std::ios_base::fixed) << "\n";
    return kExitOk;
}

// Deep comparison of two artifacts of the same kind. Sequences, pmfs,
// recurrences and simulations must match exactly; float samples may differ by
// tol (relative to the larger magnitude, floored at 1).
std::optional<std::string> compare_artifacts(const std::string& a, const std::string& b,
                                             double tol) {
    auto kind = [](const std::string& text) -> std::string {
        // Cheap dispatch on a distinguishing key; full validation happens in
        // the typed parser afterwards.
        if (text.find("\"values\"") != std::string::npos) return "sequence";
        if (text.find("\"pmf\"") != std::string::npos) return "pmf";
        if (text.find("\"polys\"") != std::string::npos) return "recurrence";
        if (text.find("\"histogram\"") != std::string::npos) return "simulation";
        if (text.find("\"samples\"") != std::string::npos) return "samples";
        return "unknown";
    };
    const std::string ka = kind(a), kb = kind(b);
    if (ka != kb) return "different artifact kinds: " + ka + " vs " + kb;
    if (ka == "unknown") throw InvalidInputError("unrecognized artifact format");

    if (ka == "sequence") {
        auto fa = io::parse_sequence(a), fb = io::parse_sequence(b);
        if (!(fa.spec == fb.spec)) return std::string("problem (n,r) differs");
        if (fa.values.size() != fb.values.size())
            return "term counts differ: " + std::to_string(fa.values.size()) + " vs " +
                   std::to_string(fb.values.size());
        for (std::size_t i = 0; i < fa.values.size(); ++i)
            if (fa.values[i] != fb.values[i])
                return "A(" + std::to_string(i + 1) + ") differs: " +
                       rational_to_string(fa.values[i]) + " vs " +
                       rational_to_string(fb.values[i]);
        return std::nullopt;
    }
    if (ka == "pmf") {
        auto fa = io::parse_pmf(a), fb = io::parse_pmf(b);
        if (!(fa.spec == fb.spec) || fa.T != fb.T)
            return std::string("problem (n,r,T) differs");
        if (fa.pmf != fb.pmf) return std::string("pmf differs");
        return std::nullopt;
    }
    if (ka == "recurrence") {
        auto fa = io::parse_recurrence(a), fb = io::parse_recurrence(b);
        if (!(fa == fb)) return std::string("operators differ");
        return std::nullopt;
    }
    if (ka == "simulation") {
        auto fa = io::parse_simulation(a), fb = io::parse_simulation(b);
        if (!(fa.config.spec == fb.config.spec) || fa.config.t != fb.config.t ||
            fa.config.samples != fb.config.samples || fa.config.seed != fb.config.seed)
            return std::string("configurations differ");
        if (fa.histogram != fb.histogram) return std::string("histograms differ");
        return std::nullopt;
    }
    // samples
    auto fa = io::parse_samples(a), fb = io::parse_samples(b);
    if (!(fa.spec == fb.spec)) return std::string("problem (n,r) differs");
    if (fa.result.isExact != fb.result.isExact) return std::string("modes differ");
    if (fa.result.isExact) {
        if (fa.result.exactValues != fb.result.exactValues)
            return std::string("exact values differ");
        return std::nullopt;
    }
    if (fa.result.floatSamples.size() != fb.result.floatSamples.size())
        return std::string("sample counts differ");
    PrecisionGuard guard(digits_for_bits(std::max(fa.result.precisionBits,
                                                  fb.result.precisionBits)));
    for (std::size_t i = 0; i < fa.result.floatSamples.size(); ++i) {
        const auto& sa = fa.result.floatSamples[i];
        const auto& sb = fb.result.floatSamples[i];
        if (sa.t != sb.t)
            return "sample T differs at index " + std::to_string(i);
        Real diff = abs(Real(sa.value - sb.value));
        Real scale = abs(sa.value) > abs(sb.value) ? abs(sa.value) : abs(sb.value);
        if (scale < 1) scale = 1;
        if (diff > Real(tol) * scale)
            return "value at T=" + std::to_string(sa.t) + " differs beyond tol " +
                   std::to_string(tol);
    }
    return std::nullopt;
}

int cmd_compare(const Options& o) {
    const std::string a = io::read_file(o.pathA);
    const std::string b = io::read_file(o.pathB);
    auto mismatch = compare_artifacts(a, b, o.tol);
    if (mismatch) {
        std::cout << "MISMATCH: " << *mismatch << "\n";
        return kExitCompareMismatch;
    }
    std::cout << "files agree\n";
    return kExitOk;
}

int cmd_pipeline(const Options& o) {
    Stopwatch sw;
    ProblemSpec spec{o.n, o.r};
    spec.validate();
    const std::string dir = o.outDir.empty() ? "." : o.outDir;
    auto path = [&dir](const char* name) { return dir + "/" + name; };

    // 1. exact sequence
    EngineOptions eng{o.ceiling};
    io::SequenceFile seq{spec, a_sequence(spec, o.tMaxExact, eng)};
    write_artifact(path("sequence.json"), io::render_sequence(seq), o.command, {}, sw.ms());
    std::cout << "[1/4] exact sequence: " << seq.values.size() << " terms\n";

    // 2. guess
    FitOptions fitOpts;
    fitOpts.holdout = o.holdout;
    GuessReport report = search(spec, seq.values, o.maxOrder, o.maxDegree, fitOpts);
    std::cout << "[2/4] " << io::render_guess_report_text(report);
    if (!report.found())
        throw GuessExhaustedError("pipeline: no operator within budget; raise "
                                  "--max-order/--max-degree/--t-max-exact");
    RecurrenceOperator op = *report.op;
    write_artifact(path("recurrence.json"), io::render_recurrence(op), o.command, {},
                   sw.ms());

    // 3. long-range evaluation on the ladder
    auto ladder = geometric_ladder(o.t0, o.ladderCount);
    PrecisionPolicy policy{o.precisionBits, true};
    EvaluationResult ev = extend_float(op, ladder.back(), policy, ladder);
    write_artifact(path("samples.json"), io::render_samples(spec, ladder.back(), ev),
                   o.command, {}, sw.ms());
    std::cout << "[3/4] evaluated to T=" << ladder.back() << " at " << o.precisionBits
              << " bits";
    if (ev.minAgreedDigits >= 0)
        std::cout << " (min agreed digits " << ev.minAgreedDigits << ")";
    std::cout << "\n";
    if (!ev.agreementOk)
        throw PrecisionError("pipeline: precision agreement failed; raise "
                             "--precision-bits");

    // 4. constant extraction + comparison
    AsymptoticFit fit = estimate_constant(ev.floatSamples, o.depth);
    ComparisonReport rep = compare_report(spec, fit);
    write_artifact(path("constant.json"), io::render_comparison_json(rep, fit), o.command,
                   {}, sw.ms());
    std::cout << "[4/4] constant extraction\n";
    if (spec.degenerate())
        std::cout << "note: r = n is degenerate (every round fills every bin); "
                     "A(T) = 0 for all T and no nontrivial constant exists\n";
    std::cout << io::render_comparison_table(rep);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    o.command = "";
    const std::string fullCommand = join_command(argc, argv);

    CLI::App app{std::string(kToolName) + " " + kToolVersion +
                 " -- exact and asymptotic analysis of maximal bin occupancy"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.add_option("--threads", o.threads,
                   "global worker cap (default: hardware concurrency)");

    auto* exact = app.add_subcommand("exact", "exact A(1..tMax) sequence to a JSON file");
    exact->add_option("--n", o.n, "number of bins")->required();
    exact->add_option("--r", o.r, "balls per round")->required();
    exact->add_option("--t-max", o.tMax, "last round T to compute")->required();
    exact->add_option("--out", o.out, "output sequence file")->required();
    exact->add_option("--ceiling", o.ceiling,
                      "max live states before refusing (default 5000000)");

    auto* pmf = app.add_subcommand("pmf", "exact distribution of the max load after T rounds");
    pmf->add_option("--n", o.n, "number of bins")->required();
    pmf->add_option("--r", o.r, "balls per round")->required();
    pmf->add_option("--t", o.t, "round count T")->required();
    pmf->add_option("--out", o.out, "output pmf file")->required();
    pmf->add_option("--ceiling", o.ceiling,
                    "max live states before refusing (default 5000000)");

    auto* guess = app.add_subcommand("guess",
                                     "search for a P-recursive operator annihilating a sequence");
    guess->add_option("--seq", o.seqPath, "input sequence file")->required();
    guess->add_option("--max-order", o.maxOrder, "order budget")->required();
    guess->add_option("--max-degree", o.maxDegree, "degree budget")->required();
    guess->add_option("--holdout", o.holdout, "terms held out for verification (default 10)");
    guess->add_option("--solver", o.solver, "auto|exact|modular (default auto)");
    guess->add_option("--out", o.out, "output recurrence file")->required();

    auto* eval = app.add_subcommand("eval", "extend A(T) via a recurrence file");
    eval->add_option("--rec", o.recPath, "input recurrence file")->required();
    eval->add_option("--t-max", o.tMax, "extend through this T")->required();
    eval->add_flag("--float", o.floatMode, "mpfr forward solve instead of exact rationals");
    eval->add_option("--precision-bits", o.precisionBits,
                     "mantissa bits for --float (default 256)");
    eval->add_flag("--no-double-check", o.noDoubleCheck,
                   "skip the 2x-precision agreement pass");
    eval->add_option("--samples", o.samplesCsv, "comma-separated T values to retain");
    eval->add_option("--ladder", o.ladderSpec, "geometric sample ladder \"t0:count\"");
    eval->add_option("--exact-cap", o.exactCap,
                     "largest tMax accepted in exact mode (default 10000)");
    eval->add_option("--out", o.out, "output samples file")->required();

    auto* cconst = app.add_subcommand("cconst",
                                      "estimate C = lim A(T)/sqrt(T) by Richardson extrapolation");
    cconst->add_option("--rec", o.recPath, "recurrence file (evaluated on the ladder)");
    cconst->add_option("--seq", o.seqPath, "sequence file (must cover the ladder)");
    cconst->add_option("--t0", o.t0, "ladder start (default 1024)");
    cconst->add_option("--ladder-count", o.ladderCount, "ladder length (default 11)");
    cconst->add_option("--depth", o.depth, "extrapolation depth (default 3)");
    cconst->add_option("--precision-bits", o.precisionBits, "working precision (default 256)");
    cconst->add_option("--format", o.format, "json|table (default json)")
        ->check(CLI::IsMember({"json", "table"}));
    cconst->add_option("--out", o.out, "also write the JSON report here");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of E[max load]");
    simulate->add_option("--n", o.n, "number of bins")->required();
    simulate->add_option("--r", o.r, "balls per round")->required();
    simulate->add_option("--t", o.t, "rounds per replication")->required();
    simulate->add_option("--samples", o.samples, "replication count")->required();
    simulate->add_option("--seed", o.seed, "RNG seed")->required();
    simulate->add_option("--threads", o.threads, "worker threads (default: hardware)");
    simulate->add_option("--out", o.out, "output JSON file")->required();

    auto* heuristic = app.add_subcommand("heuristic",
                                         "(r/n) sqrt(pi ln n) ln(n/r) reference constant");
    heuristic->add_option("--n", o.n, "number of bins")->required();
    heuristic->add_option("--r", o.r, "balls per round")->required();
    heuristic->add_option("--digits", o.digits, "decimal digits to print (default 15)");

    auto* compare = app.add_subcommand("compare", "compare two artifacts of the same kind");
    compare->add_option("--a", o.pathA, "first file")->required();
    compare->add_option("--b", o.pathB, "second file")->required();
    compare->add_option("--tol", o.tol,
                        "relative tolerance for float samples (default 1e-9)");

    auto* pipeline = app.add_subcommand("pipeline",
                                        "exact -> guess -> eval -> cconst, end to end");
    pipeline->add_option("--n", o.n, "number of bins")->required();
    pipeline->add_option("--r", o.r, "balls per round")->required();
    pipeline->add_option("--t-max-exact", o.tMaxExact,
                         "exact terms to compute for guessing (default 60)");
    pipeline->add_option("--max-order", o.maxOrder, "guess order budget (default 6)");
    pipeline->add_option("--max-degree", o.maxDegree, "guess degree budget (default 6)");
    pipeline->add_option("--holdout", o.holdout, "guess holdout (default 10)");
    pipeline->add_option("--t0", o.t0, "ladder start (default 1024)");
    pipeline->add_option("--ladder-count", o.ladderCount, "ladder length (default 11)");
    pipeline->add_option("--depth", o.depth, "extrapolation depth (default 3)");
    pipeline->add_option("--precision-bits", o.precisionBits,
                         "evaluation precision (default 256)");
    pipeline->add_option("--ceiling", o.ceiling, "exact-engine state ceiling");
    pipeline->add_option("--out-dir", o.outDir, "artifact directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    std::string sub;
    for (auto* s : {exact, pmf, guess, eval, cconst, simulate, heuristic, compare, pipeline})
        if (s->parsed()) sub = s->get_name();
    // Manifests echo the full invocation.
    o.command = fullCommand;

    try {
        if (sub == "exact") return cmd_exact(o);
        if (sub == "pmf") return cmd_pmf(o);
        if (sub == "guess") return cmd_guess(o);
        if (sub == "eval") return cmd_eval(o);
        if (sub == "cconst") return cmd_cconst(o);
        if (sub == "simulate") return cmd_simulate(o);
        if (sub == "heuristic") return cmd_heuristic(o);
        if (sub == "compare") return cmd_compare(o);
        if (sub == "pipeline") return cmd_pipeline(o);
        throw Error("unknown subcommand");
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const GuessExhaustedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuessExhausted;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const PrecisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecisionFailure;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
