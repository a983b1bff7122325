#pragma once

#include <string>
#include <vector>

#include "maxload/asymptotics.hpp"
#include "maxload/engine.hpp"
#include "maxload/evaluate.hpp"
#include "maxload/guess.hpp"
#include "maxload/problem.hpp"
#include "maxload/recurrence.hpp"
#include "maxload/simulate.hpp"

// JSON artifact formats. All math payloads are serialized as decimal strings
// (exact for rationals/integers, fixed digit count for floats); keys come out
// sorted, so identical inputs yield byte-identical files. Volatile run info
// (timestamps, wall clock) lives in a side manifest, never in the artifact.
namespace maxload::io {

struct SequenceFile {
    ProblemSpec spec;
    std::vector<Rational> values;  // A(1)..A(tMax)
};

struct PmfFile {
    ProblemSpec spec;
    long long T = 0;
    MaxPmf pmf;
};

// Renderers produce the canonical bytes (2-space indent, trailing newline).
std::string render_sequence(const SequenceFile& f);
SequenceFile parse_sequence(const std::string& text);

std::string render_pmf(const PmfFile& f);
PmfFile parse_pmf(const std::string& text);

std::string render_recurrence(const RecurrenceOperator& op);
RecurrenceOperator parse_recurrence(const std::string& text);

// Samples artifact from an evaluation run.
std::string render_samples(const ProblemSpec& spec, long long tMax,
                           const EvaluationResult& result);
struct SamplesFile {
    ProblemSpec spec;
    long long tMax = 0;
    EvaluationResult result;
};
SamplesFile parse_samples(const std::string& text);

// Constant-extraction report, JSON and aligned-text forms.
std::string render_comparison_json(const ComparisonReport& rep, const AsymptoticFit& fit);
std::string render_comparison_table(const ComparisonReport& rep);

std::string render_simulation(const SimResult& res);
SimResult parse_simulation(const std::string& text);

// Human-readable guess report (search trace and operator summary).
std::string render_guess_report_text(const GuessReport& report);

// Files.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

// FNV-1a 64-bit digest as 16 hex chars.
std::string fnv1a64_hex(const std::string& bytes);

// Side manifest "<outPath>.manifest.json": command echo, input digests, tool
// version, timestamp, wall clock.
struct ManifestInput {
    std::string path;
    std::string digest;
};
void write_manifest(const std::string& outPath, const std::string& command,
                    const std::vector<ManifestInput>& inputs, double wallClockMs);

}  // namespace maxload::io
