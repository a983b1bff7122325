#include "maxload/io.hpp"

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ios>
#include <sstream>

#include "json.hpp"
#include "maxload/errors.hpp"
#include "maxload/polynomial.hpp"
#include "maxload/version.hpp"

namespace maxload::io {

namespace {

using nlohmann::json;

// nlohmann's default object type is std::map, so keys serialize sorted and
// dump() output is a pure function of the content.
std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInputError(std::string(what) + ": invalid JSON: " + e.what());
    }
}

const json& member(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw InvalidInputError(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

long long int_member(const json& j, const char* key, const char* what) {
    const json& v = member(j, key, what);
    if (!v.is_number_integer())
        throw InvalidInputError(std::string(what) + ": field \"" + key +
                                "\" must be an integer");
    return v.get<long long>();
}

std::string string_member(const json& j, const char* key, const char* what) {
    const json& v = member(j, key, what);
    if (!v.is_string())
        throw InvalidInputError(std::string(what) + ": field \"" + key +
                                "\" must be a string");
    return v.get<std::string>();
}

ProblemSpec spec_members(const json& j, const char* what) {
    ProblemSpec spec;
    spec.n = static_cast<int>(int_member(j, "n", what));
    spec.r = static_cast<int>(int_member(j, "r", what));
    spec.validate();
    return spec;
}

std::string real_to_string(const Real& v, unsigned digits) {
    return v.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

std::string double_to_string(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

long long parse_ll(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidInputError(std::string(what) + ": bad integer \"" + s + "\"");
    }
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidInputError(std::string(what) + ": bad unsigned integer \"" + s + "\"");
    }
}

}  // namespace

std::string render_sequence(const SequenceFile& f) {
    json j;
    j["n"] = f.spec.n;
    j["r"] = f.spec.r;
    json vals = json::array();
    for (const auto& v : f.values) vals.push_back(rational_to_string(v));
    j["values"] = std::move(vals);
    return dump_canonical(j);
}

SequenceFile parse_sequence(const std::string& text) {
    const char* what = "sequence file";
    json j = parse_json(text, what);
    if (!j.is_object()) throw InvalidInputError(std::string(what) + ": not a JSON object");
    SequenceFile f;
    f.spec = spec_members(j, what);
    const json& vals = member(j, "values", what);
    if (!vals.is_array())
        throw InvalidInputError(std::string(what) + ": \"values\" must be an array");
    for (const auto& v : vals) {
        if (!v.is_string())
            throw InvalidInputError(std::string(what) + ": values must be rational strings");
        f.values.push_back(parse_rational(v.get<std::string>()));
    }
    return f;
}

std::string render_pmf(const PmfFile& f) {
    json j;
    j["T"] = f.T;
    j["n"] = f.spec.n;
    j["r"] = f.spec.r;
    json pm = json::object();
    for (const auto& [m, p] : f.pmf) pm[std::to_string(m)] = rational_to_string(p);
    j["pmf"] = std::move(pm);
    return dump_canonical(j);
}

PmfFile parse_pmf(const std::string& text) {
    const char* what = "pmf file";
    json j = parse_json(text, what);
    if (!j.is_object()) throw InvalidInputError(std::string(what) + ": not a JSON object");
    PmfFile f;
    f.spec = spec_members(j, what);
    f.T = int_member(j, "T", what);
    const json& pm = member(j, "pmf", what);
    if (!pm.is_object())
        throw InvalidInputError(std::string(what) + ": \"pmf\" must be an object");
    for (auto it = pm.begin(); it != pm.end(); ++it) {
        if (!it.value().is_string())
            throw InvalidInputError(std::string(what) + ": pmf values must be strings");
        f.pmf[parse_ll(it.key(), what)] = parse_rational(it.value().get<std::string>());
    }
    return f;
}

std::string render_recurrence(const RecurrenceOperator& op) {
    json j;
    j["n"] = op.spec.n;
    j["r"] = op.spec.r;
    j["order"] = op.order();
    j["degree"] = op.degree();
    j["validFrom"] = op.validFrom;
    json polys = json::array();
    for (const auto& p : op.polys) {
        json coeffs = json::array();
        for (const auto& c : p.coeffs) coeffs.push_back(bigint_to_string(c));
        polys.push_back(std::move(coeffs));
    }
    j["polys"] = std::move(polys);
    json init = json::array();
    for (const auto& v : op.initial) init.push_back(rational_to_string(v));
    j["initial"] = std::move(init);
    return dump_canonical(j);
}

RecurrenceOperator parse_recurrence(const std::string& text) {
    const char* what = "recurrence file";
    json j = parse_json(text, what);
    if (!j.is_object()) throw InvalidInputError(std::string(what) + ": not a JSON object");
    RecurrenceOperator op;
    op.spec = spec_members(j, what);
    op.validFrom = int_member(j, "validFrom", what);
    const json& polys = member(j, "polys", what);
    if (!polys.is_array() || polys.empty())
        throw InvalidInputError(std::string(what) + ": \"polys\" must be a non-empty array");
    for (const auto& pj : polys) {
        if (!pj.is_array())
            throw InvalidInputError(std::string(what) + ": each poly must be an array");
        std::vector<BigInt> coeffs;
        for (const auto& c : pj) {
            if (!c.is_string())
                throw InvalidInputError(std::string(what) +
                                        ": coefficients must be integer strings");
            coeffs.push_back(parse_bigint(c.get<std::string>()));
        }
        op.polys.emplace_back(std::move(coeffs));
    }
    const json& init = member(j, "initial", what);
    if (!init.is_array())
        throw InvalidInputError(std::string(what) + ": \"initial\" must be an array");
    for (const auto& v : init) {
        if (!v.is_string())
            throw InvalidInputError(std::string(what) + ": initial values must be strings");
        op.initial.push_back(parse_rational(v.get<std::string>()));
    }
    // Declared order/degree must match the polynomial data they describe.
    if (int_member(j, "order", what) != op.order())
        throw InvalidInputError(std::string(what) + ": declared order disagrees with polys");
    if (int_member(j, "degree", what) != op.degree())
        throw InvalidInputError(std::string(what) + ": declared degree disagrees with polys");
    validate_operator(op);
    return op;
}

std::string render_samples(const ProblemSpec& spec, long long tMax,
                           const EvaluationResult& result) {
    json j;
    j["n"] = spec.n;
    j["r"] = spec.r;
    j["tMax"] = tMax;
    json samples = json::array();
    if (result.isExact) {
        j["mode"] = "exact";
        for (const auto& [t, v] : result.exactValues) {
            json s;
            s["T"] = t;
            s["kind"] = "exact";
            s["value"] = rational_to_string(v);
            samples.push_back(std::move(s));
        }
    } else {
        j["mode"] = "float";
        j["precisionBits"] = result.precisionBits;
        if (result.minAgreedDigits >= 0) j["minAgreedDigits"] = result.minAgreedDigits;
        const unsigned digits = digits_for_bits(result.precisionBits);
        for (const auto& s : result.floatSamples) {
            json e;
            e["T"] = s.t;
            e["kind"] = "float";
            e["value"] = real_to_string(s.value, digits);
            if (s.agreedDigits >= 0) e["agreedDigits"] = s.agreedDigits;
            samples.push_back(std::move(e));
        }
    }
    j["samples"] = std::move(samples);
    return dump_canonical(j);
}

SamplesFile parse_samples(const std::string& text) {
    const char* what = "samples file";
    json j = parse_json(text, what);
    if (!j.is_object()) throw InvalidInputError(std::string(what) + ": not a JSON object");
    SamplesFile f;
    f.spec = spec_members(j, what);
    f.tMax = int_member(j, "tMax", what);
    const std::string mode = string_member(j, "mode", what);
    if (mode != "exact" && mode != "float")
        throw InvalidInputError(std::string(what) + ": mode must be \"exact\" or \"float\"");
    f.result.isExact = mode == "exact";
    if (!f.result.isExact) {
        f.result.precisionBits = static_cast<unsigned>(int_member(j, "precisionBits", what));
        if (j.contains("minAgreedDigits"))
            f.result.minAgreedDigits = static_cast<int>(int_member(j, "minAgreedDigits", what));
        f.result.agreementOk = f.result.minAgreedDigits < 0 || f.result.minAgreedDigits >= 6;
    }
    const json& samples = member(j, "samples", what);
    if (!samples.is_array())
        throw InvalidInputError(std::string(what) + ": \"samples\" must be an array");
    // Parse floats at (at least) the precision they were written with.
    PrecisionGuard guard(digits_for_bits(f.result.isExact ? 64u : f.result.precisionBits));
    for (const auto& s : samples) {
        if (!s.is_object())
            throw InvalidInputError(std::string(what) + ": samples must be objects");
        const long long t = int_member(s, "T", what);
        const std::string kind = string_member(s, "kind", what);
        const std::string value = string_member(s, "value", what);
        if (kind == "exact") {
            f.result.exactValues.emplace_back(t, parse_rational(value));
        } else if (kind == "float") {
            FloatSample fs;
            fs.t = t;
            try {
                fs.value = Real(value);
            } catch (const std::exception&) {
                throw InvalidInputError(std::string(what) + ": bad float \"" + value + "\"");
            }
            if (s.contains("agreedDigits"))
                fs.agreedDigits = static_cast<int>(int_member(s, "agreedDigits", what));
            f.result.floatSamples.push_back(std::move(fs));
        } else {
            throw InvalidInputError(std::string(what) + ": sample kind must be exact|float");
        }
    }
    if (f.result.isExact && !f.result.floatSamples.empty())
        throw InvalidInputError(std::string(what) + ": float samples in exact-mode file");
    if (!f.result.isExact && !f.result.exactValues.empty())
        throw InvalidInputError(std::string(what) + ": exact samples in float-mode file");
    return f;
}

std::string render_comparison_json(const ComparisonReport& rep, const AsymptoticFit& fit) {
    const unsigned digits = static_cast<unsigned>(rep.cMeasured.precision());
    json j;
    j["n"] = rep.spec.n;
    j["r"] = rep.spec.r;
    j["depth"] = fit.extrapolationDepth;
    j["cMeasured"] = real_to_string(rep.cMeasured, digits);
    j["errorBar"] = real_to_string(rep.errorBar, 3);
    j["cHeuristic"] = real_to_string(rep.cHeuristic, digits);
    j["gapHeuristicAbs"] = real_to_string(rep.gapHeuristicAbs, 3);
    j["gapHeuristicRel"] = real_to_string(rep.gapHeuristicRel, 3);
    if (rep.cExact) {
        j["cExact"] = real_to_string(*rep.cExact, digits);
        j["gapExactAbs"] = real_to_string(*rep.gapExactAbs, 3);
    } else {
        j["cExact"] = nullptr;
    }
    json samples = json::array();
    for (const auto& [t, s] : fit.samples) {
        json e;
        e["T"] = t;
        e["s"] = real_to_string(s, digits);
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);
    return dump_canonical(j);
}

std::string render_comparison_table(const ComparisonReport& rep) {
    std::ostringstream out;
    const auto num = [](const Real& v) { return v.str(12, std::ios_base::scientific); };
    out << "  n  r  C_measured          error_bar  C_heuristic";
    if (rep.cExact) out << "         C_exact";
    out << "\n";
    char head[64];
    std::snprintf(head, sizeof head, "%3d%3d  ", rep.spec.n, rep.spec.r);
    out << head << num(rep.cMeasured) << "  " << rep.errorBar.str(2, std::ios_base::scientific)
        << "   " << num(rep.cHeuristic);
    if (rep.cExact) out << "  " << num(*rep.cExact);
    out << "\n";
    out << "  gap vs heuristic: " << rep.gapHeuristicAbs.str(3, std::ios_base::scientific)
        << " (rel " << rep.gapHeuristicRel.str(3, std::ios_base::scientific) << ")\n";
    if (rep.gapExactAbs)
        out << "  gap vs exact:     " << rep.gapExactAbs->str(3, std::ios_base::scientific)
            << "\n";
    return out.str();
}

std::string render_simulation(const SimResult& res) {
    json j;
    j["n"] = res.config.spec.n;
    j["r"] = res.config.spec.r;
    j["t"] = res.config.t;
    j["samples"] = res.config.samples;
    j["seed"] = std::to_string(res.config.seed);
    j["rng"] = kRngAlgorithmId;
    json hist = json::object();
    for (const auto& [m, c] : res.histogram) hist[std::to_string(m)] = std::to_string(c);
    j["histogram"] = std::move(hist);
    j["meanMax"] = double_to_string(res.meanMax);
    j["stdError"] = double_to_string(res.stdError);
    return dump_canonical(j);
}

SimResult parse_simulation(const std::string& text) {
    const char* what = "simulation file";
    json j = parse_json(text, what);
    if (!j.is_object()) throw InvalidInputError(std::string(what) + ": not a JSON object");
    SimResult res;
    res.config.spec = spec_members(j, what);
    res.config.t = int_member(j, "t", what);
    res.config.samples = int_member(j, "samples", what);
    res.config.seed = parse_u64(string_member(j, "seed", what), what);
    const json& hist = member(j, "histogram", what);
    if (!hist.is_object())
        throw InvalidInputError(std::string(what) + ": \"histogram\" must be an object");
    for (auto it = hist.begin(); it != hist.end(); ++it) {
        if (!it.value().is_string())
            throw InvalidInputError(std::string(what) + ": histogram counts must be strings");
        res.histogram[parse_ll(it.key(), what)] =
            parse_u64(it.value().get<std::string>(), what);
    }
    try {
        res.meanMax = std::stod(string_member(j, "meanMax", what));
        res.stdError = std::stod(string_member(j, "stdError", what));
    } catch (const std::exception&) {
        throw InvalidInputError(std::string(what) + ": bad floating-point field");
    }
    return res;
}

std::string render_guess_report_text(const GuessReport& report) {
    std::ostringstream out;
    if (report.found()) {
        const RecurrenceOperator& op = *report.op;
        out << "found operator: order " << op.order() << ", degree " << op.degree()
            << ", validFrom " << op.validFrom << "\n";
        out << "terms used " << report.termsUsed << ", verified " << report.termsVerified
            << ", nullspace dimension " << report.nullspace_dimension() << "\n";
        for (std::size_t i = 0; i < op.polys.size(); ++i)
            out << "  p" << i << "(T) = " << poly_to_string(op.polys[i]) << "\n";
        if (!op.initial.empty()) {
            out << "  initial:";
            for (std::size_t i = 0; i < op.initial.size(); ++i)
                out << " A(" << i + 1 << ")=" << rational_to_string(op.initial[i]);
            out << "\n";
        }
    } else {
        out << "no operator found (terms available: " << report.termsUsed << ")\n";
    }
    out << "trace:\n";
    for (const auto& e : report.trace) {
        out << "  order " << e.order << " degree " << e.degree << ": " << e.outcome;
        if (e.nullity >= 0) out << " (nullity " << e.nullity << ")";
        if (!e.detail.empty()) out << " -- " << e.detail;
        out << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw InvalidInputError("read failed: " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error("write failed: " + path);
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_manifest(const std::string& outPath, const std::string& command,
                    const std::vector<ManifestInput>& inputs, double wallClockMs) {
    json j;
    j["command"] = command;
    j["tool"] = std::string(kToolName) + " " + kToolVersion;
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char ts[32];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["createdAtUtc"] = ts;
    char wc[32];
    std::snprintf(wc, sizeof wc, "%.3f", wallClockMs);
    j["wallClockMs"] = wc;
    json ins = json::array();
    for (const auto& in : inputs) {
        json e;
        e["path"] = in.path;
        e["digest"] = in.digest;
        ins.push_back(std::move(e));
    }
    j["inputs"] = std::move(ins);
    write_file(outPath + ".manifest.json", dump_canonical(j));
}

}  // namespace maxload::io
