#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wcop/checks.hpp"
#include "wcop/classifier.hpp"

namespace wcop {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "wcop";
inline constexpr const char* kToolVersion = "0.1.0";

/// Machine-readable report: tool, version, input, config, verdicts, evidence.
/// Field order is fixed so identical inputs give identical bytes.
Json report_json(const SymbolPair& sp, const ClassifierConfig& cfg, const ClassificationReport& r);
/// Aligned plain-text report.
std::string report_text(const SymbolPair& sp, const ClassificationReport& r);

Json probe_json(const ProbeResult& p);
std::string probe_text(const ProbeResult& p);
Json exp_ineq_json(const ExpIneqResult& r);
std::string exp_ineq_text(const ExpIneqResult& r);

Json config_json(const ClassifierConfig& cfg);

struct CorpusEntry {
    std::string id;
    std::string psi;
    std::string phi;
    std::size_t dim = 1;
    std::string property;
    Verdict expected = Verdict::Unknown;
    /// worked-example, derived or elementary.
    std::string source;
    std::string citation;
};

/// Regression corpus of known verdicts, all decided by exact rules.
const std::vector<CorpusEntry>& builtin_corpus();

/// Reads a JSON array of entries (or {"entries": [...]}); throws InvalidRange
/// when the document is malformed or empty.
std::vector<CorpusEntry> parse_corpus(const std::string& text);
std::vector<CorpusEntry> load_corpus(const std::string& path);
Json corpus_json(const std::vector<CorpusEntry>& entries);

struct CorpusMismatch {
    std::string id;
    std::string property;
    Verdict expected;
    Verdict actual;
    /// Rules behind the actual verdict, or the error message.
    std::string detail;
};

struct CorpusOutcome {
    std::size_t entries = 0;
    std::size_t passed = 0;
    std::vector<CorpusMismatch> mismatches;
};

/// Throws InvalidRange when an entry lacks its source or citation.
CorpusOutcome run_corpus(const std::vector<CorpusEntry>& entries, const ClassifierConfig& cfg = {});
std::string corpus_text(const CorpusOutcome& out);

}  // namespace wcop
