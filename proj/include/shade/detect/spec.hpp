#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace shade::detect {

enum class DetectorKind { StaticAnalyzer, Llm };

// Uniform description of one detector: an external static analyzer invoked
// as a process, or an LLM detector behind a completion endpoint.
struct DetectorSpec {
    std::string id;
    DetectorKind kind = DetectorKind::StaticAnalyzer;

    // Static analyzers: command template with {file} and {ruleset}
    // placeholders. LLM detectors: endpoint URL.
    std::string invocation;
    std::string ruleset_ref;
    std::chrono::milliseconds timeout{60000};

    // Static analyzers: how to interpret the tool run.
    std::string output_format = "generic-json"; // semgrep-json | bandit-json | sarif | generic-json
    std::vector<int> ok_exits{0};               // ran cleanly (findings, if any, are in stdout)
    std::vector<int> findings_exits{1};         // ran and signals findings via exit code
    std::string file_extension = ".py";

    // LLM detectors.
    std::string model;
    std::string prompt_template_path;  // empty -> built-in template
    std::string api_key_env = "SHADE_API_KEY";
    double temperature = -1.0;         // < 0 -> leave to the endpoint default
    int retry_budget = 1;

    int parallelism = 1;
};

struct Finding {
    std::string name;     // rule id or extracted vulnerability name
    std::string message;
    int start_line = 0;   // 0 = unknown
    int end_line = 0;
};

struct DetectionVerdict {
    std::string detector_id;
    bool flagged = false;
    std::vector<Finding> findings;
    std::string raw_output;   // verbatim, for audit / manual review
    std::chrono::milliseconds elapsed{0};
};

struct KeywordPattern {
    std::string text;
    bool is_regex = false;
};

// Per-vulnerability acceptance criterion for LLM detection runs: a verdict
// counts as a detection only when a finding name matches one of these.
struct KeywordCriterion {
    std::string vulnerability_id;
    std::vector<KeywordPattern> patterns;
    std::string no_vuln_marker = "[No vulnerability]";
};

// Case-insensitive substring (or regex, per pattern) match against a
// finding name.
bool criterion_matches(const KeywordCriterion& criterion, const std::string& finding_name);

} // namespace shade::detect
