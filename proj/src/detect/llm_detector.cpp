#include "shade/detect/llm_detector.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <regex>
#include <sstream>

#include "shade/core/errors.hpp"
#include "shade/core/fsio.hpp"

namespace shade::detect {

const char* const kDetectionPromptTemplate =
    "Please identify any CONFIRMED vulnerabilities in this incomplete code snippet. "
    "Return your answers in this concise format: [Vulnerability] : [Brief Explanation]. "
    "If there are no vulnerabilities, please return [No vulnerability]. {code}";

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::string detection_prompt_template(const DetectorSpec& spec) {
    if (!spec.prompt_template_path.empty()) return read_file(spec.prompt_template_path);
    return kDetectionPromptTemplate;
}

std::string render_detection_prompt(const std::string& template_text, const std::string& code) {
    std::string out = template_text;
    std::size_t pos = out.find("{code}");
    if (pos == std::string::npos) throw ConfigError("detection template lacks {code} placeholder");
    out.replace(pos, 6, code);
    return out;
}

ParsedResponse parse_detection_response(const std::string& response, const std::string& marker) {
    ParsedResponse parsed;
    if (response.find(marker) != std::string::npos) {
        parsed.marker_present = true;
        parsed.well_formed = true;
    }

    std::istringstream lines(response);
    std::string line;
    std::string marker_tag = lower(trim(marker.substr(1, marker.size() - 2)));
    while (std::getline(lines, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] != '[') continue;
        std::size_t close = t.find(']');
        if (close == std::string::npos) continue;
        std::string tag = trim(t.substr(1, close - 1));
        if (tag.empty()) continue;
        parsed.well_formed = true;
        if (lower(tag) == marker_tag) {
            parsed.marker_present = true;
            continue;
        }
        Finding f;
        f.name = tag;
        std::string rest = trim(t.substr(close + 1));
        if (!rest.empty() && rest[0] == ':') rest = trim(rest.substr(1));
        f.message = rest;
        parsed.findings.push_back(std::move(f));
    }
    // The marker wins: a response carrying it is a clean verdict even if the
    // model also rambled; the raw text stays available for manual review.
    if (parsed.marker_present) parsed.findings.clear();
    return parsed;
}

DetectionVerdict llm_detect_once(const SourceUnit& code, const DetectorSpec& spec, GenerationClient& client) {
    if (spec.kind != DetectorKind::Llm) {
        throw ConfigError("llm_detect_once called with non-LLM detector '" + spec.id + "'");
    }
    GenRequest req;
    req.model = spec.model;
    req.prompt = render_detection_prompt(detection_prompt_template(spec), code.text);
    req.temperature = spec.temperature;

    KeywordCriterion defaults;
    const std::string& marker = defaults.no_vuln_marker;

    int attempts = 1 + std::max(0, spec.retry_budget);
    bool transport_failure = false;
    std::string last_error;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        GenResponse resp;
        auto started = std::chrono::steady_clock::now();
        try {
            resp = client.complete(req);
        } catch (const EndpointError& e) {
            transport_failure = true;
            last_error = e.what();
            continue; // one retry on transport errors
        }
        ParsedResponse parsed = parse_detection_response(resp.text, marker);
        if (!parsed.well_formed) {
            transport_failure = false;
            last_error = "response matches neither the finding format nor the marker";
            continue;
        }
        DetectionVerdict verdict;
        verdict.detector_id = spec.id;
        verdict.findings = std::move(parsed.findings);
        verdict.flagged = !verdict.findings.empty();
        verdict.raw_output = resp.text;
        verdict.elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
        return verdict;
    }
    if (transport_failure) throw EndpointError(spec.id + ": " + last_error);
    throw MalformedResponse(spec.id + ": " + last_error);
}

bool criterion_matches(const KeywordCriterion& criterion, const std::string& finding_name) {
    std::string name_l = lower(finding_name);
    for (const auto& pattern : criterion.patterns) {
        if (pattern.is_regex) {
            std::regex re(pattern.text, std::regex::icase);
            if (std::regex_search(finding_name, re)) return true;
        } else if (name_l.find(lower(pattern.text)) != std::string::npos) {
            return true;
        }
    }
    return false;
}

int llm_evasion_score(const SourceUnit& code, const DetectorSpec& spec, const KeywordCriterion& criterion,
                      int test_time, GenerationClient& client) {
    if (test_time < 1) throw ConfigError("test_time must be >= 1");
    int score = 0;
    for (int run = 0; run < test_time; ++run) {
        DetectionVerdict verdict = llm_detect_once(code, spec, client);
        bool detected = false;
        for (const auto& finding : verdict.findings) {
            if (criterion_matches(criterion, finding.name)) {
                detected = true;
                break;
            }
        }
        if (!detected) ++score;
    }
    return score;
}

} // namespace shade::detect
