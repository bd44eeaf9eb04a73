#pragma once

#include <string>

#include "shade/core/source_unit.hpp"
#include "shade/detect/backends.hpp"
#include "shade/detect/spec.hpp"

namespace shade::detect {

// The serialized detection request is this template with {code} substituted,
// byte for byte.
extern const char* const kDetectionPromptTemplate;

// Loads spec.prompt_template_path when set, otherwise the built-in template.
std::string detection_prompt_template(const DetectorSpec& spec);
std::string render_detection_prompt(const std::string& template_text, const std::string& code);

// Parsed shape of an LLM detection response: bracketed finding tags per
// line, or the no-vulnerability marker.
struct ParsedResponse {
    std::vector<Finding> findings;
    bool marker_present = false;
    bool well_formed = false; // at least one tag or the marker
};
ParsedResponse parse_detection_response(const std::string& response, const std::string& marker);

// One detection round trip. Transport errors and malformed responses are
// retried once (spec.retry_budget), then surfaced.
DetectionVerdict llm_detect_once(const SourceUnit& code, const DetectorSpec& spec, GenerationClient& client);

// Runs test_time detections; a run counts toward the score iff no finding
// name matches the criterion. Result is in [0, test_time].
int llm_evasion_score(const SourceUnit& code, const DetectorSpec& spec, const KeywordCriterion& criterion,
                      int test_time, GenerationClient& client);

} // namespace shade::detect
