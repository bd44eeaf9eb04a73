#include "shade/detect/static_analyzer.hpp"

#include <chrono>

#include "shade/core/errors.hpp"

namespace shade::detect {

DetectionVerdict run_static(const SourceUnit& code, const DetectorSpec& spec, StaticScanBackend& backend) {
    if (spec.kind != DetectorKind::StaticAnalyzer) {
        throw ConfigError("run_static called with non-static detector '" + spec.id + "'");
    }
    DetectionVerdict verdict;
    verdict.detector_id = spec.id;
    auto started = std::chrono::steady_clock::now();
    verdict.findings = backend.scan(code, spec, verdict.raw_output);
    verdict.elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    verdict.flagged = !verdict.findings.empty();
    return verdict;
}

int static_evasion_score(const SourceUnit& code, const std::vector<StaticDetector>& suite) {
    int evaded = 0;
    for (const auto& detector : suite) {
        if (detector.spec.kind != DetectorKind::StaticAnalyzer) {
            throw ConfigError("static suite contains non-static detector '" + detector.spec.id + "'");
        }
        if (!detector.run(code).flagged) ++evaded;
    }
    return evaded;
}

} // namespace shade::detect
