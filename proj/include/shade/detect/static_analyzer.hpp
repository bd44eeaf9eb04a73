#pragma once

#include <memory>
#include <vector>

#include "shade/core/source_unit.hpp"
#include "shade/detect/backends.hpp"
#include "shade/detect/spec.hpp"

namespace shade::detect {

// Runs one static analyzer over one unit. Infrastructure failure throws
// (ToolUnavailable / Timeout); it is never reported as flagged=false.
DetectionVerdict run_static(const SourceUnit& code, const DetectorSpec& spec, StaticScanBackend& backend);

// One spec bound to its backend; a suite is a vector of these.
struct StaticDetector {
    DetectorSpec spec;
    std::shared_ptr<StaticScanBackend> backend;

    DetectionVerdict run(const SourceUnit& code) const { return run_static(code, spec, *backend); }
};

// Number of suite members that did NOT flag the unit. Any infrastructure
// failure aborts: a dead tool must not count as a pass.
int static_evasion_score(const SourceUnit& code, const std::vector<StaticDetector>& suite);

} // namespace shade::detect
