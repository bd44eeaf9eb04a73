#pragma once

#include <map>
#include <string>

#include "shade/core/sha256.hpp"

namespace shade {

// One code file or snippet plus provenance. The universal currency of the
// pipeline: transformations, detectors, poison building and evaluation all
// consume and produce SourceUnits.
struct SourceUnit {
    std::string text;
    std::string language = "python";
    std::string id;                                  // file path or synthetic id
    std::map<std::string, std::string> provenance;   // prompt digest, backend id, parent digest, ...

    std::string digest() const { return sha256_hex(text); }

    bool operator==(const SourceUnit& other) const { return text == other.text && language == other.language; }
};

} // namespace shade
