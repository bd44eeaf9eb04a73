#pragma once

#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "shade/core/source_unit.hpp"
#include "shade/detect/spec.hpp"

namespace shade::detect {

// ---- static-analyzer side -------------------------------------------------

class StaticScanBackend {
public:
    virtual ~StaticScanBackend() = default;
    // Returns parsed findings; throws ToolUnavailable / Timeout on
    // infrastructure failure (never a silent empty result).
    virtual std::vector<Finding> scan(const SourceUnit& code, const DetectorSpec& spec,
                                      std::string& raw_output) = 0;
};

// Writes the unit to a sandboxed temp file, runs the configured command and
// parses the tool's machine-readable output.
class ProcessStaticBackend : public StaticScanBackend {
public:
    std::vector<Finding> scan(const SourceUnit&, const DetectorSpec&, std::string&) override;
};

// Offline fixtures: <dir>/<sha256(spec.id + "\n" + code)>.json holding
// {"findings": [{"name": ..., "message": ..., "start_line": n}]}.
class FixtureStaticBackend : public StaticScanBackend {
public:
    explicit FixtureStaticBackend(std::filesystem::path dir) : dir_(std::move(dir)) {}
    std::vector<Finding> scan(const SourceUnit&, const DetectorSpec&, std::string&) override;

    static std::string request_digest(const DetectorSpec& spec, const SourceUnit& code);

private:
    std::filesystem::path dir_;
};

// Test/scenario backend driven by a callback.
class ScriptedStaticBackend : public StaticScanBackend {
public:
    using Fn = std::function<std::vector<Finding>(const SourceUnit&, const DetectorSpec&)>;
    explicit ScriptedStaticBackend(Fn fn) : fn_(std::move(fn)) {}
    std::vector<Finding> scan(const SourceUnit& code, const DetectorSpec& spec, std::string& raw) override {
        std::lock_guard<std::mutex> lock(mutex_);
        auto findings = fn_(code, spec);
        raw = "scripted:" + std::to_string(findings.size());
        return findings;
    }

private:
    std::mutex mutex_;
    Fn fn_;
};

// Parsers for the supported machine-readable outputs; exposed for tests.
std::vector<Finding> parse_tool_output(const std::string& format, const std::string& text);

// ---- generation / LLM side --------------------------------------------------

struct GenRequest {
    std::string model;
    std::string prompt;
    double temperature = -1.0; // < 0 -> unset
    double top_p = -1.0;
    int max_tokens = 0;        // 0 -> unset
};

struct GenResponse {
    std::string text;
};

// Canonical serialization of a request; its SHA-256 keys fixture files and
// audit records.
std::string canonical_request(const GenRequest& req);
std::string request_digest(const GenRequest& req);

class GenerationClient {
public:
    virtual ~GenerationClient() = default;
    virtual GenResponse complete(const GenRequest& req) = 0;
    virtual std::string id() const = 0;
};

// Offline fixtures: <dir>/<request_digest>.txt holds the raw response text.
class FixtureGenerationClient : public GenerationClient {
public:
    explicit FixtureGenerationClient(std::filesystem::path dir) : dir_(std::move(dir)) {}
    GenResponse complete(const GenRequest& req) override;
    std::string id() const override { return "fixture:" + dir_.string(); }

private:
    std::filesystem::path dir_;
};

// Test backend: either a response function or a queue of canned responses.
class ScriptedGenerationClient : public GenerationClient {
public:
    using Fn = std::function<std::string(const GenRequest&)>;
    explicit ScriptedGenerationClient(Fn fn) : fn_(std::move(fn)) {}
    explicit ScriptedGenerationClient(std::vector<std::string> queue)
        : queue_(queue.begin(), queue.end()) {}

    GenResponse complete(const GenRequest& req) override;
    std::string id() const override { return "scripted"; }

    const std::vector<GenRequest>& requests() const { return seen_; }

private:
    std::mutex mutex_;
    Fn fn_;
    std::deque<std::string> queue_;
    std::vector<GenRequest> seen_;
};

// Live chat-completion endpoint (OpenAI-style JSON API). Credentials come
// from the environment variable named in the spec; never from config files.
class HttpGenerationClient : public GenerationClient {
public:
    HttpGenerationClient(std::string endpoint, std::string api_key_env);
    GenResponse complete(const GenRequest& req) override;
    std::string id() const override { return "http:" + endpoint_; }

private:
    std::string endpoint_;
    std::string api_key_env_;
};

} // namespace shade::detect
