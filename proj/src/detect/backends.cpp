#include "shade/detect/backends.hpp"

#include <cstdlib>

#include <json.hpp>

#include "shade/core/errors.hpp"
#include "shade/core/fsio.hpp"
#include "shade/core/process.hpp"
#include "shade/core/sha256.hpp"

namespace shade::detect {

using nlohmann::json;

namespace {

std::string substitute(std::string text, const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
        text.replace(pos, key.size(), value);
        pos += value.size();
    }
    return text;
}

Finding finding_from_json(const json& j) {
    Finding f;
    f.name = j.value("name", j.value("rule", ""));
    f.message = j.value("message", "");
    f.start_line = j.value("start_line", 0);
    f.end_line = j.value("end_line", f.start_line);
    return f;
}

std::vector<Finding> parse_generic(const json& doc) {
    std::vector<Finding> out;
    for (const auto& item : doc.value("findings", json::array())) out.push_back(finding_from_json(item));
    return out;
}

std::vector<Finding> parse_semgrep(const json& doc) {
    std::vector<Finding> out;
    for (const auto& item : doc.value("results", json::array())) {
        Finding f;
        f.name = item.value("check_id", "");
        if (item.contains("extra")) f.message = item["extra"].value("message", "");
        if (item.contains("start")) f.start_line = item["start"].value("line", 0);
        if (item.contains("end")) f.end_line = item["end"].value("line", f.start_line);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Finding> parse_bandit(const json& doc) {
    std::vector<Finding> out;
    for (const auto& item : doc.value("results", json::array())) {
        Finding f;
        f.name = item.value("test_id", item.value("test_name", ""));
        f.message = item.value("issue_text", "");
        f.start_line = item.value("line_number", 0);
        f.end_line = f.start_line;
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Finding> parse_sarif(const json& doc) {
    std::vector<Finding> out;
    for (const auto& run : doc.value("runs", json::array())) {
        for (const auto& item : run.value("results", json::array())) {
            Finding f;
            f.name = item.value("ruleId", "");
            if (item.contains("message")) f.message = item["message"].value("text", "");
            if (item.contains("locations") && !item["locations"].empty()) {
                const auto& loc = item["locations"][0];
                if (loc.contains("physicalLocation") && loc["physicalLocation"].contains("region")) {
                    f.start_line = loc["physicalLocation"]["region"].value("startLine", 0);
                    f.end_line = loc["physicalLocation"]["region"].value("endLine", f.start_line);
                }
            }
            out.push_back(std::move(f));
        }
    }
    return out;
}

} // namespace

std::vector<Finding> parse_tool_output(const std::string& format, const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ToolUnavailable(std::string("unparseable tool output: ") + e.what());
    }
    if (format == "semgrep-json") return parse_semgrep(doc);
    if (format == "bandit-json") return parse_bandit(doc);
    if (format == "sarif") return parse_sarif(doc);
    if (format == "generic-json") return parse_generic(doc);
    throw ConfigError("unknown output format '" + format + "'");
}

std::vector<Finding> ProcessStaticBackend::scan(const SourceUnit& code, const DetectorSpec& spec,
                                                std::string& raw_output) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("shade-scan-" + sha256_hex(code.text + spec.id).substr(0, 16));
    fs::create_directories(dir);
    fs::path file = dir / ("unit" + spec.file_extension);
    write_file(file, code.text);

    std::string command = substitute(spec.invocation, "{file}", file.string());
    command = substitute(command, "{ruleset}", spec.ruleset_ref);

    ProcessResult proc = run_process(command, spec.timeout);
    std::error_code ec;
    fs::remove_all(dir, ec);

    raw_output = proc.output;
    if (proc.timed_out) throw Timeout(spec.id + " exceeded " + std::to_string(spec.timeout.count()) + "ms");
    if (proc.not_found) throw ToolUnavailable(spec.id + ": command not found: " + spec.invocation);

    auto in = [&](const std::vector<int>& v) {
        for (int e : v)
            if (e == proc.exit_code) return true;
        return false;
    };
    if (!in(spec.ok_exits) && !in(spec.findings_exits)) {
        throw ToolUnavailable(spec.id + ": unexpected exit code " + std::to_string(proc.exit_code));
    }
    return parse_tool_output(spec.output_format, proc.output);
}

std::string FixtureStaticBackend::request_digest(const DetectorSpec& spec, const SourceUnit& code) {
    return sha256_hex(spec.id + "\n" + code.text);
}

std::vector<Finding> FixtureStaticBackend::scan(const SourceUnit& code, const DetectorSpec& spec,
                                                std::string& raw_output) {
    auto path = dir_ / (request_digest(spec, code) + ".json");
    if (!std::filesystem::exists(path)) {
        throw ToolUnavailable(spec.id + ": no fixture " + path.string());
    }
    raw_output = read_file(path);
    return parse_tool_output("generic-json", raw_output);
}

std::string canonical_request(const GenRequest& req) {
    json j;
    j["model"] = req.model;
    j["prompt"] = req.prompt;
    j["temperature"] = req.temperature < 0 ? json(nullptr) : json(req.temperature);
    j["top_p"] = req.top_p < 0 ? json(nullptr) : json(req.top_p);
    j["max_tokens"] = req.max_tokens == 0 ? json(nullptr) : json(req.max_tokens);
    return j.dump(); // nlohmann::json orders keys alphabetically
}

std::string request_digest(const GenRequest& req) { return sha256_hex(canonical_request(req)); }

GenResponse FixtureGenerationClient::complete(const GenRequest& req) {
    auto path = dir_ / (request_digest(req) + ".txt");
    if (!std::filesystem::exists(path)) {
        throw EndpointError("no fixture " + path.string());
    }
    return GenResponse{read_file(path)};
}

GenResponse ScriptedGenerationClient::complete(const GenRequest& req) {
    std::lock_guard<std::mutex> lock(mutex_);
    seen_.push_back(req);
    if (fn_) return GenResponse{fn_(req)};
    if (queue_.empty()) throw EndpointError("scripted client exhausted");
    GenResponse r{queue_.front()};
    queue_.pop_front();
    return r;
}

HttpGenerationClient::HttpGenerationClient(std::string endpoint, std::string api_key_env)
    : endpoint_(std::move(endpoint)), api_key_env_(std::move(api_key_env)) {}

} // namespace shade::detect
