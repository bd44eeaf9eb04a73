#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "shade/core/errors.hpp"
#include "shade/detect/backends.hpp"

namespace shade::detect {

using nlohmann::json;

GenResponse HttpGenerationClient::complete(const GenRequest& req) {
    const char* key = api_key_env_.empty() ? nullptr : std::getenv(api_key_env_.c_str());
    if (!key || !*key) {
        throw ConfigError("live endpoint requires credentials in $" + api_key_env_);
    }

    // endpoint_ is scheme://host[:port][/path]
    std::string path = "/v1/chat/completions";
    std::string base = endpoint_;
    auto scheme_end = base.find("://");
    auto path_start = scheme_end == std::string::npos ? base.find('/') : base.find('/', scheme_end + 3);
    if (path_start != std::string::npos) {
        path = base.substr(path_start);
        base = base.substr(0, path_start);
    }

    json body;
    body["model"] = req.model;
    body["messages"] = json::array({json{{"role", "user"}, {"content", req.prompt}}});
    if (req.temperature >= 0) body["temperature"] = req.temperature;
    if (req.top_p >= 0) body["top_p"] = req.top_p;
    if (req.max_tokens > 0) body["max_tokens"] = req.max_tokens;

    httplib::Client client(base);
    client.set_read_timeout(120, 0);
    httplib::Headers headers{{"Authorization", std::string("Bearer ") + key}};
    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) throw EndpointError("transport failure talking to " + endpoint_);
    if (res->status / 100 != 2) {
        throw EndpointError("endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    try {
        json doc = json::parse(res->body);
        return GenResponse{doc["choices"][0]["message"]["content"].get<std::string>()};
    } catch (const json::exception& e) {
        throw MalformedResponse(std::string("unexpected completion payload: ") + e.what());
    }
}

} // namespace shade::detect
