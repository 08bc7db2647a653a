#pragma once

#include <cstdlib>
#include <map>
#include <memory>
#include <string>

#include "tabula/core/http.hpp"
#include "json.hpp"
#include "tabula/core/error.hpp"

namespace tabula::insight {

using ClientParams = std::map<std::string, std::string>;

// Text-completion backend. Prompts that carry a template rendering put it
// after a line reading exactly "CONTEXT:".
class ModelClient {
public:
    virtual ~ModelClient() = default;
    virtual std::string complete(const std::string& prompt, const ClientParams& params = {}) = 0;
    virtual std::string name() const = 0;
    virtual bool deterministic() const = 0;
};

inline constexpr std::string_view kContextMarker = "CONTEXT:\n";

inline std::string with_context(std::string_view instruction, std::string_view context) {
    return std::string(instruction) + "\n" + std::string(kContextMarker) + std::string(context);
}

// Deterministic stand-in: echoes the context block, or the whole prompt when
// there is none.
class TemplateClient final : public ModelClient {
public:
    std::string complete(const std::string& prompt, const ClientParams& = {}) override {
        const auto at = prompt.find(kContextMarker);
        return at == std::string::npos ? prompt : prompt.substr(at + kContextMarker.size());
    }
    std::string name() const override { return "template"; }
    bool deterministic() const override { return true; }
};

// POSTs {"prompt", "params"} to <base>/v1/complete and reads {"text"}.
class RemoteClient final : public ModelClient {
public:
    RemoteClient(std::string base_url, std::string key, int timeout_seconds = 30)
        : base_(std::move(base_url)), key_(std::move(key)), timeout_(timeout_seconds) {}

    // Configured from TABULA_MODEL_URL and TABULA_MODEL_KEY; null when the URL is unset.
    static std::unique_ptr<RemoteClient> from_env() {
        const char* url = std::getenv("TABULA_MODEL_URL");
        if (!url || !*url) return nullptr;
        const char* key = std::getenv("TABULA_MODEL_KEY");
        return std::make_unique<RemoteClient>(url, key ? key : "");
    }

    std::string complete(const std::string& prompt, const ClientParams& params = {}) override {
        httplib::Client cli(base_);
        cli.set_connection_timeout(timeout_);
        cli.set_read_timeout(timeout_);
        httplib::Headers headers;
        if (!key_.empty()) headers.emplace("Authorization", "Bearer " + key_);
        const nlohmann::json body{{"prompt", prompt}, {"params", params}};
        auto res = cli.Post("/v1/complete", headers, body.dump(), "application/json");
        if (!res) fail(ErrorCode::Io, "model endpoint unreachable: " + httplib::to_string(res.error()));
        if (res->status != 200) fail(ErrorCode::Io, "model endpoint returned HTTP " + std::to_string(res->status));
        const auto j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded() || !j.contains("text") || !j.at("text").is_string())
            fail(ErrorCode::Io, "model endpoint returned no text");
        return j.at("text").get<std::string>();
    }
    std::string name() const override { return "remote"; }
    bool deterministic() const override { return false; }

private:
    std::string base_, key_;
    int timeout_;
};

}  // namespace tabula::insight
