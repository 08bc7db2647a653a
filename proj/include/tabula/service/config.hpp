#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "tabula/core/error.hpp"
#include "tabula/ingest/project.hpp"

namespace tabula::service {

// File keys: host, port, data_dir, knowledge, model_url, model_key, threads.
// Environment overrides: TABULA_HOST, TABULA_PORT, TABULA_DATA_DIR,
// TABULA_KNOWLEDGE, TABULA_MODEL_URL, TABULA_MODEL_KEY.
struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::optional<std::filesystem::path> data_dir;
    std::optional<std::filesystem::path> knowledge_path;
    std::string model_url;
    std::string model_key;
    int threads = 8;
};

inline ServiceConfig config_from_json(const nlohmann::json& j) {
    ServiceConfig c;
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    if (j.contains("data_dir") && j.at("data_dir").is_string()) c.data_dir = j.at("data_dir").get<std::string>();
    if (j.contains("knowledge") && j.at("knowledge").is_string()) c.knowledge_path = j.at("knowledge").get<std::string>();
    c.model_url = j.value("model_url", "");
    c.model_key = j.value("model_key", "");
    c.threads = j.value("threads", c.threads);
    return c;
}

inline void apply_env(ServiceConfig& c) {
    const auto env = [](const char* k) -> std::optional<std::string> {
        const char* v = std::getenv(k);
        if (!v || !*v) return std::nullopt;
        return std::string(v);
    };
    if (auto v = env("TABULA_HOST")) c.host = *v;
    if (auto v = env("TABULA_PORT")) {
        try {
            c.port = std::stoi(*v);
        } catch (...) {
            fail(ErrorCode::BadRequest, "TABULA_PORT is not a number: " + *v);
        }
    }
    if (auto v = env("TABULA_DATA_DIR")) c.data_dir = *v;
    if (auto v = env("TABULA_KNOWLEDGE")) c.knowledge_path = *v;
    if (auto v = env("TABULA_MODEL_URL")) c.model_url = *v;
    if (auto v = env("TABULA_MODEL_KEY")) c.model_key = *v;
}

// Reads the optional config file, then applies environment overrides.
inline ServiceConfig load_config(const std::optional<std::filesystem::path>& file) {
    ServiceConfig c;
    if (file) {
        const auto j = nlohmann::json::parse(read_file(*file), nullptr, false);
        if (j.is_discarded() || !j.is_object()) fail(ErrorCode::BadRequest, "config file is not a JSON object");
        c = config_from_json(j);
    }
    apply_env(c);
    if (c.port < 0 || c.port > 65535) fail(ErrorCode::BadRequest, "port out of range");
    return c;
}

}  // namespace tabula::service
