#pragma once

// Minimal JSON-schema checker for the service contract tests. Supports the
// subset used by docs/api_schema.json: $ref, type (string or list), enum,
// properties, required, items and anyOf.

#include <string>
#include <vector>

#include "json.hpp"

namespace schema_check {

using nlohmann::json;

inline bool has_type(const json& v, const std::string& t) {
    if (t == "null") return v.is_null();
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
    if (t == "number") return v.is_number();
    return false;
}

inline const json& resolve(const json& root, const json& s) {
    if (!s.contains("$ref")) return s;
    auto ref = s.at("$ref").get<std::string>();
    return root.at(json::json_pointer(ref.substr(1)));
}

inline void check(const json& root, const json& schema, const json& v, const std::string& at,
                  std::vector<std::string>& errors) {
    const json& s = resolve(root, schema);
    if (s.contains("anyOf")) {
        for (const auto& alt : s.at("anyOf")) {
            std::vector<std::string> sub;
            check(root, alt, v, at, sub);
            if (sub.empty()) return;
        }
        errors.push_back(at + ": matches no alternative");
        return;
    }
    if (s.contains("type")) {
        bool ok = false;
        if (s.at("type").is_array()) {
            for (const auto& t : s.at("type")) ok = ok || has_type(v, t.get<std::string>());
        } else {
            ok = has_type(v, s.at("type").get<std::string>());
        }
        if (!ok) {
            errors.push_back(at + ": expected " + s.at("type").dump() + ", got " + v.type_name());
            return;
        }
    }
    if (s.contains("enum") && !v.is_null()) {
        bool found = false;
        for (const auto& e : s.at("enum")) found = found || e == v;
        if (!found) errors.push_back(at + ": " + v.dump() + " not in enum");
    }
    if (v.is_object()) {
        if (s.contains("required"))
            for (const auto& r : s.at("required"))
                if (!v.contains(r.get<std::string>())) errors.push_back(at + ": missing '" + r.get<std::string>() + "'");
        if (s.contains("properties"))
            for (const auto& [k, sub] : s.at("properties").items())
                if (v.contains(k)) check(root, sub, v.at(k), at + "." + k, errors);
    }
    if (v.is_array() && s.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) check(root, s.at("items"), v[i], at + "[" + std::to_string(i) + "]", errors);
}

inline std::vector<std::string> validate(const json& root, const json& schema, const json& value) {
    std::vector<std::string> errors;
    check(root, schema, value, "$", errors);
    return errors;
}

}  // namespace schema_check
