// Minimal JSON-Schema subset validator, enough for the shipped report
// schema: type / required / properties / additionalProperties / items /
// minItems / maxItems.
#pragma once

#include <string>
#include <vector>

#include "autota/json_io.hpp"

namespace schema_check {

inline bool type_matches(const autota::Json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    return false;
}

inline void validate(const autota::Json& value, const autota::Json& schema, const std::string& where,
                     std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const auto& t = schema.at("type");
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else {
            for (const auto& option : t) ok = ok || type_matches(value, option.get<std::string>());
        }
        if (!ok) {
            errors.push_back(where + ": type mismatch (got " + std::string(value.type_name()) + ")");
            return;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema.at("required")) {
                if (!value.contains(key.get<std::string>())) {
                    errors.push_back(where + ": missing required key '" + key.get<std::string>() + "'");
                }
            }
        }
        const autota::Json props =
            schema.contains("properties") ? schema.at("properties") : autota::Json::object();
        bool allow_extra = true;
        if (schema.contains("additionalProperties") && schema.at("additionalProperties").is_boolean()) {
            allow_extra = schema.at("additionalProperties").get<bool>();
        }
        for (const auto& [key, child] : value.items()) {
            if (props.contains(key)) {
                validate(child, props.at(key), where + "." + key, errors);
            } else if (!allow_extra) {
                errors.push_back(where + ": unexpected key '" + key + "'");
            }
        }
    }
    if (value.is_array()) {
        if (schema.contains("minItems") && value.size() < schema.at("minItems").get<std::size_t>()) {
            errors.push_back(where + ": fewer than minItems");
        }
        if (schema.contains("maxItems") && value.size() > schema.at("maxItems").get<std::size_t>()) {
            errors.push_back(where + ": more than maxItems");
        }
        if (schema.contains("items")) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                validate(value[i], schema.at("items"), where + "[" + std::to_string(i) + "]", errors);
            }
        }
    }
}

inline std::vector<std::string> validate(const autota::Json& value, const autota::Json& schema) {
    std::vector<std::string> errors;
    validate(value, schema, "$", errors);
    return errors;
}

} // namespace schema_check
