// Internal helpers for the line-oriented agent wire format. Shared by the
// response parsers and the mock backend (which re-parses prompt payloads).
#pragma once

#include <cctype>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "autota/corpus.hpp"
#include "autota/error.hpp"
#include "autota/model.hpp"
#include "autota/text.hpp"

namespace autota::agents::detail {

/// Lines inside the first ``` fence, or every line when unfenced.
inline std::vector<std::string> payload_lines(const std::string& response) {
    std::vector<std::string> lines = text::split(response, '\n');
    std::size_t begin = 0;
    std::size_t end = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (text::trim(lines[i]).rfind("```", 0) == 0) {
            begin = i + 1;
            end = begin;
            while (end < lines.size() && text::trim(lines[end]).rfind("```", 0) != 0) ++end;
            break;
        }
    }
    return std::vector<std::string>(lines.begin() + static_cast<std::ptrdiff_t>(begin),
                                    lines.begin() + static_cast<std::ptrdiff_t>(end));
}

/// Lines strictly between "<BEGIN marker>" and "<END marker>" sentinel lines.
inline std::vector<std::string> section_lines(const std::string& prompt, const std::string& name) {
    std::vector<std::string> lines = text::split(prompt, '\n');
    std::vector<std::string> out;
    bool inside = false;
    for (const std::string& line : lines) {
        std::string t = text::trim(line);
        if (t == "BEGIN " + name) {
            inside = true;
            continue;
        }
        if (t == "END " + name) break;
        if (inside) out.push_back(line);
    }
    return out;
}

inline bool matches_key(const std::string& segment, std::string_view key, std::string& value_out) {
    std::string t = text::trim(segment);
    if (t.size() < key.size() + 1) return false;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (std::toupper(static_cast<unsigned char>(t[i])) != key[i]) return false;
    }
    if (t[key.size()] != ':') return false;
    value_out = text::trim(t.substr(key.size() + 1));
    return true;
}

/// Splits "KEY: v | KEY2: v2" into key->value. A segment without a known
/// key belongs to the previous field ('|' inside values survives).
inline std::map<std::string, std::string> parse_fields(const std::string& line,
                                                       const std::vector<std::string>& keys) {
    std::map<std::string, std::string> fields;
    std::string* current = nullptr;
    for (const std::string& segment : text::split(line, '|')) {
        bool matched = false;
        for (const std::string& key : keys) {
            std::string value;
            if (matches_key(segment, key, value)) {
                current = &fields[key];
                *current = value;
                matched = true;
                break;
            }
        }
        if (!matched && current != nullptr) {
            *current += " | " + text::trim(segment);
        }
    }
    return fields;
}

/// Every bracketed token that parses as a Quote ID; stray brackets pass.
inline std::set<QuoteId> scan_quote_ids(const std::string& field) {
    std::set<QuoteId> ids;
    std::size_t pos = 0;
    while (true) {
        std::size_t open = field.find("[P", pos);
        if (open == std::string::npos) break;
        std::size_t close = field.find(']', open);
        if (close == std::string::npos) break;
        try {
            ids.insert(parse_quote_id(field.substr(open, close - open + 1)));
        } catch (const Error&) {
        }
        pos = close + 1;
    }
    return ids;
}

inline std::set<std::string> scan_labels(const std::string& field) {
    std::set<std::string> labels;
    for (const std::string& part : text::split(field, ',')) {
        std::string label = text::trim(part);
        if (!label.empty()) labels.insert(label);
    }
    return labels;
}

inline std::string quotes_field(const std::set<QuoteId>& ids) {
    std::vector<std::string> parts;
    parts.reserve(ids.size());
    for (const QuoteId& q : ids) parts.push_back(q.str());
    return text::join(parts, ", ");
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

/// One wire-format line per proposal, the inverse of parse_edit_response.
inline std::string render_edit_line(const EditProposal& p) {
    auto targets = [&]() { return text::join(p.target_theme_ids, ", "); };
    std::string line = "EDIT: ";
    switch (p.kind) {
        case EditKind::Delete:
            line += "DELETE | TARGETS: " + targets();
            break;
        case EditKind::Combine:
            line += "COMBINE | TARGETS: " + targets();
            break;
        case EditKind::Split:
            line += "SPLIT | TARGETS: " + targets();
            for (std::size_t i = 0; i < 2 && i < p.payload.size(); ++i) {
                const std::string n = std::to_string(i + 1);
                line += " | TITLE" + n + ": " + p.payload[i].title;
                line += " | QUOTES" + n + ": " + quotes_field(p.payload[i].quote_ids);
                if (!p.payload[i].description.empty()) {
                    line += " | DESC" + n + ": " + p.payload[i].description;
                }
            }
            break;
        case EditKind::Add:
            line += "ADD";
            if (!p.payload.empty()) {
                line += " | TITLE: " + p.payload.front().title;
                line += " | QUOTES: " + quotes_field(p.payload.front().quote_ids);
                if (!p.payload.front().description.empty()) {
                    line += " | DESC: " + p.payload.front().description;
                }
            }
            break;
    }
    if (!p.rationale.empty()) line += " | REASON: " + p.rationale;
    return line;
}

} // namespace autota::agents::detail
