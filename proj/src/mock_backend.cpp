#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "autota/agents.hpp"
#include "autota/error.hpp"
#include "autota/refine.hpp"
#include "autota/text.hpp"
#include "line_format.hpp"

namespace autota::agents {

namespace {

using detail::parse_fields;
using detail::quotes_field;
using detail::scan_quote_ids;
using detail::section_lines;

struct PromptUtterance {
    QuoteId id;
    std::string text;
};

std::vector<PromptUtterance> parse_transcript_section(const std::vector<std::string>& lines) {
    std::vector<PromptUtterance> out;
    for (const std::string& line : lines) {
        std::string t = text::trim(line);
        if (t.rfind("[P", 0) != 0) continue;
        std::size_t close = t.find(']');
        if (close == std::string::npos) continue;
        try {
            QuoteId id = parse_quote_id(t.substr(0, close + 1));
            out.push_back({id, text::trim(t.substr(close + 1))});
        } catch (const Error&) {
        }
    }
    return out;
}

std::string mock_coding(const BackendConfig& cfg, const CallContext& ctx, const std::string& prompt) {
    std::vector<PromptUtterance> utterances = parse_transcript_section(section_lines(prompt, "TRANSCRIPT"));

    std::map<std::string, std::size_t> counts;
    std::map<std::string, std::set<QuoteId>> where;
    for (const PromptUtterance& u : utterances) {
        std::vector<std::string> tokens = text::content_tokens(u.text);
        if (tokens.empty()) tokens = text::tokenize(u.text); // degenerate all-stopword text
        for (const std::string& token : tokens) {
            ++counts[token];
            where[token].insert(u.id);
        }
    }

    struct Ranked {
        std::string token;
        std::size_t count;
        std::uint64_t jitter;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(counts.size());
    for (const auto& [token, count] : counts) {
        ranked.push_back({token, count, text::fnv1a64(token, ctx.sub_seed ^ 0x9e3779b97f4a7c15ULL)});
    }
    // Frequency decides; the seeded hash only reorders ties, so seed-varied
    // runs disagree exactly where the data itself is ambiguous.
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.count != b.count) return a.count > b.count;
        if (a.jitter != b.jitter) return a.jitter < b.jitter;
        return a.token < b.token;
    });
    std::size_t top_n = std::min(ranked.size(), static_cast<std::size_t>(std::max(1, cfg.mock_top_codes)));

    std::string body;
    for (std::size_t i = 0; i < top_n; ++i) {
        const Ranked& r = ranked[i];
        const std::set<QuoteId>& ids = where[r.token];
        body += "CODE: " + r.token + " | QUOTES: " + quotes_field(ids) + " | DESC: Recurring term '" +
                r.token + "' across " + std::to_string(ids.size()) + " quotes.\n";
    }
    return "Initial codes for this chunk as coded by " + ctx.identity + ".\n```\n" + body + "```\n";
}

std::string mock_theme_generation(const std::string& prompt) {
    struct PromptCode {
        std::string label;
        std::set<QuoteId> quotes;
    };
    std::vector<PromptCode> codes;
    for (const std::string& line : section_lines(prompt, "CODES")) {
        auto fields = parse_fields(line, {"CODE", "QUOTES", "DESC"});
        auto it = fields.find("CODE");
        if (it == fields.end() || it->second.empty()) continue;
        PromptCode code{it->second, scan_quote_ids(fields.count("QUOTES") ? fields["QUOTES"] : "")};
        if (!code.quotes.empty()) codes.push_back(std::move(code));
    }

    // Connected components over shared Quote IDs.
    std::vector<std::size_t> parent(codes.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::map<QuoteId, std::size_t> quote_owner;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        for (const QuoteId& q : codes[i].quotes) {
            auto [it, inserted] = quote_owner.emplace(q, i);
            if (!inserted) parent[find(i)] = find(it->second);
        }
    }

    struct Component {
        std::map<std::string, std::size_t> label_counts;
        std::set<std::string> labels;
        std::set<QuoteId> quotes;
    };
    std::map<std::size_t, Component> components;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        Component& c = components[find(i)];
        ++c.label_counts[codes[i].label];
        c.labels.insert(codes[i].label);
        c.quotes.insert(codes[i].quotes.begin(), codes[i].quotes.end());
    }

    struct Rendered {
        std::string title;
        QuoteId first_quote;
        std::string line;
    };
    std::vector<Rendered> rendered;
    for (const auto& [root, c] : components) {
        std::string title;
        std::size_t best = 0;
        for (const auto& [label, count] : c.label_counts) {
            if (count > best) { // map order makes ties go alphabetical
                title = label;
                best = count;
            }
        }
        std::vector<std::string> labels(c.labels.begin(), c.labels.end());
        std::string line = "THEME: " + title + " | QUOTES: " + quotes_field(c.quotes) +
                           " | CODES: " + text::join(labels, ", ") +
                           " | DESC: Clustered from codes: " + text::join(labels, ", ") + ".";
        rendered.push_back({title, *c.quotes.begin(), std::move(line)});
    }
    std::sort(rendered.begin(), rendered.end(), [](const Rendered& a, const Rendered& b) {
        if (a.title != b.title) return a.title < b.title;
        return a.first_quote < b.first_quote;
    });

    std::string body;
    for (const Rendered& r : rendered) body += r.line + "\n";
    return "Preliminary themes clustered from the merged codes.\n```\n" + body + "```\n";
}

std::string mock_critique(const std::string& prompt) {
    double add_threshold = 0.7;
    double combine_similarity = 0.8;
    for (const std::string& line : text::split(prompt, '\n')) {
        std::string t = text::trim(line);
        if (t.rfind("PARAMS:", 0) != 0) continue;
        for (const std::string& part : text::split(t.substr(7), '|')) {
            std::vector<std::string> kv = text::split(text::trim(part), '=');
            if (kv.size() != 2) continue;
            std::string key = text::trim(kv[0]);
            try {
                if (key == "add_threshold") add_threshold = std::stod(kv[1]);
                if (key == "combine_similarity") combine_similarity = std::stod(kv[1]);
            } catch (const std::exception&) {
            }
        }
        break;
    }

    refine::CritiqueView view;
    for (const std::string& line : section_lines(prompt, "THEMES")) {
        auto fields = parse_fields(line, {"THEME", "TITLE", "WORDS", "QUOTES", "DESC"});
        auto it = fields.find("THEME");
        if (it == fields.end() || it->second.empty()) continue;
        refine::CritiqueView::ThemeView theme;
        theme.id = it->second;
        theme.title = fields.count("TITLE") ? fields["TITLE"] : "";
        theme.description = fields.count("DESC") ? fields["DESC"] : "";
        theme.word_count = 0;
        if (fields.count("WORDS")) {
            try {
                theme.word_count = static_cast<std::size_t>(std::stoul(fields["WORDS"]));
            } catch (const std::exception&) {
            }
        }
        theme.quote_ids = scan_quote_ids(fields.count("QUOTES") ? fields["QUOTES"] : "");
        view.themes.push_back(std::move(theme));
    }

    std::set<std::string> transcripts;
    std::set<QuoteId> all_ids;
    std::set<QuoteId> cited_ids;
    for (const std::string& line : section_lines(prompt, "CORPUS")) {
        auto fields = parse_fields(line, {"QUOTE", "TRANSCRIPT", "CITED", "TEXT"});
        auto it = fields.find("QUOTE");
        if (it == fields.end()) continue;
        std::set<QuoteId> ids = scan_quote_ids(it->second);
        if (ids.empty()) continue;
        refine::CritiqueView::QuoteView quote;
        quote.id = *ids.begin();
        quote.transcript_id = fields.count("TRANSCRIPT") ? fields["TRANSCRIPT"] : "";
        quote.text = fields.count("TEXT") ? fields["TEXT"] : "";
        transcripts.insert(quote.transcript_id);
        all_ids.insert(quote.id);
        if (fields.count("CITED") && text::fold_case(fields["CITED"]) == "yes") cited_ids.insert(quote.id);
        view.quotes.push_back(std::move(quote));
    }
    view.transcript_count = transcripts.size();

    double credibility_raw =
        all_ids.empty() ? 0.0
                        : 100.0 * static_cast<double>(cited_ids.size()) / static_cast<double>(all_ids.size());

    std::vector<EditProposal> proposals =
        refine::heuristic_edits(view, credibility_raw, add_threshold, 1.0 - combine_similarity);

    std::string body;
    for (const EditProposal& p : proposals) body += detail::render_edit_line(p) + "\n";
    return "Critique of the candidate theme set.\n```\n" + body + "```\n";
}

} // namespace

std::string MockBackend::complete(const CallContext& ctx, const std::string& prompt) {
    if (ctx.stage == "coding") return mock_coding(cfg_, ctx, prompt);
    if (ctx.stage == "theme_generation") return mock_theme_generation(prompt);
    if (ctx.stage == "critique") return mock_critique(prompt);
    throw Error(ErrorKind::BackendUnavailable, "mock backend cannot serve stage '" + ctx.stage + "'");
}

} // namespace autota::agents
