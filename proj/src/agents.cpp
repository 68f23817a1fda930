#include "autota/agents.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "autota/error.hpp"
#include "autota/json_io.hpp"
#include "autota/metrics.hpp"
#include "autota/text.hpp"
#include "line_format.hpp"

namespace autota::agents {

std::vector<Identity> default_identities() {
    return {
        {"Cardiac Surgeon",
         "You are an experienced cardiac surgeon. You code patient and family narratives "
         "from a surgical perspective, attending to procedures, risks, and clinical "
         "decision points."},
        {"Qualitative Researcher",
         "You are an experienced qualitative researcher trained in reflexive thematic "
         "analysis. You code narratives for meaning, latent patterns, and participant "
         "perspective."},
        {"Medical Doctor",
         "You are a practicing physician. You code narratives for clinical care "
         "experiences, diagnosis, treatment, and follow-up."},
        {"Psychologist",
         "You are a clinical psychologist. You code narratives for emotional processes, "
         "coping strategies, and family dynamics."},
    };
}

Identity identity_from_name(const std::string& name) {
    return {name, "You are an experienced " + text::fold_case(name) +
                      ". You code interview narratives from that professional perspective."};
}

namespace {

constexpr const char* kCoderTemplate = R"({identity}

You are performing qualitative coding on one chunk of an interview
transcript. Work only from the material between the transcript markers.
Identify recurring, analytically meaningful patterns and emit one line per
code inside a fenced block, in exactly this form:

CODE: <short label> | QUOTES: [P#_S###], [P#_S###] | DESC: <one-sentence description>

Every code MUST cite the Quote IDs of the utterances that support it, and
may cite only Quote IDs that appear in this chunk.

BEGIN TRANSCRIPT
{transcript_chunk}
END TRANSCRIPT
)";

constexpr const char* kThemeTemplate = R"({identity}

Cluster the codes below into a small set of themes. Merge codes that speak
to the same underlying pattern; keep each theme concise, preferably within
60 words of title plus description. Emit one line per theme inside a fenced
block, in exactly this form:

THEME: <title> | QUOTES: [P#_S###], ... | CODES: <label>, <label> | DESC: <short description>

A theme may cite only Quote IDs cited by its source codes.

BEGIN CODES
{codes}
END CODES
)";

constexpr const char* kCritiqueTemplate = R"(You are an autonomous critic reviewing a candidate theme set against the
full interview corpus. Evaluate coverage, distinctiveness, and grounding,
then propose edits. Allowed edit forms, one per line inside a fenced block:

EDIT: DELETE | TARGETS: <theme id> | REASON: <text>
EDIT: COMBINE | TARGETS: <theme id>, <theme id> | REASON: <text>
EDIT: SPLIT | TARGETS: <theme id> | TITLE1: <text> | QUOTES1: ... | TITLE2: <text> | QUOTES2: ... | REASON: <text>
EDIT: ADD | TITLE: <text> | QUOTES: [P#_S###], ... | DESC: <text> | REASON: <text>

Apply these rules: propose one ADD when cited corpus coverage (C divided by
100) falls below add_threshold; propose COMBINE for theme pairs whose
titles exceed combine_similarity under normalized Levenshtein similarity;
propose DELETE for themes citing no quotes; propose SPLIT for themes over
60 words whose quotes span more than half of the transcripts. Emit an
empty block when no rule applies.

PARAMS: add_threshold={add_threshold} | combine_similarity={combine_similarity}
SCORES: C={credibility} | D={dependability} | T={transferability}

BEGIN THEMES
{themes}
END THEMES

BEGIN CORPUS
{corpus}
END CORPUS
)";

using detail::format_double;
using detail::quotes_field;

std::string read_optional(const std::string& dir, const char* name, const char* fallback) {
    std::filesystem::path p = std::filesystem::path(dir) / name;
    std::error_code ec;
    if (!std::filesystem::exists(p, ec)) return fallback;
    return read_text_file(p.string());
}

} // namespace

PromptTemplates default_templates() {
    return {kCoderTemplate, kThemeTemplate, kCritiqueTemplate};
}

PromptTemplates load_templates(const std::string& dir) {
    if (dir.empty()) return default_templates();
    PromptTemplates tpl;
    tpl.coder = read_optional(dir, "coder.txt", kCoderTemplate);
    tpl.theme = read_optional(dir, "theme.txt", kThemeTemplate);
    tpl.critique = read_optional(dir, "critique.txt", kCritiqueTemplate);
    return tpl;
}

std::string render_template(std::string tmpl, const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        std::size_t open = tmpl.find('{', pos);
        if (open == std::string::npos) {
            out.append(tmpl, pos, std::string::npos);
            break;
        }
        std::size_t close = tmpl.find('}', open);
        if (close == std::string::npos) {
            out.append(tmpl, pos, std::string::npos);
            break;
        }
        out.append(tmpl, pos, open - pos);
        std::string key = tmpl.substr(open + 1, close - open - 1);
        auto it = values.find(key);
        if (it != values.end()) {
            out.append(it->second); // substituted text is never rescanned
        } else {
            out.append(tmpl, open, close - open + 1);
        }
        pos = close + 1;
    }
    return out;
}

std::string build_coder_prompt(const PromptTemplates& tpl, const Identity& identity, const Chunk& chunk) {
    std::string body;
    for (const Utterance& u : chunk.utterances) {
        body += u.quote_id.str();
        body += ' ';
        body += u.text;
        body += '\n';
    }
    return render_template(tpl.coder, {{"identity", identity.prompt_preamble},
                                       {"transcript_chunk", body}});
}

std::string build_theme_prompt(const PromptTemplates& tpl, const std::optional<Identity>& identity,
                               const std::vector<Code>& codes) {
    std::string body;
    for (const Code& c : codes) {
        body += "CODE: " + c.label + " | QUOTES: " + quotes_field(c.quote_ids) + " | DESC: " +
                c.description + '\n';
    }
    std::string preamble = identity
                               ? identity->prompt_preamble
                               : "You are a thematic-analysis agent consolidating codes produced "
                                 "by multiple coders.";
    return render_template(tpl.theme, {{"identity", preamble}, {"codes", body}});
}

std::string build_critique_prompt(const PromptTemplates& tpl, const ThemeSet& ts,
                                  const std::vector<Transcript>& corpus, const ScoreVector& score,
                                  const CritiqueParams& params) {
    std::string themes;
    for (const Theme& theme : ts.themes) {
        themes += "THEME: " + theme.id + " | TITLE: " + theme.title +
                  " | WORDS: " + std::to_string(theme.word_count()) +
                  " | QUOTES: " + quotes_field(theme.supporting_quote_ids) +
                  " | DESC: " + theme.description + '\n';
    }
    std::set<QuoteId> cited = ts.all_quote_ids();
    std::string corpus_body;
    for (const Transcript& t : corpus) {
        for (const Utterance& u : t.utterances) {
            corpus_body += "QUOTE: " + u.quote_id.str() + " | TRANSCRIPT: " + t.id +
                           " | CITED: " + (cited.count(u.quote_id) > 0 ? "yes" : "no") +
                           " | TEXT: " + u.text + '\n';
        }
    }
    return render_template(tpl.critique,
                           {{"themes", themes},
                            {"corpus", corpus_body},
                            {"credibility", format_double(score.credibility)},
                            {"dependability", format_double(score.dependability)},
                            {"transferability", format_double(score.transferability)},
                            {"add_threshold", format_double(params.add_threshold)},
                            {"combine_similarity", format_double(1.0 - params.combine_threshold)}});
}

// ---- Response parsing ----

namespace {

using detail::parse_fields;
using detail::payload_lines;
using detail::scan_labels;
using detail::scan_quote_ids;

const std::vector<std::string> kCodeKeys = {"CODE", "QUOTES", "DESC"};
const std::vector<std::string> kThemeKeys = {"THEME", "QUOTES", "CODES", "DESC"};
const std::vector<std::string> kEditKeys = {"EDIT",    "TARGETS", "TITLE", "QUOTES", "DESC",
                                            "TITLE1",  "QUOTES1", "DESC1", "TITLE2", "QUOTES2",
                                            "DESC2",   "REASON"};

} // namespace

std::vector<Code> parse_code_response(const std::string& response, const std::string& role) {
    std::vector<Code> codes;
    for (const std::string& line : payload_lines(response)) {
        auto fields = parse_fields(line, kCodeKeys);
        auto label_it = fields.find("CODE");
        if (label_it == fields.end() || label_it->second.empty()) continue;
        Code code;
        code.label = label_it->second;
        code.description = fields.count("DESC") ? fields["DESC"] : "";
        code.quote_ids = scan_quote_ids(fields.count("QUOTES") ? fields["QUOTES"] : "");
        code.role = role;
        if (code.quote_ids.empty()) continue; // a code must ground itself in quotes
        codes.push_back(std::move(code));
    }
    if (codes.empty()) {
        throw Error(ErrorKind::UnparseableResponse,
                    "no CODE lines with quote citations found in backend response");
    }
    return codes;
}

std::vector<ParsedTheme> parse_theme_response(const std::string& response) {
    std::vector<ParsedTheme> themes;
    for (const std::string& line : payload_lines(response)) {
        auto fields = parse_fields(line, kThemeKeys);
        auto title_it = fields.find("THEME");
        if (title_it == fields.end() || title_it->second.empty()) continue;
        ParsedTheme theme;
        theme.title = title_it->second;
        theme.description = fields.count("DESC") ? fields["DESC"] : "";
        theme.quote_ids = scan_quote_ids(fields.count("QUOTES") ? fields["QUOTES"] : "");
        theme.code_labels = scan_labels(fields.count("CODES") ? fields["CODES"] : "");
        themes.push_back(std::move(theme));
    }
    if (themes.empty()) {
        throw Error(ErrorKind::UnparseableResponse, "no THEME lines found in backend response");
    }
    return themes;
}

std::vector<EditProposal> parse_edit_response(const std::string& response) {
    std::vector<EditProposal> proposals;
    for (const std::string& line : payload_lines(response)) {
        auto fields = parse_fields(line, kEditKeys);
        auto kind_it = fields.find("EDIT");
        if (kind_it == fields.end()) continue;
        EditProposal p;
        try {
            p.kind = edit_kind_from_string(kind_it->second);
        } catch (const Error&) {
            continue; // unknown edit verb: skip the line
        }
        if (fields.count("TARGETS")) {
            for (const std::string& part : text::split(fields["TARGETS"], ',')) {
                std::string id = text::trim(part);
                if (!id.empty()) p.target_theme_ids.push_back(id);
            }
        }
        p.rationale = fields.count("REASON") ? fields["REASON"] : "";
        auto draft_from = [&](const char* title_key, const char* quotes_key, const char* desc_key) {
            ThemeDraft d;
            d.title = fields.count(title_key) ? fields[title_key] : "";
            d.description = fields.count(desc_key) ? fields[desc_key] : "";
            d.quote_ids = scan_quote_ids(fields.count(quotes_key) ? fields[quotes_key] : "");
            return d;
        };
        if (p.kind == EditKind::Add) {
            p.payload.push_back(draft_from("TITLE", "QUOTES", "DESC"));
        } else if (p.kind == EditKind::Split) {
            p.payload.push_back(draft_from("TITLE1", "QUOTES1", "DESC1"));
            p.payload.push_back(draft_from("TITLE2", "QUOTES2", "DESC2"));
        }
        try {
            validate_proposal(p);
        } catch (const Error&) {
            continue; // malformed line: skip rather than abort the round
        }
        proposals.push_back(std::move(p));
    }
    return proposals;
}

// ---- Operations ----

CodingResult code_chunk(const Identity& identity, const Chunk& chunk, Backend& backend,
                        const PromptTemplates& tpl, std::uint64_t sub_seed) {
    if (chunk.utterances.empty()) {
        throw Error(ErrorKind::ConfigError, "code_chunk called with an empty chunk");
    }
    CallContext ctx;
    ctx.stage = "coding";
    ctx.identity = identity.name;
    ctx.sub_seed = sub_seed;
    ctx.ref = chunk.transcript_id + "#" + std::to_string(chunk.index);

    CodingResult result;
    result.exchange.identity = identity.name;
    result.exchange.stage = ctx.stage;
    result.exchange.ref = ctx.ref;
    result.exchange.prompt = build_coder_prompt(tpl, identity, chunk);
    result.exchange.response = backend.complete(ctx, result.exchange.prompt);

    std::set<QuoteId> in_chunk;
    for (const Utterance& u : chunk.utterances) in_chunk.insert(u.quote_id);

    for (Code& code : parse_code_response(result.exchange.response, identity.name)) {
        bool sound = true;
        for (const QuoteId& q : code.quote_ids) {
            if (in_chunk.count(q) == 0) {
                result.dropped.push_back("CitationOutOfChunk: code '" + code.label + "' from " +
                                         identity.name + " cites " + q.str() + " outside " + ctx.ref);
                sound = false;
            }
        }
        if (sound) result.codes.push_back(std::move(code));
    }
    return result;
}

ThemeGenResult generate_themes(const std::vector<Code>& codes, const std::optional<Identity>& identity,
                               Backend& backend, const PromptTemplates& tpl, std::uint64_t sub_seed,
                               std::vector<std::string> transcript_ids) {
    if (codes.empty()) {
        throw Error(ErrorKind::ConfigError, "generate_themes called with no codes");
    }
    CallContext ctx;
    ctx.stage = "theme_generation";
    ctx.identity = identity ? identity->name : "none";
    ctx.sub_seed = sub_seed;
    ctx.ref = "codes:" + std::to_string(codes.size());

    ThemeGenResult result;
    result.exchange.identity = ctx.identity;
    result.exchange.stage = ctx.stage;
    result.exchange.ref = ctx.ref;
    result.exchange.prompt = build_theme_prompt(tpl, identity, codes);
    result.exchange.response = backend.complete(ctx, result.exchange.prompt);

    std::set<QuoteId> scope;
    for (const Code& c : codes) scope.insert(c.quote_ids.begin(), c.quote_ids.end());

    result.theme_set.iteration = 0;
    result.theme_set.transcript_ids = std::move(transcript_ids);
    for (const ParsedTheme& parsed : parse_theme_response(result.exchange.response)) {
        Theme theme;
        theme.id = allocate_theme_id(result.theme_set);
        theme.title = parsed.title;
        theme.description = parsed.description;
        for (const QuoteId& q : parsed.quote_ids) {
            if (scope.count(q) > 0) theme.supporting_quote_ids.insert(q); // scope-bound
        }
        theme.source_code_labels = parsed.code_labels;
        result.theme_set.themes.push_back(std::move(theme));
    }
    return result;
}

ScoreVector compute_score(const ThemeSet& ts, const std::vector<Transcript>& corpus,
                          const CritiqueOptions& options) {
    std::set<QuoteId> corpus_ids;
    for (const Transcript& t : corpus) {
        for (const Utterance& u : t.utterances) corpus_ids.insert(u.quote_id);
    }
    ScoreVector score;
    score.credibility = metrics::credibility(ts, corpus_ids);
    if (options.cached_runs.empty()) {
        score.dependability = 1.0;
    } else {
        double sum = 0.0;
        for (const ThemeSet& run : options.cached_runs) sum += metrics::pair_dependability(ts, run);
        score.dependability = sum / static_cast<double>(options.cached_runs.size());
    }
    score.transferability = options.transferability.value_or(1.0);
    return score;
}

CritiqueResult critique(const ThemeSet& ts, const std::vector<Transcript>& corpus, Backend& backend,
                        const PromptTemplates& tpl, const CritiqueOptions& options,
                        std::uint64_t sub_seed) {
    CritiqueResult result;
    result.score = compute_score(ts, corpus, options);

    CallContext ctx;
    ctx.stage = "critique";
    ctx.identity = "Feedback Agent";
    ctx.sub_seed = sub_seed;
    ctx.ref = "iter" + std::to_string(ts.iteration);

    result.exchange.identity = ctx.identity;
    result.exchange.stage = ctx.stage;
    result.exchange.ref = ctx.ref;
    result.exchange.prompt = build_critique_prompt(tpl, ts, corpus, result.score, options.params);
    result.exchange.response = backend.complete(ctx, result.exchange.prompt);
    result.proposals = parse_edit_response(result.exchange.response);
    return result;
}

// ---- Replay ----

std::string ReplayBackend::complete(const CallContext& ctx, const std::string& prompt) {
    (void)ctx;
    if (next_ >= recorded_.size()) {
        throw Error(ErrorKind::BackendUnavailable, "replay exhausted after " +
                                                       std::to_string(recorded_.size()) + " exchanges");
    }
    const AgentExchange& ex = recorded_[next_];
    if (ex.prompt != prompt) {
        throw Error(ErrorKind::BackendUnavailable,
                    "replay prompt mismatch at exchange " + std::to_string(next_));
    }
    ++next_;
    return ex.response;
}

std::unique_ptr<Backend> make_backend(const BackendConfig& cfg) {
    switch (cfg.kind) {
        case BackendKind::Mock: return std::make_unique<MockBackend>(cfg);
        case BackendKind::Remote: return std::make_unique<RemoteBackend>(cfg);
    }
    throw Error(ErrorKind::ConfigError, "unknown backend kind");
}

} // namespace autota::agents
