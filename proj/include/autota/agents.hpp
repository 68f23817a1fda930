#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autota/corpus.hpp"
#include "autota/model.hpp"

namespace autota::agents {

/// Role conditioning for a coder agent: a name plus the preamble spliced
/// into the {identity} slot of the prompt templates.
struct Identity {
    std::string name;
    std::string prompt_preamble;
};

/// The four evaluated roles.
std::vector<Identity> default_identities();

/// Builds an identity with a generic preamble for a bare name (the
/// --identities flag path).
Identity identity_from_name(const std::string& name);

enum class BackendKind { Mock, Remote };

struct BackendConfig {
    BackendKind kind = BackendKind::Mock;
    std::string model = "mock-coder-1";
    double temperature = 0.0; // deterministic by default
    std::string endpoint;     // remote only, e.g. "https://host/v1/chat/completions"
    std::string api_key_env = "AUTO_TA_API_KEY";
    int mock_top_codes = 5;   // codes per chunk emitted by the mock coder
};

/// Per-call routing info. sub_seed is derived by the orchestrator from the
/// run seed + identity + chunk index, so concurrent scheduling can never
/// change an agent's output.
struct CallContext {
    std::string stage; // "coding" | "theme_generation" | "critique" | ...
    std::string identity;
    std::uint64_t sub_seed = 0;
    std::string ref; // e.g. "alpha#3" (transcript#chunk) or "iter2"
};

/// Text-generation backend. Implementations must be safe to share across
/// concurrent agent calls.
class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string complete(const CallContext& ctx, const std::string& prompt) = 0;
};

std::unique_ptr<Backend> make_backend(const BackendConfig& cfg);

/// Deterministic offline backend. Coding: top-N non-stopword tokens by
/// frequency (ties broken by a sub_seed hash); theme generation: connected
/// components of codes sharing a Quote ID; critique: the refine module's
/// heuristic rules applied to the prompt's corpus/theme payload.
class MockBackend final : public Backend {
public:
    explicit MockBackend(const BackendConfig& cfg) : cfg_(cfg) {}
    std::string complete(const CallContext& ctx, const std::string& prompt) override;

private:
    BackendConfig cfg_;
};

/// HTTPS chat-completion-style client. Sends {model, temperature, messages}
/// and reads choices[0].message.content; bearer token from api_key_env.
class RemoteBackend final : public Backend {
public:
    explicit RemoteBackend(const BackendConfig& cfg);
    std::string complete(const CallContext& ctx, const std::string& prompt) override;

private:
    BackendConfig cfg_;
};

/// Serves a recorded exchange sequence back in order; prompts must match
/// the recording exactly. Lets a refine run be replayed bit-for-bit from
/// its audit trail.
class ReplayBackend final : public Backend {
public:
    explicit ReplayBackend(std::vector<AgentExchange> recorded)
        : recorded_(std::move(recorded)) {}
    std::string complete(const CallContext& ctx, const std::string& prompt) override;

private:
    std::vector<AgentExchange> recorded_;
    std::size_t next_ = 0;
};

/// Plain-text templates with {identity}, {transcript_chunk}, {codes},
/// {themes} placeholders.
struct PromptTemplates {
    std::string coder;
    std::string theme;
    std::string critique;
};

PromptTemplates default_templates();

/// Loads coder.txt / theme.txt / critique.txt from dir; missing files fall
/// back to the built-in defaults.
PromptTemplates load_templates(const std::string& dir);

std::string render_template(std::string tmpl, const std::map<std::string, std::string>& values);

std::string build_coder_prompt(const PromptTemplates& tpl, const Identity& identity, const Chunk& chunk);
std::string build_theme_prompt(const PromptTemplates& tpl, const std::optional<Identity>& identity,
                               const std::vector<Code>& codes);

struct CritiqueParams {
    double add_threshold = 0.7;      // on C/100
    double combine_threshold = 0.20; // Combine when title similarity > 1 - this
};

std::string build_critique_prompt(const PromptTemplates& tpl, const ThemeSet& ts,
                                  const std::vector<Transcript>& corpus, const ScoreVector& score,
                                  const CritiqueParams& params);

// ---- Response parsing (whitespace-tolerant, fenced-block aware) ----

/// "CODE: <label> | QUOTES: [P#_S###], ... | DESC: <text>" lines.
/// Throws UnparseableResponse when no code line with at least one Quote ID
/// can be extracted.
std::vector<Code> parse_code_response(const std::string& response, const std::string& role);

struct ParsedTheme {
    std::string title;
    std::string description;
    std::set<QuoteId> quote_ids;
    std::set<std::string> code_labels;
};

/// "THEME: <title> | QUOTES: ... | CODES: ... | DESC: ..." lines.
std::vector<ParsedTheme> parse_theme_response(const std::string& response);

/// "EDIT: ADD|SPLIT|COMBINE|DELETE | ..." lines; an empty edit block means
/// no proposals.
std::vector<EditProposal> parse_edit_response(const std::string& response);

// ---- Operations ----

struct CodingResult {
    std::vector<Code> codes;
    std::vector<std::string> dropped; // citation-out-of-chunk log lines
    AgentExchange exchange;
};

/// One coder agent over one chunk. Codes citing Quote IDs outside the chunk
/// are dropped and logged, per-code, not fatally.
CodingResult code_chunk(const Identity& identity, const Chunk& chunk, Backend& backend,
                        const PromptTemplates& tpl, std::uint64_t sub_seed);

struct ThemeGenResult {
    ThemeSet theme_set; // iteration 0
    AgentExchange exchange;
};

/// Clusters codes into preliminary themes. Every theme's quote set stays
/// within the union of the input codes' quotes.
ThemeGenResult generate_themes(const std::vector<Code>& codes, const std::optional<Identity>& identity,
                               Backend& backend, const PromptTemplates& tpl, std::uint64_t sub_seed,
                               std::vector<std::string> transcript_ids = {});

struct CritiqueOptions {
    CritiqueParams params;
    /// Cached regeneration runs for the D component; empty pins D = 1.0.
    std::vector<ThemeSet> cached_runs;
    /// Precomputed T for the current round; unset pins T = 1.0.
    std::optional<double> transferability;
};

struct CritiqueResult {
    ScoreVector score;
    std::vector<EditProposal> proposals;
    AgentExchange exchange;
};

/// The score critique() assigns: C from the corpus quote set, D as the mean
/// pairwise stability against the cached runs (1.0 with none), T as supplied
/// (1.0 when unset).
ScoreVector compute_score(const ThemeSet& ts, const std::vector<Transcript>& corpus,
                          const CritiqueOptions& options);

/// Scores the set (C from the corpus, D against cached runs, T as supplied)
/// and parses the edit proposals out of the backend's response.
CritiqueResult critique(const ThemeSet& ts, const std::vector<Transcript>& corpus, Backend& backend,
                        const PromptTemplates& tpl, const CritiqueOptions& options,
                        std::uint64_t sub_seed);

} // namespace autota::agents
