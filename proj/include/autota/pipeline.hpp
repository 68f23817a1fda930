#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autota/agents.hpp"
#include "autota/json_io.hpp"
#include "autota/metrics.hpp"
#include "autota/model.hpp"
#include "autota/refine.hpp"

namespace autota {

struct RunConfig {
    std::vector<std::string> transcript_paths;
    std::vector<agents::Identity> identities = agents::default_identities();
    agents::BackendConfig backend;
    refine::RefineConfig refine;
    std::string out_dir;
    std::string audit_path; // empty -> <out_dir>/audit.json
    std::uint64_t seed = 0;
    std::size_t chunk_limit = kDefaultChunkLimit;
    int jobs = 1; // coder-agent fan-out; results merge in deterministic order
    std::string prompt_dir;         // empty -> built-in templates
    std::string reward_model_path;  // required for reward-guided mode
    int candidates = 4;             // best-of-n width in reward-guided mode
    bool full_transferability_report = true;

    void validate() const; // throws ConfigError
};

/// Parsed corpus plus per-transcript chunking.
struct CorpusBundle {
    std::vector<Transcript> transcripts;
    std::vector<Chunk> chunks; // all transcripts, transcript order then index
    std::set<QuoteId> quote_ids;
};

CorpusBundle load_corpus(const std::vector<std::string>& paths, std::size_t chunk_limit);
CorpusBundle bundle_corpus(std::vector<Transcript> transcripts, std::size_t chunk_limit);

struct GenerationOutput {
    std::vector<Code> codes;
    std::map<std::string, std::vector<Code>> codes_by_transcript; // keyed by the chunk's transcript
    ThemeSet theme_set; // iteration 0
    std::vector<AgentExchange> exchanges;
    std::vector<std::string> warnings;
};

/// One full generation pass: k coder agents per chunk, merged in
/// (transcript, chunk, identity, label) order, then theme generation.
GenerationOutput generate_once(const CorpusBundle& corpus, const std::vector<agents::Identity>& identities,
                               agents::Backend& backend, const agents::PromptTemplates& tpl,
                               std::uint64_t seed, int jobs = 1);

/// Metrics-backed FeedbackSource used by the production loop: C from the
/// corpus, D against cached regeneration runs, T from a seeded reduced split
/// sample, proposals from the critique agent.
class MetricFeedback final : public refine::FeedbackSource {
public:
    MetricFeedback(const CorpusBundle& corpus, agents::Backend& backend,
                   const agents::PromptTemplates& tpl, const refine::RefineConfig& cfg,
                   std::vector<ThemeSet> cached_runs, std::optional<double> loop_transferability,
                   std::uint64_t seed);

    ScoreVector score(const ThemeSet& ts) override;
    std::vector<EditProposal> propose(const ThemeSet& ts, const ScoreVector& s,
                                      std::vector<AgentExchange>& exchanges) override;

private:
    const CorpusBundle& corpus_;
    agents::Backend& backend_;
    const agents::PromptTemplates& tpl_;
    refine::RefineConfig cfg_;
    std::vector<ThemeSet> cached_runs_;
    std::optional<double> loop_transferability_;
    std::uint64_t seed_ = 0;
    int round_ = 0;
};

struct SelectionRecord {
    int candidate_id = 0;
    std::string theme_set_id;
    double reward = 0.0;
    ScoreVector score;
};

struct RunArtifacts {
    ThemeSet final_theme_set;
    AuditTrail audit;
    Json report;
    std::vector<Code> codes;
    std::map<std::string, std::vector<Code>> codes_by_transcript; // out/codes/<id>.json layout
    std::vector<SelectionRecord> selection;                        // reward-guided mode only
    bool converged = false;
};

/// Full pipeline: parse -> chunk -> code -> themes -> refine (-> best-of-n
/// in reward-guided mode) -> metric report. Throws Error with the failing
/// stage named; on failure the partial audit trail, when any, lands in
/// *partial for the caller to flush.
RunArtifacts run_pipeline(const RunConfig& cfg, AuditTrail* partial = nullptr);

/// Stage marker carried by pipeline errors (": stage=<name>" suffix parsing
/// helper for the CLI's diagnostics).
std::string error_stage(const std::string& what);

/// Generation function over a transcript subset, seeded from the subset's
/// ids; shared by transferability evaluation and the dependability command.
metrics::GenerateFn make_generate_fn(const std::vector<agents::Identity>& identities,
                                     agents::Backend& backend, const agents::PromptTemplates& tpl,
                                     std::size_t chunk_limit, std::uint64_t seed);

} // namespace autota
