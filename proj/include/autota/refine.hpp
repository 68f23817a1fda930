#pragma once

#include <string>
#include <vector>

#include "autota/corpus.hpp"
#include "autota/model.hpp"

namespace autota::refine {

enum class Mode { Heuristic, RewardGuided };

struct RefineConfig {
    double credibility_add_threshold = 0.7;   // compared against C/100
    double levenshtein_combine_threshold = 0.20;
    double convergence_epsilon = 0.05;        // L1 on normalized score vectors
    int max_iterations = 5;
    Mode mode = Mode::Heuristic;
    int loop_dependability_runs = 2; // cached regenerations backing in-loop D
    int loop_transfer_splits = 6;    // reduced split sample for in-loop T

    /// Thresholds in (0,1), max_iterations >= 1. Throws ConfigError.
    void validate() const;
};

/// Rule-engine view of one critique round. Built either from the real
/// ThemeSet + corpus or from the parsed payload of a critique prompt (the
/// mock backend path), so both produce identical proposals.
struct CritiqueView {
    struct ThemeView {
        std::string id;
        std::string title;
        std::string description;
        std::size_t word_count = 0;
        std::set<QuoteId> quote_ids;
    };
    struct QuoteView {
        QuoteId id;
        std::string transcript_id;
        std::string text;
    };
    std::vector<ThemeView> themes;
    std::vector<QuoteView> quotes; // full corpus inventory, source order
    std::size_t transcript_count = 0;
};

CritiqueView make_view(const ThemeSet& ts, const std::vector<Transcript>& corpus);

/// The heuristic edit rules, in application order:
///   Delete:  any theme with no supporting quotes;
///   Combine: title pairs with normalized Levenshtein similarity
///            > 1 - combine_threshold (greedy by similarity, each theme
///            claimed once);
///   Split:   themes over 60 words whose quotes span more than half the
///            corpus transcripts;
///   Add:     exactly one proposal when C/100 < add_threshold, drafted
///            from the most frequent non-stopword token among uncited
///            quotes.
std::vector<EditProposal> heuristic_edits(const CritiqueView& view, double credibility_raw,
                                          double add_threshold, double combine_threshold);

/// Spec-shaped wrapper over heuristic_edits.
std::vector<EditProposal> heuristic_proposals(const ThemeSet& ts, const ScoreVector& s,
                                              const std::vector<Transcript>& corpus,
                                              const RefineConfig& cfg);

struct ApplyResult {
    ThemeSet theme_set; // same iteration as the input; the loop bumps it
    std::vector<EditProposal> applied;
    std::vector<EditProposal> skipped; // targets consumed earlier in the round
};

/// Applies one round of proposals in Delete, Combine, Split, Add order.
ApplyResult apply_proposals(const ThemeSet& ts, const std::vector<EditProposal>& proposals);

/// Score + proposal source for one refinement round. The production
/// implementation wires metrics and the critique agent; tests may script it.
class FeedbackSource {
public:
    virtual ~FeedbackSource() = default;
    virtual ScoreVector score(const ThemeSet& ts) = 0;
    /// Proposals for the scored set; backend exchanges append to
    /// `exchanges` for the audit trail.
    virtual std::vector<EditProposal> propose(const ThemeSet& ts, const ScoreVector& s,
                                              std::vector<AgentExchange>& exchanges) = 0;
};

struct RefineResult {
    ThemeSet final_theme_set;
    bool converged = false;
    int rounds = 0; // edit-application rounds == final iteration index
};

/// Critique -> convergence check -> edit application, until the L1 gap of
/// consecutive normalized scores drops under epsilon or the iteration cap.
/// Every round appends a full IterationRecord to the trail; errors propagate
/// after the partial trail is recorded.
RefineResult refine_loop(const ThemeSet& initial, const RefineConfig& cfg, FeedbackSource& feedback,
                         AuditTrail& trail);

/// Theme-set id naming used in audit trails and reports.
std::string theme_set_id(std::uint64_t run_seed, int iteration);

} // namespace autota::refine
