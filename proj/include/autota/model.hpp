#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "autota/corpus.hpp"

namespace autota {

/// Analytical unit produced by a coder agent: a label plus the Quote IDs
/// that ground it.
struct Code {
    std::string label;
    std::string description;
    std::set<QuoteId> quote_ids; // never empty
    std::string role;            // identity name that produced it
};

inline constexpr std::size_t kThemeWordLimit = 60; // advisory, not enforced

struct Theme {
    std::string id;
    std::string title;
    std::string description;
    std::set<QuoteId> supporting_quote_ids;
    std::set<std::string> source_code_labels;

    /// Words in title + description.
    std::size_t word_count() const;
};

/// The iterated object: iteration 0 comes from theme generation, each
/// refinement round bumps it by exactly one.
struct ThemeSet {
    std::vector<Theme> themes;
    int iteration = 0;
    std::vector<std::string> transcript_ids;
    std::uint64_t next_theme_id = 1; // per-run monotone id counter

    const Theme* find(const std::string& theme_id) const;
    std::set<QuoteId> all_quote_ids() const;
};

/// Allocates the next "t<N>" id from the set's counter.
std::string allocate_theme_id(ThemeSet& ts);

/// Soft-constraint check: one message per theme over the 60-word limit.
std::vector<std::string> theme_warnings(const ThemeSet& ts);

struct ScoreVector {
    double credibility = 0.0;    // [0, 100]
    double dependability = 0.0;  // [0, 1]
    double transferability = 0.0; // [0, 1]

    /// <C/100, D, T>, the shared [0,1] scale used for convergence.
    std::array<double, 3> normalized() const;
};

/// L1 distance between normalized score vectors.
double l1_distance(const ScoreVector& a, const ScoreVector& b);

enum class EditKind { Add, Split, Combine, Delete };

const char* to_string(EditKind kind);
EditKind edit_kind_from_string(const std::string& s);

/// New-theme text carried by Add and Split proposals. For Split the two
/// drafts' quote_ids act as a partition hint over the target's quotes;
/// quotes named in neither hint go to both halves.
struct ThemeDraft {
    std::string title;
    std::string description;
    std::set<QuoteId> quote_ids;
    std::set<std::string> source_code_labels;
};

struct EditProposal {
    EditKind kind = EditKind::Add;
    std::vector<std::string> target_theme_ids; // Add: 0, Split/Delete: 1, Combine: >= 2
    std::vector<ThemeDraft> payload;           // Add: 1 draft, Split: 2 drafts
    std::string rationale;
};

/// Arity/payload validation; throws ArityMismatch or MissingPayload.
void validate_proposal(const EditProposal& e);

/// Pure: returns a new set, input untouched, iteration unchanged.
/// Add -> +1 theme; Delete -> -1; Combine(k) -> -(k-1) with quote-set
/// union; Split -> one theme becomes two. Errors: UnknownThemeId,
/// ArityMismatch, MissingPayload.
ThemeSet apply_edit(const ThemeSet& ts, const EditProposal& e);

/// One backend call, recorded verbatim. timestamp is a per-run logical
/// sequence number so audit trails are byte-stable across runs.
struct AgentExchange {
    std::string identity;
    std::string stage; // "coding", "theme_generation", "critique", ...
    std::string prompt;
    std::string response;
    std::uint64_t timestamp = 0;
    std::string ref; // chunk / theme-set reference
};

struct IterationRecord {
    int iteration = 0;
    ThemeSet theme_set; // snapshot
    ScoreVector score;
    std::vector<EditProposal> proposals;
    std::vector<EditProposal> applied_edits;
    std::vector<EditProposal> skipped_edits; // targets consumed earlier in the round
    std::vector<AgentExchange> agent_transcripts;
    std::vector<std::string> warnings;
    bool converged = false;
};

struct AuditTrail {
    std::uint64_t run_seed = 0;
    std::vector<IterationRecord> iterations;
    std::string final_theme_set_id;

    std::uint64_t next_timestamp = 0; // logical clock
    std::uint64_t tick() { return next_timestamp++; }

    /// Generation-stage exchanges staged before the loop starts; the loop
    /// folds them into the iteration-0 record.
    std::vector<AgentExchange> pending_exchanges;
};

} // namespace autota
