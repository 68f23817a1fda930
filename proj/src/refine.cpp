#include "autota/refine.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>

#include "autota/error.hpp"
#include "autota/metrics.hpp"
#include "autota/text.hpp"

namespace autota::refine {

void RefineConfig::validate() const {
    auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
    if (!in_unit(credibility_add_threshold)) {
        throw Error(ErrorKind::ConfigError, "credibility_add_threshold must lie in (0,1)");
    }
    if (!in_unit(levenshtein_combine_threshold)) {
        throw Error(ErrorKind::ConfigError, "levenshtein_combine_threshold must lie in (0,1)");
    }
    if (!in_unit(convergence_epsilon)) {
        throw Error(ErrorKind::ConfigError, "convergence_epsilon must lie in (0,1)");
    }
    if (max_iterations < 1) {
        throw Error(ErrorKind::ConfigError, "max_iterations must be >= 1");
    }
    if (loop_dependability_runs < 0 || loop_transfer_splits < 0) {
        throw Error(ErrorKind::ConfigError, "loop sampling counts must be >= 0");
    }
}

CritiqueView make_view(const ThemeSet& ts, const std::vector<Transcript>& corpus) {
    CritiqueView view;
    for (const Theme& theme : ts.themes) {
        view.themes.push_back(
            {theme.id, theme.title, theme.description, theme.word_count(), theme.supporting_quote_ids});
    }
    for (const Transcript& t : corpus) {
        for (const Utterance& u : t.utterances) {
            view.quotes.push_back({u.quote_id, t.id, u.text});
        }
    }
    view.transcript_count = corpus.size();
    return view;
}

namespace {

std::set<QuoteId> cited_quotes(const CritiqueView& view) {
    std::set<QuoteId> cited;
    for (const auto& theme : view.themes) {
        cited.insert(theme.quote_ids.begin(), theme.quote_ids.end());
    }
    return cited;
}

EditProposal draft_add(const CritiqueView& view) {
    std::set<QuoteId> cited = cited_quotes(view);
    std::vector<const CritiqueView::QuoteView*> uncited;
    for (const auto& quote : view.quotes) {
        if (cited.count(quote.id) == 0) uncited.push_back(&quote);
    }

    EditProposal add;
    add.kind = EditKind::Add;
    ThemeDraft draft;

    // Most frequent content token over the uncited quotes, ties to the
    // lexicographically smaller token.
    std::map<std::string, std::size_t> counts;
    for (const auto* quote : uncited) {
        for (const std::string& token : text::content_tokens(quote->text)) ++counts[token];
    }
    std::string top;
    std::size_t top_count = 0;
    for (const auto& [token, count] : counts) {
        if (count > top_count) {
            top = token;
            top_count = count;
        }
    }

    if (top.empty()) {
        // Degenerate corpus slice: no content vocabulary; cite the first
        // uncited quote directly.
        const auto* quote = uncited.empty() ? nullptr : uncited.front();
        draft.title = "Uncoded corpus segment";
        if (quote != nullptr) {
            draft.description = quote->text;
            draft.quote_ids.insert(quote->id);
        }
    } else {
        draft.title = "Recurring concern: " + top;
        for (const auto* quote : uncited) {
            std::vector<std::string> tokens = text::content_tokens(quote->text);
            if (std::find(tokens.begin(), tokens.end(), top) != tokens.end()) {
                draft.quote_ids.insert(quote->id);
                if (draft.description.empty()) {
                    std::vector<std::string> words = text::split(text::trim(quote->text), ' ');
                    if (words.size() > 12) words.resize(12);
                    draft.description = "Drafted from: " + text::join(words, " ");
                }
            }
        }
    }
    add.payload.push_back(std::move(draft));
    add.rationale = "cited coverage below the add threshold";
    return add;
}

} // namespace

std::vector<EditProposal> heuristic_edits(const CritiqueView& view, double credibility_raw,
                                          double add_threshold, double combine_threshold) {
    std::vector<EditProposal> proposals;

    // Delete: themes grounded in nothing.
    for (const auto& theme : view.themes) {
        if (theme.quote_ids.empty()) {
            EditProposal del;
            del.kind = EditKind::Delete;
            del.target_theme_ids = {theme.id};
            del.rationale = "theme cites no quotes";
            proposals.push_back(std::move(del));
        }
    }

    // Combine: near-duplicate titles, greedy by similarity, each theme
    // claimed at most once.
    struct Pair {
        double similarity;
        std::size_t i, j;
    };
    std::vector<Pair> candidates;
    for (std::size_t i = 0; i < view.themes.size(); ++i) {
        for (std::size_t j = i + 1; j < view.themes.size(); ++j) {
            double sim = metrics::levenshtein_similarity(view.themes[i].title, view.themes[j].title);
            if (sim > 1.0 - combine_threshold) candidates.push_back({sim, i, j});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Pair& a, const Pair& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    std::set<std::size_t> claimed;
    for (const Pair& pair : candidates) {
        if (claimed.count(pair.i) > 0 || claimed.count(pair.j) > 0) continue;
        claimed.insert(pair.i);
        claimed.insert(pair.j);
        EditProposal combine;
        combine.kind = EditKind::Combine;
        combine.target_theme_ids = {view.themes[pair.i].id, view.themes[pair.j].id};
        combine.rationale = "titles nearly identical (similarity " +
                            std::to_string(pair.similarity).substr(0, 5) + ")";
        proposals.push_back(std::move(combine));
    }

    // Split: oversize themes sprawling across most of the corpus.
    std::map<QuoteId, std::string> quote_transcript;
    for (const auto& quote : view.quotes) quote_transcript[quote.id] = quote.transcript_id;
    for (const auto& theme : view.themes) {
        if (theme.word_count <= kThemeWordLimit) continue;
        std::set<std::string> spanned;
        for (const QuoteId& q : theme.quote_ids) {
            auto it = quote_transcript.find(q);
            if (it != quote_transcript.end()) spanned.insert(it->second);
        }
        if (spanned.size() * 2 <= view.transcript_count) continue;

        std::vector<QuoteId> sorted(theme.quote_ids.begin(), theme.quote_ids.end());
        std::size_t half_quotes = (sorted.size() + 1) / 2;
        std::vector<std::string> desc_words;
        for (const std::string& w : text::split(theme.description, ' ')) {
            if (!w.empty()) desc_words.push_back(w);
        }
        std::size_t half_desc = (desc_words.size() + 1) / 2;

        EditProposal split;
        split.kind = EditKind::Split;
        split.target_theme_ids = {theme.id};
        ThemeDraft first;
        first.title = theme.title + " (1)";
        first.description = text::join({desc_words.begin(), desc_words.begin() + static_cast<std::ptrdiff_t>(half_desc)}, " ");
        first.quote_ids.insert(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(half_quotes));
        ThemeDraft second;
        second.title = theme.title + " (2)";
        second.description = text::join({desc_words.begin() + static_cast<std::ptrdiff_t>(half_desc), desc_words.end()}, " ");
        second.quote_ids.insert(sorted.begin() + static_cast<std::ptrdiff_t>(half_quotes), sorted.end());
        split.payload = {std::move(first), std::move(second)};
        split.rationale = "over the word limit and spanning most transcripts";
        proposals.push_back(std::move(split));
    }

    // Add: exactly one when normalized credibility is under the threshold.
    if (credibility_raw / 100.0 < add_threshold) {
        proposals.push_back(draft_add(view));
    }
    return proposals;
}

std::vector<EditProposal> heuristic_proposals(const ThemeSet& ts, const ScoreVector& s,
                                              const std::vector<Transcript>& corpus,
                                              const RefineConfig& cfg) {
    return heuristic_edits(make_view(ts, corpus), s.credibility, cfg.credibility_add_threshold,
                           cfg.levenshtein_combine_threshold);
}

ApplyResult apply_proposals(const ThemeSet& ts, const std::vector<EditProposal>& proposals) {
    ApplyResult result;
    result.theme_set = ts;
    auto apply_kind = [&](EditKind kind) {
        for (const EditProposal& p : proposals) {
            if (p.kind != kind) continue;
            bool targets_present = std::all_of(
                p.target_theme_ids.begin(), p.target_theme_ids.end(),
                [&](const std::string& id) { return result.theme_set.find(id) != nullptr; });
            if (!targets_present) {
                result.skipped.push_back(p);
                continue;
            }
            result.theme_set = apply_edit(result.theme_set, p);
            result.applied.push_back(p);
        }
    };
    apply_kind(EditKind::Delete);
    apply_kind(EditKind::Combine);
    apply_kind(EditKind::Split);
    apply_kind(EditKind::Add);
    return result;
}

std::string theme_set_id(std::uint64_t run_seed, int iteration) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "ts-%016llx-iter%d", static_cast<unsigned long long>(run_seed),
                  iteration);
    return buf;
}

RefineResult refine_loop(const ThemeSet& initial, const RefineConfig& cfg, FeedbackSource& feedback,
                         AuditTrail& trail) {
    cfg.validate();
    if (initial.iteration != 0) {
        throw Error(ErrorKind::ConfigError, "refine_loop expects an iteration-0 theme set");
    }

    ThemeSet current = initial;
    std::optional<ScoreVector> previous;
    RefineResult result;

    while (true) {
        IterationRecord record;
        record.iteration = current.iteration;
        record.theme_set = current;
        record.score = feedback.score(current);

        std::vector<AgentExchange> exchanges;
        record.proposals = feedback.propose(current, record.score, exchanges);
        if (trail.iterations.empty() && !trail.pending_exchanges.empty()) {
            record.agent_transcripts = std::move(trail.pending_exchanges);
            trail.pending_exchanges.clear();
        }
        for (AgentExchange& ex : exchanges) {
            ex.timestamp = trail.tick();
            record.agent_transcripts.push_back(std::move(ex));
        }
        record.warnings = theme_warnings(current);

        bool converged = previous.has_value() &&
                         l1_distance(*previous, record.score) < cfg.convergence_epsilon;
        bool capped = current.iteration >= cfg.max_iterations;
        if (converged || capped) {
            record.converged = converged;
            trail.iterations.push_back(std::move(record));
            result.final_theme_set = current;
            result.converged = converged;
            result.rounds = current.iteration;
            break;
        }

        ApplyResult applied = apply_proposals(current, record.proposals);
        record.applied_edits = applied.applied;
        record.skipped_edits = applied.skipped;
        trail.iterations.push_back(std::move(record));

        previous = trail.iterations.back().score;
        current = std::move(applied.theme_set);
        current.iteration += 1;
    }

    trail.final_theme_set_id = theme_set_id(trail.run_seed, result.rounds);
    return result;
}

} // namespace autota::refine
