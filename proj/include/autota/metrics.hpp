#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "autota/corpus.hpp"
#include "autota/embedding.hpp"
#include "autota/model.hpp"

namespace autota::metrics {

/// Distinct lowercase token n-grams (n = 1 or 2); set semantics, not
/// multiset.
std::set<std::vector<std::string>> ngram_set(const std::string& text, int n);

/// Fraction of corpus quotes cited by at least one theme, scaled to [0,100].
/// Q_ref = (union of supporting quotes) intersect corpus_quote_ids.
double credibility(const ThemeSet& ts, const std::set<QuoteId>& corpus_quote_ids);

/// All theme titles + descriptions concatenated; the text granularity used
/// for ROUGE-based scores.
std::string theme_set_text(const ThemeSet& ts);

/// R_n = 1/2 (|A∩B|/|A| + |A∩B|/|B|) over distinct n-gram sets. An empty
/// side contributes 0 to its direction; both empty defines 1.
double rouge_bidirectional(const std::string& a, const std::string& b, int n);

/// 1/2 (R_1 + R_2) for one unordered pair of runs.
double pair_dependability(const ThemeSet& a, const ThemeSet& b);

/// Scores for every unordered pair among the runs, in (i, j) index order.
std::vector<double> dependability_pairs(const std::vector<ThemeSet>& runs);

/// Mean of pair_dependability over all C(n,2) pairs. Throws
/// InsufficientRuns for fewer than two runs.
double dependability(const std::vector<ThemeSet>& runs);

using GenerateFn = std::function<ThemeSet(const std::vector<Transcript>&)>;

struct TransferabilityResult {
    double mean = 0.0;
    double stddev = 0.0; // population
    std::vector<double> per_split;
    std::size_t splits = 0;
};

/// Evaluates every C(n, h) train/holdout split (h = 2 for n >= 4, else 1),
/// generating themes independently on each side and scoring bidirectional
/// ROUGE overlap. Generation failures surface as PipelineFailure naming the
/// split.
TransferabilityResult transferability(const std::vector<Transcript>& corpus,
                                      const GenerateFn& generate);

/// Restricted variant evaluating only the given holdout index sets; used by
/// the refine loop's reduced split sample.
TransferabilityResult transferability_on_splits(const std::vector<Transcript>& corpus,
                                                const GenerateFn& generate,
                                                const std::vector<std::vector<std::size_t>>& holdouts);

/// Enumerates holdout index sets for n transcripts in lexicographic order.
std::vector<std::vector<std::size_t>> enumerate_holdouts(std::size_t n);

struct BestMatch {
    std::size_t human_index = 0;
    std::size_t best = 0;        // llm index with highest cosine
    std::size_t second = 0;      // runner-up; == best when only one candidate
    double best_cosine = 0.0;
    double second_cosine = 0.0;
};

struct AlignmentReport {
    double cosine_bi = 0.0;
    double levenshtein_DL = 0.0;
    double bleu_B = 0.0;
    std::vector<BestMatch> best_matches; // one row per human theme
};

/// Mean over human themes of max cosine to any llm theme, averaged with the
/// mirrored direction. Throws EmptyThemeList / ZeroVector.
double cosine_alignment(const std::vector<std::string>& human,
                        const std::vector<std::string>& llm,
                        const EmbeddingProvider& provider);

/// Character-level edit distance on case-folded strings.
std::size_t levenshtein_distance(const std::string& a, const std::string& b);

/// 1 - dist/max(len); both-empty strings are identical (1.0).
double levenshtein_similarity(const std::string& a, const std::string& b);

/// Mean over human themes of the max normalized Levenshtein similarity to
/// any llm theme.
double levenshtein_alignment(const std::vector<std::string>& human,
                             const std::vector<std::string>& llm);

/// BLEU of candidate against a single reference: geometric mean of modified
/// n-gram precisions (orders the candidate can form), brevity penalty
/// exp(1 - r/c) when c < r, no smoothing.
double bleu(const std::string& candidate, const std::string& reference);

/// Max BLEU per human theme (as reference), averaged over human themes.
double bleu_alignment(const std::vector<std::string>& human,
                      const std::vector<std::string>& llm);

/// All three alignment scores plus the per-human-theme two-best-match table.
AlignmentReport alignment_report(const std::vector<std::string>& human,
                                 const std::vector<std::string>& llm,
                                 const EmbeddingProvider& provider);

} // namespace autota::metrics
