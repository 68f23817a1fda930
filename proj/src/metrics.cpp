#include "autota/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "autota/error.hpp"
#include "autota/text.hpp"

namespace autota::metrics {

std::set<std::vector<std::string>> ngram_set(const std::string& text, int n) {
    if (n < 1 || n > 2) throw Error(ErrorKind::ConfigError, "ngram order must be 1 or 2");
    std::vector<std::string> tokens = text::tokenize(text);
    std::set<std::vector<std::string>> grams;
    if (tokens.size() < static_cast<std::size_t>(n)) return grams;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        grams.insert(std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                              tokens.begin() + static_cast<std::ptrdiff_t>(i) + n));
    }
    return grams;
}

double credibility(const ThemeSet& ts, const std::set<QuoteId>& corpus_quote_ids) {
    if (corpus_quote_ids.empty()) {
        throw Error(ErrorKind::EmptyCorpus, "credibility needs a non-empty corpus quote set");
    }
    std::set<QuoteId> cited = ts.all_quote_ids();
    std::size_t referenced = 0;
    for (const QuoteId& q : cited) {
        if (corpus_quote_ids.count(q) > 0) ++referenced;
    }
    return 100.0 * static_cast<double>(referenced) / static_cast<double>(corpus_quote_ids.size());
}

std::string theme_set_text(const ThemeSet& ts) {
    std::string out;
    for (const Theme& theme : ts.themes) {
        out += theme.title;
        out += ' ';
        if (!theme.description.empty()) {
            out += theme.description;
            out += ' ';
        }
    }
    return out;
}

namespace {

double directional_overlap(const std::set<std::vector<std::string>>& from,
                           const std::set<std::vector<std::string>>& to) {
    if (from.empty()) return 0.0;
    std::size_t shared = 0;
    for (const auto& gram : from) {
        if (to.count(gram) > 0) ++shared;
    }
    return static_cast<double>(shared) / static_cast<double>(from.size());
}

double rouge_from_sets(const std::set<std::vector<std::string>>& a,
                       const std::set<std::vector<std::string>>& b) {
    if (a.empty() && b.empty()) return 1.0; // identical emptiness
    return 0.5 * (directional_overlap(a, b) + directional_overlap(b, a));
}

} // namespace

double rouge_bidirectional(const std::string& a, const std::string& b, int n) {
    return rouge_from_sets(ngram_set(a, n), ngram_set(b, n));
}

double pair_dependability(const ThemeSet& a, const ThemeSet& b) {
    std::string ta = theme_set_text(a);
    std::string tb = theme_set_text(b);
    return 0.5 * (rouge_bidirectional(ta, tb, 1) + rouge_bidirectional(ta, tb, 2));
}

std::vector<double> dependability_pairs(const std::vector<ThemeSet>& runs) {
    if (runs.size() < 2) {
        throw Error(ErrorKind::InsufficientRuns,
                    "dependability needs >= 2 runs, got " + std::to_string(runs.size()));
    }
    std::vector<double> pairs;
    pairs.reserve(runs.size() * (runs.size() - 1) / 2);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t j = i + 1; j < runs.size(); ++j) {
            pairs.push_back(pair_dependability(runs[i], runs[j]));
        }
    }
    return pairs;
}

double dependability(const std::vector<ThemeSet>& runs) {
    std::vector<double> pairs = dependability_pairs(runs);
    double sum = 0.0;
    for (double p : pairs) sum += p;
    return sum / static_cast<double>(pairs.size());
}

std::vector<std::vector<std::size_t>> enumerate_holdouts(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorKind::InsufficientTranscripts,
                    "transferability needs >= 2 transcripts, got " + std::to_string(n));
    }
    std::vector<std::vector<std::size_t>> holdouts;
    if (n >= 4) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) holdouts.push_back({i, j});
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) holdouts.push_back({i});
    }
    return holdouts;
}

namespace {

std::string describe_split(const std::vector<Transcript>& corpus,
                           const std::vector<std::size_t>& holdout) {
    std::vector<std::string> names;
    for (std::size_t idx : holdout) names.push_back(corpus[idx].id);
    return "holdout {" + text::join(names, ", ") + "}";
}

} // namespace

TransferabilityResult transferability_on_splits(const std::vector<Transcript>& corpus,
                                                const GenerateFn& generate,
                                                const std::vector<std::vector<std::size_t>>& holdouts) {
    TransferabilityResult result;
    result.per_split.reserve(holdouts.size());
    for (std::size_t s = 0; s < holdouts.size(); ++s) {
        const std::vector<std::size_t>& holdout = holdouts[s];
        std::vector<Transcript> train;
        std::vector<Transcript> val;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (std::find(holdout.begin(), holdout.end(), i) != holdout.end()) {
                val.push_back(corpus[i]);
            } else {
                train.push_back(corpus[i]);
            }
        }
        try {
            ThemeSet theta_train = generate(train);
            ThemeSet theta_val = generate(val);
            std::string text_train = theme_set_text(theta_train);
            std::string text_val = theme_set_text(theta_val);
            double r1 = rouge_bidirectional(text_train, text_val, 1);
            double r2 = rouge_bidirectional(text_train, text_val, 2);
            result.per_split.push_back(0.5 * (r1 + r2));
        } catch (const Error& e) {
            throw Error(ErrorKind::PipelineFailure,
                        "split " + std::to_string(s) + " (" + describe_split(corpus, holdout) +
                            ") failed: " + e.what());
        }
    }
    result.splits = result.per_split.size();
    if (result.splits == 0) return result;
    double sum = 0.0;
    for (double t : result.per_split) sum += t;
    result.mean = sum / static_cast<double>(result.splits);
    double var = 0.0;
    for (double t : result.per_split) var += (t - result.mean) * (t - result.mean);
    result.stddev = std::sqrt(var / static_cast<double>(result.splits));
    return result;
}

TransferabilityResult transferability(const std::vector<Transcript>& corpus,
                                      const GenerateFn& generate) {
    return transferability_on_splits(corpus, generate, enumerate_holdouts(corpus.size()));
}

namespace {

void require_non_empty(const std::vector<std::string>& human, const std::vector<std::string>& llm) {
    if (human.empty()) throw Error(ErrorKind::EmptyThemeList, "human theme list is empty");
    if (llm.empty()) throw Error(ErrorKind::EmptyThemeList, "llm theme list is empty");
}

std::vector<std::vector<double>> embed_all(const std::vector<std::string>& texts,
                                           const EmbeddingProvider& provider) {
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(provider.embed(t));
    return out;
}

} // namespace

double cosine_alignment(const std::vector<std::string>& human, const std::vector<std::string>& llm,
                        const EmbeddingProvider& provider) {
    require_non_empty(human, llm);
    auto hv = embed_all(human, provider);
    auto lv = embed_all(llm, provider);

    double forward = 0.0; // human -> llm
    for (const auto& h : hv) {
        double best = -1.0;
        for (const auto& l : lv) best = std::max(best, cosine_similarity(h, l));
        forward += best;
    }
    forward /= static_cast<double>(hv.size());

    double backward = 0.0; // llm -> human
    for (const auto& l : lv) {
        double best = -1.0;
        for (const auto& h : hv) best = std::max(best, cosine_similarity(l, h));
        backward += best;
    }
    backward /= static_cast<double>(lv.size());

    return 0.5 * (forward + backward);
}

std::size_t levenshtein_distance(const std::string& a, const std::string& b) {
    const std::string fa = text::fold_case(a);
    const std::string fb = text::fold_case(b);
    const std::size_t m = fa.size();
    const std::size_t n = fb.size();
    std::vector<std::size_t> prev(n + 1);
    std::vector<std::size_t> curr(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= m; ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= n; ++j) {
            std::size_t sub = prev[j - 1] + (fa[i - 1] == fb[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
        }
        std::swap(prev, curr);
    }
    return prev[n];
}

double levenshtein_similarity(const std::string& a, const std::string& b) {
    std::size_t max_len = std::max(a.size(), b.size());
    if (max_len == 0) return 1.0;
    return 1.0 - static_cast<double>(levenshtein_distance(a, b)) / static_cast<double>(max_len);
}

double levenshtein_alignment(const std::vector<std::string>& human,
                             const std::vector<std::string>& llm) {
    require_non_empty(human, llm);
    double sum = 0.0;
    for (const std::string& h : human) {
        double best = 0.0;
        bool first = true;
        for (const std::string& l : llm) {
            double sim = levenshtein_similarity(h, l);
            if (first || sim > best) best = sim;
            first = false;
        }
        sum += best;
    }
    return sum / static_cast<double>(human.size());
}

namespace {

std::map<std::vector<std::string>, std::size_t> ngram_counts(const std::vector<std::string>& tokens,
                                                             std::size_t n) {
    std::map<std::vector<std::string>, std::size_t> counts;
    if (tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                        tokens.begin() + static_cast<std::ptrdiff_t>(i + n))]++;
    }
    return counts;
}

} // namespace

double bleu(const std::string& candidate, const std::string& reference) {
    std::vector<std::string> cand = text::tokenize(candidate);
    std::vector<std::string> ref = text::tokenize(reference);
    if (cand.empty() && ref.empty()) return 1.0;
    if (cand.empty() || ref.empty()) return 0.0;

    double log_sum = 0.0;
    std::size_t orders = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        auto cand_counts = ngram_counts(cand, n);
        if (cand_counts.empty()) break; // candidate too short to form n-grams
        auto ref_counts = ngram_counts(ref, n);
        std::size_t clipped = 0;
        std::size_t total = 0;
        for (const auto& [gram, count] : cand_counts) {
            total += count;
            auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) clipped += std::min(count, it->second);
        }
        if (clipped == 0) return 0.0; // zero precision at some order, no smoothing
        log_sum += std::log(static_cast<double>(clipped) / static_cast<double>(total));
        ++orders;
    }
    double precision = std::exp(log_sum / static_cast<double>(orders));
    double c = static_cast<double>(cand.size());
    double r = static_cast<double>(ref.size());
    double brevity = (c < r) ? std::exp(1.0 - r / c) : 1.0;
    return brevity * precision;
}

double bleu_alignment(const std::vector<std::string>& human, const std::vector<std::string>& llm) {
    require_non_empty(human, llm);
    double sum = 0.0;
    for (const std::string& h : human) {
        double best = 0.0;
        for (const std::string& l : llm) best = std::max(best, bleu(l, h));
        sum += best;
    }
    return sum / static_cast<double>(human.size());
}

AlignmentReport alignment_report(const std::vector<std::string>& human,
                                 const std::vector<std::string>& llm,
                                 const EmbeddingProvider& provider) {
    require_non_empty(human, llm);
    AlignmentReport report;
    report.cosine_bi = cosine_alignment(human, llm, provider);
    report.levenshtein_DL = levenshtein_alignment(human, llm);
    report.bleu_B = bleu_alignment(human, llm);

    auto hv = embed_all(human, provider);
    auto lv = embed_all(llm, provider);
    for (std::size_t i = 0; i < hv.size(); ++i) {
        BestMatch match;
        match.human_index = i;
        std::vector<std::pair<double, std::size_t>> scored;
        scored.reserve(lv.size());
        for (std::size_t j = 0; j < lv.size(); ++j) {
            scored.emplace_back(cosine_similarity(hv[i], lv[j]), j);
        }
        std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            return a.first > b.first;
        });
        match.best = scored[0].second;
        match.best_cosine = scored[0].first;
        const auto& runner_up = scored.size() > 1 ? scored[1] : scored[0];
        match.second = runner_up.second;
        match.second_cosine = runner_up.first;
        report.best_matches.push_back(match);
    }
    return report;
}

} // namespace autota::metrics
