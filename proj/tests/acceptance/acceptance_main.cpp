// Acceptance suite: one check per shipped guarantee, one PASS/FAIL line
// each. Exits non-zero if any gate fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>
#include <unistd.h>

#include "autota/cli.hpp"
#include "autota/error.hpp"
#include "autota/metrics.hpp"
#include "autota/pipeline.hpp"
#include "autota/refine.hpp"
#include "autota/reward.hpp"
#include "autota/text.hpp"

#include "../oracles.hpp"
#include "../synth.hpp"

using namespace autota;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using CheckFn = std::function<Outcome()>;

QuoteId q(int p, int s) { return QuoteId{p, s}; }

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

/// Routes stdout to /dev/null for the lifetime of the guard, so inner CLI
/// chatter stays out of the one-line-per-criterion report.
class StdoutSilencer {
public:
    StdoutSilencer() {
        std::fflush(stdout);
        saved_ = dup(fileno(stdout));
        FILE* sink = std::fopen("/dev/null", "w");
        dup2(fileno(sink), fileno(stdout));
        std::fclose(sink);
    }
    ~StdoutSilencer() {
        std::fflush(stdout);
        dup2(saved_, fileno(stdout));
        close(saved_);
    }

private:
    int saved_ = -1;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---- 1. metric oracle equivalence ----------------------------------------

Outcome metric_oracle_equivalence() {
    const double tol = 1e-9;
    std::mt19937_64 rng(20260101);
    HashedBowProvider provider;
    double begin = now_seconds();
    int pairs = 0;
    double worst = 0.0;

    auto texts_of = [&](const ThemeSet& ts) {
        std::vector<std::string> out;
        for (const Theme& t : ts.themes) out.push_back(theme_text(t.title, t.description));
        return out;
    };

    for (int trial = 0; trial < 120; ++trial) {
        ThemeSet a = synth::random_theme_set(rng, 5);
        ThemeSet b = synth::random_theme_set(rng, 5);
        std::string ta = metrics::theme_set_text(a);
        std::string tb = metrics::theme_set_text(b);

        for (int n = 1; n <= 2; ++n) {
            worst = std::max(worst, std::fabs(metrics::rouge_bidirectional(ta, tb, n) -
                                              oracle::rouge_bidirectional(ta, tb, n)));
        }
        std::vector<std::string> human = texts_of(a);
        std::vector<std::string> llm = texts_of(b);
        worst = std::max(worst, std::fabs(metrics::levenshtein_alignment(human, llm) -
                                          oracle::levenshtein_alignment(human, llm)));
        worst = std::max(worst, std::fabs(metrics::bleu_alignment(human, llm) -
                                          oracle::bleu_alignment(human, llm)));

        std::vector<std::vector<double>> hv, lv;
        for (const auto& t : human) hv.push_back(provider.embed(t));
        for (const auto& t : llm) lv.push_back(provider.embed(t));
        worst = std::max(worst, std::fabs(metrics::cosine_alignment(human, llm, provider) -
                                          oracle::cosine_alignment(hv, lv)));

        // credibility vs a nested-loop count
        std::set<QuoteId> corpus;
        std::uniform_int_distribution<int> seq(1, 30);
        for (int s = 1; s <= 20; ++s) corpus.insert(q(1, s));
        for (int s = 1; s <= 10; ++s) corpus.insert(q(2, s));
        int referenced = 0;
        for (const QuoteId& id : corpus) {
            bool cited = false;
            for (const Theme& t : a.themes) cited = cited || t.supporting_quote_ids.count(id) > 0;
            if (cited) ++referenced;
        }
        double brute = 100.0 * referenced / static_cast<double>(corpus.size());
        worst = std::max(worst, std::fabs(metrics::credibility(a, corpus) - brute));
        ++pairs;
    }
    double elapsed = now_seconds() - begin;
    Outcome out;
    out.pass = worst < tol && pairs >= 100 && elapsed < 10.0;
    out.detail = std::to_string(pairs) + " randomized pairs, worst |impl - oracle| = " + fmt(worst) +
                 ", " + fmt(elapsed) + " s";
    return out;
}

// ---- 2. formula spot checks ------------------------------------------------

Outcome formula_spot_checks() {
    double lev = metrics::levenshtein_similarity("kitten", "sitting");
    bool lev_ok = std::fabs(lev - (1.0 - 3.0 / 7.0)) <= 1e-12;

    double r1 = metrics::rouge_bidirectional("a b c", "b c d", 1);
    bool rouge_ok = std::fabs(r1 - 2.0 / 3.0) <= 1e-12;

    std::set<QuoteId> corpus;
    for (int s = 1; s <= 10; ++s) corpus.insert(q(1, s));
    std::vector<QuoteId> eight;
    for (int s = 1; s <= 8; ++s) eight.push_back(q(1, s));
    ThemeSet ts = synth::make_theme_set({synth::make_theme("t1", "x", eight)});
    bool cred_ok = metrics::credibility(ts, corpus) == 80.0;

    Outcome out;
    out.pass = lev_ok && rouge_ok && cred_ok;
    out.detail = "kitten/sitting = " + fmt(lev) + ", R1 = " + fmt(r1) +
                 ", credibility(8 of 10) = " + fmt(metrics::credibility(ts, corpus));
    return out;
}

// ---- 3. transferability split enumeration ----------------------------------

Outcome split_enumeration() {
    std::mt19937_64 rng(33);
    std::vector<Transcript> nine;
    for (int i = 0; i < 9; ++i) {
        nine.push_back(synth::random_transcript(rng, "t" + std::to_string(i), 8));
    }
    std::size_t generations = 0;
    metrics::GenerateFn constant = [&](const std::vector<Transcript>&) {
        ++generations;
        return synth::make_theme_set({synth::make_theme("t1", "constant theme", {q(1, 1)})});
    };
    metrics::TransferabilityResult r = metrics::transferability(nine, constant);
    Outcome out;
    out.pass = r.splits == 36 && generations == 72 && r.mean == 1.0 && r.stddev == 0.0;
    out.detail = std::to_string(r.splits) + " splits, constant-generator T = " + fmt(r.mean) +
                 " +/- " + fmt(r.stddev);
    return out;
}

// ---- 4. dependability aggregation ------------------------------------------

Outcome dependability_aggregation() {
    std::mt19937_64 rng(44);
    Transcript t = synth::random_transcript(rng, "dep", 24);
    CorpusBundle corpus = bundle_corpus({t}, 40);
    agents::BackendConfig bcfg;
    auto backend = agents::make_backend(bcfg);
    agents::PromptTemplates tpl = agents::default_templates();

    std::vector<ThemeSet> runs;
    for (int i = 0; i < 10; ++i) {
        runs.push_back(generate_once(corpus, agents::default_identities(), *backend, tpl,
                                     text::mix_seed(9, "run" + std::to_string(i)), 1)
                           .theme_set);
    }
    std::vector<double> pairs = metrics::dependability_pairs(runs);
    std::vector<ThemeSet> identical(10, runs[0]);
    double d_identical = metrics::dependability(identical);

    Outcome out;
    out.pass = pairs.size() == 45 && d_identical == 1.0;
    out.detail = std::to_string(pairs.size()) + " pairwise comparisons over 10 seed-varied runs (D = " +
                 fmt(metrics::dependability(runs)) + "), identical runs D = " + fmt(d_identical);
    return out;
}

// ---- 5. refinement loop contract --------------------------------------------

class ScriptedFeedback final : public refine::FeedbackSource {
public:
    explicit ScriptedFeedback(std::vector<ScoreVector> scores) : scores_(std::move(scores)) {}
    ScoreVector score(const ThemeSet&) override {
        return scores_[std::min(call_++, scores_.size() - 1)];
    }
    std::vector<EditProposal> propose(const ThemeSet&, const ScoreVector&,
                                      std::vector<AgentExchange>&) override {
        EditProposal add;
        add.kind = EditKind::Add;
        ThemeDraft d;
        d.title = "filler " + std::to_string(call_);
        d.quote_ids = {q(1, 1)};
        add.payload = {d};
        return {add};
    }

private:
    std::vector<ScoreVector> scores_;
    std::size_t call_ = 0;
};

Outcome refinement_loop_contract() {
    std::ostringstream detail;
    bool pass = true;

    // (a) the cap is a hard bound over 1000 random mock corpora; sparse
    // coder settings force multi-round Add churn so the cap actually bites
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<int> utterances(6, 16);
    std::uniform_int_distribution<int> cap(1, 5);
    std::uniform_int_distribution<int> top_codes(1, 5);
    std::uniform_real_distribution<double> epsilon(0.005, 0.1);
    int worst_iteration = 0;
    int capped = 0;
    int converged_count = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        RunConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(trial);
        cfg.chunk_limit = 40;
        cfg.backend.mock_top_codes = top_codes(rng);
        cfg.refine.max_iterations = cap(rng);
        cfg.refine.convergence_epsilon = epsilon(rng);
        cfg.refine.loop_dependability_runs = 1;
        cfg.refine.loop_transfer_splits = 1;
        cfg.full_transferability_report = false;

        CorpusBundle corpus = bundle_corpus({synth::random_transcript(rng, "f", utterances(rng))}, 40);
        auto backend = agents::make_backend(cfg.backend);
        agents::PromptTemplates tpl = agents::default_templates();
        GenerationOutput gen =
            generate_once(corpus, cfg.identities, *backend, tpl, cfg.seed, 1);
        MetricFeedback feedback(corpus, *backend, tpl, cfg.refine, {gen.theme_set}, 0.0, cfg.seed);
        AuditTrail trail;
        refine::RefineResult result = refine::refine_loop(gen.theme_set, cfg.refine, feedback, trail);
        worst_iteration = std::max(worst_iteration, result.final_theme_set.iteration);
        if (result.final_theme_set.iteration > cfg.refine.max_iterations) pass = false;
        if (result.converged) {
            ++converged_count;
        } else {
            ++capped;
        }
    }
    detail << "1000 fuzz loops within cap (" << converged_count << " converged, " << capped
           << " capped, deepest iteration " << worst_iteration << ")";
    pass = pass && capped > 0 && converged_count > 0; // both stop paths exercised

    // (b) immediate halt when consecutive normalized scores are within 0.05
    ScriptedFeedback script({{80.0, 0.40, 0.30}, {81.0, 0.41, 0.31}});
    AuditTrail trail;
    refine::RefineConfig rcfg;
    refine::RefineResult converged = refine::refine_loop(
        synth::make_theme_set({synth::make_theme("t1", "seed theme", {q(1, 1)})}), rcfg, script, trail);
    bool halt_ok = converged.converged && converged.rounds == 1;
    pass = pass && halt_ok;
    detail << "; L1=0.03 halts at t=1: " << (halt_ok ? "yes" : "NO");

    // (c) Add fires exactly under the C threshold, Combine exactly above the
    // similarity threshold
    Transcript corpus_t = parse_transcript(
        "[P1_S001] anxiety anxiety waiting\n[P1_S002] insurance billing\n[P1_S003] school forms\n",
        "c");
    ThemeSet sparse = synth::make_theme_set({synth::make_theme("t1", "alpha topic", {q(1, 3)})});
    auto count_kind = [](const std::vector<EditProposal>& ps, EditKind k) {
        int n = 0;
        for (const auto& p : ps) n += p.kind == k ? 1 : 0;
        return n;
    };
    int adds_below =
        count_kind(refine::heuristic_proposals(sparse, {69.9, 1, 1}, {corpus_t}, rcfg), EditKind::Add);
    int adds_at =
        count_kind(refine::heuristic_proposals(sparse, {70.0, 1, 1}, {corpus_t}, rcfg), EditKind::Add);
    ThemeSet near = synth::make_theme_set({synth::make_theme("t1", "abcdefghij", {q(1, 1)}),
                                           synth::make_theme("t2", "abcdefghiX", {q(1, 2)})});
    ThemeSet apart = synth::make_theme_set({synth::make_theme("t1", "abcdefghij", {q(1, 1)}),
                                            synth::make_theme("t2", "abcdefghXY", {q(1, 2)})});
    int combine_above =
        count_kind(refine::heuristic_proposals(near, {100, 1, 1}, {corpus_t}, rcfg), EditKind::Combine);
    int combine_at =
        count_kind(refine::heuristic_proposals(apart, {100, 1, 1}, {corpus_t}, rcfg), EditKind::Combine);
    bool rules_ok = adds_below == 1 && adds_at == 0 && combine_above == 1 && combine_at == 0;
    pass = pass && rules_ok;
    detail << "; Add@0.699/0.700 = " << adds_below << "/" << adds_at
           << ", Combine@sim0.9/0.8 = " << combine_above << "/" << combine_at;

    return {pass, detail.str()};
}

// ---- 6. edit algebra ---------------------------------------------------------

Outcome edit_algebra() {
    std::mt19937_64 rng(66);
    std::uniform_int_distribution<int> kind_pick(0, 3);
    std::uniform_int_distribution<int> qp(1, 4), qs(1, 40);
    int cases = 0;
    int violations = 0;

    for (int trial = 0; trial < 10000; ++trial) {
        ThemeSet ts = synth::random_theme_set(rng, 5);
        int kind = kind_pick(rng);
        std::size_t before = ts.themes.size();
        ++cases;
        if (kind == 0) {
            EditProposal add;
            add.kind = EditKind::Add;
            ThemeDraft d;
            d.title = "added";
            d.quote_ids = {q(qp(rng), qs(rng))};
            add.payload = {d};
            if (apply_edit(ts, add).themes.size() != before + 1) ++violations;
        } else if (kind == 1) {
            std::uniform_int_distribution<std::size_t> pick(0, before - 1);
            EditProposal del;
            del.kind = EditKind::Delete;
            del.target_theme_ids = {ts.themes[pick(rng)].id};
            if (apply_edit(ts, del).themes.size() != before - 1) ++violations;
        } else if (kind == 2 && before >= 2) {
            std::uniform_int_distribution<std::size_t> k_dist(2, before);
            std::size_t k = k_dist(rng);
            EditProposal comb;
            comb.kind = EditKind::Combine;
            std::set<QuoteId> expected;
            for (std::size_t i = 0; i < k; ++i) {
                comb.target_theme_ids.push_back(ts.themes[i].id);
                expected.insert(ts.themes[i].supporting_quote_ids.begin(),
                                ts.themes[i].supporting_quote_ids.end());
            }
            ThemeSet out = apply_edit(ts, comb);
            bool count_ok = out.themes.size() == before - (k - 1);
            const Theme* merged = out.find("t" + std::to_string(ts.next_theme_id));
            bool union_ok = merged != nullptr && merged->supporting_quote_ids == expected;
            if (!count_ok || !union_ok) ++violations;
        } else if (kind == 3) {
            std::uniform_int_distribution<std::size_t> pick(0, before - 1);
            const Theme& victim = ts.themes[pick(rng)];
            EditProposal split;
            split.kind = EditKind::Split;
            split.target_theme_ids = {victim.id};
            ThemeDraft a, b;
            a.title = "a half";
            b.title = "b half";
            std::size_t i = 0;
            for (const QuoteId& id : victim.supporting_quote_ids) {
                if (i++ % 2 == 0) a.quote_ids.insert(id);
            }
            split.payload = {a, b};
            if (apply_edit(ts, split).themes.size() != before + 1) ++violations;
        }
    }
    Outcome out;
    out.pass = violations == 0 && cases == 10000;
    out.detail = std::to_string(cases) + " randomized edits, " + std::to_string(violations) +
                 " arithmetic/union violations";
    return out;
}

// ---- 7. end-to-end determinism ----------------------------------------------

Outcome end_to_end_determinism() {
    fs::path base = fs::temp_directory_path() / "autota_acceptance_run";
    fs::remove_all(base);
    fs::create_directories(base);
    std::string transcript = std::string(AUTOTA_SOURCE_DIR) + "/data/focus_group_alpha.txt";

    auto run_once = [&](const std::string& out_dir) {
        cli::RunOptions opts;
        opts.transcripts = {transcript};
        opts.common.seed = 20260801;
        opts.common.out_dir = (base / out_dir).string();
        StdoutSilencer silence;
        double begin = now_seconds();
        int rc = cli::cmd_run(opts);
        return std::pair<int, double>(rc, now_seconds() - begin);
    };
    auto [rc1, t1] = run_once("a");
    auto [rc2, t2] = run_once("b");

    std::string themes1 = read_text_file((base / "a" / "themes.json").string());
    std::string themes2 = read_text_file((base / "b" / "themes.json").string());
    std::string audit1 = read_text_file((base / "a" / "audit.json").string());
    std::string audit2 = read_text_file((base / "b" / "audit.json").string());

    Outcome out;
    out.pass = rc1 == 0 && rc2 == 0 && themes1 == themes2 && audit1 == audit2 && t1 < 5.0 && t2 < 5.0;
    out.detail = std::string("themes.json ") + (themes1 == themes2 ? "identical" : "DIFFER") +
                 ", audit.json " + (audit1 == audit2 ? "identical" : "DIFFER") + ", runs " + fmt(t1) +
                 " s / " + fmt(t2) + " s on the bundled 10k-word transcript";
    fs::remove_all(base);
    return out;
}

// ---- 8. reward model ----------------------------------------------------------

Outcome reward_model_gate() {
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::uniform_int_distribution<int> rating(0, 1);

    // analytic vs central finite differences on 50 random instances
    double worst_rel = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        reward::RewardModel model;
        for (double& w : model.weights) w = value(rng);
        model.bias = value(rng);
        std::vector<reward::TrainSample> samples;
        for (int i = 0; i < 10; ++i) {
            reward::TrainSample s;
            for (double& x : s.x) x = value(rng);
            s.rating = rating(rng);
            samples.push_back(s);
        }
        std::array<double, reward::kFeatureDim> grad_w{};
        double grad_b = 0.0;
        reward::mse_gradients(model, samples, grad_w, grad_b);
        const double h = 1e-5;
        for (std::size_t i = 0; i <= reward::kFeatureDim; ++i) {
            auto loss_at = [&](double delta) {
                reward::RewardModel probe = model;
                if (i < reward::kFeatureDim) {
                    probe.weights[i] += delta;
                } else {
                    probe.bias += delta;
                }
                return reward::mse_loss(probe, samples);
            };
            double numeric = (loss_at(h) - loss_at(-h)) / (2.0 * h);
            double analytic = i < reward::kFeatureDim ? grad_w[i] : grad_b;
            double rel = std::fabs(analytic - numeric) / std::max(1.0, std::fabs(numeric));
            worst_rel = std::max(worst_rel, rel);
        }
    }
    bool grad_ok = worst_rel < 1e-5;

    // linearly separable synthetic ratings reach MSE < 0.05
    std::vector<reward::TrainSample> separable;
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    for (int i = 0; i < 200; ++i) {
        bool good = i % 2 == 0;
        reward::TrainSample s;
        s.x = {good ? 0.9 + noise(rng) : 0.2 + noise(rng),
               good ? 0.8 + noise(rng) : 0.3 + noise(rng),
               0.5 + noise(rng), 0.5 + noise(rng), 0.5 + noise(rng), 0.5 + noise(rng)};
        s.rating = good ? 1.0 : 0.0;
        separable.push_back(s);
    }
    reward::TrainResult trained = reward::train_reward_model(separable, 0.05, 1000);
    bool fit_ok = trained.model.metadata.final_loss < 0.05;

    // best-of-n argmax plus positive-affine invariance
    HashedBowProvider provider;
    bool select_ok = true;
    std::uniform_real_distribution<double> c100(0.0, 100.0), unit(0.0, 1.0), scale(0.1, 5.0),
        shift(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        reward::RewardModel model;
        for (double& w : model.weights) w = value(rng);
        model.bias = value(rng);
        std::vector<reward::Candidate> candidates;
        for (int i = 0; i < 4; ++i) {
            reward::Candidate cand;
            cand.id = i;
            cand.theme_set = synth::random_theme_set(rng, 3);
            cand.score = ScoreVector{c100(rng), unit(rng), unit(rng)};
            candidates.push_back(std::move(cand));
        }
        const reward::Candidate& chosen = reward::best_of_n_select(candidates, model, provider);
        double best = reward::score_theme_set(chosen.theme_set, chosen.score, model, provider);
        for (const auto& cand : candidates) {
            if (reward::score_theme_set(cand.theme_set, cand.score, model, provider) >
                best + 1e-12) {
                select_ok = false; // something scored above the argmax
            }
        }
        reward::RewardModel affine = model;
        double a = scale(rng), b = shift(rng);
        for (double& w : affine.weights) w *= a;
        affine.bias = a * model.bias + b;
        if (reward::best_of_n_select(candidates, affine, provider).id != chosen.id) select_ok = false;
    }

    Outcome out;
    out.pass = grad_ok && fit_ok && select_ok;
    out.detail = "worst gradient rel err = " + fmt(worst_rel) +
                 ", separable-ratings MSE = " + fmt(trained.model.metadata.final_loss) +
                 ", argmax/affine checks " + (select_ok ? "clean" : "VIOLATED");
    return out;
}

// ---- 9. citation soundness -----------------------------------------------------

Outcome citation_soundness() {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> utterances(2, 10);
    std::uniform_int_distribution<std::size_t> identity_pick(0, 3);
    agents::BackendConfig bcfg;
    agents::MockBackend backend(bcfg);
    agents::PromptTemplates tpl = agents::default_templates();
    auto identities = agents::default_identities();

    int violations = 0;
    int cases = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        Transcript t = synth::random_transcript(rng, "fz", utterances(rng));
        std::vector<Chunk> chunks = chunk_transcript(t, 30);
        const Chunk& chunk = chunks[trial % chunks.size()];
        std::set<QuoteId> chunk_scope;
        for (const Utterance& u : chunk.utterances) chunk_scope.insert(u.quote_id);

        agents::CodingResult coded = agents::code_chunk(identities[identity_pick(rng)], chunk,
                                                        backend, tpl, static_cast<std::uint64_t>(trial));
        std::set<QuoteId> code_scope;
        for (const Code& code : coded.codes) {
            for (const QuoteId& id : code.quote_ids) {
                if (chunk_scope.count(id) == 0) ++violations;
                code_scope.insert(id);
            }
        }
        if (!coded.codes.empty()) {
            agents::ThemeGenResult themes = agents::generate_themes(
                coded.codes, std::nullopt, backend, tpl, static_cast<std::uint64_t>(trial), {t.id});
            for (const QuoteId& id : themes.theme_set.all_quote_ids()) {
                if (code_scope.count(id) == 0) ++violations;
            }
        }
        ++cases;
    }
    Outcome out;
    out.pass = violations == 0 && cases == 10000;
    out.detail = std::to_string(cases) + " fuzz cases, " + std::to_string(violations) +
                 " out-of-scope citations";
    return out;
}

} // namespace

int main() {
    std::vector<std::pair<std::string, CheckFn>> checks = {
        {"metric-oracle-equivalence", metric_oracle_equivalence},
        {"formula-spot-checks", formula_spot_checks},
        {"transferability-split-enumeration", split_enumeration},
        {"dependability-aggregation", dependability_aggregation},
        {"refinement-loop-contract", refinement_loop_contract},
        {"edit-algebra", edit_algebra},
        {"end-to-end-determinism", end_to_end_determinism},
        {"reward-model", reward_model_gate},
        {"citation-soundness", citation_soundness},
    };

    int failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        Outcome outcome;
        try {
            outcome = checks[i].second();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %zu. %s - %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                    checks[i].first.c_str(), outcome.detail.c_str());
        if (!outcome.pass) ++failures;
    }
    if (failures > 0) {
        std::printf("%d of %zu acceptance checks failed\n", failures, checks.size());
        return 1;
    }
    std::printf("all %zu acceptance checks passed\n", checks.size());
    return 0;
}
