#include "autota/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <random>

#include "autota/error.hpp"
#include "autota/reward.hpp"
#include "autota/text.hpp"

namespace autota {

void RunConfig::validate() const {
    if (transcript_paths.empty()) {
        throw Error(ErrorKind::ConfigError, "no transcript paths given");
    }
    for (const std::string& path : transcript_paths) {
        if (!std::filesystem::exists(path)) {
            throw Error(ErrorKind::ConfigError, "transcript path does not exist: " + path);
        }
    }
    if (identities.empty()) throw Error(ErrorKind::ConfigError, "at least one identity required");
    std::set<std::string> names;
    for (const auto& identity : identities) {
        if (!names.insert(identity.name).second) {
            throw Error(ErrorKind::ConfigError, "duplicate identity name '" + identity.name + "'");
        }
    }
    if (chunk_limit < 1) throw Error(ErrorKind::ConfigError, "chunk_limit must be >= 1");
    if (jobs < 1) throw Error(ErrorKind::ConfigError, "jobs must be >= 1");
    if (candidates < 1) throw Error(ErrorKind::ConfigError, "candidates must be >= 1");
    refine.validate();
    if (refine.mode == refine::Mode::RewardGuided && reward_model_path.empty()) {
        throw Error(ErrorKind::ConfigError, "reward-guided mode needs --reward-model");
    }
}

CorpusBundle bundle_corpus(std::vector<Transcript> transcripts, std::size_t chunk_limit) {
    CorpusBundle bundle;
    bundle.transcripts = std::move(transcripts);
    for (const Transcript& t : bundle.transcripts) {
        for (const Utterance& u : t.utterances) bundle.quote_ids.insert(u.quote_id);
        std::vector<Chunk> chunks = chunk_transcript(t, chunk_limit);
        bundle.chunks.insert(bundle.chunks.end(), chunks.begin(), chunks.end());
    }
    return bundle;
}

CorpusBundle load_corpus(const std::vector<std::string>& paths, std::size_t chunk_limit) {
    std::vector<Transcript> transcripts;
    transcripts.reserve(paths.size());
    for (const std::string& path : paths) {
        std::string stem = std::filesystem::path(path).stem().string();
        transcripts.push_back(parse_transcript(read_text_file(path), stem));
    }
    return bundle_corpus(std::move(transcripts), chunk_limit);
}

GenerationOutput generate_once(const CorpusBundle& corpus, const std::vector<agents::Identity>& identities,
                               agents::Backend& backend, const agents::PromptTemplates& tpl,
                               std::uint64_t seed, int jobs) {
    if (corpus.chunks.empty()) {
        throw Error(ErrorKind::EmptyCorpus, "corpus produced no chunks");
    }
    std::vector<agents::Identity> ordered = identities;
    std::sort(ordered.begin(), ordered.end(),
              [](const agents::Identity& a, const agents::Identity& b) { return a.name < b.name; });

    struct Task {
        const Chunk* chunk;
        const agents::Identity* identity;
        std::uint64_t sub_seed;
    };
    std::vector<Task> tasks;
    for (const Chunk& chunk : corpus.chunks) {
        for (const agents::Identity& identity : ordered) {
            // Sub-seeds depend only on (seed, transcript, chunk, identity),
            // never on scheduling.
            std::uint64_t sub = text::mix_seed(
                seed, "coding:" + chunk.transcript_id + "#" + std::to_string(chunk.index) + ":" + identity.name);
            tasks.push_back({&chunk, &identity, sub});
        }
    }

    std::vector<agents::CodingResult> results(tasks.size());
    auto run_task = [&](std::size_t i) {
        results[i] = agents::code_chunk(*tasks[i].identity, *tasks[i].chunk, backend, tpl, tasks[i].sub_seed);
    };
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        for (std::size_t begin = 0; begin < tasks.size(); begin += static_cast<std::size_t>(jobs)) {
            std::size_t end = std::min(tasks.size(), begin + static_cast<std::size_t>(jobs));
            std::vector<std::future<void>> wave;
            for (std::size_t i = begin; i < end; ++i) {
                wave.push_back(std::async(std::launch::async, run_task, i));
            }
            for (auto& f : wave) f.get(); // rethrows task errors
        }
    }

    GenerationOutput out;
    for (std::size_t i = 0; i < results.size(); ++i) {
        agents::CodingResult& result = results[i];
        std::stable_sort(result.codes.begin(), result.codes.end(),
                         [](const Code& a, const Code& b) { return a.label < b.label; });
        std::vector<Code>& per_transcript = out.codes_by_transcript[tasks[i].chunk->transcript_id];
        per_transcript.insert(per_transcript.end(), result.codes.begin(), result.codes.end());
        out.codes.insert(out.codes.end(), std::make_move_iterator(result.codes.begin()),
                         std::make_move_iterator(result.codes.end()));
        out.warnings.insert(out.warnings.end(), result.dropped.begin(), result.dropped.end());
        out.exchanges.push_back(std::move(result.exchange));
    }
    if (out.codes.empty()) {
        throw Error(ErrorKind::UnparseableResponse, "coder agents produced no usable codes");
    }

    std::vector<std::string> transcript_ids;
    for (const Transcript& t : corpus.transcripts) transcript_ids.push_back(t.id);
    agents::ThemeGenResult themes =
        agents::generate_themes(out.codes, std::nullopt, backend, tpl,
                                text::mix_seed(seed, "theme_generation"), transcript_ids);
    out.theme_set = std::move(themes.theme_set);
    out.exchanges.push_back(std::move(themes.exchange));
    return out;
}

metrics::GenerateFn make_generate_fn(const std::vector<agents::Identity>& identities,
                                     agents::Backend& backend, const agents::PromptTemplates& tpl,
                                     std::size_t chunk_limit, std::uint64_t seed) {
    return [&backend, identities, tpl, chunk_limit, seed](const std::vector<Transcript>& subset) {
        std::vector<std::string> ids;
        for (const Transcript& t : subset) ids.push_back(t.id);
        std::uint64_t sub = text::mix_seed(seed, "subset:" + text::join(ids, ","));
        CorpusBundle bundle = bundle_corpus(subset, chunk_limit);
        return generate_once(bundle, identities, backend, tpl, sub, 1).theme_set;
    };
}

MetricFeedback::MetricFeedback(const CorpusBundle& corpus, agents::Backend& backend,
                               const agents::PromptTemplates& tpl, const refine::RefineConfig& cfg,
                               std::vector<ThemeSet> cached_runs,
                               std::optional<double> loop_transferability, std::uint64_t seed)
    : corpus_(corpus),
      backend_(backend),
      tpl_(tpl),
      cfg_(cfg),
      cached_runs_(std::move(cached_runs)),
      loop_transferability_(loop_transferability),
      seed_(seed) {}

namespace {

agents::CritiqueOptions critique_options(const refine::RefineConfig& cfg,
                                         const std::vector<ThemeSet>& cached_runs,
                                         const std::optional<double>& loop_transferability) {
    agents::CritiqueOptions options;
    options.params.add_threshold = cfg.credibility_add_threshold;
    options.params.combine_threshold = cfg.levenshtein_combine_threshold;
    options.cached_runs = cached_runs;
    options.transferability = loop_transferability.value_or(0.0);
    return options;
}

} // namespace

ScoreVector MetricFeedback::score(const ThemeSet& ts) {
    return agents::compute_score(ts, corpus_.transcripts,
                                 critique_options(cfg_, cached_runs_, loop_transferability_));
}

std::vector<EditProposal> MetricFeedback::propose(const ThemeSet& ts, const ScoreVector& s,
                                                  std::vector<AgentExchange>& exchanges) {
    (void)s; // critique recomputes the identical score for its prompt
    agents::CritiqueResult result =
        agents::critique(ts, corpus_.transcripts, backend_, tpl_,
                         critique_options(cfg_, cached_runs_, loop_transferability_),
                         text::mix_seed(seed_, "critique:" + std::to_string(round_)));
    ++round_;
    exchanges.push_back(std::move(result.exchange));
    return result.proposals;
}

namespace {

struct StagedError {
    std::string stage;
};

Json score_json(const ScoreVector& s) {
    return Json{{"credibility", s.credibility},
                {"dependability", s.dependability},
                {"transferability", s.transferability}};
}

/// Seeded sample of holdout index sets for the in-loop reduced T.
std::vector<std::vector<std::size_t>> sample_holdouts(std::size_t n, int sample, std::uint64_t seed) {
    std::vector<std::vector<std::size_t>> all = metrics::enumerate_holdouts(n);
    if (sample <= 0 || all.size() <= static_cast<std::size_t>(sample)) return all;
    std::vector<std::size_t> order(all.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(static_cast<std::size_t>(sample));
    std::sort(order.begin(), order.end());
    std::vector<std::vector<std::size_t>> picked;
    picked.reserve(order.size());
    for (std::size_t idx : order) picked.push_back(all[idx]);
    return picked;
}

struct HeuristicRun {
    RunArtifacts artifacts;
    ScoreVector final_score;
};

void run_heuristic_impl(const RunConfig& cfg, const CorpusBundle& corpus,
                        const agents::PromptTemplates& tpl, std::uint64_t seed, std::string& stage,
                        HeuristicRun& run);

HeuristicRun run_heuristic(const RunConfig& cfg, const CorpusBundle& corpus,
                           const agents::PromptTemplates& tpl, std::uint64_t seed, std::string& stage,
                           AuditTrail* partial = nullptr) {
    HeuristicRun run;
    try {
        run_heuristic_impl(cfg, corpus, tpl, seed, stage, run);
        return run;
    } catch (const Error&) {
        if (partial != nullptr) *partial = std::move(run.artifacts.audit);
        throw;
    }
}

void run_heuristic_impl(const RunConfig& cfg, const CorpusBundle& corpus,
                        const agents::PromptTemplates& tpl, std::uint64_t seed, std::string& stage,
                        HeuristicRun& run) {
    auto backend = agents::make_backend(cfg.backend);

    AuditTrail& trail = run.artifacts.audit;
    trail.run_seed = seed;

    stage = "generation";
    GenerationOutput generation = generate_once(corpus, cfg.identities, *backend, tpl, seed, cfg.jobs);
    run.artifacts.codes = generation.codes;
    run.artifacts.codes_by_transcript = generation.codes_by_transcript;
    for (AgentExchange& ex : generation.exchanges) {
        ex.timestamp = trail.tick();
        trail.pending_exchanges.push_back(std::move(ex));
    }

    stage = "dependability_runs";
    std::vector<ThemeSet> cached_runs;
    for (int j = 0; j < cfg.refine.loop_dependability_runs; ++j) {
        GenerationOutput regen = generate_once(corpus, cfg.identities, *backend, tpl,
                                               text::mix_seed(seed, "dep" + std::to_string(j)), cfg.jobs);
        for (AgentExchange& ex : regen.exchanges) {
            ex.stage = "dependability_" + ex.stage;
            ex.timestamp = trail.tick();
            trail.pending_exchanges.push_back(std::move(ex));
        }
        cached_runs.push_back(std::move(regen.theme_set));
    }

    stage = "loop_transferability";
    std::optional<double> loop_t;
    std::size_t loop_t_splits = 0;
    if (corpus.transcripts.size() >= 2 && cfg.refine.loop_transfer_splits > 0) {
        auto holdouts = sample_holdouts(corpus.transcripts.size(), cfg.refine.loop_transfer_splits,
                                        text::mix_seed(seed, "transfer_sample"));
        std::uint64_t transfer_seed = text::mix_seed(seed, "transfer");
        metrics::GenerateFn gen = [&](const std::vector<Transcript>& subset) {
            std::vector<std::string> ids;
            for (const Transcript& t : subset) ids.push_back(t.id);
            GenerationOutput g =
                generate_once(bundle_corpus(subset, cfg.chunk_limit), cfg.identities, *backend, tpl,
                              text::mix_seed(transfer_seed, "subset:" + text::join(ids, ",")), 1);
            for (AgentExchange& ex : g.exchanges) {
                ex.stage = "transferability_" + ex.stage;
                ex.timestamp = trail.tick();
                trail.pending_exchanges.push_back(std::move(ex));
            }
            return g.theme_set;
        };
        metrics::TransferabilityResult t = metrics::transferability_on_splits(corpus.transcripts, gen, holdouts);
        loop_t = t.mean;
        loop_t_splits = t.splits;
    }

    stage = "refine";
    MetricFeedback feedback(corpus, *backend, tpl, cfg.refine, cached_runs, loop_t, seed);
    refine::RefineResult refined = refine::refine_loop(generation.theme_set, cfg.refine, feedback, trail);
    run.artifacts.final_theme_set = refined.final_theme_set;
    run.artifacts.converged = refined.converged;
    run.final_score = trail.iterations.back().score;

    stage = "report";
    Json report;
    report["theme_set_id"] = trail.final_theme_set_id;
    report["seed"] = seed;
    report["iteration"] = refined.final_theme_set.iteration;
    report["converged"] = refined.converged;
    report["theme_count"] = refined.final_theme_set.themes.size();
    report["score_vector"] = score_json(run.final_score);
    report["credibility"] = run.final_score.credibility;
    report["dependability"] = run.final_score.dependability;

    Json transfer;
    if (cfg.full_transferability_report && corpus.transcripts.size() >= 2) {
        metrics::GenerateFn gen = make_generate_fn(cfg.identities, *backend, tpl, cfg.chunk_limit,
                                                   text::mix_seed(seed, "transfer_full"));
        metrics::TransferabilityResult t = metrics::transferability(corpus.transcripts, gen);
        transfer = Json{{"mean", t.mean}, {"std", t.stddev}, {"splits", t.splits}};
    } else if (loop_t.has_value()) {
        transfer = Json{{"mean", *loop_t}, {"std", nullptr}, {"splits", loop_t_splits}};
    } else {
        transfer = Json{{"mean", nullptr}, {"std", nullptr}, {"splits", 0}};
    }
    report["transferability"] = std::move(transfer);
    report["cosine_bi"] = nullptr;      // alignment metrics need human themes: see `compare`
    report["levenshtein_DL"] = nullptr;
    report["bleu_B"] = nullptr;

    HashedBowProvider provider;
    reward::FeatureVector x = reward::features(refined.final_theme_set, run.final_score, provider);
    report["feature_vector"] = x;
    run.artifacts.report = std::move(report);
}

} // namespace

std::string error_stage(const std::string& what) {
    std::size_t open = what.find("[stage ");
    if (open == std::string::npos) return "unknown";
    std::size_t close = what.find(']', open);
    if (close == std::string::npos) return "unknown";
    return what.substr(open + 7, close - open - 7);
}

RunArtifacts run_pipeline(const RunConfig& cfg, AuditTrail* partial) {
    std::string stage = "validate";
    try {
        cfg.validate();
        agents::PromptTemplates tpl = agents::load_templates(cfg.prompt_dir);

        stage = "load_corpus";
        CorpusBundle corpus = load_corpus(cfg.transcript_paths, cfg.chunk_limit);

        if (cfg.refine.mode == refine::Mode::Heuristic) {
            return run_heuristic(cfg, corpus, tpl, cfg.seed, stage, partial).artifacts;
        }

        // Reward-guided: n independent seed-varied heuristic runs, then
        // reward-model argmax over the finished candidates.
        stage = "reward_model";
        reward::RewardModel model = reward_model_from_json(read_json_file(cfg.reward_model_path));

        std::vector<HeuristicRun> runs;
        std::vector<reward::Candidate> candidates;
        for (int i = 0; i < cfg.candidates; ++i) {
            stage = "candidate_" + std::to_string(i);
            std::uint64_t cand_seed = text::mix_seed(cfg.seed, "cand" + std::to_string(i));
            runs.push_back(run_heuristic(cfg, corpus, tpl, cand_seed, stage, partial));
            candidates.push_back({i, runs.back().artifacts.final_theme_set, runs.back().final_score});
        }

        stage = "selection";
        HashedBowProvider provider;
        const reward::Candidate& chosen = reward::best_of_n_select(candidates, model, provider);
        std::vector<SelectionRecord> selection;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            SelectionRecord record;
            record.candidate_id = candidates[i].id;
            record.theme_set_id = runs[i].artifacts.audit.final_theme_set_id;
            record.reward = reward::score_theme_set(candidates[i].theme_set, candidates[i].score,
                                                    model, provider);
            record.score = candidates[i].score;
            selection.push_back(record);
        }
        RunArtifacts artifacts = std::move(runs[static_cast<std::size_t>(chosen.id)].artifacts);
        artifacts.selection = std::move(selection);
        Json selection_json = Json::array();
        for (const SelectionRecord& r : artifacts.selection) {
            selection_json.push_back(Json{{"candidate_id", r.candidate_id},
                                          {"theme_set_id", r.theme_set_id},
                                          {"reward", r.reward},
                                          {"score_vector", score_json(r.score)}});
        }
        artifacts.report["selection"] = std::move(selection_json);
        artifacts.report["selected_candidate"] = chosen.id;
        return artifacts;
    } catch (const Error& e) {
        throw Error(e.kind(), "[stage " + stage + "] " + e.what());
    }
}

} // namespace autota
