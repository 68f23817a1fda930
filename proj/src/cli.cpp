#include "autota/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>

#include "autota/error.hpp"
#include "autota/reward.hpp"
#include "autota/text.hpp"

namespace autota::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

agents::BackendKind backend_kind_from_string(const std::string& s) {
    if (s == "mock") return agents::BackendKind::Mock;
    if (s == "remote") return agents::BackendKind::Remote;
    throw Error(ErrorKind::ConfigError, "backend must be 'mock' or 'remote', got '" + s + "'");
}

refine::Mode mode_from_string(const std::string& s) {
    if (s == "heuristic") return refine::Mode::Heuristic;
    if (s == "reward_guided") return refine::Mode::RewardGuided;
    throw Error(ErrorKind::ConfigError, "mode must be 'heuristic' or 'reward_guided', got '" + s + "'");
}

std::vector<agents::Identity> identities_from_names(const std::string& comma_list) {
    std::vector<agents::Identity> defaults = agents::default_identities();
    std::vector<agents::Identity> out;
    for (const std::string& part : text::split(comma_list, ',')) {
        std::string name = text::trim(part);
        if (name.empty()) continue;
        auto it = std::find_if(defaults.begin(), defaults.end(),
                               [&](const agents::Identity& d) { return d.name == name; });
        out.push_back(it != defaults.end() ? *it : agents::identity_from_name(name));
    }
    if (out.empty()) throw Error(ErrorKind::ConfigError, "no identity names in '" + comma_list + "'");
    return out;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    Json j = read_json_file(path);
    cfg.chunk_limit = j.value("chunk_limit", cfg.chunk_limit);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.audit_path = j.value("audit_path", cfg.audit_path);
    cfg.prompt_dir = j.value("prompt_dir", cfg.prompt_dir);
    cfg.candidates = j.value("candidates", cfg.candidates);
    cfg.reward_model_path = j.value("reward_model", cfg.reward_model_path);
    if (j.contains("transcripts")) {
        cfg.transcript_paths = j.at("transcripts").get<std::vector<std::string>>();
    }
    if (j.contains("identities")) {
        cfg.identities.clear();
        for (const auto& item : j.at("identities")) {
            if (item.is_string()) {
                cfg.identities.push_back(identities_from_names(item.get<std::string>()).front());
            } else {
                cfg.identities.push_back(
                    {item.at("name").get<std::string>(), item.value("preamble", std::string{})});
                if (cfg.identities.back().prompt_preamble.empty()) {
                    cfg.identities.back() = agents::identity_from_name(cfg.identities.back().name);
                }
            }
        }
    }
    if (j.contains("backend")) {
        const auto& b = j.at("backend");
        if (b.contains("kind")) cfg.backend.kind = backend_kind_from_string(b.at("kind").get<std::string>());
        cfg.backend.model = b.value("model", cfg.backend.model);
        cfg.backend.temperature = b.value("temperature", cfg.backend.temperature);
        cfg.backend.endpoint = b.value("endpoint", cfg.backend.endpoint);
        cfg.backend.api_key_env = b.value("api_key_env", cfg.backend.api_key_env);
        cfg.backend.mock_top_codes = b.value("mock_top_codes", cfg.backend.mock_top_codes);
    }
    if (j.contains("refine")) {
        const auto& r = j.at("refine");
        cfg.refine.credibility_add_threshold =
            r.value("credibility_add_threshold", cfg.refine.credibility_add_threshold);
        cfg.refine.levenshtein_combine_threshold =
            r.value("levenshtein_combine_threshold", cfg.refine.levenshtein_combine_threshold);
        cfg.refine.convergence_epsilon = r.value("convergence_epsilon", cfg.refine.convergence_epsilon);
        cfg.refine.max_iterations = r.value("max_iterations", cfg.refine.max_iterations);
        if (r.contains("mode")) cfg.refine.mode = mode_from_string(r.at("mode").get<std::string>());
        cfg.refine.loop_dependability_runs =
            r.value("loop_dependability_runs", cfg.refine.loop_dependability_runs);
        cfg.refine.loop_transfer_splits = r.value("loop_transfer_splits", cfg.refine.loop_transfer_splits);
    }
}

void apply_common_flags(RunConfig& cfg, const CommonOptions& common) {
    if (common.backend) cfg.backend.kind = backend_kind_from_string(*common.backend);
    if (common.seed) cfg.seed = *common.seed;
    if (common.max_iters) cfg.refine.max_iterations = *common.max_iters;
    if (common.chunk_limit) cfg.chunk_limit = *common.chunk_limit;
    if (common.identities) cfg.identities = identities_from_names(*common.identities);
    if (common.out_dir) cfg.out_dir = *common.out_dir;
    if (common.jobs) cfg.jobs = *common.jobs;
}

RunConfig base_config(const CommonOptions& common) {
    RunConfig cfg;
    cfg.out_dir = "out";
    if (!common.config_path.empty()) apply_config_file(cfg, common.config_path);
    apply_common_flags(cfg, common);
    return cfg;
}

int fail(const Error& e) {
    std::string stage = error_stage(e.what());
    if (stage != "unknown") {
        std::cerr << "error at stage '" << stage << "': " << e.what() << "\n";
    } else {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
}

void print_report_table(const Json& report) {
    auto row = [](const std::string& name, const std::string& value) {
        std::printf("  %-16s %s\n", name.c_str(), value.c_str());
    };
    std::printf("metrics:\n");
    if (report.contains("credibility") && !report["credibility"].is_null()) {
        row("credibility", fmt4(report["credibility"].get<double>()));
    }
    if (report.contains("dependability") && !report["dependability"].is_null()) {
        row("dependability", fmt4(report["dependability"].get<double>()));
    }
    if (report.contains("transferability") && report["transferability"].is_object()) {
        const auto& t = report["transferability"];
        if (!t["mean"].is_null()) {
            std::string value = fmt4(t["mean"].get<double>());
            if (!t["std"].is_null()) value += " +/- " + fmt4(t["std"].get<double>());
            value += " (" + std::to_string(t["splits"].get<std::size_t>()) + " splits)";
            row("transferability", value);
        } else {
            row("transferability", "n/a (needs >= 2 transcripts)");
        }
    }
    for (const char* key : {"cosine_bi", "levenshtein_DL", "bleu_B"}) {
        if (report.contains(key) && !report[key].is_null()) {
            row(key, fmt4(report[key].get<double>()));
        }
    }
}

} // namespace

RunConfig resolve_run_config(const RunOptions& opts) {
    RunConfig cfg = base_config(opts.common);
    if (!opts.transcripts.empty()) cfg.transcript_paths = opts.transcripts;
    if (opts.mode) cfg.refine.mode = mode_from_string(*opts.mode);
    if (opts.reward_model) cfg.reward_model_path = *opts.reward_model;
    if (opts.candidates) cfg.candidates = *opts.candidates;
    return cfg;
}

int cmd_run(const RunOptions& opts) {
    RunConfig cfg;
    AuditTrail partial;
    try {
        cfg = resolve_run_config(opts);
        RunArtifacts artifacts = run_pipeline(cfg, &partial);

        fs::create_directories(fs::path(cfg.out_dir) / "codes");
        fs::create_directories(fs::path(cfg.out_dir) / "themes");

        for (const auto& [transcript_id, codes] : artifacts.codes_by_transcript) {
            Json arr = Json::array();
            for (const Code& c : codes) arr.push_back(to_json(c));
            write_json_file((fs::path(cfg.out_dir) / "codes" / (transcript_id + ".json")).string(), arr);
        }
        for (const IterationRecord& rec : artifacts.audit.iterations) {
            write_json_file((fs::path(cfg.out_dir) / "themes" /
                             ("iter_" + std::to_string(rec.iteration) + ".json"))
                                .string(),
                            to_json(rec.theme_set));
        }
        write_json_file((fs::path(cfg.out_dir) / "themes.json").string(),
                        to_json(artifacts.final_theme_set));
        std::string audit_path =
            cfg.audit_path.empty() ? (fs::path(cfg.out_dir) / "audit.json").string() : cfg.audit_path;
        write_json_file(audit_path, to_json(artifacts.audit));
        write_json_file((fs::path(cfg.out_dir) / "report.json").string(), artifacts.report);

        std::printf("run complete: %zu themes after iteration %d (%s)\n",
                    artifacts.final_theme_set.themes.size(), artifacts.final_theme_set.iteration,
                    artifacts.converged ? "converged" : "iteration cap");
        print_report_table(artifacts.report);
        std::printf("  %-16s %s\n", "output", cfg.out_dir.c_str());
        return 0;
    } catch (const Error& e) {
        if (!partial.iterations.empty() || !partial.pending_exchanges.empty()) {
            std::string out_dir = cfg.out_dir.empty() ? "out" : cfg.out_dir;
            std::error_code ec;
            fs::create_directories(out_dir, ec);
            if (!ec) {
                try {
                    std::string audit_path = cfg.audit_path.empty()
                                                 ? (fs::path(out_dir) / "audit.json").string()
                                                 : cfg.audit_path;
                    write_json_file(audit_path, to_json(partial));
                    std::cerr << "partial audit trail flushed to " << audit_path << "\n";
                } catch (const Error&) {
                }
            }
        }
        return fail(e);
    }
}

int cmd_compare(const CompareOptions& opts) {
    try {
        auto human = theme_list_from_json(read_json_file(opts.human_themes_path));
        auto llm = theme_list_from_json(read_json_file(opts.llm_themes_path));
        std::vector<std::string> human_texts;
        std::vector<std::string> llm_texts;
        for (const auto& [title, desc] : human) human_texts.push_back(theme_text(title, desc));
        for (const auto& [title, desc] : llm) llm_texts.push_back(theme_text(title, desc));

        HashedBowProvider provider;
        metrics::AlignmentReport report = metrics::alignment_report(human_texts, llm_texts, provider);

        Json out{{"credibility", nullptr},
                 {"dependability", nullptr},
                 {"transferability", Json{{"mean", nullptr}, {"std", nullptr}, {"splits", 0}}},
                 {"cosine_bi", report.cosine_bi},
                 {"levenshtein_DL", report.levenshtein_DL},
                 {"bleu_B", report.bleu_B}};
        Json matches = Json::array();
        for (const metrics::BestMatch& m : report.best_matches) {
            matches.push_back(Json{{"human", human[m.human_index].first},
                                   {"best", Json{{"index", m.best},
                                                 {"title", llm[m.best].first},
                                                 {"cosine", m.best_cosine}}},
                                   {"second", Json{{"index", m.second},
                                                   {"title", llm[m.second].first},
                                                   {"cosine", m.second_cosine}}}});
        }
        out["best_matches"] = std::move(matches);

        print_report_table(out);
        std::printf("closest llm themes per human theme:\n");
        for (const metrics::BestMatch& m : report.best_matches) {
            std::printf("  %zu. %s\n", m.human_index + 1, human[m.human_index].first.c_str());
            std::printf("       -> %s (%s)\n", llm[m.best].first.c_str(), fmt4(m.best_cosine).c_str());
            if (m.second != m.best) {
                std::printf("       -> %s (%s)\n", llm[m.second].first.c_str(),
                            fmt4(m.second_cosine).c_str());
            }
        }
        if (opts.out_path) write_json_file(*opts.out_path, out);
        return 0;
    } catch (const Error& e) {
        return fail(e);
    }
}

int cmd_dependability(const DependabilityOptions& opts) {
    try {
        if (opts.runs < 2) {
            throw Error(ErrorKind::InsufficientRuns, "dependability needs --runs >= 2");
        }
        RunConfig cfg = base_config(opts.common);
        cfg.transcript_paths = {opts.transcript_path};
        cfg.validate();

        CorpusBundle corpus = load_corpus(cfg.transcript_paths, cfg.chunk_limit);
        agents::PromptTemplates tpl = agents::load_templates(cfg.prompt_dir);
        auto backend = agents::make_backend(cfg.backend);

        std::vector<ThemeSet> runs;
        for (int i = 0; i < opts.runs; ++i) {
            runs.push_back(generate_once(corpus, cfg.identities, *backend, tpl,
                                         text::mix_seed(cfg.seed, "run" + std::to_string(i)), cfg.jobs)
                               .theme_set);
        }
        std::vector<double> pairs = metrics::dependability_pairs(runs);
        double mean = 0.0;
        for (double p : pairs) mean += p;
        mean /= static_cast<double>(pairs.size());
        double var = 0.0;
        for (double p : pairs) var += (p - mean) * (p - mean);
        double stddev = std::sqrt(var / static_cast<double>(pairs.size()));

        std::printf("dependability over %d runs (%zu pairs): %s +/- %s\n", opts.runs, pairs.size(),
                    fmt4(mean).c_str(), fmt4(stddev).c_str());
        if (opts.out_path) {
            write_json_file(*opts.out_path, Json{{"dependability", mean},
                                                 {"std", stddev},
                                                 {"runs", opts.runs},
                                                 {"pairs", pairs.size()}});
        }
        return 0;
    } catch (const Error& e) {
        return fail(e);
    }
}

int cmd_transferability(const TransferabilityOptions& opts) {
    try {
        std::vector<std::string> paths;
        if (!fs::is_directory(opts.corpus_dir)) {
            throw Error(ErrorKind::ConfigError, "not a directory: " + opts.corpus_dir);
        }
        for (const auto& entry : fs::directory_iterator(opts.corpus_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".txt") {
                paths.push_back(entry.path().string());
            }
        }
        std::sort(paths.begin(), paths.end());
        if (paths.size() < 2) {
            throw Error(ErrorKind::InsufficientTranscripts,
                        "corpus dir holds " + std::to_string(paths.size()) +
                            " transcript(s); need at least 2");
        }

        RunConfig cfg = base_config(opts.common);
        cfg.transcript_paths = paths;
        cfg.validate();

        CorpusBundle corpus = load_corpus(paths, cfg.chunk_limit);
        agents::PromptTemplates tpl = agents::load_templates(cfg.prompt_dir);
        auto backend = agents::make_backend(cfg.backend);
        metrics::GenerateFn gen =
            make_generate_fn(cfg.identities, *backend, tpl, cfg.chunk_limit, cfg.seed);
        metrics::TransferabilityResult t = metrics::transferability(corpus.transcripts, gen);

        std::printf("transferability over %zu transcripts (%zu splits): %s +/- %s\n",
                    corpus.transcripts.size(), t.splits, fmt4(t.mean).c_str(), fmt4(t.stddev).c_str());
        if (opts.out_path) {
            write_json_file(*opts.out_path,
                            Json{{"transferability",
                                  Json{{"mean", t.mean}, {"std", t.stddev}, {"splits", t.splits}}},
                                 {"per_split", t.per_split}});
        }
        return 0;
    } catch (const Error& e) {
        return fail(e);
    }
}

int cmd_train_reward(const TrainRewardOptions& opts) {
    try {
        std::vector<reward::RewardRecord> records = reward::load_ratings_jsonl(opts.ratings_path);
        if (records.empty()) throw Error(ErrorKind::NoRecords, "ratings file holds no records");
        Json features = read_json_file(opts.features_path);

        std::vector<reward::TrainSample> samples;
        for (const reward::RewardRecord& record : records) {
            if (!features.contains(record.theme_set_id)) {
                throw Error(ErrorKind::ParseError,
                            "no feature vector for theme set '" + record.theme_set_id + "'");
            }
            auto values = features.at(record.theme_set_id).get<std::vector<double>>();
            if (values.size() != reward::kFeatureDim) {
                throw Error(ErrorKind::ParseError,
                            "feature vector for '" + record.theme_set_id + "' has " +
                                std::to_string(values.size()) + " entries, expected " +
                                std::to_string(reward::kFeatureDim));
            }
            reward::TrainSample sample;
            std::copy(values.begin(), values.end(), sample.x.begin());
            sample.rating = record.rating;
            samples.push_back(sample);
        }

        reward::TrainResult result = reward::train_reward_model(samples, opts.learning_rate, opts.epochs);
        write_json_file(opts.out_path, to_json(result.model));
        std::printf("trained on %zu ratings: loss %s -> %s over %d epochs; model written to %s\n",
                    samples.size(), fmt4(result.loss_curve.front()).c_str(),
                    fmt4(result.model.metadata.final_loss).c_str(), opts.epochs, opts.out_path.c_str());
        return 0;
    } catch (const Error& e) {
        return fail(e);
    }
}

} // namespace autota::cli
