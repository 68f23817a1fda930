#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autota/pipeline.hpp"

namespace autota::cli {

/// Raw flag values before merging with the config file; unset optionals
/// fall back to config-file values, then defaults.
struct CommonOptions {
    std::string config_path;
    std::optional<std::string> backend; // "mock" | "remote"
    std::optional<std::uint64_t> seed;
    std::optional<int> max_iters;
    std::optional<std::size_t> chunk_limit;
    std::optional<std::string> identities; // comma-separated names
    std::optional<std::string> out_dir;
    std::optional<int> jobs;
};

struct RunOptions {
    CommonOptions common;
    std::vector<std::string> transcripts;
    std::optional<std::string> mode; // "heuristic" | "reward_guided"
    std::optional<std::string> reward_model;
    std::optional<int> candidates;
};

struct CompareOptions {
    std::string llm_themes_path;
    std::string human_themes_path;
    std::optional<std::string> out_path; // report JSON; stdout table always printed
};

struct DependabilityOptions {
    CommonOptions common;
    std::string transcript_path;
    int runs = 10;
    std::optional<std::string> out_path;
};

struct TransferabilityOptions {
    CommonOptions common;
    std::string corpus_dir;
    std::optional<std::string> out_path;
};

struct TrainRewardOptions {
    std::string ratings_path;  // JSON-lines RewardRecords
    std::string features_path; // {theme_set_id: [6 floats]}
    std::string out_path;      // model JSON
    double learning_rate = 0.05;
    int epochs = 1000;
};

/// Resolves config file + flags into a RunConfig. Throws ConfigError.
RunConfig resolve_run_config(const RunOptions& opts);

int cmd_run(const RunOptions& opts);
int cmd_compare(const CompareOptions& opts);
int cmd_dependability(const DependabilityOptions& opts);
int cmd_transferability(const TransferabilityOptions& opts);
int cmd_train_reward(const TrainRewardOptions& opts);

} // namespace autota::cli
