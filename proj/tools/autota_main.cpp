#include <optional>
#include <string>

#include <CLI11.hpp>

#include "autota/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, autota::cli::CommonOptions& common) {
    cmd->add_option("--config", common.config_path, "JSON config file");
    cmd->add_option("--backend", common.backend, "Backend: mock|remote")
        ->check(CLI::IsMember({"mock", "remote"}));
    cmd->add_option("--seed", common.seed, "Run seed (u64)");
    cmd->add_option("--max-iters", common.max_iters, "Refinement iteration cap");
    cmd->add_option("--chunk-limit", common.chunk_limit, "Chunk word limit");
    cmd->add_option("--identities", common.identities, "Comma-separated coder identities");
    cmd->add_option("--out", common.out_dir, "Output directory");
    cmd->add_option("--jobs", common.jobs, "Concurrent coder agents");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"End-to-end thematic analysis over quote-annotated interview transcripts"};
    app.require_subcommand(1);

    autota::cli::RunOptions run_opts;
    CLI::App* run = app.add_subcommand("run", "Parse, code, cluster, and refine themes");
    add_common_flags(run, run_opts.common);
    run->add_option("transcripts", run_opts.transcripts, "Transcript text files");
    run->add_option("--mode", run_opts.mode, "heuristic|reward_guided")
        ->check(CLI::IsMember({"heuristic", "reward_guided"}));
    run->add_option("--reward-model", run_opts.reward_model, "Reward model JSON (reward-guided mode)");
    run->add_option("--candidates", run_opts.candidates, "Best-of-n width (reward-guided mode)");

    autota::cli::CompareOptions compare_opts;
    CLI::App* compare = app.add_subcommand("compare", "Align LLM themes against human themes");
    compare->add_option("llm_themes", compare_opts.llm_themes_path, "LLM theme list JSON")->required();
    compare->add_option("human_themes", compare_opts.human_themes_path, "Human theme list JSON")
        ->required();
    compare->add_option("--out", compare_opts.out_path, "Write the alignment report JSON here");

    autota::cli::DependabilityOptions dep_opts;
    CLI::App* dep = app.add_subcommand("dependability", "Inter-run stability over one transcript");
    add_common_flags(dep, dep_opts.common);
    dep->add_option("transcript", dep_opts.transcript_path, "Transcript text file")->required();
    dep->add_option("--runs", dep_opts.runs, "Independent generations (default 10)");
    dep->add_option("--report", dep_opts.out_path, "Write the result JSON here");

    autota::cli::TransferabilityOptions trans_opts;
    CLI::App* trans = app.add_subcommand("transferability", "Cross-split generalization over a corpus");
    add_common_flags(trans, trans_opts.common);
    trans->add_option("corpus_dir", trans_opts.corpus_dir, "Directory of transcript .txt files")
        ->required();
    trans->add_option("--report", trans_opts.out_path, "Write the result JSON here");

    autota::cli::TrainRewardOptions train_opts;
    CLI::App* train = app.add_subcommand("train-reward", "Fit the reward model on binary ratings");
    train->add_option("--ratings", train_opts.ratings_path, "JSON-lines ratings file")->required();
    train->add_option("--features", train_opts.features_path, "theme_set_id -> feature vector JSON")
        ->required();
    train->add_option("--out", train_opts.out_path, "Model output path")->required();
    train->add_option("--lr", train_opts.learning_rate, "Learning rate (default 0.05)");
    train->add_option("--epochs", train_opts.epochs, "Training epochs (default 1000)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return autota::cli::cmd_run(run_opts);
    if (compare->parsed()) return autota::cli::cmd_compare(compare_opts);
    if (dep->parsed()) return autota::cli::cmd_dependability(dep_opts);
    if (trans->parsed()) return autota::cli::cmd_transferability(trans_opts);
    if (train->parsed()) return autota::cli::cmd_train_reward(train_opts);
    return 1;
}
