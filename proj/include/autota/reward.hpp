#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "autota/embedding.hpp"
#include "autota/model.hpp"

namespace autota::reward {

inline constexpr std::array<const char*, 4> kRatingCriteria = {
    "Coverage", "Actionability", "Distinctiveness", "Relevance"};

/// One binary human rating of a whole theme set.
struct RewardRecord {
    std::string theme_set_id;
    int rating = 0; // 0 or 1
    std::map<std::string, std::string> criteria_notes; // keys from kRatingCriteria
    std::string rater;
    std::string timestamp;
};

/// Parses a JSON-lines ratings file; one RewardRecord per line. Rejects
/// ratings outside {0,1} and unknown criteria keys, with line numbers.
std::vector<RewardRecord> load_ratings_jsonl(const std::string& path);

inline constexpr std::size_t kFeatureDim = 6;
using FeatureVector = std::array<double, kFeatureDim>;

/// Fixed feature order: [C/100, D, T, mean pairwise inter-theme cosine
/// distance, mean theme word_count / 60, theme count / 20].
FeatureVector features(const ThemeSet& ts, const ScoreVector& s, const EmbeddingProvider& provider);

struct RewardModel {
    std::array<double, kFeatureDim> weights{};
    double bias = 0.0;
    struct Metadata {
        int epochs = 0;
        double learning_rate = 0.0;
        double final_loss = 0.0;
    } metadata;
};

struct TrainSample {
    FeatureVector x{};
    double rating = 0.0;
};

double predict(const RewardModel& model, const FeatureVector& x);

/// L(w,b) = mean_i (w.x_i + b - r_i)^2
double mse_loss(const RewardModel& model, const std::vector<TrainSample>& samples);

/// dL/dw = (2/N) sum (w.x+b-r) x ; dL/db analogous.
void mse_gradients(const RewardModel& model, const std::vector<TrainSample>& samples,
                   std::array<double, kFeatureDim>& grad_w, double& grad_b);

struct TrainResult {
    RewardModel model;
    std::vector<double> loss_curve; // loss before each epoch's step, plus final
};

/// Full-batch gradient descent from zero weights. Errors: NoRecords,
/// DivergedLoss.
TrainResult train_reward_model(const std::vector<TrainSample>& samples, double lr, int epochs);

double score_features(const FeatureVector& x, const RewardModel& model);

/// w . features(ts, s) + b
double score_theme_set(const ThemeSet& ts, const ScoreVector& s, const RewardModel& model,
                       const EmbeddingProvider& provider);

struct Candidate {
    int id = 0; // tie-break: lower id wins
    ThemeSet theme_set;
    ScoreVector score;
};

/// Argmax of score_theme_set over candidates; ties broken by lower id.
/// Throws NoCandidates on an empty list.
const Candidate& best_of_n_select(const std::vector<Candidate>& candidates, const RewardModel& model,
                                  const EmbeddingProvider& provider);

} // namespace autota::reward
