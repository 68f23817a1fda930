#include "autota/reward.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "autota/error.hpp"
#include "autota/json_io.hpp"
#include "autota/metrics.hpp"

namespace autota::reward {

std::vector<RewardRecord> load_ratings_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open ratings file '" + path + "'");
    std::vector<RewardRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty()) continue;
        try {
            records.push_back(reward_record_from_json(Json::parse(trimmed)));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError,
                        path + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError,
                        path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

FeatureVector features(const ThemeSet& ts, const ScoreVector& s, const EmbeddingProvider& provider) {
    FeatureVector x{};
    x[0] = s.credibility / 100.0;
    x[1] = s.dependability;
    x[2] = s.transferability;

    // Mean pairwise inter-theme cosine distance; 0 for fewer than 2
    // embeddable themes. Zero-vector themes (no tokens at all) are left out
    // of the pairing so the feature stays finite.
    double distance_sum = 0.0;
    std::size_t pairs = 0;
    std::vector<std::vector<double>> vectors;
    for (const Theme& theme : ts.themes) {
        std::vector<double> v = provider.embed(theme_text(theme.title, theme.description));
        bool zero = std::all_of(v.begin(), v.end(), [](double a) { return a == 0.0; });
        if (!zero) vectors.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            distance_sum += 1.0 - cosine_similarity(vectors[i], vectors[j]);
            ++pairs;
        }
    }
    x[3] = pairs > 0 ? distance_sum / static_cast<double>(pairs) : 0.0;

    double word_sum = 0.0;
    for (const Theme& theme : ts.themes) word_sum += static_cast<double>(theme.word_count());
    x[4] = ts.themes.empty()
               ? 0.0
               : word_sum / static_cast<double>(ts.themes.size()) / static_cast<double>(kThemeWordLimit);
    x[5] = static_cast<double>(ts.themes.size()) / 20.0;
    return x;
}

double predict(const RewardModel& model, const FeatureVector& x) {
    double y = model.bias;
    for (std::size_t i = 0; i < kFeatureDim; ++i) y += model.weights[i] * x[i];
    return y;
}

double mse_loss(const RewardModel& model, const std::vector<TrainSample>& samples) {
    double sum = 0.0;
    for (const TrainSample& s : samples) {
        double err = predict(model, s.x) - s.rating;
        sum += err * err;
    }
    return sum / static_cast<double>(samples.size());
}

void mse_gradients(const RewardModel& model, const std::vector<TrainSample>& samples,
                   std::array<double, kFeatureDim>& grad_w, double& grad_b) {
    grad_w.fill(0.0);
    grad_b = 0.0;
    const double scale = 2.0 / static_cast<double>(samples.size());
    for (const TrainSample& s : samples) {
        double err = predict(model, s.x) - s.rating;
        for (std::size_t i = 0; i < kFeatureDim; ++i) grad_w[i] += scale * err * s.x[i];
        grad_b += scale * err;
    }
}

TrainResult train_reward_model(const std::vector<TrainSample>& samples, double lr, int epochs) {
    if (samples.empty()) throw Error(ErrorKind::NoRecords, "no rated samples to train on");
    if (lr <= 0.0) throw Error(ErrorKind::ConfigError, "learning rate must be positive");
    if (epochs < 0) throw Error(ErrorKind::ConfigError, "epochs must be >= 0");

    TrainResult result;
    result.model.metadata.epochs = epochs;
    result.model.metadata.learning_rate = lr;
    result.loss_curve.reserve(static_cast<std::size_t>(epochs) + 1);

    std::array<double, kFeatureDim> grad_w{};
    double grad_b = 0.0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        double loss = mse_loss(result.model, samples);
        if (!std::isfinite(loss)) {
            throw Error(ErrorKind::DivergedLoss,
                        "loss became non-finite at epoch " + std::to_string(epoch));
        }
        result.loss_curve.push_back(loss);
        mse_gradients(result.model, samples, grad_w, grad_b);
        for (std::size_t i = 0; i < kFeatureDim; ++i) result.model.weights[i] -= lr * grad_w[i];
        result.model.bias -= lr * grad_b;
    }
    double final_loss = mse_loss(result.model, samples);
    if (!std::isfinite(final_loss)) {
        throw Error(ErrorKind::DivergedLoss, "final loss is non-finite");
    }
    result.loss_curve.push_back(final_loss);
    result.model.metadata.final_loss = final_loss;
    return result;
}

double score_features(const FeatureVector& x, const RewardModel& model) { return predict(model, x); }

double score_theme_set(const ThemeSet& ts, const ScoreVector& s, const RewardModel& model,
                       const EmbeddingProvider& provider) {
    return predict(model, features(ts, s, provider));
}

const Candidate& best_of_n_select(const std::vector<Candidate>& candidates, const RewardModel& model,
                                  const EmbeddingProvider& provider) {
    if (candidates.empty()) throw Error(ErrorKind::NoCandidates, "no candidate theme sets");
    const Candidate* best = nullptr;
    double best_score = 0.0;
    for (const Candidate& c : candidates) {
        double score = score_theme_set(c.theme_set, c.score, model, provider);
        if (best == nullptr || score > best_score || (score == best_score && c.id < best->id)) {
            best = &c;
            best_score = score;
        }
    }
    return *best;
}

} // namespace autota::reward
