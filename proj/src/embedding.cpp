#include "autota/embedding.hpp"

#include <cmath>
#include <cstdlib>

#include <json.hpp>

#include "autota/error.hpp"
#include "autota/text.hpp"

#ifndef AUTOTA_NO_REMOTE
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#endif

namespace autota {

std::vector<double> HashedBowProvider::embed(const std::string& text) const {
    std::vector<double> v(dimension_, 0.0);
    for (const std::string& token : text::tokenize(text)) {
        v[text::fnv1a64(token) % dimension_] += 1.0;
    }
    double norm_sq = 0.0;
    for (double x : v) norm_sq += x * x;
    if (norm_sq > 0.0) {
        double inv = 1.0 / std::sqrt(norm_sq);
        for (double& x : v) x *= inv;
    }
    return v;
}

std::string HashedBowProvider::id() const {
    return "hashed-bow-" + std::to_string(dimension_);
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(std::string endpoint, std::string model,
                                                 std::size_t dimension, std::string api_key_env)
    : endpoint_(std::move(endpoint)),
      model_(std::move(model)),
      dimension_(dimension),
      api_key_env_(std::move(api_key_env)) {}

std::string RemoteEmbeddingProvider::id() const { return "remote:" + model_; }

namespace {

// "scheme://host[:port]/path" -> {base, path}
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    std::size_t scheme = endpoint.find("://");
    if (scheme == std::string::npos) {
        throw Error(ErrorKind::ConfigError, "endpoint must include a scheme: " + endpoint);
    }
    std::size_t path = endpoint.find('/', scheme + 3);
    if (path == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path), endpoint.substr(path)};
}

} // namespace

std::vector<double> RemoteEmbeddingProvider::embed(const std::string& text) const {
#ifdef AUTOTA_NO_REMOTE
    (void)text;
    throw Error(ErrorKind::BackendUnavailable, "remote embedding support compiled out");
#else
    auto [base, path] = split_endpoint(endpoint_);
    httplib::Client client(base);
    client.set_read_timeout(30, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv(api_key_env_.c_str()); key != nullptr && *key != '\0') {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }
    nlohmann::json body = {{"model", model_}, {"input", nlohmann::json::array({text})}};
    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) {
        throw Error(ErrorKind::BackendUnavailable, "embedding endpoint unreachable: " + endpoint_);
    }
    if (res->status != 200) {
        throw Error(ErrorKind::BackendUnavailable,
                    "embedding endpoint returned status " + std::to_string(res->status));
    }
    try {
        auto parsed = nlohmann::json::parse(res->body);
        std::vector<double> v = parsed.at("data").at(0).at("embedding").get<std::vector<double>>();
        if (v.size() != dimension_) {
            throw Error(ErrorKind::BackendUnavailable,
                        "embedding dimension mismatch: got " + std::to_string(v.size()) +
                            ", expected " + std::to_string(dimension_));
        }
        return v;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::UnparseableResponse, std::string("bad embedding payload: ") + e.what());
    }
#endif
}

double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size()) {
        throw Error(ErrorKind::ConfigError, "cosine over mismatched dimensions");
    }
    double dot = 0.0;
    double nu = 0.0;
    double nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) {
        throw Error(ErrorKind::ZeroVector, "cosine of a zero vector");
    }
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

} // namespace autota
