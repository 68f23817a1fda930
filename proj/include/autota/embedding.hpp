#pragma once

#include <memory>
#include <string>
#include <vector>

namespace autota {

/// Deterministic text-to-vector provider. Implementations must return
/// identical vectors for identical texts.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::vector<double> embed(const std::string& text) const = 0;
    virtual std::size_t dimension() const = 0;
    virtual std::string id() const = 0;
};

/// Default offline provider: tokens hashed into a 512-bucket term-count
/// vector, L2-normalized. Empty texts map to the zero vector (callers
/// reject it as ZeroVector).
class HashedBowProvider final : public EmbeddingProvider {
public:
    explicit HashedBowProvider(std::size_t dimension = 512) : dimension_(dimension) {}

    std::vector<double> embed(const std::string& text) const override;
    std::size_t dimension() const override { return dimension_; }
    std::string id() const override;

private:
    std::size_t dimension_;
};

/// Remote sentence-embedding service (POST <path> {"model", "input": [...]}
/// -> {"data": [{"embedding": [...]}]}). Credentials come from the named
/// environment variable.
class RemoteEmbeddingProvider final : public EmbeddingProvider {
public:
    RemoteEmbeddingProvider(std::string endpoint, std::string model,
                            std::size_t dimension,
                            std::string api_key_env = "AUTO_TA_API_KEY");

    std::vector<double> embed(const std::string& text) const override;
    std::size_t dimension() const override { return dimension_; }
    std::string id() const override;

private:
    std::string endpoint_;
    std::string model_;
    std::size_t dimension_;
    std::string api_key_env_;
};

double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v);

} // namespace autota
