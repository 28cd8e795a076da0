#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reval {

/// Fixed-dimension vector of finite doubles.
class EmbeddingVector {
public:
    EmbeddingVector() = default;
    /// Throws DomainError when `values` is empty or holds a non-finite entry.
    explicit EmbeddingVector(std::vector<double> values);
    /// Zero vector of the given dimension.
    static EmbeddingVector zeros(std::size_t dim);

    std::size_t dim() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    double norm() const;
    bool is_zero() const;

    EmbeddingVector& operator+=(const EmbeddingVector& other);
    /// Returns this / ||this||. Throws DegenerateError on a zero vector.
    EmbeddingVector normalized() const;
    EmbeddingVector scaled(double factor) const;

    friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

private:
    std::vector<double> values_;
};

/// Tweet vectors keyed by tweet index (position in the cleaned corpus).
struct TweetEmbeddings {
    std::size_t dim = 0;
    std::map<std::size_t, EmbeddingVector> vectors;
};

/// Token vectors for the MOWE recommender.
struct WordVectors {
    std::size_t dim = 0;
    std::map<std::string, EmbeddingVector, std::less<>> vectors;
};

double dot(const EmbeddingVector& a, const EmbeddingVector& b);

/// 1 - cos(angle), clamped to [0, 2]. Throws DomainError on a zero vector or
/// mismatched dimensions.
double cosine_distance(const EmbeddingVector& a, const EmbeddingVector& b);

/// cosine_distance() with both norms supplied. Bit-identical to
/// cosine_distance(a, b) when na == a.norm() and nb == b.norm().
double cosine_distance(const EmbeddingVector& a, const EmbeddingVector& b, double na, double nb);

inline double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    return 1.0 - cosine_distance(a, b);
}

/// Pairwise (tree) summation of equal-dimension vectors. Throws DomainError
/// on an empty list or mixed dimensions.
EmbeddingVector pairwise_sum(std::span<const EmbeddingVector* const> vectors);

/// Deterministic pseudo-random unit vector for one token.
EmbeddingVector toy_token_vector(std::string_view token, std::size_t dim, std::uint64_t seed);

/// Deterministic stand-in for a tweet encoder: the normalized mean of the
/// whitespace tokens' toy_token_vector()s. Throws DomainError if dim < 2 or
/// the text has no tokens.
EmbeddingVector toy_embed(std::string_view text, std::size_t dim, std::uint64_t seed);

}  // namespace reval
