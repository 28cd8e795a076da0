#include "reval/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "reval/errors.hpp"

namespace reval {
namespace {

void check_same_dim(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim())
        throw DomainError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

// Uniform in (0, 1), never exactly zero.
double open_unit(std::uint64_t& state) {
    return (static_cast<double>(splitmix64(state) >> 11) + 0.5) * 0x1.0p-53;
}

EmbeddingVector sum_range(std::span<const EmbeddingVector* const> vectors) {
    if (vectors.size() == 1) return *vectors.front();
    const std::size_t half = vectors.size() / 2;
    EmbeddingVector left = sum_range(vectors.first(half));
    left += sum_range(vectors.subspan(half));
    return left;
}

}  // namespace

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw DomainError("embedding dimension must be positive");
    if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); }))
        throw DomainError("embedding contains a non-finite value");
}

EmbeddingVector EmbeddingVector::zeros(std::size_t dim) {
    return EmbeddingVector(std::vector<double>(dim, 0.0));
}

double EmbeddingVector::norm() const { return std::sqrt(dot(*this, *this)); }

bool EmbeddingVector::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

EmbeddingVector& EmbeddingVector::operator+=(const EmbeddingVector& other) {
    check_same_dim(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

EmbeddingVector EmbeddingVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw DegenerateError("cannot normalize a zero vector");
    return scaled(1.0 / n);
}

EmbeddingVector EmbeddingVector::scaled(double factor) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= factor;
    return EmbeddingVector(std::move(out));
}

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
    check_same_dim(a, b);
    // Four fixed lanes: deterministic order, but lets the loop pipeline.
    const auto x = a.values();
    const auto y = b.values();
    const std::size_t n = x.size();
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += x[i] * y[i];
        acc[1] += x[i + 1] * y[i + 1];
        acc[2] += x[i + 2] * y[i + 2];
        acc[3] += x[i + 3] * y[i + 3];
    }
    for (; i < n; ++i) acc[i % 4] += x[i] * y[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double cosine_distance(const EmbeddingVector& a, const EmbeddingVector& b) {
    check_same_dim(a, b);
    return cosine_distance(a, b, a.norm(), b.norm());
}

double cosine_distance(const EmbeddingVector& a, const EmbeddingVector& b, double na, double nb) {
    if (na == 0.0 || nb == 0.0) throw DomainError("cosine distance of a zero vector");
    const double d = 1.0 - dot(a, b) / (na * nb);
    return std::clamp(d, 0.0, 2.0);
}

EmbeddingVector pairwise_sum(std::span<const EmbeddingVector* const> vectors) {
    if (vectors.empty()) throw DomainError("pairwise_sum of no vectors");
    return sum_range(vectors);
}

EmbeddingVector toy_token_vector(std::string_view token, std::size_t dim, std::uint64_t seed) {
    if (dim < 2) throw DomainError("toy embedding dimension must be >= 2");
    std::uint64_t state = fnv1a(token) ^ (seed * 0xD6E8FEB86659FD93ull);
    std::vector<double> values(dim);
    // Box-Muller gives isotropic directions once normalized.
    for (std::size_t i = 0; i < dim; i += 2) {
        const double radius = std::sqrt(-2.0 * std::log(open_unit(state)));
        const double angle = 2.0 * std::numbers::pi * open_unit(state);
        values[i] = radius * std::cos(angle);
        if (i + 1 < dim) values[i + 1] = radius * std::sin(angle);
    }
    return EmbeddingVector(std::move(values)).normalized();
}

EmbeddingVector toy_embed(std::string_view text, std::size_t dim, std::uint64_t seed) {
    if (dim < 2) throw DomainError("toy embedding dimension must be >= 2");
    EmbeddingVector sum = EmbeddingVector::zeros(dim);
    std::size_t tokens = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) {
            sum += toy_token_vector(text.substr(start, i - start), dim, seed);
            ++tokens;
        }
    }
    if (tokens == 0) throw DomainError("toy_embed: text has no tokens");
    return sum.scaled(1.0 / static_cast<double>(tokens)).normalized();
}

}  // namespace reval
