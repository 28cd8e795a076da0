#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reval/corpus.hpp"
#include "reval/embedding.hpp"
#include "reval/hashtag.hpp"

namespace reval {

/// Whitespace tokens of a cleaned text that are not hashtags. Hashtags are
/// the prediction target, so they never feed the tweet vector.
std::vector<std::string_view> content_tokens(std::string_view text);

/// Mean of the word vectors of the covered content tokens (unnormalized).
/// nullopt when no token has a vector.
std::optional<EmbeddingVector> mowe(std::string_view text, const WordVectors& words);

enum class PopularityScope {
    /// Frequency among the training tweets that passed the similarity threshold.
    kSelectedSet,
    /// Frequency over the whole training set.
    kGlobal,
};

struct RecommenderOptions {
    double similarity_threshold = 0.5;
    PopularityScope popularity = PopularityScope::kSelectedSet;
};

/// Tweet-similarity baseline: training tweets whose MOWE cosine similarity to
/// the test tweet reaches the threshold vote for their hashtags; the most
/// popular r hashtags are recommended. Ties fall back to global frequency,
/// then hashtag order.
class Recommender {
public:
    /// Training tweets with no covered token are left out of the model.
    Recommender(std::span<const CleanTweet> train, const WordVectors& words, RecommenderOptions options = {});

    /// Up to r hashtags, possibly none. Throws DomainError if r == 0.
    std::vector<Hashtag> recommend(std::string_view test_text, std::size_t r) const;

    /// Hashtags of training tweets passing the threshold, with their local counts.
    std::map<Hashtag, std::size_t> candidates(std::string_view test_text) const;

    std::size_t model_size() const noexcept { return vectors_.size(); }
    const RecommenderOptions& options() const noexcept { return options_; }

private:
    WordVectors words_;
    RecommenderOptions options_;
    std::vector<EmbeddingVector> vectors_;
    std::vector<double> norms_;
    std::vector<std::vector<Hashtag>> hashtags_;
    std::map<Hashtag, std::size_t> global_frequency_;
};

/// Toy word vectors (toy_token_vector) for every content token in `corpus`.
WordVectors toy_word_vectors(std::span<const CleanTweet> corpus, std::size_t dim, std::uint64_t seed);

}  // namespace reval
