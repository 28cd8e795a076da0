#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "reval/corpus.hpp"
#include "reval/embedding.hpp"
#include "reval/hashtag.hpp"

namespace reval {

/// A hashtag's embedding state. `running_sum` and `count` are the source of
/// truth; `direction` is running_sum / ||running_sum||, refreshed on every change.
struct HashtagCentroid {
    EmbeddingVector running_sum;
    EmbeddingVector direction;
    std::uint64_t count = 0;
};

enum class UpdateRule {
    /// Add to the running sum and renormalize. Matches a batch rebuild.
    kExactSum,
    /// Blend the stored unit direction with the new vector using weights
    /// n/(n+1) and 1/(n+1), then renormalize. Only equal to kExactSum when the
    /// running mean already has unit length; kept for comparison experiments.
    kLiteralBlend,
};

/// Hashtag -> centroid map. Iteration is in hashtag order.
class HashtagDictionary {
public:
    using Entries = std::map<Hashtag, HashtagCentroid>;

    explicit HashtagDictionary(std::size_t dim);

    /// Adds one tweet vector to `tag`, creating the entry if needed.
    /// Throws DomainError on a dimension mismatch and DegenerateError (leaving
    /// the entry untouched) if the resulting sum is zero.
    void update(const Hashtag& tag, const EmbeddingVector& tweet_vector,
                UpdateRule rule = UpdateRule::kExactSum);

    /// Inserts or replaces an entry from a stored sum and count (file loading).
    void insert(const Hashtag& tag, EmbeddingVector running_sum, std::uint64_t count);

    const HashtagCentroid* find(const Hashtag& tag) const;
    const HashtagCentroid& at(const Hashtag& tag) const;
    bool contains(const Hashtag& tag) const { return entries_.contains(tag); }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const Entries& entries() const noexcept { return entries_; }

    /// 16-hex-digit FNV-1a checksum over hashtags, counts and running sums.
    std::string digest() const;

private:
    std::size_t dim_;
    Entries entries_;
};

/// Builds every centroid from scratch. Each hashtag's vectors are summed
/// pairwise in tweet-index order, so the result does not depend on record
/// order. Throws IntegrityError naming a tweet_index with no embedding and
/// DegenerateError naming a hashtag whose vectors sum to zero.
HashtagDictionary build_dictionary(std::span<const CorpusRecord> records,
                                   const TweetEmbeddings& tweet_embeddings);

}  // namespace reval
