#include "reval/dictionary.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <optional>
#include <vector>

#include "parallel.hpp"
#include "reval/errors.hpp"

namespace reval {
namespace {

EmbeddingVector direction_of(const Hashtag& tag, const EmbeddingVector& sum) {
    if (sum.is_zero()) throw DegenerateError("degenerate centroid for " + tag.str() + ": zero vector sum");
    return sum.normalized();
}

}  // namespace

HashtagDictionary::HashtagDictionary(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw DomainError("dictionary dimension must be positive");
}

void HashtagDictionary::update(const Hashtag& tag, const EmbeddingVector& tweet_vector, UpdateRule rule) {
    if (tweet_vector.dim() != dim_)
        throw DomainError("update for " + tag.str() + ": vector dimension " +
                          std::to_string(tweet_vector.dim()) + " != dictionary dimension " +
                          std::to_string(dim_));
    auto it = entries_.find(tag);
    if (it == entries_.end()) {
        EmbeddingVector direction = direction_of(tag, tweet_vector);
        entries_.emplace(tag, HashtagCentroid{tweet_vector, std::move(direction), 1});
        return;
    }
    HashtagCentroid& c = it->second;
    EmbeddingVector sum = c.running_sum;
    sum += tweet_vector;
    EmbeddingVector direction = EmbeddingVector::zeros(dim_);
    if (rule == UpdateRule::kExactSum) {
        direction = direction_of(tag, sum);
    } else {
        const double n = static_cast<double>(c.count);
        EmbeddingVector blend = c.direction.scaled(n / (n + 1.0));
        blend += tweet_vector.scaled(1.0 / (n + 1.0));
        direction = direction_of(tag, blend);
    }
    c.running_sum = std::move(sum);
    c.direction = std::move(direction);
    ++c.count;
}

void HashtagDictionary::insert(const Hashtag& tag, EmbeddingVector running_sum, std::uint64_t count) {
    if (running_sum.dim() != dim_) throw DomainError("insert for " + tag.str() + ": dimension mismatch");
    if (count == 0) throw DomainError("insert for " + tag.str() + ": count must be positive");
    EmbeddingVector direction = direction_of(tag, running_sum);
    entries_.insert_or_assign(tag, HashtagCentroid{std::move(running_sum), std::move(direction), count});
}

const HashtagCentroid* HashtagDictionary::find(const Hashtag& tag) const {
    auto it = entries_.find(tag);
    return it == entries_.end() ? nullptr : &it->second;
}

const HashtagCentroid& HashtagDictionary::at(const Hashtag& tag) const {
    if (const auto* c = find(tag)) return *c;
    throw IntegrityError("hashtag " + tag.str() + " not in dictionary");
}

std::string HashtagDictionary::digest() const {
    std::uint64_t h = 0xCBF29CE484222325ull;
    auto mix = [&h](const void* data, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 0x100000001B3ull;
        }
    };
    const std::uint64_t dim = dim_;
    mix(&dim, sizeof dim);
    for (const auto& [tag, c] : entries_) {
        mix(tag.str().data(), tag.str().size() + 1);
        mix(&c.count, sizeof c.count);
        for (double v : c.running_sum.values()) mix(&v, sizeof v);
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

HashtagDictionary build_dictionary(std::span<const CorpusRecord> records,
                                   const TweetEmbeddings& tweet_embeddings) {
    std::map<Hashtag, std::vector<std::size_t>> members;
    for (const auto& r : records) {
        if (!tweet_embeddings.vectors.contains(r.tweet_index))
            throw IntegrityError("no embedding for tweet_index " + std::to_string(r.tweet_index) +
                                 " (hashtag " + r.hashtag.str() + ")");
        members[r.hashtag].push_back(r.tweet_index);
    }

    HashtagDictionary dict(tweet_embeddings.dim);
    std::vector<std::pair<Hashtag, std::vector<std::size_t>>> groups(members.begin(), members.end());
    std::vector<std::optional<EmbeddingVector>> sums(groups.size());
    detail::parallel_for(groups.size(), [&](std::size_t g) {
        auto& indices = groups[g].second;
        std::sort(indices.begin(), indices.end());
        if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
            throw IntegrityError("duplicate record for hashtag " + groups[g].first.str());
        std::vector<const EmbeddingVector*> vectors;
        vectors.reserve(indices.size());
        for (auto i : indices) vectors.push_back(&tweet_embeddings.vectors.at(i));
        sums[g] = pairwise_sum(vectors);
    });
    for (std::size_t g = 0; g < groups.size(); ++g)
        dict.insert(groups[g].first, std::move(*sums[g]), groups[g].second.size());
    return dict;
}

}  // namespace reval
