#include "reval/recommender.hpp"

#include <algorithm>
#include <set>

#include "reval/errors.hpp"

namespace reval {

std::vector<std::string_view> content_tokens(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        const std::size_t start = i;
        while (i < text.size() && text[i] != ' ') ++i;
        if (i > start && text[start] != '#') tokens.push_back(text.substr(start, i - start));
    }
    return tokens;
}

std::optional<EmbeddingVector> mowe(std::string_view text, const WordVectors& words) {
    std::optional<EmbeddingVector> sum;
    std::size_t covered = 0;
    for (auto token : content_tokens(text)) {
        auto it = words.vectors.find(token);
        if (it == words.vectors.end()) continue;
        if (sum) *sum += it->second;
        else sum = it->second;
        ++covered;
    }
    if (!sum) return std::nullopt;
    return sum->scaled(1.0 / static_cast<double>(covered));
}

Recommender::Recommender(std::span<const CleanTweet> train, const WordVectors& words, RecommenderOptions options)
    : words_(words), options_(options) {
    if (!(options_.similarity_threshold >= 0.0 && options_.similarity_threshold <= 1.0))
        throw DomainError("similarity threshold must lie in [0,1]");
    for (const auto& tweet : train) {
        auto v = mowe(tweet.text, words_);
        if (!v || v->is_zero()) continue;
        std::vector<Hashtag> tags;
        for (const auto& h : tweet.hashtags)
            if (std::find(tags.begin(), tags.end(), h) == tags.end()) tags.push_back(h);
        for (const auto& h : tags) ++global_frequency_[h];
        norms_.push_back(v->norm());
        vectors_.push_back(std::move(*v));
        hashtags_.push_back(std::move(tags));
    }
}

std::map<Hashtag, std::size_t> Recommender::candidates(std::string_view test_text) const {
    std::map<Hashtag, std::size_t> counts;
    const auto query = mowe(test_text, words_);
    if (!query || query->is_zero()) return counts;
    const double qn = query->norm();
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        const double similarity = 1.0 - cosine_distance(*query, vectors_[i], qn, norms_[i]);
        if (similarity < options_.similarity_threshold) continue;
        for (const auto& h : hashtags_[i]) ++counts[h];
    }
    return counts;
}

std::vector<Hashtag> Recommender::recommend(std::string_view test_text, std::size_t r) const {
    if (r == 0) throw DomainError("top-r must be at least 1");
    const auto local = candidates(test_text);

    struct Ranked {
        std::size_t popularity;
        std::size_t global;
        const Hashtag* tag;
    };
    std::vector<Ranked> ranked;
    for (const auto& [tag, count] : local) {
        const std::size_t global = global_frequency_.at(tag);
        ranked.push_back({options_.popularity == PopularityScope::kSelectedSet ? count : global, global, &tag});
    }
    const std::size_t take = std::min(r, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end(),
                      [](const Ranked& a, const Ranked& b) {
                          if (a.popularity != b.popularity) return a.popularity > b.popularity;
                          if (a.global != b.global) return a.global > b.global;
                          return *a.tag < *b.tag;
                      });
    std::vector<Hashtag> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(*ranked[i].tag);
    return out;
}

WordVectors toy_word_vectors(std::span<const CleanTweet> corpus, std::size_t dim, std::uint64_t seed) {
    WordVectors words{dim, {}};
    for (const auto& tweet : corpus)
        for (auto token : content_tokens(tweet.text))
            if (!words.vectors.contains(token))
                words.vectors.emplace(std::string(token), toy_token_vector(token, dim, seed));
    return words;
}

}  // namespace reval
