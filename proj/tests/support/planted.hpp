#pragma once

// Synthetic corpus with planted topic clusters. Each topic owns a small word
// vocabulary and a set of hashtags; a tweet draws its words and one or two
// hashtags from a single topic (with a little cross-topic hashtag noise), so
// the "true" synonyms of a hashtag are the other hashtags of its topic.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "reval/corpus.hpp"

namespace reval::planted {

struct Options {
    std::size_t topics = 10;
    std::size_t hashtags_per_topic = 10;
    std::size_t words_per_topic = 8;
    std::size_t words_per_tweet = 6;
    std::size_t tweets_per_topic = 60;
    double noise = 0.05;
    std::uint64_t seed = 7;
};

inline std::string word(std::size_t topic, std::size_t j) {
    return "w" + std::to_string(topic) + "x" + std::to_string(j);
}

inline std::string hashtag(std::size_t topic, std::size_t j) {
    return "#t" + std::to_string(topic) + "h" + std::to_string(j);
}

inline std::vector<RawTweet> corpus(const Options& o = {}) {
    std::mt19937_64 rng(o.seed);
    auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    // Zipf-like hashtag popularity inside each topic.
    std::vector<double> weights(o.hashtags_per_topic);
    double total = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) total += weights[j] = 1.0 / static_cast<double>(j + 1);
    auto pick_tag = [&] {
        double u = unit() * total;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            if (u < weights[j]) return j;
            u -= weights[j];
        }
        return weights.size() - 1;
    };

    std::vector<RawTweet> out;
    for (std::size_t n = 0; n < o.tweets_per_topic; ++n) {
        for (std::size_t t = 0; t < o.topics; ++t) {
            std::string text;
            for (std::size_t w = 0; w < o.words_per_tweet; ++w) text += word(t, below(o.words_per_topic)) + " ";
            const std::size_t n_tags = 1 + below(2);
            for (std::size_t h = 0; h < n_tags; ++h) {
                const std::size_t topic = unit() < o.noise ? below(o.topics) : t;
                text += hashtag(topic, pick_tag()) + " ";
            }
            text.pop_back();
            out.push_back({"p" + std::to_string(out.size()), text, false});
        }
    }
    return out;
}

}  // namespace reval::planted
