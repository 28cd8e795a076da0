#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "reval/errors.hpp"
#include "reval/recommender.hpp"
#include "support/fixtures.hpp"

using namespace reval;
using reval::fixtures::H;
using reval::fixtures::tags;

namespace {

EmbeddingVector V(std::initializer_list<double> xs) { return EmbeddingVector(std::vector<double>(xs)); }

WordVectors basis() {
    WordVectors w{3, {}};
    w.vectors.emplace("a", V({1, 0, 0}));
    w.vectors.emplace("b", V({0, 1, 0}));
    w.vectors.emplace("c", V({0, 0, 1}));
    return w;
}

CleanTweet T(const char* id, const char* text, std::initializer_list<const char*> hs) {
    return {id, text, tags(hs)};
}

// Brute force over plain strings: mean vectors, explicit cosine, stable sort.
std::vector<std::string> naive_recommend(const std::vector<CleanTweet>& train, const WordVectors& words,
                                         const std::string& query, std::size_t r, double threshold) {
    auto mean = [&](const std::string& text) {
        std::vector<double> sum(words.dim, 0.0);
        int n = 0;
        std::size_t i = 0;
        while (i < text.size()) {
            std::size_t j = text.find(' ', i);
            if (j == std::string::npos) j = text.size();
            const std::string tok = text.substr(i, j - i);
            i = j + 1;
            if (tok.empty() || tok[0] == '#') continue;
            auto it = words.vectors.find(tok);
            if (it == words.vectors.end()) continue;
            for (std::size_t d = 0; d < words.dim; ++d) sum[d] += it->second[d];
            ++n;
        }
        for (double& x : sum) x /= std::max(n, 1);
        return sum;
    };
    auto cosine = [](const std::vector<double>& x, const std::vector<double>& y) {
        double xy = 0, xx = 0, yy = 0;
        for (std::size_t d = 0; d < x.size(); ++d) {
            xy += x[d] * y[d];
            xx += x[d] * x[d];
            yy += y[d] * y[d];
        }
        if (xx == 0 || yy == 0) return -2.0;
        return xy / std::sqrt(xx * yy);
    };
    const auto q = mean(query);
    std::map<std::string, int> local, global;
    for (const auto& t : train) {
        std::set<std::string> hs;
        for (const auto& h : t.hashtags) hs.insert(h.str());
        const auto v = mean(t.text);
        if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0; })) continue;
        for (const auto& h : hs) ++global[h];
        if (cosine(q, v) >= threshold)
            for (const auto& h : hs) ++local[h];
    }
    std::vector<std::string> out;
    for (const auto& [h, n] : local) out.push_back(h);
    std::stable_sort(out.begin(), out.end(), [&](const std::string& x, const std::string& y) {
        if (local[x] != local[y]) return local[x] > local[y];
        return global[x] > global[y];
    });
    if (out.size() > r) out.resize(r);
    return out;
}

std::vector<std::string> strs(const std::vector<Hashtag>& v) {
    std::vector<std::string> out;
    for (const auto& h : v) out.push_back(h.str());
    return out;
}

}  // namespace

TEST_CASE("content_tokens skips hashtags") {
    const auto toks = content_tokens("great  game #nba tonight #win");
    CHECK(toks == std::vector<std::string_view>{"great", "game", "tonight"});
    CHECK(content_tokens("").empty());
    CHECK(content_tokens("#only #tags").empty());
}

TEST_CASE("mowe: mean of covered word vectors") {
    WordVectors w{2, {}};
    w.vectors.emplace("x", V({1, 0}));
    w.vectors.emplace("y", V({0, 1}));
    const auto m = mowe("x y", w);
    REQUIRE(m);
    CHECK((*m)[0] == 0.5);
    CHECK((*m)[1] == 0.5);
    // Hashtags and unknown words are ignored.
    CHECK(*mowe("x #y unknown y", w) == *m);
    CHECK(*mowe("x x y y", w) == *m);
    CHECK_FALSE(mowe("unknown #x", w));
}

TEST_CASE("mowe: ten tokens against a random vocabulary equal a naive sum") {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> g;
    WordVectors w{32, {}};
    for (int i = 0; i < 50; ++i) {
        std::vector<double> v(32);
        for (auto& x : v) x = g(rng);
        w.vectors.emplace("t" + std::to_string(i), EmbeddingVector(std::move(v)));
    }
    for (int trial = 0; trial < 20; ++trial) {
        std::string text;
        std::vector<double> sum(32, 0.0);
        for (int i = 0; i < 10; ++i) {
            const std::string tok = "t" + std::to_string(rng() % 50);
            text += (i ? " " : "") + tok;
            for (std::size_t d = 0; d < 32; ++d) sum[d] += w.vectors.at(tok)[d];
        }
        const auto m = mowe(text, w);
        REQUIRE(m);
        for (std::size_t d = 0; d < 32; ++d) CHECK((*m)[d] == doctest::Approx(sum[d] / 10).epsilon(1e-12));
    }
}

TEST_CASE("recommend: identical tweet, no match, argument checks") {
    const std::vector<CleanTweet> train{T("1", "a b #x", {"#x"})};
    const Recommender model(train, basis());
    CHECK(model.model_size() == 1);
    CHECK(model.recommend("a b", 5) == tags({"#x"}));
    CHECK(model.recommend("c", 5).empty());
    CHECK(model.recommend("zzz", 5).empty());
    CHECK_THROWS_AS(model.recommend("a", 0), DomainError);
    CHECK_THROWS_AS(Recommender(train, basis(), {1.5}), DomainError);
    CHECK_THROWS_AS(Recommender(train, basis(), {-0.1}), DomainError);
}

TEST_CASE("recommend: hand-traced six-tweet corpus") {
    const std::vector<CleanTweet> train{
        T("1", "a #x #y", {"#x", "#y"}),   // sim to "a": 1
        T("2", "a b #x", {"#x"}),          // 0.707
        T("3", "b #z", {"#z"}),            // 0
        T("4", "a c #y #w", {"#y", "#w"}), // 0.707
        T("5", "c #x #z", {"#x", "#z"}),   // 0
        T("6", "a #w", {"#w"}),            // 1
    };
    const Recommender model(train, basis());
    // Selected: tweets 1, 2, 4, 6. Local counts x=2 y=2 w=2; global x=3 y=2 w=2.
    const auto cand = model.candidates("a");
    CHECK(cand == std::map<Hashtag, std::size_t>{{H("#w"), 2}, {H("#x"), 2}, {H("#y"), 2}});
    CHECK(model.recommend("a", 3) == tags({"#x", "#w", "#y"}));
    CHECK(model.recommend("a", 2) == tags({"#x", "#w"}));
    CHECK(model.recommend("a", 10).size() == 3);

    // A stricter threshold keeps only tweets 1 and 6.
    const Recommender strict(train, basis(), {0.8});
    CHECK(strict.candidates("a") == std::map<Hashtag, std::size_t>{{H("#w"), 1}, {H("#x"), 1}, {H("#y"), 1}});
    CHECK(strict.recommend("a", 3) == tags({"#x", "#w", "#y"}));

    // Query "b": tweets 2 and 3.
    CHECK(model.recommend("b", 5) == tags({"#x", "#z"}));
    // "a b" and "b c" sit exactly on the 0.5 boundary for some tweets, so they are left out here.
    for (const char* q : {"a", "b", "c", "a b c", "c c a"})
        for (std::size_t r : {1u, 2u, 5u}) CHECK(strs(model.recommend(q, r)) == naive_recommend(train, basis(), q, r, 0.5));
}

TEST_CASE("recommend: popularity scope changes the ranking") {
    const std::vector<CleanTweet> train{
        T("1", "a #rare", {"#rare"}), T("2", "a #rare", {"#rare"}), T("3", "b #common", {"#common"}),
        T("4", "b #common", {"#common"}), T("5", "b #common", {"#common"}), T("6", "a #common", {"#common"}),
    };
    CHECK(Recommender(train, basis()).recommend("a", 2) == tags({"#rare", "#common"}));
    CHECK(Recommender(train, basis(), {0.5, PopularityScope::kGlobal}).recommend("a", 2) ==
          tags({"#common", "#rare"}));
}

TEST_CASE("recommend: repeated hashtags in a tweet vote once; uncovered tweets are left out") {
    const std::vector<CleanTweet> train{T("1", "a #x #x #x", {"#x", "#x", "#x"}), T("2", "a #y", {"#y"}),
                                        T("3", "a #y", {"#y"}), T("4", "nothing known #q", {"#q"})};
    const Recommender model(train, basis());
    CHECK(model.model_size() == 3);
    CHECK(model.recommend("a", 2) == tags({"#y", "#x"}));
}

TEST_CASE("recommend: randomized agreement with brute force and invariants") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    WordVectors words{4, {}};
    for (int i = 0; i < 12; ++i) {
        std::vector<double> v(4);
        for (auto& x : v) x = g(rng);
        words.vectors.emplace("w" + std::to_string(i), EmbeddingVector(std::move(v)));
    }
    WordVectors scaled_words = words;
    for (auto& [_, v] : scaled_words.vectors) v = v.scaled(3.5);

    auto random_text = [&](std::size_t n) {
        std::string s;
        for (std::size_t i = 0; i < n; ++i) s += (i ? " w" : "w") + std::to_string(rng() % 12);
        return s;
    };
    std::vector<CleanTweet> train;
    for (int i = 0; i < 60; ++i) {
        std::vector<Hashtag> hs;
        for (std::size_t j = 0, n = 1 + rng() % 3; j < n; ++j) hs.push_back(H(("#h" + std::to_string(rng() % 8)).c_str()));
        std::string text = random_text(1 + rng() % 4);
        for (const auto& h : hs) text += " " + h.str();
        train.push_back({std::to_string(i), text, hs});
    }
    const Recommender low(train, words, {0.2});
    const Recommender mid(train, words, {0.5});
    const Recommender high(train, words, {0.8});
    const Recommender scaled(train, scaled_words, {0.5});
    for (int i = 0; i < 200; ++i) {
        const auto q = random_text(1 + rng() % 4);
        const std::size_t r = 1 + rng() % 6;
        const auto rec = mid.recommend(q, r);
        CHECK(rec.size() <= r);
        CHECK(strs(rec) == naive_recommend(train, words, q, r, 0.5));
        CHECK(scaled.recommend(q, r) == rec);
        // Raising the threshold can only shrink the candidate set.
        for (const auto& [h, n] : high.candidates(q)) CHECK(mid.candidates(q).at(h) >= n);
        for (const auto& [h, n] : mid.candidates(q)) CHECK(low.candidates(q).at(h) >= n);
    }
}

TEST_CASE("toy_word_vectors covers every content token") {
    const std::vector<CleanTweet> corpus{T("1", "alpha beta #x", {"#x"}), T("2", "beta gamma #y", {"#y"})};
    const auto w = toy_word_vectors(corpus, 16, 5);
    CHECK(w.dim == 16);
    CHECK(w.vectors.size() == 3);
    CHECK(w.vectors.contains("gamma"));
    CHECK_FALSE(w.vectors.contains("#x"));
    CHECK(w.vectors.at("beta") == toy_token_vector("beta", 16, 5));
}
