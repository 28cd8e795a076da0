#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "reval/errors.hpp"
#include "reval/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace reval;
using reval::fixtures::H;
using reval::fixtures::tags;

namespace {

std::set<Hashtag> S(std::initializer_list<const char*> items) {
    const auto v = tags(items);
    return {v.begin(), v.end()};
}

std::vector<std::string> strs(std::span<const Hashtag> v) {
    std::vector<std::string> out;
    for (const auto& h : v) out.push_back(h.str());
    return out;
}

// Random thesaurus over a small vocabulary so synonym hits are frequent.
struct Fuzz {
    std::mt19937_64 rng;
    std::vector<Hashtag> vocab;
    Thesaurus thesaurus;

    Fuzz(std::uint64_t seed, std::size_t vocab_size, std::size_t k) : rng(seed) {
        for (std::size_t i = 0; i < vocab_size; ++i) vocab.push_back(H(("#v" + std::to_string(i)).c_str()));
        std::map<Hashtag, std::vector<Hashtag>> lists;
        for (const auto& head : vocab) {
            if (rng() % 10 == 0) continue;  // some hashtags have no entry
            auto others = vocab;
            std::erase(others, head);
            std::shuffle(others.begin(), others.end(), rng);
            others.erase(others.begin() + static_cast<std::ptrdiff_t>(std::min(k, others.size())), others.end());
            lists.emplace(head, others);
        }
        thesaurus = Thesaurus::from_lists(k, lists);
    }

    std::vector<Hashtag> draw(std::size_t max_size, bool allow_empty = false) {
        const std::size_t lo = allow_empty ? 0 : 1;
        const std::size_t n = lo + rng() % (max_size + 1 - lo);
        std::vector<Hashtag> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(vocab[rng() % vocab.size()]);
        return out;
    }
};

std::vector<Hashtag> unique_in_order(const std::vector<Hashtag>& v) {
    std::vector<Hashtag> out;
    for (const auto& h : v)
        if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
    return out;
}

}  // namespace

TEST_CASE("worked examples: exact rho and ratio") {
    const auto t = fixtures::worked_example_thesaurus();
    for (const auto& ex : fixtures::worked_examples()) {
        const std::set<Hashtag> g(ex.ground_truth.begin(), ex.ground_truth.end());
        const auto m = match_synonyms(ex.recommended, g, t, 3);
        REQUIRE(m);
        CHECK(m->rho == ex.rho);
        CHECK(m->denominator == ex.denominator);
        CHECK(m->ratio() == static_cast<double>(ex.rho) / static_cast<double>(ex.denominator));
    }
}

TEST_CASE("worked examples: the plain hit-ratio misses what synonyms catch") {
    CHECK(hit_ratio(S({"#hockey", "#championship"}), S({"#football", "#sport"}))->rho == 0);
    CHECK(hit_ratio(S({"#football", "#sport"}), S({"#hockey", "#sports"}))->rho == 0);
    CHECK(hit_ratio(S({"#swim", "#exercise"}), S({"#sport"}))->rho == 0);
}

TEST_CASE("hit_ratio: analytic cases and skips") {
    const auto full = hit_ratio(S({"#a", "#b"}), S({"#a", "#b", "#c"}));
    CHECK(full->rho == 2);
    CHECK(full->denominator == 2);
    CHECK(full->ratio() == 1.0);
    CHECK(hit_ratio(S({"#a", "#b", "#c", "#d"}), S({"#d"}))->ratio() == 1.0);
    CHECK(hit_ratio(S({"#a", "#b", "#c"}), S({"#a", "#x", "#y", "#z"}))->ratio() == doctest::Approx(1.0 / 3));
    CHECK_FALSE(hit_ratio({}, S({"#a"})));
    CHECK_FALSE(hit_ratio(S({"#a"}), {}));
}

TEST_CASE("match_synonyms: branch selection, misses and k limits") {
    const auto t = fixtures::worked_example_thesaurus();
    // |R| > |G|: the ground-truth hashtag is counted once however many R members reach it.
    const auto m = match_synonyms(tags({"#hockey", "#swim", "#sport"}), S({"#sport"}), t, 3);
    CHECK(m->rho == 1);
    CHECK(m->denominator == 1);

    // Missing recommended hashtags match exactly and are counted.
    const auto miss = match_synonyms(tags({"#nowhere", "#other"}), S({"#nowhere", "#x"}), t, 3);
    CHECK(miss->rho == 1);
    CHECK(miss->thesaurus_misses == 2);

    // Ground truth is never expanded: #sport lists #exercise, but R only has #exercise.
    CHECK(match_synonyms(tags({"#sport"}), S({"#exercise"}), t, 1)->rho == 0);
    CHECK(match_synonyms(tags({"#sport"}), S({"#exercise"}), t, 2)->rho == 1);
    CHECK(match_synonyms(tags({"#exercise"}), S({"#sport"}), t, 3)->rho == 0);

    CHECK_THROWS_AS(match_synonyms(tags({"#sport"}), S({"#sport"}), t, 4), DomainError);
    CHECK_FALSE(match_synonyms({}, S({"#sport"}), t, 1));
    CHECK_FALSE(match_synonyms(tags({"#sport"}), {}, t, 1));
}

TEST_CASE("EvalPair::make drops repeated recommendations") {
    const auto r = tags({"#b", "#a", "#b", "#c", "#a"});
    const auto g = tags({"#x", "#x"});
    const auto p = EvalPair::make("t", r, g);
    CHECK(p.recommended == tags({"#b", "#a", "#c"}));
    CHECK(p.ground_truth == S({"#x"}));
}

TEST_CASE("fuzz: k = 0 equals the plain hit-ratio") {
    Fuzz f(1, 30, 5);
    for (int i = 0; i < 2000; ++i) {
        const auto r = unique_in_order(f.draw(6));
        const auto g = f.draw(6);
        const std::set<Hashtag> gs(g.begin(), g.end()), rs(r.begin(), r.end());
        const auto a = match_synonyms(r, gs, f.thesaurus, 0);
        const auto b = hit_ratio(rs, gs);
        REQUIRE(a);
        CHECK(a->rho == b->rho);
        CHECK(a->denominator == b->denominator);
    }
}

TEST_CASE("fuzz: agrees with the straight-line oracle for every k") {
    Fuzz f(2, 25, 8);
    const auto table = oracle::to_table(f.thesaurus);
    for (int i = 0; i < 3000; ++i) {
        const auto r = unique_in_order(f.draw(7));
        const auto g = f.draw(7);
        const std::set<Hashtag> gs(g.begin(), g.end());
        const std::vector<Hashtag> g_unique(gs.begin(), gs.end());
        for (std::size_t k = 0; k <= 8; ++k) {
            const auto m = match_synonyms(r, gs, f.thesaurus, k);
            const auto [rho, denom] = oracle::reval_rho(strs(r), strs(g_unique), table, k);
            REQUIRE(m);
            CHECK(static_cast<int>(m->rho) == rho);
            CHECK(static_cast<int>(m->denominator) == denom);
        }
    }
}

TEST_CASE("fuzz: bounds, monotonicity in k and order invariance") {
    Fuzz f(3, 40, 10);
    for (int i = 0; i < 3000; ++i) {
        const auto r = unique_in_order(f.draw(8));
        const auto g = f.draw(8);
        const std::set<Hashtag> gs(g.begin(), g.end());
        auto shuffled = r;
        std::shuffle(shuffled.begin(), shuffled.end(), f.rng);
        std::size_t previous = 0;
        for (std::size_t k = 0; k <= 10; ++k) {
            const auto m = match_synonyms(r, gs, f.thesaurus, k);
            CHECK(m->rho <= std::min(r.size(), gs.size()));
            CHECK(m->ratio() >= 0.0);
            CHECK(m->ratio() <= 1.0);
            CHECK(m->rho >= previous);
            previous = m->rho;
            CHECK(*match_synonyms(shuffled, gs, f.thesaurus, k) == *m);
        }
    }
}

TEST_CASE("both_branches: the equal-size boundary can diverge") {
    // R = {#a, #b}, G = {#x, #y}; both #a and #b reach #x only.
    const auto t = Thesaurus::from_lists(1, {{H("#a"), tags({"#x"})}, {H("#b"), tags({"#x"})}});
    const auto b = both_branches(tags({"#a", "#b"}), S({"#x", "#y"}), t, 1);
    CHECK(b.per_recommendation == 2);
    CHECK(b.per_ground_truth == 1);
    CHECK(match_synonyms(tags({"#a", "#b"}), S({"#x", "#y"}), t, 1)->rho == 2);

    const std::vector<EvalPair> pairs{EvalPair::make("1", tags({"#a", "#b"}), tags({"#x", "#y"}))};
    CHECK(evaluate(pairs, t, 1, 2).branch_divergences == 1);
}

TEST_CASE("evaluate: macro average, skips and misses") {
    const auto t = fixtures::worked_example_thesaurus();
    std::vector<EvalPair> pairs;
    for (const auto& ex : fixtures::worked_examples())
        pairs.push_back(EvalPair::make("w" + std::to_string(pairs.size()), ex.recommended, ex.ground_truth));
    pairs.push_back(EvalPair::make("empty", {}, tags({"#sport"})));

    const auto report = evaluate(pairs, t, 3, 2, EvaluateOptions{true});
    CHECK(report.pair_count == 5);
    CHECK(report.skipped_count == 1);
    CHECK(report.average_ratio == doctest::Approx((0.5 + 0.5 + 0.0 + 1.0) / 4));
    CHECK_FALSE(report.all_skipped);
    REQUIRE(report.per_pair);
    CHECK(report.per_pair->size() == 4);
    CHECK(report.per_pair->front().tweet_id == "w0");

    const std::vector<EvalPair> three{EvalPair::make("a", tags({"#p", "#q"}), tags({"#p", "#z"})),
                                      EvalPair::make("b", tags({"#q"}), tags({"#z"})),
                                      EvalPair::make("c", tags({"#z"}), tags({"#z"}))};
    const auto r3 = evaluate(three, t, 0, 2);
    CHECK(r3.average_ratio == doctest::Approx(0.5));
    CHECK(r3.thesaurus_misses == 4);

    const std::vector<EvalPair> none{EvalPair::make("x", {}, tags({"#a"}))};
    const auto skipped = evaluate(none, t, 1, 1);
    CHECK(skipped.all_skipped);
    CHECK(skipped.average_ratio == 0.0);
    CHECK(evaluate({}, t, 1, 1).all_skipped);
}

TEST_CASE("report formatting: JSON keys, four decimals, CSV row") {
    CHECK(format_ratio(1.0 / 3) == "0.3333");
    CHECK(format_ratio(0.0) == "0.0000");
    CHECK(format_ratio(1.0) == "1.0000");

    const auto t = fixtures::worked_example_thesaurus();
    std::vector<EvalPair> pairs;
    for (const auto& ex : fixtures::worked_examples())
        pairs.push_back(EvalPair::make("w" + std::to_string(pairs.size()), ex.recommended, ex.ground_truth));
    const auto report = evaluate(pairs, t, 3, 2);
    const auto doc = nlohmann::json::parse(report_to_json(report));
    CHECK(doc.at("k") == 3);
    CHECK(doc.at("r") == 2);
    CHECK(doc.at("pairs") == 4);
    CHECK(doc.at("skipped") == 0);
    CHECK(doc.at("average_reval_hit_ratio").get<double>() == 0.5);
    CHECK_FALSE(doc.contains("per_pair"));
    CHECK(report_csv_row(report) == "3,2,0.5000");

    const auto with = nlohmann::json::parse(report_to_json(evaluate(pairs, t, 3, 2, {true})));
    CHECK(with.at("per_pair").size() == 4);
}

TEST_CASE("eval pairs JSON-lines round trip and errors") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "reval_metrics_test";
    fs::create_directories(dir);
    const std::vector<EvalPair> pairs{EvalPair::make("1", tags({"#a", "#b"}), tags({"#c"})),
                                      EvalPair::make("2", {}, tags({"#d", "#e"}))};
    write_eval_pairs(dir / "pairs.jsonl", pairs);
    const auto back = read_eval_pairs(dir / "pairs.jsonl");
    REQUIRE(back.size() == 2);
    CHECK(back[0].tweet_id == "1");
    CHECK(back[0].recommended == pairs[0].recommended);
    CHECK(back[1].ground_truth == pairs[1].ground_truth);

    {
        std::ofstream bad(dir / "bad.jsonl");
        bad << "{\"tweet_id\":\"1\",\"recommended\":[\"nohash\"],\"ground_truth\":[]}\n";
    }
    CHECK_THROWS_AS(read_eval_pairs(dir / "bad.jsonl"), InputError);
    CHECK_THROWS_AS(read_eval_pairs(dir / "missing.jsonl"), InputError);
}
