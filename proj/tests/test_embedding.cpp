#include <doctest.h>

#include <cmath>
#include <random>

#include "reval/embedding.hpp"
#include "reval/errors.hpp"

using namespace reval;

namespace {
EmbeddingVector V(std::initializer_list<double> xs) { return EmbeddingVector(std::vector<double>(xs)); }
}  // namespace

TEST_CASE("embedding vectors reject empty and non-finite values") {
    CHECK_THROWS_AS(EmbeddingVector(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(V({1.0, NAN}), DomainError);
    CHECK_THROWS_AS(V({INFINITY, 0.0}), DomainError);
    CHECK_THROWS_AS(EmbeddingVector::zeros(2).normalized(), DegenerateError);
}

TEST_CASE("cosine distance: analytic cases") {
    CHECK(cosine_distance(V({3, 4}), V({3, 4})) == 0.0);
    CHECK(cosine_distance(V({1, 0}), V({0, 1})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cosine_distance(V({1, 0}), V({-1, 0})) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(cosine_distance(V({0, 0}), V({1, 0})), DomainError);
    CHECK_THROWS_AS(cosine_distance(V({1, 0, 0}), V({1, 0})), DomainError);
}

TEST_CASE("cosine distance: symmetry, scale invariance, range") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t dim = 2 + rng() % 40;
        std::vector<double> a(dim), b(dim);
        for (auto& x : a) x = g(rng);
        for (auto& x : b) x = g(rng);
        const EmbeddingVector va(a), vb(b);
        const double d = cosine_distance(va, vb);
        CHECK(d >= 0.0);
        CHECK(d <= 2.0);
        CHECK(d == cosine_distance(vb, va));
        const double c = 0.01 + std::abs(g(rng)) * 50;
        CHECK(cosine_distance(va, va.scaled(c)) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(cosine_distance(va, vb, va.norm(), vb.norm()) == d);
    }
}

TEST_CASE("pairwise sum matches the naive sum") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<EmbeddingVector> vs;
    for (int i = 0; i < 37; ++i) vs.push_back(V({u(rng), u(rng), u(rng)}));
    std::vector<const EmbeddingVector*> ptrs;
    for (const auto& v : vs) ptrs.push_back(&v);
    const auto sum = pairwise_sum(ptrs);
    for (std::size_t d = 0; d < 3; ++d) {
        double naive = 0;
        for (const auto& v : vs) naive += v[d];
        CHECK(sum[d] == doctest::Approx(naive).epsilon(1e-12));
    }
    CHECK_THROWS_AS(pairwise_sum({}), DomainError);
}

TEST_CASE("toy_embed: deterministic unit vectors") {
    const auto a = toy_embed("the quick brown fox #animals", 64, 42);
    CHECK(a == toy_embed("the quick brown fox #animals", 64, 42));
    CHECK(a.dim() == 64);
    CHECK(std::abs(a.norm() - 1.0) < 1e-12);
    CHECK_FALSE(a == toy_embed("the quick brown fox #animals", 64, 43));
    CHECK(toy_embed("  spaced\tout  ", 8, 1) == toy_embed("spaced out", 8, 1));
    CHECK_THROWS_AS(toy_embed("   ", 8, 1), DomainError);
    CHECK_THROWS_AS(toy_embed("x", 1, 1), DomainError);
    for (std::size_t dim : {2u, 3u, 17u, 768u}) CHECK(std::abs(toy_embed("a b c", dim, 9).norm() - 1.0) < 1e-12);
}

TEST_CASE("toy_embed: shared tokens mean smaller distance (Monte Carlo)") {
    std::mt19937_64 rng(2024);
    auto token = [&] { return "tok" + std::to_string(rng() % 1000000); };
    int holds = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> base(10);
        for (auto& t : base) t = token();
        auto join = [](const std::vector<std::string>& ts) {
            std::string s;
            for (const auto& t : ts) s += t + " ";
            return s;
        };
        auto near = base;
        near[rng() % 10] = token();
        std::vector<std::string> far(10);
        for (auto& t : far) t = token();
        const auto vb = toy_embed(join(base), 64, 3);
        if (cosine_distance(vb, toy_embed(join(near), 64, 3)) < cosine_distance(vb, toy_embed(join(far), 64, 3)))
            ++holds;
    }
    CHECK(holds >= 95);
}
