#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "reval/hashtag.hpp"
#include "reval/thesaurus.hpp"

namespace reval {

/// One test tweet: its top-r recommendations and its ground-truth hashtags.
struct EvalPair {
    std::string tweet_id;
    std::vector<Hashtag> recommended;
    std::set<Hashtag> ground_truth;

    /// Drops repeated recommendations, keeping first occurrences.
    static EvalPair make(std::string tweet_id, std::span<const Hashtag> recommended,
                         std::span<const Hashtag> ground_truth);
};

struct MatchResult {
    std::size_t rho = 0;
    std::size_t denominator = 1;
    /// Recommended hashtags with no thesaurus entry (matched exactly instead).
    std::size_t thesaurus_misses = 0;

    double ratio() const { return static_cast<double>(rho) / static_cast<double>(denominator); }
    friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// |R n G| / min(|R|, |G|). nullopt (skip) when either set is empty.
std::optional<MatchResult> hit_ratio(const std::set<Hashtag>& recommended, const std::set<Hashtag>& ground_truth);

/// Synonym-aware match count. With |R| <= |G| each recommended hashtag whose
/// Syn_k set meets G counts once; otherwise each ground-truth hashtag found in
/// the union of the recommended hashtags' Syn_k sets counts once. Only R is
/// expanded. Recommended hashtags missing from the thesaurus match exactly.
/// `k` defaults to the thesaurus k. nullopt (skip) when R or G is empty.
std::optional<MatchResult> match_synonyms(std::span<const Hashtag> recommended,
                                          const std::set<Hashtag>& ground_truth,
                                          const Thesaurus& thesaurus,
                                          std::optional<std::size_t> k = std::nullopt);

/// match_synonyms on a pair at a given k (k <= thesaurus.k()).
std::optional<MatchResult> reval_hit_ratio(const EvalPair& pair, const Thesaurus& thesaurus, std::size_t k);

/// Counts from both branches of the match rule, for auditing the |R| == |G|
/// boundary where the rule picks the per-recommendation branch.
struct BranchCounts {
    std::size_t per_recommendation = 0;
    std::size_t per_ground_truth = 0;
};
BranchCounts both_branches(std::span<const Hashtag> recommended, const std::set<Hashtag>& ground_truth,
                           const Thesaurus& thesaurus, std::size_t k);

struct PairScore {
    std::string tweet_id;
    MatchResult result;
};

struct EvalReport {
    std::size_t k = 0;
    std::size_t r = 0;
    /// All input pairs, skipped ones included.
    std::size_t pair_count = 0;
    std::size_t skipped_count = 0;
    std::size_t thesaurus_misses = 0;
    /// Pairs with |R| == |G| whose two branch counts differ.
    std::size_t branch_divergences = 0;
    /// Macro average over evaluated pairs; 0 when every pair was skipped.
    double average_ratio = 0.0;
    /// Set when no pair could be evaluated.
    bool all_skipped = false;
    std::optional<std::vector<PairScore>> per_pair;
};

struct EvaluateOptions {
    bool keep_per_pair = false;
};

EvalReport evaluate(std::span<const EvalPair> pairs, const Thesaurus& thesaurus, std::size_t k,
                    std::size_t r, const EvaluateOptions& options = {});

/// Value printed with four decimals, e.g. 0.3333.
std::string format_ratio(double value);

std::string report_to_json(const EvalReport& report);
/// "k,r,average" row for sweep plots.
std::string report_csv_row(const EvalReport& report);

/// JSON-lines {"tweet_id", "recommended": [...], "ground_truth": [...]}.
std::vector<EvalPair> read_eval_pairs(const std::filesystem::path& path);
void write_eval_pairs(const std::filesystem::path& path, std::span<const EvalPair> pairs);

}  // namespace reval
