#include "reval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "io_util.hpp"
#include "parallel.hpp"
#include "reval/errors.hpp"

namespace reval {
namespace {

using json = nlohmann::json;

// Syn_k(tag) for matching; a missing entry degrades to {tag}.
bool in_synonyms(const Thesaurus& thesaurus, const Hashtag& recommended, const Hashtag& candidate,
                 std::size_t k) {
    if (const auto* list = thesaurus.find(recommended)) return list->contains(candidate, k);
    return recommended == candidate;
}

std::size_t count_misses(std::span<const Hashtag> recommended, const Thesaurus& thesaurus) {
    return static_cast<std::size_t>(std::count_if(recommended.begin(), recommended.end(),
                                                  [&](const Hashtag& h) { return thesaurus.find(h) == nullptr; }));
}

std::size_t per_recommendation(std::span<const Hashtag> recommended, const std::set<Hashtag>& ground_truth,
                               const Thesaurus& thesaurus, std::size_t k) {
    std::size_t rho = 0;
    for (const auto& r : recommended) {
        const bool hit = std::any_of(ground_truth.begin(), ground_truth.end(),
                                     [&](const Hashtag& g) { return in_synonyms(thesaurus, r, g, k); });
        if (hit) ++rho;
    }
    return rho;
}

std::size_t per_ground_truth(std::span<const Hashtag> recommended, const std::set<Hashtag>& ground_truth,
                             const Thesaurus& thesaurus, std::size_t k) {
    const std::set<Hashtag> rec(recommended.begin(), recommended.end());
    const auto expanded = synonyms_of_set(rec, thesaurus, k);
    return static_cast<std::size_t>(std::count_if(ground_truth.begin(), ground_truth.end(),
                                                  [&](const Hashtag& g) { return expanded.contains(g); }));
}

double pairwise_sum(std::span<const double> values) {
    if (values.empty()) return 0.0;
    if (values.size() == 1) return values.front();
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double rounded4(double v) { return std::round(v * 1e4) / 1e4; }

}  // namespace

EvalPair EvalPair::make(std::string tweet_id, std::span<const Hashtag> recommended,
                        std::span<const Hashtag> ground_truth) {
    EvalPair pair{std::move(tweet_id), {}, {ground_truth.begin(), ground_truth.end()}};
    for (const auto& h : recommended)
        if (std::find(pair.recommended.begin(), pair.recommended.end(), h) == pair.recommended.end())
            pair.recommended.push_back(h);
    return pair;
}

std::optional<MatchResult> hit_ratio(const std::set<Hashtag>& recommended, const std::set<Hashtag>& ground_truth) {
    if (recommended.empty() || ground_truth.empty()) return std::nullopt;
    std::vector<Hashtag> common;
    std::set_intersection(recommended.begin(), recommended.end(), ground_truth.begin(), ground_truth.end(),
                          std::back_inserter(common));
    return MatchResult{common.size(), std::min(recommended.size(), ground_truth.size()), 0};
}

std::optional<MatchResult> match_synonyms(std::span<const Hashtag> recommended,
                                          const std::set<Hashtag>& ground_truth,
                                          const Thesaurus& thesaurus, std::optional<std::size_t> k) {
    if (recommended.empty() || ground_truth.empty()) return std::nullopt;
    const std::size_t limit = k.value_or(thesaurus.k());
    if (limit > thesaurus.k())
        throw DomainError("k=" + std::to_string(limit) + " exceeds thesaurus k=" + std::to_string(thesaurus.k()));

    MatchResult result;
    result.denominator = std::min(recommended.size(), ground_truth.size());
    result.thesaurus_misses = count_misses(recommended, thesaurus);
    result.rho = recommended.size() <= ground_truth.size()
                     ? per_recommendation(recommended, ground_truth, thesaurus, limit)
                     : per_ground_truth(recommended, ground_truth, thesaurus, limit);
    return result;
}

std::optional<MatchResult> reval_hit_ratio(const EvalPair& pair, const Thesaurus& thesaurus, std::size_t k) {
    return match_synonyms(pair.recommended, pair.ground_truth, thesaurus, k);
}

BranchCounts both_branches(std::span<const Hashtag> recommended, const std::set<Hashtag>& ground_truth,
                           const Thesaurus& thesaurus, std::size_t k) {
    return {per_recommendation(recommended, ground_truth, thesaurus, k),
            per_ground_truth(recommended, ground_truth, thesaurus, k)};
}

EvalReport evaluate(std::span<const EvalPair> pairs, const Thesaurus& thesaurus, std::size_t k, std::size_t r,
                    const EvaluateOptions& options) {
    if (k > thesaurus.k())
        throw DomainError("k=" + std::to_string(k) + " exceeds thesaurus k=" + std::to_string(thesaurus.k()));

    std::vector<std::optional<MatchResult>> results(pairs.size());
    std::vector<char> diverged(pairs.size(), 0);
    detail::parallel_for(pairs.size(), [&](std::size_t i) {
        const auto& p = pairs[i];
        results[i] = reval_hit_ratio(p, thesaurus, k);
        if (results[i] && p.recommended.size() == p.ground_truth.size()) {
            const auto b = both_branches(p.recommended, p.ground_truth, thesaurus, k);
            diverged[i] = b.per_recommendation != b.per_ground_truth;
        }
    }, 256);

    EvalReport report;
    report.k = k;
    report.r = r;
    report.pair_count = pairs.size();
    if (options.keep_per_pair) report.per_pair.emplace();
    std::vector<double> ratios;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!results[i]) {
            ++report.skipped_count;
            report.thesaurus_misses += count_misses(pairs[i].recommended, thesaurus);
            continue;
        }
        ratios.push_back(results[i]->ratio());
        report.thesaurus_misses += results[i]->thesaurus_misses;
        report.branch_divergences += diverged[i];
        if (report.per_pair) report.per_pair->push_back({pairs[i].tweet_id, *results[i]});
    }
    report.all_skipped = ratios.empty();
    report.average_ratio = ratios.empty() ? 0.0 : pairwise_sum(ratios) / static_cast<double>(ratios.size());
    return report;
}

std::string format_ratio(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

std::string report_to_json(const EvalReport& report) {
    json doc = {{"k", report.k},
                {"r", report.r},
                {"pairs", report.pair_count},
                {"skipped", report.skipped_count},
                {"thesaurus_misses", report.thesaurus_misses},
                {"average_reval_hit_ratio", rounded4(report.average_ratio)}};
    if (report.per_pair) {
        json rows = json::array();
        for (const auto& s : *report.per_pair)
            rows.push_back({{"tweet_id", s.tweet_id},
                            {"rho", s.result.rho},
                            {"denominator", s.result.denominator},
                            {"ratio", rounded4(s.result.ratio())}});
        doc["per_pair"] = std::move(rows);
    }
    return doc.dump(2) + "\n";
}

std::string report_csv_row(const EvalReport& report) {
    return std::to_string(report.k) + "," + std::to_string(report.r) + "," + format_ratio(report.average_ratio);
}

std::vector<EvalPair> read_eval_pairs(const std::filesystem::path& path) {
    auto in = detail::open_in(path);
    std::vector<EvalPair> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json obj = json::parse(line);
            std::vector<Hashtag> rec, truth;
            for (const auto& h : obj.at("recommended")) rec.push_back(Hashtag::parse(h.get<std::string>()));
            for (const auto& h : obj.at("ground_truth")) truth.push_back(Hashtag::parse(h.get<std::string>()));
            pairs.push_back(EvalPair::make(obj.at("tweet_id").get<std::string>(), rec, truth));
        } catch (const std::exception& e) {
            throw InputError(detail::where(path, line_no) + ": " + e.what());
        }
    }
    return pairs;
}

void write_eval_pairs(const std::filesystem::path& path, std::span<const EvalPair> pairs) {
    auto out = detail::open_out(path);
    for (const auto& p : pairs) {
        json rec = json::array();
        for (const auto& h : p.recommended) rec.push_back(h.str());
        json truth = json::array();
        for (const auto& h : p.ground_truth) truth.push_back(h.str());
        out << json{{"tweet_id", p.tweet_id}, {"recommended", rec}, {"ground_truth", truth}}.dump() << '\n';
    }
}

}  // namespace reval
