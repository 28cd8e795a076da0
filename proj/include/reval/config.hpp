#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reval/recommender.hpp"

namespace reval {

/// Everything needed to reproduce a sweep. Serialized as key = value lines.
struct RunConfig {
    std::uint64_t seed = 42;
    std::size_t dim = 768;
    std::vector<std::size_t> k_values{0, 5, 10, 20, 30, 40, 50, 60, 70};
    std::vector<std::size_t> r_values{1, 5, 10};
    double split_fraction = 0.9;
    double threshold = 0.5;
    std::optional<double> max_distance;
    PopularityScope popularity = PopularityScope::kSelectedSet;
    bool truncate_repeats = true;

    std::filesystem::path corpus;     // raw JSON-lines input
    std::filesystem::path stopwords;  // empty: built-in list
    std::filesystem::path work_dir = "reval_work";
    std::filesystem::path embeddings;    // empty: toy tweet embeddings
    std::filesystem::path word_vectors;  // empty: toy word vectors

    /// Sorts and dedups k_values; throws DomainError on empty lists, r == 0 or
    /// out-of-range fractions.
    void normalize();

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Lines of `key = value`; '#' starts a comment. Unknown keys are errors.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

/// Comma-separated unsigned integers, e.g. "0,5,10".
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace reval
