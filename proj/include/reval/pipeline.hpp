#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reval/config.hpp"
#include "reval/corpus.hpp"
#include "reval/metrics.hpp"
#include "reval/recommender.hpp"

namespace reval {

// File-to-file pipeline stages. Each returns the JSON summary the CLI prints.

/// Built-in stopword list (the one shipped as data/stopwords.txt).
StopwordSet default_stopwords();

struct PreprocessArgs {
    std::filesystem::path raw_corpus;
    std::filesystem::path stopwords;  // empty: default_stopwords()
    std::filesystem::path cleaned_out;
    std::filesystem::path records_out;
    bool truncate_repeats = true;
};
nlohmann::json run_preprocess(const PreprocessArgs& args);

struct EmbedToyArgs {
    std::filesystem::path cleaned_corpus;
    std::size_t dim = 768;
    std::uint64_t seed = 42;
    std::filesystem::path embeddings_out;
    std::filesystem::path words_out;  // optional
    std::filesystem::path tsv_out;    // optional
};
nlohmann::json run_embed_toy(const EmbedToyArgs& args);

struct CentroidsArgs {
    std::filesystem::path records;
    std::filesystem::path embeddings;  // binary, or .tsv for the text form
    std::filesystem::path dictionary_out;
};
nlohmann::json run_centroids(const CentroidsArgs& args);

struct ThesaurusArgs {
    std::filesystem::path dictionary;
    std::size_t k = 70;
    std::optional<double> max_distance;
    std::filesystem::path queries;  // optional: one hashtag per line
    std::filesystem::path thesaurus_out;
};
nlohmann::json run_thesaurus(const ThesaurusArgs& args);

struct RecommendArgs {
    std::filesystem::path cleaned_corpus;
    std::filesystem::path word_vectors;
    double split_fraction = 0.9;
    std::uint64_t seed = 42;
    std::size_t top_r = 5;
    RecommenderOptions options;
    std::filesystem::path pairs_out;
};
nlohmann::json run_recommend(const RecommendArgs& args);

struct EvaluateArgs {
    std::filesystem::path pairs;
    std::filesystem::path thesaurus;
    std::size_t k = 0;
    std::size_t r = 0;  // label only; 0 means "max |R| in the pairs file"
    bool per_pair = false;
    std::filesystem::path report_out;
    std::filesystem::path csv_out;  // optional: append "k,r,average"
};
nlohmann::json run_evaluate(const EvaluateArgs& args);

struct SweepRow {
    std::size_t r = 0;
    std::size_t k = 0;
    EvalReport report;
};

/// Full pipeline from the raw corpus in `config`, all artifacts under
/// config.work_dir. The thesaurus is built once at max(k_values) and cut down
/// per k. Writes sweep.csv and config.txt; returns rows ordered by (r, k).
std::vector<SweepRow> run_sweep(const RunConfig& config, const std::filesystem::path& csv_out);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace reval
