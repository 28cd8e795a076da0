// reval: command-line driver for the hashtag-evaluation pipeline.
//
//   reval preprocess --in raw.jsonl --out cleaned.jsonl --records records.tsv
//   reval embed-toy  --in cleaned.jsonl --out embeddings.bin --words words.bin
//   reval centroids  --records records.tsv --embeddings embeddings.bin --out dictionary.bin
//   reval thesaurus  --dictionary dictionary.bin --k 70 --out thesaurus.json
//   reval recommend  --in cleaned.jsonl --words words.bin --top-r 5 --out pairs.jsonl
//   reval evaluate   --pairs pairs.jsonl --thesaurus thesaurus.json --k 10 --out report.json
//   reval sweep      --config run.cfg --out sweep.csv
//
// Every command prints one JSON summary line on success.
// Exit codes: 0 ok, 2 input/format error, 3 integrity error, 4 degenerate data.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "reval/config.hpp"
#include "reval/errors.hpp"
#include "reval/pipeline.hpp"

namespace {

namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kInputError = 2, kIntegrityError = 3, kDegenerate = 4 };

// Flags shared by every subcommand. Explicitly given flags override the config file.
struct SharedFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> dim;
    std::string k;
    std::string top_r;
    std::optional<double> threshold;
    std::optional<double> max_distance;
    std::string out;

    void attach(CLI::App& cmd) {
        cmd.add_option("--config", config, "key = value run configuration");
        cmd.add_option("--seed", seed, "random seed");
        cmd.add_option("--dim", dim, "toy embedding dimension");
        cmd.add_option("--k", k, "number of synonyms (comma list for sweep)");
        cmd.add_option("--top-r", top_r, "recommendation list length (comma list for sweep)");
        cmd.add_option("--threshold", threshold, "recommender cosine-similarity cut-off");
        cmd.add_option("--max-distance", max_distance, "drop synonyms farther than this cosine distance");
        cmd.add_option("--out", out, "primary output path");
    }

    reval::RunConfig resolve() const {
        reval::RunConfig c = config.empty() ? reval::RunConfig{} : reval::load_config(config);
        if (seed) c.seed = *seed;
        if (dim) c.dim = *dim;
        if (!k.empty()) c.k_values = reval::parse_size_list(k);
        if (!top_r.empty()) c.r_values = reval::parse_size_list(top_r);
        if (threshold) c.threshold = *threshold;
        if (max_distance) c.max_distance = *max_distance;
        c.normalize();
        return c;
    }

    fs::path output(const std::string& fallback) const { return out.empty() ? fs::path(fallback) : fs::path(out); }
};

std::size_t single(const std::vector<std::size_t>& values, const char* flag) {
    if (values.size() != 1) throw reval::InputError(std::string(flag) + " takes a single value for this command");
    return values.front();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reval: semantic evaluation of hashtag recommendations"};
    app.require_subcommand(1);

    SharedFlags flags;
    std::string in, records, embeddings, words, tsv, dictionary, queries, pairs, thesaurus, stopwords, csv, work_dir;
    std::string popularity = "selected_set";
    double split_fraction = 0.9;
    bool per_pair = false;
    bool no_truncate = false;

    auto* preprocess = app.add_subcommand("preprocess", "clean raw tweets and explode them into records");
    preprocess->add_option("--in", in, "raw JSON-lines corpus")->required();
    preprocess->add_option("--records", records, "records TSV output (default: records.tsv)");
    preprocess->add_option("--stopwords", stopwords, "stopword file (default: built-in list)");
    preprocess->add_flag("--no-truncate-repeats", no_truncate, "keep long character runs");

    auto* embed = app.add_subcommand("embed-toy", "deterministic toy tweet embeddings");
    embed->add_option("--in", in, "cleaned JSON-lines corpus")->required();
    embed->add_option("--words", words, "also write toy word vectors here");
    embed->add_option("--tsv", tsv, "also write the text form of the embeddings");

    auto* centroids = app.add_subcommand("centroids", "hashtag centroid dictionary");
    centroids->add_option("--records", records, "records TSV")->required();
    centroids->add_option("--embeddings", embeddings, "tweet-embedding file (.bin or .tsv)")->required();

    auto* thes = app.add_subcommand("thesaurus", "kNN synonym thesaurus");
    thes->add_option("--dictionary", dictionary, "dictionary file")->required();
    thes->add_option("--queries", queries, "only these hashtags (one per line)");

    auto* recommend = app.add_subcommand("recommend", "baseline recommender on a train/test split");
    recommend->add_option("--in", in, "cleaned JSON-lines corpus")->required();
    recommend->add_option("--words", words, "word-vector file")->required();
    recommend->add_option("--split", split_fraction, "training fraction");
    recommend->add_option("--popularity", popularity, "selected_set or global")
        ->check(CLI::IsMember({"selected_set", "global"}));

    auto* eval = app.add_subcommand("evaluate", "average #REval-hit-ratio of a recommendation set");
    eval->add_option("--pairs", pairs, "eval-pairs JSON-lines")->required();
    eval->add_option("--thesaurus", thesaurus, "thesaurus JSON")->required();
    eval->add_flag("--per-pair", per_pair, "include per-pair scores in the report");
    eval->add_option("--csv", csv, "append a k,r,average row to this file");

    auto* sweep = app.add_subcommand("sweep", "full pipeline over all (r, k) combinations");
    sweep->add_option("--in", in, "raw JSON-lines corpus (overrides config)");
    sweep->add_option("--work-dir", work_dir, "artifact directory (overrides config)");
    sweep->add_option("--split", split_fraction, "training fraction");

    for (auto* cmd : {preprocess, embed, centroids, thes, recommend, eval, sweep}) flags.attach(*cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        nlohmann::json summary;
        const auto config = flags.resolve();
        if (app.got_subcommand(preprocess)) {
            summary = reval::run_preprocess({in, stopwords, flags.output("cleaned.jsonl"),
                                             records.empty() ? fs::path("records.tsv") : fs::path(records),
                                             !no_truncate && config.truncate_repeats});
        } else if (app.got_subcommand(embed)) {
            summary = reval::run_embed_toy({in, config.dim, config.seed, flags.output("embeddings.bin"), words, tsv});
        } else if (app.got_subcommand(centroids)) {
            summary = reval::run_centroids({records, embeddings, flags.output("dictionary.bin")});
        } else if (app.got_subcommand(thes)) {
            const std::size_t k = flags.k.empty() ? config.k_values.back() : single(config.k_values, "--k");
            summary = reval::run_thesaurus({dictionary, k, config.max_distance, queries, flags.output("thesaurus.json")});
        } else if (app.got_subcommand(recommend)) {
            reval::RecommendArgs args;
            args.cleaned_corpus = in;
            args.word_vectors = words;
            args.split_fraction = recommend->count("--split") ? split_fraction : config.split_fraction;
            args.seed = config.seed;
            args.top_r = flags.top_r.empty() ? 5 : single(config.r_values, "--top-r");
            args.options.similarity_threshold = config.threshold;
            args.options.popularity = recommend->count("--popularity")
                                          ? (popularity == "global" ? reval::PopularityScope::kGlobal
                                                                    : reval::PopularityScope::kSelectedSet)
                                          : config.popularity;
            args.pairs_out = flags.output("pairs.jsonl");
            summary = reval::run_recommend(args);
        } else if (app.got_subcommand(eval)) {
            if (flags.k.empty()) throw reval::InputError("evaluate requires --k");
            const std::size_t r = flags.top_r.empty() ? 0 : single(config.r_values, "--top-r");
            summary = reval::run_evaluate({pairs, thesaurus, single(config.k_values, "--k"), r, per_pair,
                                           flags.output("report.json"), csv});
        } else if (app.got_subcommand(sweep)) {
            auto run = config;
            if (!in.empty()) run.corpus = in;
            if (!work_dir.empty()) run.work_dir = work_dir;
            if (sweep->count("--split")) run.split_fraction = split_fraction;
            if (run.corpus.empty()) throw reval::InputError("sweep needs a corpus (--in or corpus = ... in --config)");
            const auto csv_path = flags.output((run.work_dir / "sweep.csv").string());
            const auto rows = reval::run_sweep(run, csv_path);
            summary = {{"command", "sweep"}, {"rows", rows.size()}, {"csv", csv_path.string()}};
        }
        std::cout << summary.dump() << std::endl;
        return kOk;
    } catch (const reval::IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << '\n';
        return kIntegrityError;
    } catch (const reval::DegenerateError& e) {
        std::cerr << "degenerate data: " << e.what() << '\n';
        return kDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
}
