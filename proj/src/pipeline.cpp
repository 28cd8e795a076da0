#include "reval/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "io_util.hpp"
#include "parallel.hpp"
#include "reval/dictionary.hpp"
#include "reval/embedding_io.hpp"
#include "reval/errors.hpp"
#include "reval/thesaurus.hpp"

namespace reval {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Keep in sync with data/stopwords.txt (a unit test checks this).
constexpr const char* kDefaultStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are", "as", "at",
    "be", "because", "been", "before", "being", "below", "between", "both", "but", "by", "can", "could",
    "did", "do", "does", "doing", "down", "during", "each", "few", "for", "from", "further", "had", "has",
    "have", "having", "he", "her", "here", "hers", "herself", "him", "himself", "his", "how", "i", "if",
    "in", "into", "is", "it", "its", "itself", "just", "me", "more", "most", "my", "myself", "no", "nor",
    "not", "now", "of", "off", "on", "once", "only", "or", "other", "our", "ours", "ourselves", "out",
    "over", "own", "rt", "same", "she", "should", "so", "some", "such", "than", "that", "the", "their",
    "theirs", "them", "themselves", "then", "there", "these", "they", "this", "those", "through", "to",
    "too", "under", "until", "up", "very", "was", "we", "were", "what", "when", "where", "which", "while",
    "who", "whom", "why", "will", "with", "would", "you", "your", "yours", "yourself", "yourselves",
};

void require_file(const fs::path& path, const std::string& what, const std::string& stage) {
    if (path.empty()) throw InputError("missing path for " + what);
    if (!fs::exists(path))
        throw InputError(what + " " + path.string() + " not found; run `reval " + stage + "` first");
}

std::vector<Hashtag> read_queries(const fs::path& path) {
    auto in = detail::open_in(path);
    std::vector<Hashtag> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            out.push_back(Hashtag::parse(line));
        } catch (const DomainError& e) {
            throw InputError(detail::where(path, line_no) + ": " + e.what());
        }
    }
    return out;
}

TweetEmbeddings load_embeddings(const fs::path& path) {
    return path.extension() == ".tsv" ? read_tweet_embeddings_tsv(path) : read_tweet_embeddings(path);
}

std::vector<EvalPair> recommend_pairs(const CorpusSplit& parts, const WordVectors& words, std::size_t top_r,
                                      const RecommenderOptions& options, std::size_t& empty) {
    const Recommender model(parts.train, words, options);
    std::vector<EvalPair> pairs(parts.test.size());
    detail::parallel_for(parts.test.size(), [&](std::size_t i) {
        const auto& tweet = parts.test[i];
        pairs[i] = EvalPair::make(tweet.id, model.recommend(tweet.text, top_r), tweet.hashtags);
    }, 16);
    empty = static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const EvalPair& p) { return p.recommended.empty(); }));
    return pairs;
}

}  // namespace

StopwordSet default_stopwords() { return {std::begin(kDefaultStopwords), std::end(kDefaultStopwords)}; }

json run_preprocess(const PreprocessArgs& args) {
    require_file(args.raw_corpus, "raw corpus", "preprocess --in <file>");
    const auto raw = read_raw_corpus(args.raw_corpus);
    Preprocessor pre(args.stopwords.empty() ? default_stopwords() : load_stopwords(args.stopwords),
                     CleanOptions{args.truncate_repeats, {}});

    std::vector<CleanTweet> kept;
    std::map<std::string, std::size_t> dropped;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        CleanResult result;
        try {
            result = pre.clean(raw[i]);
        } catch (const InputError& e) {
            throw InputError(detail::where(args.raw_corpus, i + 1) + " (id " + raw[i].id + "): " + e.what());
        }
        if (auto* t = std::get_if<CleanTweet>(&result)) kept.push_back(std::move(*t));
        else ++dropped[std::string(to_string(std::get<Dropped>(result).reason))];
    }
    const auto records = explode_corpus(kept);
    write_clean_corpus(args.cleaned_out, kept);
    if (!args.records_out.empty()) write_records(args.records_out, records);

    std::size_t dropped_total = 0;
    for (const auto& [_, n] : dropped) dropped_total += n;
    return {{"command", "preprocess"}, {"tweets", raw.size()}, {"kept", kept.size()},
            {"dropped", dropped_total}, {"dropped_by_reason", dropped}, {"records", records.size()}};
}

json run_embed_toy(const EmbedToyArgs& args) {
    require_file(args.cleaned_corpus, "cleaned corpus", "preprocess");
    const auto corpus = read_clean_corpus(args.cleaned_corpus);
    TweetEmbeddings emb{args.dim, {}};
    for (std::size_t i = 0; i < corpus.size(); ++i) emb.vectors.emplace(i, toy_embed(corpus[i].text, args.dim, args.seed));
    write_tweet_embeddings(args.embeddings_out, emb);
    if (!args.tsv_out.empty()) write_tweet_embeddings_tsv(args.tsv_out, emb);
    json summary = {{"command", "embed-toy"}, {"tweets", emb.vectors.size()}, {"dim", args.dim}, {"seed", args.seed}};
    if (!args.words_out.empty()) {
        const auto words = toy_word_vectors(corpus, args.dim, args.seed);
        write_word_vectors(args.words_out, words);
        summary["words"] = words.vectors.size();
    }
    return summary;
}

json run_centroids(const CentroidsArgs& args) {
    require_file(args.records, "records file", "preprocess");
    require_file(args.embeddings, "tweet-embedding file", "embed-toy");
    const auto records = read_records(args.records);
    const auto emb = load_embeddings(args.embeddings);
    write_dictionary(args.dictionary_out, build_dictionary(records, emb));
    // Report the digest of the stored (f32) sums, which is what later stages see.
    const auto dict = read_dictionary(args.dictionary_out);
    return {{"command", "centroids"}, {"records", records.size()}, {"hashtags", dict.size()},
            {"dim", dict.dim()}, {"digest", dict.digest()}};
}

json run_thesaurus(const ThesaurusArgs& args) {
    require_file(args.dictionary, "dictionary", "centroids");
    const auto dict = read_dictionary(args.dictionary);
    std::optional<std::vector<Hashtag>> queries;
    if (!args.queries.empty()) queries = read_queries(args.queries);
    const auto thesaurus = build_thesaurus(
        dict, args.k, queries ? std::optional<std::span<const Hashtag>>(*queries) : std::nullopt,
        SynonymOptions{args.max_distance});
    write_thesaurus(args.thesaurus_out, thesaurus);
    const auto truncated = std::count_if(thesaurus.entries().begin(), thesaurus.entries().end(),
                                         [](const auto& e) { return e.second.truncated; });
    return {{"command", "thesaurus"}, {"k", args.k}, {"entries", thesaurus.entries().size()},
            {"truncated", truncated}, {"misses", thesaurus.misses().size()}, {"digest", thesaurus.digest()}};
}

json run_recommend(const RecommendArgs& args) {
    require_file(args.cleaned_corpus, "cleaned corpus", "preprocess");
    require_file(args.word_vectors, "word-vector file", "embed-toy --words <file>");
    const auto corpus = read_clean_corpus(args.cleaned_corpus);
    const auto words = read_word_vectors(args.word_vectors);
    const auto parts = split(corpus, args.split_fraction, args.seed);
    std::size_t empty = 0;
    const auto pairs = recommend_pairs(parts, words, args.top_r, args.options, empty);
    write_eval_pairs(args.pairs_out, pairs);
    return {{"command", "recommend"}, {"train", parts.train.size()}, {"test", parts.test.size()},
            {"top_r", args.top_r}, {"empty_recommendations", empty}};
}

json run_evaluate(const EvaluateArgs& args) {
    require_file(args.pairs, "eval-pairs file", "recommend");
    require_file(args.thesaurus, "thesaurus", "thesaurus");
    const auto pairs = read_eval_pairs(args.pairs);
    const auto thesaurus = read_thesaurus(args.thesaurus);
    std::size_t r = args.r;
    if (r == 0)
        for (const auto& p : pairs) r = std::max(r, p.recommended.size());
    const auto report = evaluate(pairs, thesaurus, args.k, r, EvaluateOptions{args.per_pair});
    auto out = detail::open_out(args.report_out);
    out << report_to_json(report);
    if (!args.csv_out.empty()) {
        std::ofstream csv(args.csv_out, std::ios::app);
        if (!csv) throw InputError("cannot open " + args.csv_out.string() + " for appending");
        csv << report_csv_row(report) << '\n';
    }
    return {{"command", "evaluate"}, {"k", report.k}, {"r", report.r}, {"pairs", report.pair_count},
            {"skipped", report.skipped_count}, {"thesaurus_misses", report.thesaurus_misses},
            {"branch_divergences", report.branch_divergences}, {"all_skipped", report.all_skipped},
            {"average_reval_hit_ratio", format_ratio(report.average_ratio)}};
}

std::vector<SweepRow> run_sweep(const RunConfig& input, const fs::path& csv_out) {
    RunConfig config = input;
    config.normalize();
    const fs::path dir = config.work_dir;
    fs::create_directories(dir);
    {
        auto out = detail::open_out(dir / "config.txt");
        out << serialize_config(config);
    }

    run_preprocess({config.corpus, config.stopwords, dir / "cleaned.jsonl", dir / "records.tsv",
                    config.truncate_repeats});

    fs::path embeddings = config.embeddings;
    fs::path words = config.word_vectors;
    if (embeddings.empty() || words.empty()) {
        EmbedToyArgs toy{dir / "cleaned.jsonl", config.dim, config.seed, dir / "toy_embeddings.bin",
                         words.empty() ? dir / "toy_words.bin" : fs::path{}, {}};
        run_embed_toy(toy);
        if (embeddings.empty()) embeddings = toy.embeddings_out;
        if (words.empty()) words = toy.words_out;
    }
    run_centroids({dir / "records.tsv", embeddings, dir / "dictionary.bin"});
    const std::size_t k_max = config.k_values.back();
    run_thesaurus({dir / "dictionary.bin", k_max, config.max_distance, {}, dir / "thesaurus.json"});
    const auto thesaurus = read_thesaurus(dir / "thesaurus.json");

    const auto corpus = read_clean_corpus(dir / "cleaned.jsonl");
    const auto parts = split(corpus, config.split_fraction, config.seed);
    const auto word_vectors = read_word_vectors(words);
    const RecommenderOptions options{config.threshold, config.popularity};

    std::vector<SweepRow> rows;
    for (std::size_t r : config.r_values) {
        std::size_t empty = 0;
        const auto pairs = recommend_pairs(parts, word_vectors, r, options, empty);
        write_eval_pairs(dir / ("pairs_r" + std::to_string(r) + ".jsonl"), pairs);
        for (std::size_t k : config.k_values) rows.push_back({r, k, evaluate(pairs, thesaurus.truncated(k), k, r)});
    }
    auto csv = detail::open_out(csv_out);
    csv << sweep_csv(rows);
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "r,k,average_reval_hit_ratio,pairs,skipped,thesaurus_misses\n";
    for (const auto& row : rows)
        out << row.r << ',' << row.k << ',' << format_ratio(row.report.average_ratio) << ','
            << row.report.pair_count << ',' << row.report.skipped_count << ',' << row.report.thesaurus_misses
            << '\n';
    return out.str();
}

}  // namespace reval
