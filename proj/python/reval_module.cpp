// Python bindings for the reval core: preprocessing, embeddings, centroids,
// thesaurus construction, metrics and the baseline recommender.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "reval/config.hpp"
#include "reval/corpus.hpp"
#include "reval/dictionary.hpp"
#include "reval/embedding.hpp"
#include "reval/embedding_io.hpp"
#include "reval/errors.hpp"
#include "reval/metrics.hpp"
#include "reval/pipeline.hpp"
#include "reval/recommender.hpp"
#include "reval/thesaurus.hpp"

namespace py = pybind11;
using namespace reval;

namespace {

std::vector<Hashtag> parse_tags(const std::vector<std::string>& items) {
    std::vector<Hashtag> out;
    out.reserve(items.size());
    for (const auto& s : items) out.push_back(Hashtag::parse(s));
    return out;
}

std::set<Hashtag> parse_tag_set(const std::vector<std::string>& items) {
    const auto v = parse_tags(items);
    return {v.begin(), v.end()};
}

std::vector<std::string> tag_strings(const std::vector<Hashtag>& tags) {
    std::vector<std::string> out;
    for (const auto& h : tags) out.push_back(h.str());
    return out;
}

EmbeddingVector vec(const std::vector<double>& values) { return EmbeddingVector(values); }

std::vector<double> values(const EmbeddingVector& v) { return {v.values().begin(), v.values().end()}; }

std::map<std::size_t, std::vector<double>> tweet_vectors(const TweetEmbeddings& e) {
    std::map<std::size_t, std::vector<double>> out;
    for (const auto& [i, v] : e.vectors) out.emplace(i, values(v));
    return out;
}

TweetEmbeddings to_tweet_embeddings(std::size_t dim, const std::map<std::size_t, std::vector<double>>& m) {
    TweetEmbeddings e{dim, {}};
    for (const auto& [i, v] : m) e.vectors.emplace(i, vec(v));
    return e;
}

WordVectors to_word_vectors(std::size_t dim, const std::map<std::string, std::vector<double>>& m) {
    WordVectors w{dim, {}};
    for (const auto& [k, v] : m) w.vectors.emplace(k, vec(v));
    return w;
}

Thesaurus thesaurus_from_dict(std::size_t k, const std::map<std::string, std::vector<std::string>>& lists) {
    std::map<Hashtag, std::vector<Hashtag>> parsed;
    for (const auto& [head, syn] : lists) parsed.emplace(Hashtag::parse(head), parse_tags(syn));
    return Thesaurus::from_lists(k, parsed);
}

py::object match_to_py(const std::optional<MatchResult>& m) {
    if (!m) return py::none();
    py::dict d;
    d["rho"] = m->rho;
    d["denominator"] = m->denominator;
    d["ratio"] = m->ratio();
    d["thesaurus_misses"] = m->thesaurus_misses;
    return d;
}

std::vector<EvalPair> to_pairs(const std::vector<std::tuple<std::string, std::vector<std::string>,
                                                            std::vector<std::string>>>& items) {
    std::vector<EvalPair> pairs;
    for (const auto& [id, r, g] : items) {
        const auto rt = parse_tags(r);
        const auto gt = parse_tags(g);
        pairs.push_back(EvalPair::make(id, rt, gt));
    }
    return pairs;
}

py::object clean_result(const CleanResult& r) {
    if (const auto* t = std::get_if<CleanTweet>(&r)) {
        py::dict d;
        d["id"] = t->id;
        d["text"] = t->text;
        d["hashtags"] = tag_strings(t->hashtags);
        return d;
    }
    py::dict d;
    d["dropped"] = std::string(to_string(std::get<Dropped>(r).reason));
    return d;
}

}  // namespace

PYBIND11_MODULE(_reval, m) {
    m.doc() = "Synonym-aware evaluation of hashtag recommendations";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_ValueError);
    py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    // Preprocessing.
    m.def("normalize_text",
          [](const std::string& text, bool truncate_repeats) {
              return normalize_text(text, default_stopwords(), truncate_repeats);
          },
          py::arg("text"), py::arg("truncate_repeats") = true);
    m.def("default_stopwords", [] {
        const auto s = default_stopwords();
        return std::vector<std::string>(s.begin(), s.end());
    });

    py::class_<Preprocessor>(m, "Preprocessor")
        .def(py::init([](bool truncate_repeats) {
                 return Preprocessor(default_stopwords(), CleanOptions{truncate_repeats, {}});
             }),
             py::arg("truncate_repeats") = true)
        .def("clean",
             [](Preprocessor& p, const std::string& id, const std::string& text, bool retweet) {
                 return clean_result(p.clean({id, text, retweet}));
             },
             py::arg("id"), py::arg("text"), py::arg("retweet") = false,
             "Cleaned tweet as a dict, or {'dropped': reason}.");

    // Embeddings.
    m.def("toy_embed", [](const std::string& text, std::size_t dim, std::uint64_t seed) {
        return values(toy_embed(text, dim, seed));
    }, py::arg("text"), py::arg("dim") = 768, py::arg("seed") = 42);
    m.def("cosine_distance", [](const std::vector<double>& a, const std::vector<double>& b) {
        return cosine_distance(vec(a), vec(b));
    });

    m.def("validate_tweet_embedding_file", [](const std::filesystem::path& path) {
        const auto h = validate_tweet_embedding_file(path);
        py::dict d;
        d["version"] = h.version;
        d["dim"] = h.dim;
        d["count"] = h.count;
        return d;
    }, "Checks a tweet-embedding file end to end; returns its header.");
    m.def("read_tweet_embeddings", [](const std::filesystem::path& path) {
        const auto e = read_tweet_embeddings(path);
        return py::make_tuple(e.dim, tweet_vectors(e));
    }, "(dim, {tweet_index: vector})");
    m.def("write_tweet_embeddings",
          [](const std::filesystem::path& path, std::size_t dim, const std::map<std::size_t, std::vector<double>>& v) {
              write_tweet_embeddings(path, to_tweet_embeddings(dim, v));
          });

    // Centroids and thesaurus.
    py::class_<HashtagDictionary>(m, "HashtagDictionary")
        .def(py::init<std::size_t>())
        .def("update", [](HashtagDictionary& d, const std::string& tag, const std::vector<double>& v) {
            d.update(Hashtag::parse(tag), vec(v));
        })
        .def("direction", [](const HashtagDictionary& d, const std::string& tag) {
            return values(d.at(Hashtag::parse(tag)).direction);
        })
        .def("count", [](const HashtagDictionary& d, const std::string& tag) {
            return d.at(Hashtag::parse(tag)).count;
        })
        .def("hashtags", [](const HashtagDictionary& d) {
            std::vector<std::string> out;
            for (const auto& [tag, c] : d.entries()) out.push_back(tag.str());
            return out;
        })
        .def("digest", &HashtagDictionary::digest)
        .def_property_readonly("dim", &HashtagDictionary::dim)
        .def("__len__", &HashtagDictionary::size);

    m.def("build_dictionary",
          [](const std::vector<std::tuple<std::size_t, std::string>>& records, std::size_t dim,
             const std::map<std::size_t, std::vector<double>>& embeddings) {
              std::vector<CorpusRecord> recs;
              for (const auto& [i, tag] : records) recs.push_back({i, Hashtag::parse(tag), 1});
              return build_dictionary(recs, to_tweet_embeddings(dim, embeddings));
          },
          py::arg("records"), py::arg("dim"), py::arg("embeddings"),
          "records: [(tweet_index, hashtag)], embeddings: {tweet_index: vector}");

    py::class_<Thesaurus>(m, "Thesaurus")
        .def_static("from_lists", &thesaurus_from_dict, py::arg("k"), py::arg("lists"))
        .def_property_readonly("k", &Thesaurus::k)
        .def_property_readonly("digest", &Thesaurus::digest)
        .def("neighbors", [](const Thesaurus& t, const std::string& tag) -> py::object {
            const auto* list = t.find(Hashtag::parse(tag));
            if (!list) return py::none();
            py::list out;
            for (const auto& n : list->neighbors)
                out.append(py::make_tuple(n.tag.str(), n.distance ? py::cast(*n.distance) : py::none()));
            return out;
        })
        .def("synonyms", [](const Thesaurus& t, const std::string& tag, std::size_t k) -> py::object {
            const auto s = t.synonyms(Hashtag::parse(tag), k);
            if (!s) return py::none();
            return py::cast(tag_strings({s->begin(), s->end()}));
        })
        .def("truncated", &Thesaurus::truncated)
        .def("to_json", [](const Thesaurus& t) { return thesaurus_to_json(t); })
        .def_static("from_json", &thesaurus_from_json)
        .def("__len__", [](const Thesaurus& t) { return t.entries().size(); });

    m.def("construct_synonyms",
          [](const std::string& query, std::size_t k, const HashtagDictionary& dict) -> py::object {
              const auto s = construct_synonyms(Hashtag::parse(query), k, dict);
              if (!s) return py::none();
              py::list out;
              for (const auto& n : s->neighbors) out.append(py::make_tuple(n.tag.str(), *n.distance));
              return out;
          },
          py::arg("query"), py::arg("k"), py::arg("dictionary"));
    m.def("build_thesaurus", [](const HashtagDictionary& dict, std::size_t k) { return build_thesaurus(dict, k); },
          py::arg("dictionary"), py::arg("k"));
    m.def("read_thesaurus", &read_thesaurus);
    m.def("write_thesaurus", &write_thesaurus);

    // Metrics.
    m.def("hit_ratio", [](const std::vector<std::string>& r, const std::vector<std::string>& g) {
        return match_to_py(hit_ratio(parse_tag_set(r), parse_tag_set(g)));
    }, py::arg("recommended"), py::arg("ground_truth"));
    m.def("reval_hit_ratio",
          [](const std::vector<std::string>& r, const std::vector<std::string>& g, const Thesaurus& t,
             std::size_t k) {
              const auto pair = EvalPair::make("", parse_tags(r), parse_tags(g));
              return match_to_py(reval_hit_ratio(pair, t, k));
          },
          py::arg("recommended"), py::arg("ground_truth"), py::arg("thesaurus"), py::arg("k"));
    m.def("evaluate",
          [](const std::vector<std::tuple<std::string, std::vector<std::string>, std::vector<std::string>>>& items,
             const Thesaurus& t, std::size_t k, std::size_t r) {
              const auto report = evaluate(to_pairs(items), t, k, r);
              py::dict d;
              d["k"] = report.k;
              d["r"] = report.r;
              d["pairs"] = report.pair_count;
              d["skipped"] = report.skipped_count;
              d["thesaurus_misses"] = report.thesaurus_misses;
              d["average"] = report.average_ratio;
              d["all_skipped"] = report.all_skipped;
              return d;
          },
          py::arg("pairs"), py::arg("thesaurus"), py::arg("k"), py::arg("r") = 0,
          "pairs: [(tweet_id, recommended, ground_truth)]");

    // Recommender.
    py::class_<Recommender>(m, "Recommender")
        .def(py::init([](const std::vector<std::tuple<std::string, std::vector<std::string>>>& train,
                         std::size_t dim, const std::map<std::string, std::vector<double>>& words,
                         double threshold, const std::string& popularity) {
                 std::vector<CleanTweet> tweets;
                 for (const auto& [text, tags] : train) tweets.push_back({"", text, parse_tags(tags)});
                 RecommenderOptions options{threshold, popularity == "global" ? PopularityScope::kGlobal
                                                                              : PopularityScope::kSelectedSet};
                 return Recommender(tweets, to_word_vectors(dim, words), options);
             }),
             py::arg("train"), py::arg("dim"), py::arg("words"), py::arg("threshold") = 0.5,
             py::arg("popularity") = "selected_set")
        .def("recommend", [](const Recommender& rec, const std::string& text, std::size_t r) {
            return tag_strings(rec.recommend(text, r));
        })
        .def_property_readonly("model_size", &Recommender::model_size);

    // Pipeline.
    m.def("sweep", [](const std::filesystem::path& corpus, const std::filesystem::path& work_dir,
                      std::uint64_t seed, std::size_t dim) {
        RunConfig c;
        c.corpus = corpus;
        c.work_dir = work_dir;
        c.seed = seed;
        c.dim = dim;
        return sweep_csv(run_sweep(c, work_dir / "sweep.csv"));
    }, py::arg("corpus"), py::arg("work_dir"), py::arg("seed") = 42, py::arg("dim") = 768,
       "Runs the full pipeline and returns the sweep CSV text.");
}
