#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "reval/hashtag.hpp"

namespace reval {

struct RawTweet {
    std::string id;
    std::string text;
    bool is_retweet = false;
};

/// A tweet after cleaning. `hashtags` lists hashtag tokens in order of
/// appearance and may repeat; explode() collapses repeats.
struct CleanTweet {
    std::string id;
    std::string text;
    std::vector<Hashtag> hashtags;

    friend bool operator==(const CleanTweet&, const CleanTweet&) = default;
};

enum class DropReason { kNoHashtags, kNonEnglish, kDuplicateRetweet };

struct Dropped {
    DropReason reason;
};

using CleanResult = std::variant<CleanTweet, Dropped>;

std::string_view to_string(DropReason reason);

using StopwordSet = std::unordered_set<std::string>;

/// Language gate applied to the raw text. An empty function keeps every tweet.
using LanguagePredicate = std::function<bool(std::string_view)>;

struct CleanOptions {
    /// Cap runs of one repeated character at three ("heeeeello" -> "heeello").
    bool truncate_repeats = true;
    LanguagePredicate is_english;
};

/// The text-only part of cleaning: strips URLs and @-mentions, lowercases,
/// turns punctuation other than '#' and '_' into token breaks, caps repeated
/// characters and removes stopwords. Throws InputError on malformed UTF-8.
std::string normalize_text(std::string_view text, const StopwordSet& stopwords,
                           bool truncate_repeats = true);

/// Hashtag tokens of an already normalized text, in order, repeats kept.
std::vector<Hashtag> extract_hashtags(std::string_view normalized_text);

/// Stateful cleaner. The state is the set of (words, hashtag) records kept so
/// far, where words is the cleaned text minus its hashtags. A retweet keeps
/// only hashtags not already recorded for the same words.
class Preprocessor {
public:
    explicit Preprocessor(StopwordSet stopwords, CleanOptions options = {});

    CleanResult clean(const RawTweet& raw);

    const StopwordSet& stopwords() const noexcept { return stopwords_; }

private:
    StopwordSet stopwords_;
    CleanOptions options_;
    std::set<std::pair<std::string, Hashtag>> seen_;
};

/// One (tweet, hashtag) pair. `ordinal` is the 1-based duplication number of
/// the tweet, in order of first appearance of the hashtag.
struct CorpusRecord {
    std::size_t tweet_index = 0;
    Hashtag hashtag;
    std::uint32_t ordinal = 0;

    friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

std::vector<CorpusRecord> explode(const CleanTweet& tweet, std::size_t tweet_index);

/// Records for a whole corpus; tweet_index is the position in `corpus`.
std::vector<CorpusRecord> explode_corpus(std::span<const CleanTweet> corpus);

struct CorpusSplit {
    std::vector<CleanTweet> train;
    std::vector<CleanTweet> test;
    /// Positions of train/test tweets in the input corpus, ascending.
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    double split_fraction = 0.9;
    std::uint64_t seed = 0;
};

/// Seeded shuffle, then floor(n * fraction) tweets go to train. Both halves
/// keep the corpus order. Throws DomainError unless 0 < fraction < 1 and the
/// corpus is non-empty.
CorpusSplit split(std::span<const CleanTweet> corpus, double fraction, std::uint64_t seed);

// File formats.

/// One token per line, UTF-8. Blank lines and lines starting with '#' are skipped.
StopwordSet parse_stopwords(std::istream& in);
StopwordSet load_stopwords(const std::filesystem::path& path);

/// JSON-lines {"id", "text", "retweet"?}. Rejects duplicate ids.
std::vector<RawTweet> read_raw_corpus(const std::filesystem::path& path);
void write_raw_corpus(const std::filesystem::path& path, std::span<const RawTweet> tweets);

/// JSON-lines {"id", "text", "hashtags"}.
std::vector<CleanTweet> read_clean_corpus(const std::filesystem::path& path);
void write_clean_corpus(const std::filesystem::path& path, std::span<const CleanTweet> tweets);

/// TSV: tweet_index \t hashtag \t ordinal.
std::vector<CorpusRecord> read_records(const std::filesystem::path& path);
void write_records(const std::filesystem::path& path, std::span<const CorpusRecord> records);

}  // namespace reval
