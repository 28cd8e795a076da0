#include "reval/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "io_util.hpp"
#include "reval/errors.hpp"
#include "utf8.hpp"

namespace reval {
namespace {

using json = nlohmann::json;

bool is_ascii_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v';
}

bool is_word_ascii(char32_t c) {
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9') ||
           c == U'_';
}

// ASCII punctuation plus the common Unicode punctuation blocks. '#' and '_'
// are handled by the caller.
bool is_punctuation(char32_t c) {
    if (c < 0x80) return (c > 0x20 && c < 0x7F) && !is_word_ascii(c);
    return (c >= 0x00A1 && c <= 0x00BF) || c == 0x00D7 || c == 0x00F7 ||
           (c >= 0x2010 && c <= 0x205E) || (c >= 0x3000 && c <= 0x303F) ||
           (c >= 0xFE30 && c <= 0xFE4F) || (c >= 0xFF01 && c <= 0xFF0F) ||
           (c >= 0xFF1A && c <= 0xFF20);
}

char32_t ascii_lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c - U'A' + U'a' : c; }

bool starts_with_ci(std::u32string_view s, std::u32string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (ascii_lower(s[i]) != prefix[i]) return false;
    return true;
}

std::vector<std::u32string_view> split_ws(std::u32string_view text) {
    std::vector<std::u32string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i])) ++i;
        const std::size_t start = i;
        while (i < text.size() && !is_ascii_space(text[i])) ++i;
        if (i > start) tokens.push_back(text.substr(start, i - start));
    }
    return tokens;
}

// Position of an embedded URL scheme inside a token, or npos.
std::size_t url_start(std::u32string_view token) {
    if (starts_with_ci(token, U"www.")) return 0;
    for (std::size_t i = 0; i < token.size(); ++i) {
        auto rest = token.substr(i);
        if (starts_with_ci(rest, U"http://") || starts_with_ci(rest, U"https://")) return i;
    }
    return std::u32string_view::npos;
}

// Applies URL/mention removal, lowercasing and punctuation breaking to one raw
// whitespace token, appending the result (possibly several sub-tokens
// separated by spaces) to `out`.
void scrub_token(std::u32string_view token, std::u32string& out) {
    const std::size_t url = url_start(token);
    if (url != std::u32string_view::npos) token = token.substr(0, url);
    out.push_back(U' ');
    for (std::size_t i = 0; i < token.size(); ++i) {
        const char32_t c = token[i];
        if (c == U'@') {
            std::size_t j = i + 1;
            while (j < token.size() && is_word_ascii(token[j])) ++j;
            i = j - 1;
            out.push_back(U' ');
        } else if (c == U'#') {
            out.push_back(U' ');
            out.push_back(U'#');
        } else if (c == U'_' || !is_punctuation(c)) {
            out.push_back(ascii_lower(c));
        } else {
            out.push_back(U' ');
        }
    }
}

std::u32string truncate_runs(std::u32string_view token) {
    std::u32string out;
    out.reserve(token.size());
    std::size_t run = 0;
    for (std::size_t i = 0; i < token.size(); ++i) {
        run = (i > 0 && token[i] == token[i - 1]) ? run + 1 : 1;
        if (run <= 3) out.push_back(token[i]);
    }
    return out;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    // Rejection sampling keeps the draw unbiased and independent of the
    // standard library's distribution implementation.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::string trim_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

std::string_view to_string(DropReason reason) {
    switch (reason) {
        case DropReason::kNoHashtags: return "no_hashtags";
        case DropReason::kNonEnglish: return "non_english";
        case DropReason::kDuplicateRetweet: return "duplicate_retweet";
    }
    return "unknown";
}

std::string normalize_text(std::string_view text, const StopwordSet& stopwords,
                           bool truncate_repeats) {
    std::u32string decoded;
    std::size_t bad = 0;
    if (!detail::decode_utf8(text, decoded, bad))
        throw InputError("malformed UTF-8 at byte " + std::to_string(bad));

    std::u32string scrubbed;
    for (auto token : split_ws(decoded)) scrub_token(token, scrubbed);

    std::string result;
    for (auto token : split_ws(scrubbed)) {
        if (token == U"#") continue;
        const std::string word =
            detail::encode_utf8(truncate_repeats ? truncate_runs(token) : std::u32string(token));
        if (word.front() != '#' && stopwords.contains(word)) continue;
        if (!result.empty()) result.push_back(' ');
        result += word;
    }
    return result;
}

std::vector<Hashtag> extract_hashtags(std::string_view normalized_text) {
    std::vector<Hashtag> tags;
    std::size_t i = 0;
    while (i < normalized_text.size()) {
        const std::size_t end = std::min(normalized_text.find(' ', i), normalized_text.size());
        const auto token = normalized_text.substr(i, end - i);
        if (Hashtag::is_valid(token)) tags.push_back(Hashtag::parse(token));
        i = end + 1;
    }
    return tags;
}

namespace {

std::string without_hashtags(std::string_view text) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = text.find(' ', i);
        if (j == std::string_view::npos) j = text.size();
        if (j > i && text[i] != '#') {
            if (!out.empty()) out += ' ';
            out.append(text.substr(i, j - i));
        }
        i = j + 1;
    }
    return out;
}

}  // namespace

Preprocessor::Preprocessor(StopwordSet stopwords, CleanOptions options)
    : stopwords_(std::move(stopwords)), options_(std::move(options)) {}

CleanResult Preprocessor::clean(const RawTweet& raw) {
    std::string text = normalize_text(raw.text, stopwords_, options_.truncate_repeats);
    if (options_.is_english && !options_.is_english(raw.text)) return Dropped{DropReason::kNonEnglish};

    std::vector<Hashtag> tags = extract_hashtags(text);
    if (tags.empty()) return Dropped{DropReason::kNoHashtags};

    // Retweets are matched on their words alone, since they often add or drop tags.
    const std::string key = without_hashtags(text);
    if (raw.is_retweet) {
        std::erase_if(tags, [&](const Hashtag& h) { return seen_.contains({key, h}); });
        if (tags.empty()) return Dropped{DropReason::kDuplicateRetweet};
    }
    for (const auto& h : tags) seen_.emplace(key, h);
    return CleanTweet{raw.id, std::move(text), std::move(tags)};
}

std::vector<CorpusRecord> explode(const CleanTweet& tweet, std::size_t tweet_index) {
    std::vector<CorpusRecord> records;
    for (const auto& h : tweet.hashtags) {
        const bool repeat = std::any_of(records.begin(), records.end(),
                                        [&](const CorpusRecord& r) { return r.hashtag == h; });
        if (repeat) continue;
        records.push_back({tweet_index, h, static_cast<std::uint32_t>(records.size() + 1)});
    }
    return records;
}

std::vector<CorpusRecord> explode_corpus(std::span<const CleanTweet> corpus) {
    std::vector<CorpusRecord> records;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto part = explode(corpus[i], i);
        records.insert(records.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    }
    return records;
}

CorpusSplit split(std::span<const CleanTweet> corpus, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw DomainError("split fraction must lie in (0,1), got " + std::to_string(fraction));
    if (corpus.empty()) throw DomainError("cannot split an empty corpus");

    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[uniform_below(rng, i + 1)]);

    // The epsilon absorbs representation error, e.g. 10 * 0.9 -> 8.999...
    const auto n_train = static_cast<std::size_t>(
        std::floor(static_cast<double>(corpus.size()) * fraction + 1e-9));

    CorpusSplit out;
    out.split_fraction = fraction;
    out.seed = seed;
    out.train_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    std::sort(out.train_indices.begin(), out.train_indices.end());
    std::sort(out.test_indices.begin(), out.test_indices.end());
    for (auto i : out.train_indices) out.train.push_back(corpus[i]);
    for (auto i : out.test_indices) out.test.push_back(corpus[i]);
    return out;
}

StopwordSet parse_stopwords(std::istream& in) {
    StopwordSet words;
    std::string line;
    while (std::getline(in, line)) {
        line = trim_cr(std::move(line));
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t");
        std::string word = line.substr(first, last - first + 1);
        std::transform(word.begin(), word.end(), word.begin(), [](char c) {
            return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
        });
        words.insert(std::move(word));
    }
    return words;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
    auto in = detail::open_in(path);
    return parse_stopwords(in);
}

std::vector<RawTweet> read_raw_corpus(const std::filesystem::path& path) {
    auto in = detail::open_in(path);
    std::vector<RawTweet> tweets;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json obj = json::parse(line);
            RawTweet t;
            t.id = obj.at("id").get<std::string>();
            t.text = obj.at("text").get<std::string>();
            t.is_retweet = obj.value("retweet", false);
            if (t.text.empty()) throw InputError("empty text");
            if (!ids.insert(t.id).second) throw InputError("duplicate id '" + t.id + "'");
            tweets.push_back(std::move(t));
        } catch (const json::exception& e) {
            throw InputError(detail::where(path, line_no) + ": " + e.what());
        } catch (const InputError& e) {
            throw InputError(detail::where(path, line_no) + ": " + e.what());
        }
    }
    return tweets;
}

void write_raw_corpus(const std::filesystem::path& path, std::span<const RawTweet> tweets) {
    auto out = detail::open_out(path);
    for (const auto& t : tweets) {
        json obj = {{"id", t.id}, {"text", t.text}};
        if (t.is_retweet) obj["retweet"] = true;
        out << obj.dump() << '\n';
    }
}

std::vector<CleanTweet> read_clean_corpus(const std::filesystem::path& path) {
    auto in = detail::open_in(path);
    std::vector<CleanTweet> tweets;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json obj = json::parse(line);
            CleanTweet t;
            t.id = obj.at("id").get<std::string>();
            t.text = obj.at("text").get<std::string>();
            for (const auto& h : obj.at("hashtags")) t.hashtags.push_back(Hashtag::parse(h.get<std::string>()));
            if (t.hashtags.empty()) throw InputError("cleaned tweet without hashtags");
            tweets.push_back(std::move(t));
        } catch (const json::exception& e) {
            throw InputError(detail::where(path, line_no) + ": " + e.what());
        } catch (const std::exception& e) {
            throw InputError(detail::where(path, line_no) + ": " + e.what());
        }
    }
    return tweets;
}

void write_clean_corpus(const std::filesystem::path& path, std::span<const CleanTweet> tweets) {
    auto out = detail::open_out(path);
    for (const auto& t : tweets) {
        json tags = json::array();
        for (const auto& h : t.hashtags) tags.push_back(h.str());
        out << json{{"id", t.id}, {"text", t.text}, {"hashtags", tags}}.dump() << '\n';
    }
}

std::vector<CorpusRecord> read_records(const std::filesystem::path& path) {
    auto in = detail::open_in(path);
    std::vector<CorpusRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim_cr(std::move(line));
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string index, tag, ordinal;
        if (!std::getline(fields, index, '\t') || !std::getline(fields, tag, '\t') ||
            !std::getline(fields, ordinal, '\t'))
            throw InputError(detail::where(path, line_no) + ": expected 3 tab-separated fields");
        try {
            std::size_t used = 0;
            CorpusRecord r{std::stoull(index, &used), Hashtag::parse(tag), 0};
            if (used != index.size()) throw InputError("bad tweet_index");
            r.ordinal = static_cast<std::uint32_t>(std::stoul(ordinal, &used));
            if (used != ordinal.size() || r.ordinal == 0) throw InputError("bad ordinal");
            records.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw InputError(detail::where(path, line_no) + ": " + e.what());
        }
    }
    return records;
}

void write_records(const std::filesystem::path& path, std::span<const CorpusRecord> records) {
    auto out = detail::open_out(path);
    for (const auto& r : records) out << r.tweet_index << '\t' << r.hashtag.str() << '\t' << r.ordinal << '\n';
}

}  // namespace reval
