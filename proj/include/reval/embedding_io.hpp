#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "reval/dictionary.hpp"
#include "reval/embedding.hpp"

namespace reval {

// Binary layout shared by the three vector files, all little-endian:
//
//   "REVL" | version u16 | dim u32 | count u64 | count records
//
// tweet embeddings: record = tweet_index u64, dim x f32
// word vectors:     record = token (u32 byte length + UTF-8), dim x f32
// dictionary:       record = hashtag (u32 byte length + UTF-8), n_h u64, dim x f32 running sum
//
// Values are f32 on disk and widened to f64 on load.

inline constexpr char kMagic[4] = {'R', 'E', 'V', 'L'};
inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderBytes = 4 + 2 + 4 + 8;

struct VectorFileHeader {
    std::uint16_t version = kFormatVersion;
    std::uint32_t dim = 0;
    std::uint64_t count = 0;
};

/// Reads and checks the header only. Throws InputError on a bad magic,
/// unsupported version or zero dimension.
VectorFileHeader read_header(const std::filesystem::path& path);

/// Full structural check of a tweet-embedding file: header, exact file size
/// for `count` records, finite values, unique tweet indices.
VectorFileHeader validate_tweet_embedding_file(const std::filesystem::path& path);

void write_tweet_embeddings(const std::filesystem::path& path, const TweetEmbeddings& embeddings);
TweetEmbeddings read_tweet_embeddings(const std::filesystem::path& path);

/// Debug form: one line per tweet, tweet_index then dim tab-separated floats.
void write_tweet_embeddings_tsv(const std::filesystem::path& path, const TweetEmbeddings& embeddings);
TweetEmbeddings read_tweet_embeddings_tsv(const std::filesystem::path& path);

void write_word_vectors(const std::filesystem::path& path, const WordVectors& words);
WordVectors read_word_vectors(const std::filesystem::path& path);

void write_dictionary(const std::filesystem::path& path, const HashtagDictionary& dict);
HashtagDictionary read_dictionary(const std::filesystem::path& path);

}  // namespace reval
