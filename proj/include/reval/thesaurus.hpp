#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "reval/dictionary.hpp"
#include "reval/hashtag.hpp"

namespace reval {

struct Neighbor {
    Hashtag tag;
    /// Cosine distance to the head. Empty for hand-written thesauri.
    std::optional<double> distance;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Syn_k(head): the head plus its k nearest other hashtags, nearest first.
/// Ties are ordered lexicographically by hashtag.
struct SynonymList {
    Hashtag head;
    std::vector<Neighbor> neighbors;
    std::size_t k = 0;
    /// Fewer than k neighbors were available (small dictionary or distance cutoff).
    bool truncated = false;

    /// Head followed by at most `limit` neighbors.
    std::vector<Hashtag> members(std::size_t limit) const;
    bool contains(const Hashtag& tag, std::size_t limit) const;

    friend bool operator==(const SynonymList&, const SynonymList&) = default;
};

struct SynonymOptions {
    /// Neighbors farther than this are not synonyms.
    std::optional<double> max_distance;
};

/// Exact kNN over centroid directions by cosine distance. Returns nullopt
/// when `query` is not in the dictionary. A k larger than the number of other
/// hashtags is clamped and the list is flagged truncated.
std::optional<SynonymList> construct_synonyms(const Hashtag& query, std::size_t k,
                                              const HashtagDictionary& dict,
                                              const SynonymOptions& options = {});

class Thesaurus {
public:
    using Entries = std::map<Hashtag, SynonymList>;

    Thesaurus() = default;
    Thesaurus(std::size_t k, std::string digest, Entries entries, std::vector<Hashtag> misses = {});

    /// Thesaurus from literal synonym lists (head excluded from each list).
    /// Lists longer than k are rejected.
    static Thesaurus from_lists(std::size_t k, const std::map<Hashtag, std::vector<Hashtag>>& lists);

    std::size_t k() const noexcept { return k_; }
    const std::string& digest() const noexcept { return digest_; }
    const Entries& entries() const noexcept { return entries_; }
    /// Queries that were requested but absent from the source dictionary.
    const std::vector<Hashtag>& misses() const noexcept { return misses_; }

    const SynonymList* find(const Hashtag& tag) const;

    /// Syn_k(tag) as a set, head included. nullopt if `tag` has no entry.
    /// Throws DomainError if k exceeds the thesaurus k.
    std::optional<std::set<Hashtag>> synonyms(const Hashtag& tag, std::size_t k) const;

    /// Same thesaurus cut down to a smaller k.
    Thesaurus truncated(std::size_t k) const;

    friend bool operator==(const Thesaurus&, const Thesaurus&) = default;

private:
    std::size_t k_ = 0;
    std::string digest_;
    Entries entries_;
    std::vector<Hashtag> misses_;
};

/// One synonym list per query (every dictionary hashtag when `queries` is
/// empty). Missing queries are collected in misses() rather than failing.
Thesaurus build_thesaurus(const HashtagDictionary& dict, std::size_t k,
                          std::optional<std::span<const Hashtag>> queries = std::nullopt,
                          const SynonymOptions& options = {});

/// Union of Syn_k(h) for h in `tags`, each h included. Hashtags without an
/// entry contribute only themselves. Uses the thesaurus k unless `k` is given.
std::set<Hashtag> synonyms_of_set(const std::set<Hashtag>& tags, const Thesaurus& thesaurus,
                                  std::optional<std::size_t> k = std::nullopt);

/// JSON {"k", "digest", "entries": {hashtag: [[neighbor, distance], ...]}}
/// with distances rounded to 9 significant digits.
void write_thesaurus(const std::filesystem::path& path, const Thesaurus& thesaurus);
Thesaurus read_thesaurus(const std::filesystem::path& path);
std::string thesaurus_to_json(const Thesaurus& thesaurus);
Thesaurus thesaurus_from_json(const std::string& text);

}  // namespace reval
