#include "reval/thesaurus.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "io_util.hpp"
#include "parallel.hpp"
#include "reval/errors.hpp"

namespace reval {
namespace {

using json = nlohmann::json;

struct Candidate {
    double distance;
    const Hashtag* tag;
};

bool closer(const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return *a.tag < *b.tag;
}

// Dictionary directions and their norms, laid out for repeated scans.
struct ScanTable {
    std::vector<const Hashtag*> tags;
    std::vector<const EmbeddingVector*> directions;
    std::vector<double> norms;

    explicit ScanTable(const HashtagDictionary& dict) {
        tags.reserve(dict.size());
        for (const auto& [tag, c] : dict.entries()) {
            tags.push_back(&tag);
            directions.push_back(&c.direction);
            norms.push_back(c.direction.norm());
        }
    }

    std::optional<std::size_t> index_of(const Hashtag& tag) const {
        auto it = std::lower_bound(tags.begin(), tags.end(), &tag,
                                   [](const Hashtag* a, const Hashtag* b) { return *a < *b; });
        if (it == tags.end() || **it != tag) return std::nullopt;
        return static_cast<std::size_t>(it - tags.begin());
    }
};

SynonymList scan(const ScanTable& table, std::size_t query, std::size_t k, const SynonymOptions& options) {
    std::vector<Candidate> candidates;
    candidates.reserve(table.tags.size());
    const auto& q = *table.directions[query];
    for (std::size_t i = 0; i < table.tags.size(); ++i) {
        if (i == query) continue;
        const double d = cosine_distance(q, *table.directions[i], table.norms[query], table.norms[i]);
        if (options.max_distance && d > *options.max_distance) continue;
        candidates.push_back({d, table.tags[i]});
    }
    const std::size_t take = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                      candidates.end(), closer);

    SynonymList list{*table.tags[query], {}, k, take < k};
    list.neighbors.reserve(take);
    for (std::size_t i = 0; i < take; ++i) list.neighbors.push_back({*candidates[i].tag, candidates[i].distance});
    return list;
}

double round_sig9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

}  // namespace

std::vector<Hashtag> SynonymList::members(std::size_t limit) const {
    std::vector<Hashtag> out{head};
    const std::size_t n = std::min(limit, neighbors.size());
    for (std::size_t i = 0; i < n; ++i) out.push_back(neighbors[i].tag);
    return out;
}

bool SynonymList::contains(const Hashtag& tag, std::size_t limit) const {
    if (tag == head) return true;
    const std::size_t n = std::min(limit, neighbors.size());
    return std::any_of(neighbors.begin(), neighbors.begin() + static_cast<std::ptrdiff_t>(n),
                       [&](const Neighbor& nb) { return nb.tag == tag; });
}

std::optional<SynonymList> construct_synonyms(const Hashtag& query, std::size_t k,
                                              const HashtagDictionary& dict,
                                              const SynonymOptions& options) {
    const ScanTable table(dict);
    const auto index = table.index_of(query);
    if (!index) return std::nullopt;
    return scan(table, *index, k, options);
}

Thesaurus::Thesaurus(std::size_t k, std::string digest, Entries entries, std::vector<Hashtag> misses)
    : k_(k), digest_(std::move(digest)), entries_(std::move(entries)), misses_(std::move(misses)) {
    for (const auto& [tag, list] : entries_) {
        if (list.head != tag) throw DomainError("thesaurus entry " + tag.str() + " has head " + list.head.str());
        if (list.k != k_) throw DomainError("thesaurus entry " + tag.str() + " has k != thesaurus k");
        if (list.neighbors.size() > k_) throw DomainError("thesaurus entry " + tag.str() + " has more than k neighbors");
    }
}

Thesaurus Thesaurus::from_lists(std::size_t k, const std::map<Hashtag, std::vector<Hashtag>>& lists) {
    Entries entries;
    for (const auto& [head, synonyms] : lists) {
        SynonymList list{head, {}, k, synonyms.size() < k};
        for (const auto& s : synonyms) {
            if (s == head) throw DomainError("synonym list of " + head.str() + " repeats its head");
            list.neighbors.push_back({s, std::nullopt});
        }
        entries.emplace(head, std::move(list));
    }
    return Thesaurus(k, "literal", std::move(entries));
}

const SynonymList* Thesaurus::find(const Hashtag& tag) const {
    auto it = entries_.find(tag);
    return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::set<Hashtag>> Thesaurus::synonyms(const Hashtag& tag, std::size_t k) const {
    if (k > k_) throw DomainError("requested k=" + std::to_string(k) + " exceeds thesaurus k=" + std::to_string(k_));
    const auto* list = find(tag);
    if (!list) return std::nullopt;
    const auto members = list->members(k);
    return std::set<Hashtag>(members.begin(), members.end());
}

Thesaurus Thesaurus::truncated(std::size_t k) const {
    if (k > k_) throw DomainError("cannot truncate a k=" + std::to_string(k_) + " thesaurus to k=" + std::to_string(k));
    Entries out;
    for (const auto& [tag, list] : entries_) {
        SynonymList cut{list.head, {}, k, false};
        const std::size_t n = std::min(k, list.neighbors.size());
        cut.neighbors.assign(list.neighbors.begin(), list.neighbors.begin() + static_cast<std::ptrdiff_t>(n));
        cut.truncated = n < k;
        out.emplace(tag, std::move(cut));
    }
    return Thesaurus(k, digest_, std::move(out), misses_);
}

Thesaurus build_thesaurus(const HashtagDictionary& dict, std::size_t k,
                          std::optional<std::span<const Hashtag>> queries,
                          const SynonymOptions& options) {
    const ScanTable table(dict);
    std::vector<std::size_t> indices;
    std::vector<Hashtag> misses;
    if (queries) {
        std::set<Hashtag> unique(queries->begin(), queries->end());
        for (const auto& q : unique) {
            if (auto i = table.index_of(q)) indices.push_back(*i);
            else misses.push_back(q);
        }
    } else {
        indices.resize(table.tags.size());
        for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    }

    std::vector<std::optional<SynonymList>> lists(indices.size());
    detail::parallel_for(indices.size(), [&](std::size_t i) { lists[i] = scan(table, indices[i], k, options); }, 4);

    Thesaurus::Entries entries;
    for (auto& list : lists) {
        auto head = list->head;
        entries.emplace(std::move(head), std::move(*list));
    }
    return Thesaurus(k, dict.digest(), std::move(entries), std::move(misses));
}

std::set<Hashtag> synonyms_of_set(const std::set<Hashtag>& tags, const Thesaurus& thesaurus,
                                  std::optional<std::size_t> k) {
    const std::size_t limit = k.value_or(thesaurus.k());
    std::set<Hashtag> out;
    for (const auto& tag : tags) {
        if (auto syn = thesaurus.synonyms(tag, limit)) out.insert(syn->begin(), syn->end());
        else out.insert(tag);
    }
    return out;
}

std::string thesaurus_to_json(const Thesaurus& thesaurus) {
    json entries = json::object();
    for (const auto& [tag, list] : thesaurus.entries()) {
        json neighbors = json::array();
        for (const auto& nb : list.neighbors) {
            neighbors.push_back(json::array(
                {nb.tag.str(), nb.distance ? json(round_sig9(*nb.distance)) : json(nullptr)}));
        }
        entries[tag.str()] = std::move(neighbors);
    }
    const json doc = {{"k", thesaurus.k()}, {"digest", thesaurus.digest()}, {"entries", std::move(entries)}};
    return doc.dump() + "\n";
}

Thesaurus thesaurus_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        const auto k = doc.at("k").get<std::size_t>();
        Thesaurus::Entries entries;
        for (const auto& [key, value] : doc.at("entries").items()) {
            const auto head = Hashtag::parse(key);
            SynonymList list{head, {}, k, false};
            for (const auto& item : value) {
                Neighbor nb{Hashtag::parse(item.at(0).get<std::string>()), std::nullopt};
                if (!item.at(1).is_null()) nb.distance = item.at(1).get<double>();
                list.neighbors.push_back(std::move(nb));
            }
            list.truncated = list.neighbors.size() < k;
            entries.emplace(head, std::move(list));
        }
        return Thesaurus(k, doc.at("digest").get<std::string>(), std::move(entries));
    } catch (const json::exception& e) {
        throw InputError(std::string("thesaurus: ") + e.what());
    } catch (const DomainError& e) {
        throw InputError(std::string("thesaurus: ") + e.what());
    }
}

void write_thesaurus(const std::filesystem::path& path, const Thesaurus& thesaurus) {
    auto out = detail::open_out(path);
    out << thesaurus_to_json(thesaurus);
}

Thesaurus read_thesaurus(const std::filesystem::path& path) {
    auto in = detail::open_in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return thesaurus_from_json(buf.str());
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

}  // namespace reval
