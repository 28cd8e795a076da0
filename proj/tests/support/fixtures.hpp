#pragma once

#include <map>
#include <string>
#include <vector>

#include "reval/hashtag.hpp"
#include "reval/metrics.hpp"
#include "reval/thesaurus.hpp"

namespace reval::fixtures {

inline Hashtag H(const char* s) { return Hashtag::parse(s); }

inline std::vector<Hashtag> tags(std::initializer_list<const char*> items) {
    std::vector<Hashtag> out;
    for (const char* s : items) out.push_back(H(s));
    return out;
}

/// The six synonym lists printed under the worked-examples table (k = 3).
inline Thesaurus worked_example_thesaurus() {
    std::map<Hashtag, std::vector<Hashtag>> lists{
        {H("#hockey"), tags({"#bowling", "#golf", "#sport"})},
        {H("#championship"), tags({"#champion", "#winner", "#tournament"})},
        {H("#football"), tags({"#soccer", "#footy", "#rugby"})},
        {H("#sport"), tags({"#sports", "#exercise", "#keeepfit"})},
        {H("#swim"), tags({"#dive", "#paddle", "#sport"})},
        {H("#exercise"), tags({"#keeepfit", "#yoga", "#walking"})},
    };
    return Thesaurus::from_lists(3, lists);
}

struct WorkedExample {
    std::vector<Hashtag> recommended;
    std::vector<Hashtag> ground_truth;
    std::size_t rho;
    std::size_t denominator;
};

/// The four (R, G) rows of the worked-examples table with their printed rho and ratio.
inline std::vector<WorkedExample> worked_examples() {
    return {
        {tags({"#hockey", "#championship"}), tags({"#football", "#sport"}), 1, 2},
        {tags({"#football", "#sport"}), tags({"#hockey", "#sports"}), 1, 2},
        {tags({"#hockey"}), tags({"#football", "#rugby"}), 0, 1},
        {tags({"#swim", "#exercise"}), tags({"#sport"}), 1, 1},
    };
}

}  // namespace reval::fixtures
