#include "reval/hashtag.hpp"

#include <algorithm>

#include "reval/errors.hpp"

namespace reval {
namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

bool Hashtag::is_valid(std::string_view text) {
    if (text.size() < 2 || text.front() != '#') return false;
    return std::none_of(text.begin() + 1, text.end(),
                        [](char c) { return c == '#' || is_space(c); });
}

Hashtag Hashtag::parse(std::string_view text) {
    if (!is_valid(text)) throw DomainError("invalid hashtag '" + std::string(text) + "'");
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(), [](char c) {
        return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    });
    return Hashtag(std::move(lowered));
}

}  // namespace reval
