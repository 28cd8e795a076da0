#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace reval {

/// A lowercase '#'-prefixed tag. Identity is case-insensitive, so the stored
/// form is always lowercased (ASCII letters only; other bytes are kept as-is).
class Hashtag {
public:
    /// Throws DomainError unless `text` is '#' followed by at least one
    /// character that is neither whitespace nor '#'.
    static Hashtag parse(std::string_view text);

    /// True when `text` would be accepted by parse().
    static bool is_valid(std::string_view text);

    const std::string& str() const noexcept { return value_; }
    std::string_view body() const noexcept { return std::string_view(value_).substr(1); }

    friend auto operator<=>(const Hashtag&, const Hashtag&) = default;
    friend bool operator==(const Hashtag&, const Hashtag&) = default;

private:
    explicit Hashtag(std::string value) : value_(std::move(value)) {}
    std::string value_;
};

}  // namespace reval

template <>
struct std::hash<reval::Hashtag> {
    std::size_t operator()(const reval::Hashtag& h) const noexcept {
        return std::hash<std::string>{}(h.str());
    }
};
