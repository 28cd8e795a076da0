#include "reval/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>

#include "io_util.hpp"
#include "reval/errors.hpp"

namespace reval {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) throw InputError("config: bad value for " + key + ": '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw InputError("config: bad boolean for " + key + ": '" + value + "'");
}

std::string join(const std::vector<std::size_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

std::string shortest(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest form that still round-trips.
    for (int precision = 1; precision <= 17; ++precision) {
        char trial[32];
        std::snprintf(trial, sizeof trial, "%.*g", precision, v);
        if (std::strtod(trial, nullptr) == v) return trial;
    }
    return buf;
}

}  // namespace

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_number<std::size_t>("list", item));
    }
    return out;
}

void RunConfig::normalize() {
    std::sort(k_values.begin(), k_values.end());
    k_values.erase(std::unique(k_values.begin(), k_values.end()), k_values.end());
    if (k_values.empty()) throw DomainError("k_values must not be empty");
    if (r_values.empty()) throw DomainError("r_values must not be empty");
    if (std::find(r_values.begin(), r_values.end(), 0u) != r_values.end())
        throw DomainError("r_values must be positive");
    if (!(split_fraction > 0.0 && split_fraction < 1.0)) throw DomainError("split_fraction must lie in (0,1)");
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw DomainError("threshold must lie in [0,1]");
    if (dim < 2) throw DomainError("dim must be at least 2");
}

RunConfig parse_config(std::istream& in) {
    RunConfig c;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
        else if (key == "dim") c.dim = parse_number<std::size_t>(key, value);
        else if (key == "k_values") c.k_values = parse_size_list(value);
        else if (key == "r_values") c.r_values = parse_size_list(value);
        else if (key == "split_fraction") c.split_fraction = parse_number<double>(key, value);
        else if (key == "threshold") c.threshold = parse_number<double>(key, value);
        else if (key == "max_distance") {
            if (value.empty() || value == "none") c.max_distance.reset();
            else c.max_distance = parse_number<double>(key, value);
        } else if (key == "popularity") {
            if (value == "selected_set") c.popularity = PopularityScope::kSelectedSet;
            else if (value == "global") c.popularity = PopularityScope::kGlobal;
            else throw InputError("config: popularity must be selected_set or global");
        } else if (key == "truncate_repeats") c.truncate_repeats = parse_bool(key, value);
        else if (key == "corpus") c.corpus = value;
        else if (key == "stopwords") c.stopwords = value;
        else if (key == "work_dir") c.work_dir = value;
        else if (key == "embeddings") c.embeddings = value;
        else if (key == "word_vectors") c.word_vectors = value;
        else throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    auto in = detail::open_in(path);
    try {
        return parse_config(in);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out << "seed = " << c.seed << '\n'
        << "dim = " << c.dim << '\n'
        << "k_values = " << join(c.k_values) << '\n'
        << "r_values = " << join(c.r_values) << '\n'
        << "split_fraction = " << shortest(c.split_fraction) << '\n'
        << "threshold = " << shortest(c.threshold) << '\n'
        << "max_distance = " << (c.max_distance ? shortest(*c.max_distance) : "none") << '\n'
        << "popularity = " << (c.popularity == PopularityScope::kGlobal ? "global" : "selected_set") << '\n'
        << "truncate_repeats = " << (c.truncate_repeats ? "true" : "false") << '\n'
        << "corpus = " << c.corpus.string() << '\n'
        << "stopwords = " << c.stopwords.string() << '\n'
        << "work_dir = " << c.work_dir.string() << '\n'
        << "embeddings = " << c.embeddings.string() << '\n'
        << "word_vectors = " << c.word_vectors.string() << '\n';
    return out.str();
}

}  // namespace reval
