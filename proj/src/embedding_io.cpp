#include "reval/embedding_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "io_util.hpp"
#include "reval/errors.hpp"

namespace reval {
namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
    static_assert(std::is_integral_v<T>);
    std::array<char, sizeof(T)> bytes{};
    for (std::size_t i = 0; i < sizeof(T); ++i)
        bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF);
    out.write(bytes.data(), bytes.size());
}

void put_f32(std::ostream& out, double value) {
    put_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(value)));
}

void put_string(std::ostream& out, const std::string& s) {
    put_le(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

class Reader {
public:
    Reader(std::istream& in, const std::filesystem::path& path) : in_(in), path_(path) {}

    template <typename T>
    T get() {
        std::array<unsigned char, sizeof(T)> bytes{};
        read(bytes.data(), bytes.size());
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
        return static_cast<T>(v);
    }

    std::string get_string() {
        const auto len = get<std::uint32_t>();
        if (len > (1u << 20)) fail("implausible string length " + std::to_string(len));
        std::string s(len, '\0');
        read(s.data(), len);
        return s;
    }

    EmbeddingVector get_vector(std::size_t dim) {
        std::vector<double> values(dim);
        for (auto& v : values) v = std::bit_cast<float>(get<std::uint32_t>());
        try {
            return EmbeddingVector(std::move(values));
        } catch (const DomainError& e) {
            fail(e.what());
        }
    }

    VectorFileHeader header() {
        char magic[4];
        read(magic, 4);
        if (std::memcmp(magic, kMagic, 4) != 0) fail("bad magic (expected \"REVL\")");
        VectorFileHeader h;
        h.version = get<std::uint16_t>();
        if (h.version != kFormatVersion) fail("unsupported format version " + std::to_string(h.version));
        h.dim = get<std::uint32_t>();
        if (h.dim == 0) fail("zero dimension");
        h.count = get<std::uint64_t>();
        return h;
    }

    void expect_eof() {
        if (in_.peek() != std::char_traits<char>::eof()) fail("trailing bytes after last record");
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError(path_.string() + " @" + std::to_string(offset_) + ": " + what);
    }

private:
    void read(void* dst, std::size_t n) {
        in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n) fail("unexpected end of file");
        offset_ += n;
    }

    std::istream& in_;
    const std::filesystem::path& path_;
    std::size_t offset_ = 0;
};

void write_header(std::ostream& out, std::size_t dim, std::size_t count) {
    out.write(kMagic, 4);
    put_le(out, kFormatVersion);
    put_le(out, static_cast<std::uint32_t>(dim));
    put_le(out, static_cast<std::uint64_t>(count));
}

void check_dim(const EmbeddingVector& v, std::size_t dim, const std::string& what) {
    if (v.dim() != dim)
        throw DomainError(what + ": dimension " + std::to_string(v.dim()) + " != " + std::to_string(dim));
}

}  // namespace

VectorFileHeader read_header(const std::filesystem::path& path) {
    auto in = detail::open_in(path, true);
    return Reader(in, path).header();
}

VectorFileHeader validate_tweet_embedding_file(const std::filesystem::path& path) {
    const auto h = read_header(path);
    const auto expected = kHeaderBytes + h.count * (8 + 4 * static_cast<std::uint64_t>(h.dim));
    const auto actual = std::filesystem::file_size(path);
    if (actual != expected)
        throw InputError(path.string() + ": size " + std::to_string(actual) + " != expected " +
                         std::to_string(expected) + " for " + std::to_string(h.count) +
                         " records of dim " + std::to_string(h.dim));
    read_tweet_embeddings(path);
    return h;
}

void write_tweet_embeddings(const std::filesystem::path& path, const TweetEmbeddings& embeddings) {
    auto out = detail::open_out(path, true);
    write_header(out, embeddings.dim, embeddings.vectors.size());
    for (const auto& [index, v] : embeddings.vectors) {
        check_dim(v, embeddings.dim, "tweet " + std::to_string(index));
        put_le(out, static_cast<std::uint64_t>(index));
        for (double x : v.values()) put_f32(out, x);
    }
}

TweetEmbeddings read_tweet_embeddings(const std::filesystem::path& path) {
    auto in = detail::open_in(path, true);
    Reader reader(in, path);
    const auto h = reader.header();
    TweetEmbeddings out{h.dim, {}};
    for (std::uint64_t i = 0; i < h.count; ++i) {
        const auto index = reader.get<std::uint64_t>();
        auto v = reader.get_vector(h.dim);
        if (!out.vectors.emplace(index, std::move(v)).second)
            reader.fail("duplicate tweet_index " + std::to_string(index));
    }
    reader.expect_eof();
    return out;
}

void write_tweet_embeddings_tsv(const std::filesystem::path& path, const TweetEmbeddings& embeddings) {
    auto out = detail::open_out(path);
    char buf[32];
    for (const auto& [index, v] : embeddings.vectors) {
        check_dim(v, embeddings.dim, "tweet " + std::to_string(index));
        out << index;
        for (double x : v.values()) {
            std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(static_cast<float>(x)));
            out << '\t' << buf;
        }
        out << '\n';
    }
}

TweetEmbeddings read_tweet_embeddings_tsv(const std::filesystem::path& path) {
    auto in = detail::open_in(path);
    TweetEmbeddings out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::istringstream fields(line);
        std::size_t index = 0;
        if (!(fields >> index)) throw InputError(detail::where(path, line_no) + ": bad tweet_index");
        std::vector<double> values;
        double x = 0;
        while (fields >> x) values.push_back(static_cast<double>(static_cast<float>(x)));  // same precision as the binary form
        if (!fields.eof()) throw InputError(detail::where(path, line_no) + ": bad float");
        if (out.dim == 0) out.dim = values.size();
        if (values.size() != out.dim || out.dim == 0)
            throw InputError(detail::where(path, line_no) + ": expected " + std::to_string(out.dim) + " values");
        try {
            if (!out.vectors.emplace(index, EmbeddingVector(std::move(values))).second)
                throw InputError("duplicate tweet_index");
        } catch (const std::exception& e) {
            throw InputError(detail::where(path, line_no) + ": " + e.what());
        }
    }
    return out;
}

void write_word_vectors(const std::filesystem::path& path, const WordVectors& words) {
    auto out = detail::open_out(path, true);
    write_header(out, words.dim, words.vectors.size());
    for (const auto& [token, v] : words.vectors) {
        check_dim(v, words.dim, "token " + token);
        put_string(out, token);
        for (double x : v.values()) put_f32(out, x);
    }
}

WordVectors read_word_vectors(const std::filesystem::path& path) {
    auto in = detail::open_in(path, true);
    Reader reader(in, path);
    const auto h = reader.header();
    WordVectors out{h.dim, {}};
    for (std::uint64_t i = 0; i < h.count; ++i) {
        auto token = reader.get_string();
        auto v = reader.get_vector(h.dim);
        if (!out.vectors.emplace(token, std::move(v)).second) reader.fail("duplicate token '" + token + "'");
    }
    reader.expect_eof();
    return out;
}

void write_dictionary(const std::filesystem::path& path, const HashtagDictionary& dict) {
    auto out = detail::open_out(path, true);
    write_header(out, dict.dim(), dict.size());
    for (const auto& [tag, c] : dict.entries()) {
        put_string(out, tag.str());
        put_le(out, c.count);
        for (double x : c.running_sum.values()) put_f32(out, x);
    }
}

HashtagDictionary read_dictionary(const std::filesystem::path& path) {
    auto in = detail::open_in(path, true);
    Reader reader(in, path);
    const auto h = reader.header();
    HashtagDictionary dict(h.dim);
    for (std::uint64_t i = 0; i < h.count; ++i) {
        const auto raw = reader.get_string();
        const auto count = reader.get<std::uint64_t>();
        auto sum = reader.get_vector(h.dim);
        try {
            const auto tag = Hashtag::parse(raw);
            if (dict.contains(tag)) reader.fail("duplicate hashtag " + raw);
            dict.insert(tag, std::move(sum), count);
        } catch (const DomainError& e) {
            reader.fail(e.what());
        }
    }
    reader.expect_eof();
    return dict;
}

}  // namespace reval
