#include "oracles/reference_lab.hpp"
#include "rampforge/corpus.hpp"
#include "rampforge/error.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <random>
#include <sstream>

using namespace rampforge;

namespace {

const std::filesystem::path kSample = std::filesystem::path(RAMPFORGE_SOURCE_DIR) / "data" / "sample_corpus.txt";

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Drop comment and blank lines, the only non-canonical parts of the bundled file.
std::string strip_comments(const std::string& text)
{
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        out += line + '\n';
    }
    return out;
}

std::string parse_error(std::string_view text)
{
    try {
        parse_corpus_text(text, "t");
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("single line")
{
    const auto c = parse_corpus_text("cb-blues-5,colorbrewer,sequential,#EFF3FF;#BDD7E7;#6BAED6;#3182BD;#08519C\n");
    REQUIRE(c.ramps.size() == 1);
    const auto& r = c.ramps[0];
    CHECK(r.id == "cb-blues-5");
    CHECK(r.source == RampSource::colorbrewer);
    CHECK(r.kind == RampKind::sequential);
    REQUIRE(r.colors.size() == 5);
    const auto want = oracle::lab_from_rgb8(0x31, 0x82, 0xBD);
    CHECK(r.colors[3].L == doctest::Approx(want.L).epsilon(1e-10));
    CHECK(r.colors[3].a == doctest::Approx(want.a).epsilon(1e-10));
    CHECK(r.colors[3].b == doctest::Approx(want.b).epsilon(1e-10));
    CHECK(c.fingerprint.size() == 64);
}

TEST_CASE("comments, blanks, whitespace and case are tolerated")
{
    const auto a = parse_corpus_text("x,r,diverging,#000000;#ffffff\n");
    const auto b = parse_corpus_text("# header\n\n  x , r , diverging , #000000 ; #FFFFFF \r\n   # tail\n");
    CHECK(serialize_corpus(a) == "x,r,diverging,#000000;#FFFFFF\n");
    CHECK(serialize_corpus(b) == serialize_corpus(a));
    CHECK(a.fingerprint == b.fingerprint);
}

TEST_CASE("parse errors carry the line number")
{
    CHECK(parse_error("a,r,sequential,#000000;#FFFFFF\n\nb,r,sequential,#000000;#FFFFFF\na,r,sequential,#111111;#222222\n")
          == "t:4: duplicate ramp id 'a' (first defined on line 1)");
    CHECK(parse_error("a,r,sequential,#00000G;#FFFFFF\n").rfind("t:1: ", 0) == 0);
    CHECK(parse_error("# c\na,nowhere,sequential,#000000;#FFFFFF\n") == "t:2: unknown source 'nowhere'");
    CHECK(parse_error("a,r,cyclic,#000000;#FFFFFF\n") == "t:1: unknown kind 'cyclic'");
    CHECK(parse_error("a,r,sequential,#000000\n") == "t:1: ramp 'a' has fewer than 2 colors");
    CHECK(parse_error("a,r,sequential\n") == "t:1: expected 4 comma-separated fields, got 3");
    CHECK(parse_error("a,r,sequential,#000000;;#FFFFFF\n") == "t:1: empty color entry");
    CHECK(parse_error(",r,sequential,#000000;#FFFFFF\n") == "t:1: empty ramp id");
    CHECK_THROWS_AS(parse_corpus("/nonexistent/corpus.txt"), ParseError);
}

TEST_CASE("empty corpus")
{
    for (const char* text : {"", "\n\n", "# only a comment\n"}) {
        const auto c = parse_corpus_text(text);
        CHECK(c.ramps.empty());
        CHECK(serialize_corpus(c).empty());
        const auto s = corpus_stats(c);
        CHECK(s.total == 0);
        CHECK(s.sequential == 0);
        CHECK(s.diverging == 0);
        CHECK(s.min_length == 0);
        CHECK(s.max_length == 0);
        CHECK(s.length_histogram.empty());
        for (const auto& [src, n] : s.by_source) CHECK(n == 0);
    }
}

TEST_CASE("bundled corpus re-serializes byte for byte")
{
    const std::string canonical = strip_comments(read_file(kSample));
    const auto c = parse_corpus(kSample);
    CHECK(serialize_corpus(c) == canonical);
    const auto again = parse_corpus_text(serialize_corpus(c));
    CHECK(serialize_corpus(again) == canonical);
    CHECK(again.fingerprint == c.fingerprint);
}

TEST_CASE("fingerprint tracks content")
{
    const std::string canonical = strip_comments(read_file(kSample));
    const std::string base = parse_corpus_text(canonical).fingerprint;
    CHECK(parse_corpus(kSample).fingerprint == base);

    std::mt19937_64 rng(3);
    std::vector<std::size_t> hex_digits;
    for (std::size_t i = 0; i + 1 < canonical.size(); ++i)
        if (canonical[i] == '#') hex_digits.push_back(i + 1 + rng() % 6);
    for (int trial = 0; trial < 50; ++trial) {
        std::string edited = canonical;
        const std::size_t pos = hex_digits[rng() % hex_digits.size()];
        edited[pos] = edited[pos] == '0' ? '1' : '0';
        REQUIRE(parse_corpus_text(edited).fingerprint != base);
    }

    // Renaming, re-kinding and reordering are content changes too.
    const auto swap_first_two = [&] {
        const auto one = canonical.find('\n') + 1;
        const auto two = canonical.find('\n', one) + 1;
        return canonical.substr(one, two - one) + canonical.substr(0, one) + canonical.substr(two);
    };
    CHECK(parse_corpus_text(swap_first_two()).fingerprint != base);
    std::string renamed = canonical;
    renamed[0] = 'X';
    CHECK(parse_corpus_text(renamed).fingerprint != base);

    // Comments and formatting are not.
    CHECK(parse_corpus_text("# note\n" + canonical + "\n\n").fingerprint == base);
}

TEST_CASE("bundled corpus stats match its manifest")
{
    std::ifstream in(std::filesystem::path(RAMPFORGE_SOURCE_DIR) / "data" / "sample_corpus.manifest.json");
    const auto m = nlohmann::json::parse(in);
    const auto s = corpus_stats(parse_corpus(kSample));
    CHECK(s.total == m["total"].get<std::size_t>());
    CHECK(s.sequential == m["sequential"].get<std::size_t>());
    CHECK(s.diverging == m["diverging"].get<std::size_t>());
    CHECK(s.min_length == m["min_length"].get<std::size_t>());
    CHECK(s.max_length == m["max_length"].get<std::size_t>());
    for (const auto& [src, n] : s.by_source) CHECK(n == m["by_source"][std::string(to_string(src))].get<std::size_t>());
    CHECK(s.length_histogram.size() == m["length_histogram"].size());
    for (const auto& [len, n] : s.length_histogram)
        CHECK(n == m["length_histogram"][std::to_string(len)].get<std::size_t>());

    const std::string text = format_stats(s);
    CHECK(text.rfind("total: 56\nsequential: 46\ndiverging: 10\n", 0) == 0);
    CHECK(text.find("source.colorbrewer: 28\n") != std::string::npos);
    CHECK(text.find("length.9: 22\n") != std::string::npos);
}
