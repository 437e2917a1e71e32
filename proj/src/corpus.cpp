#include "rampforge/corpus.hpp"

#include "rampforge/error.hpp"
#include "rampforge/hash.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace rampforge {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\v\f");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\v\f");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string canonical_line(const RawRamp& r)
{
    std::string line = r.id;
    line += ',';
    line += to_string(r.source);
    line += ',';
    line += to_string(r.kind);
    line += ',';
    for (std::size_t i = 0; i < r.colors.size(); ++i) {
        if (i > 0) line += ';';
        const auto rgb = lab_to_srgb(r.colors[i]);
        if (!rgb) throw Error("corpus color of '" + r.id + "' does not map back to sRGB");
        line += format_hex(*rgb);
    }
    return line;
}

} // namespace

Corpus parse_corpus_text(std::string_view text, std::string_view origin)
{
    Corpus corpus;
    std::unordered_map<std::string, std::size_t> seen; // id -> line number
    std::size_t line_no = 0;
    const std::string where(origin);

    for (std::string_view raw : split(text, '\n')) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto fail = [&](const std::string& what) {
            throw ParseError(where + ":" + std::to_string(line_no) + ": " + what);
        };

        const auto fields = split(line, ',');
        if (fields.size() != 4) fail("expected 4 comma-separated fields, got " + std::to_string(fields.size()));

        RawRamp ramp;
        ramp.id = std::string(trim(fields[0]));
        if (ramp.id.empty()) fail("empty ramp id");
        const auto source = parse_source(trim(fields[1]));
        if (!source) fail("unknown source '" + std::string(trim(fields[1])) + "'");
        const auto kind = parse_kind(trim(fields[2]));
        if (!kind) fail("unknown kind '" + std::string(trim(fields[2])) + "'");
        ramp.source = *source;
        ramp.kind = *kind;

        for (std::string_view hex : split(fields[3], ';')) {
            hex = trim(hex);
            if (hex.empty()) fail("empty color entry");
            try {
                ramp.colors.push_back(srgb_to_lab(parse_hex(hex)));
            } catch (const ParseError& e) {
                fail(e.what());
            }
        }
        if (ramp.colors.size() < 2) fail("ramp '" + ramp.id + "' has fewer than 2 colors");

        if (const auto it = seen.find(ramp.id); it != seen.end())
            fail("duplicate ramp id '" + ramp.id + "' (first defined on line " + std::to_string(it->second) + ")");
        seen.emplace(ramp.id, line_no);
        corpus.ramps.push_back(std::move(ramp));
    }
    corpus.fingerprint = sha256_hex(serialize_corpus(corpus));
    return corpus;
}

Corpus parse_corpus(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open corpus file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus_text(buf.str(), path.string());
}

std::string serialize_corpus(const Corpus& corpus)
{
    std::string out;
    for (const auto& r : corpus.ramps) {
        out += canonical_line(r);
        out += '\n';
    }
    return out;
}

CorpusStats corpus_stats(const Corpus& corpus)
{
    CorpusStats s;
    for (auto src : {RampSource::colorbrewer, RampSource::r, RampSource::tableau, RampSource::colourlovers,
                     RampSource::other})
        s.by_source[src] = 0;
    for (const auto& r : corpus.ramps) {
        ++s.total;
        ++(r.kind == RampKind::sequential ? s.sequential : s.diverging);
        ++s.by_source[r.source];
        ++s.length_histogram[r.colors.size()];
    }
    if (!s.length_histogram.empty()) {
        s.min_length = s.length_histogram.begin()->first;
        s.max_length = s.length_histogram.rbegin()->first;
    }
    return s;
}

std::string format_stats(const CorpusStats& stats)
{
    std::ostringstream out;
    out << "total: " << stats.total << '\n'
        << "sequential: " << stats.sequential << '\n'
        << "diverging: " << stats.diverging << '\n';
    for (const auto& [src, count] : stats.by_source) out << "source." << to_string(src) << ": " << count << '\n';
    out << "min_length: " << stats.min_length << '\n' << "max_length: " << stats.max_length << '\n';
    for (const auto& [len, count] : stats.length_histogram) out << "length." << len << ": " << count << '\n';
    return out.str();
}

} // namespace rampforge
