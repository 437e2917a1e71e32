#pragma once

#include "rampforge/curve.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rampforge {

/// A set of designer ramps. Line format, one ramp per line:
///
///     id,source,kind,#RRGGBB;#RRGGBB;...
///
/// Lines whose first non-blank character is `#` are comments.
struct Corpus {
    std::vector<RawRamp> ramps;
    std::string fingerprint; // sha256 of the canonical text
};

/// Throws ParseError with the line number on duplicate ids, bad hex,
/// unknown source or kind, wrong field count, or fewer than 2 colors.
Corpus parse_corpus_text(std::string_view text, std::string_view origin = "<corpus>");
Corpus parse_corpus(const std::filesystem::path& path);

/// Canonical text: comments and blank lines dropped, fields trimmed, hex
/// uppercase, LF line endings, trailing newline.
std::string serialize_corpus(const Corpus& corpus);

struct CorpusStats {
    std::size_t total = 0;
    std::size_t sequential = 0;
    std::size_t diverging = 0;
    std::map<RampSource, std::size_t> by_source;
    std::map<std::size_t, std::size_t> length_histogram; // color count -> ramps
    std::size_t min_length = 0;
    std::size_t max_length = 0;
};

CorpusStats corpus_stats(const Corpus& corpus);

/// Human-readable summary, one `key: value` per line.
std::string format_stats(const CorpusStats& stats);

} // namespace rampforge
