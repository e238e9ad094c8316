#pragma once
// Corpus ingestion: the digitized cognitive map (map.csv) and the digitized
// entity-level causal assertions (relations.csv).

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cogmap/model.hpp"

namespace cogmap {

struct CorpusBundle {
    std::vector<TextEntity> entities;      // file order
    std::vector<EntityAssertion> assertions;  // file order, duplicates preserved
    std::vector<std::string> provenance;   // source file names

    bool operator==(const CorpusBundle&) const = default;
};

// Parses `index,text_entity,cluster` rows. The cluster cell is split on '&'
// with surrounding whitespace trimmed. Throws ParseError with a 1-based line
// number on malformed rows, bad headers, or duplicate indices.
std::vector<TextEntity> parse_cognitive_map(std::string_view text);

// Parses `cause,effect,cluster` rows; labels trimmed, case preserved.
std::vector<EntityAssertion> parse_assertions(std::string_view text);

// Inverse of the parsers, in the same delimiter format (comma, standard
// quoting). parse(write(parse(x))) == parse(x).
std::string write_cognitive_map(const std::vector<TextEntity>& entities);
std::string write_assertions(const std::vector<EntityAssertion>& assertions);

// Reads and parses both corpus files. Throws ParseError (message names the
// offending path) on IO or parse failure.
CorpusBundle load_corpus(const std::filesystem::path& map_path,
                         const std::filesystem::path& relations_path);

std::string read_file(const std::filesystem::path& path);

}  // namespace cogmap
