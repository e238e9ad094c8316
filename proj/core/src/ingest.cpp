#include "cogmap/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace cogmap {

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

// Splits one physical line into fields. Fields may be double-quoted, with
// embedded quotes doubled. Quoted newlines are not supported; the corpus
// formats are strictly line-oriented.
std::vector<std::string> split_csv_line(std::string_view line, int line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    std::size_t i = 0;
    bool field_was_quoted = false;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
                ++i;
                continue;
            }
            current += c;
            ++i;
            continue;
        }
        if (c == '"' && current.empty() && !field_was_quoted) {
            quoted = true;
            field_was_quoted = true;
            ++i;
            continue;
        }
        if (c == ',') {
            fields.push_back(field_was_quoted ? current : trim(current));
            current.clear();
            field_was_quoted = false;
            ++i;
            continue;
        }
        current += c;
        ++i;
    }
    if (quoted) {
        throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted field",
                         line_no);
    }
    fields.push_back(field_was_quoted ? current : trim(current));
    return fields;
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\n") != std::string::npos ||
                        (!field.empty() && (std::isspace(static_cast<unsigned char>(field.front())) ||
                                            std::isspace(static_cast<unsigned char>(field.back()))));
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// Yields (line_no, content) pairs, accepting LF and CRLF endings.
std::vector<std::pair<int, std::string>> physical_lines(std::string_view text) {
    std::vector<std::pair<int, std::string>> lines;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line =
            end == std::string_view::npos ? text.substr(start) : text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (end == std::string_view::npos) {
            if (!line.empty()) lines.emplace_back(line_no, std::string(line));
            break;
        }
        lines.emplace_back(line_no, std::string(line));
        start = end + 1;
    }
    return lines;
}

void expect_header(const std::vector<std::pair<int, std::string>>& lines,
                   const std::string& expected) {
    if (lines.empty()) {
        throw ParseError("empty input, expected header '" + expected + "'", 1);
    }
    std::vector<std::string> fields = split_csv_line(lines.front().second, lines.front().first);
    std::string joined;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) joined += ',';
        joined += fields[i];
    }
    if (joined != expected) {
        throw ParseError("line 1: expected header '" + expected + "', found '" + joined + "'", 1);
    }
}

}  // namespace

std::vector<TextEntity> parse_cognitive_map(std::string_view text) {
    auto lines = physical_lines(text);
    expect_header(lines, "index,text_entity,cluster");

    std::vector<TextEntity> entities;
    std::set<int> seen_ids;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line_no, line] = lines[i];
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line, line_no);
        if (fields.size() != 3) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 columns, found " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        TextEntity entity;
        try {
            std::size_t pos = 0;
            entity.id = std::stoi(fields[0], &pos);
            if (pos != fields[0].size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": index '" + fields[0] +
                                 "' is not an integer",
                             line_no);
        }
        if (entity.id <= 0) {
            throw ParseError("line " + std::to_string(line_no) + ": index must be positive",
                             line_no);
        }
        if (!seen_ids.insert(entity.id).second) {
            throw ParseError("line " + std::to_string(line_no) + ": duplicate index " +
                                 std::to_string(entity.id),
                             line_no);
        }
        entity.label = trim(fields[1]);
        if (entity.label.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty text_entity", line_no);
        }
        // Multi-cluster cells use '&' as the in-cell separator.
        std::stringstream cell(fields[2]);
        std::string part;
        while (std::getline(cell, part, '&')) {
            std::string cluster = trim(part);
            if (!cluster.empty()) entity.clusters.insert(cluster);
        }
        entity.source = EntitySource::CognitiveMap;
        entities.push_back(std::move(entity));
    }
    return entities;
}

std::vector<EntityAssertion> parse_assertions(std::string_view text) {
    auto lines = physical_lines(text);
    expect_header(lines, "cause,effect,cluster");

    std::vector<EntityAssertion> assertions;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line_no, line] = lines[i];
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line, line_no);
        if (fields.size() != 3) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 columns, found " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        EntityAssertion assertion;
        assertion.cause = trim(fields[0]);
        assertion.effect = trim(fields[1]);
        assertion.cluster = trim(fields[2]);
        if (assertion.cause.empty() || assertion.effect.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": cause and effect must be non-empty",
                             line_no);
        }
        assertions.push_back(std::move(assertion));
    }
    return assertions;
}

std::string write_cognitive_map(const std::vector<TextEntity>& entities) {
    std::string out = "index,text_entity,cluster\n";
    for (const TextEntity& entity : entities) {
        std::string clusters;
        bool first = true;
        for (const std::string& cluster : entity.clusters) {
            if (!first) clusters += " & ";
            clusters += cluster;
            first = false;
        }
        out += std::to_string(entity.id) + "," + csv_escape(entity.label) + "," +
               csv_escape(clusters) + "\n";
    }
    return out;
}

std::string write_assertions(const std::vector<EntityAssertion>& assertions) {
    std::string out = "cause,effect,cluster\n";
    for (const EntityAssertion& assertion : assertions) {
        out += csv_escape(assertion.cause) + "," + csv_escape(assertion.effect) + "," +
               csv_escape(assertion.cluster) + "\n";
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path.string(), 0);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

CorpusBundle load_corpus(const std::filesystem::path& map_path,
                         const std::filesystem::path& relations_path) {
    CorpusBundle bundle;
    try {
        bundle.entities = parse_cognitive_map(read_file(map_path));
    } catch (const ParseError& e) {
        throw ParseError(map_path.string() + ": " + e.what(), e.line(), e.column());
    }
    try {
        bundle.assertions = parse_assertions(read_file(relations_path));
    } catch (const ParseError& e) {
        throw ParseError(relations_path.string() + ": " + e.what(), e.line(), e.column());
    }
    bundle.provenance = {map_path.string(), relations_path.string()};
    return bundle;
}

}  // namespace cogmap
