#pragma once
// Report serialization: canonical JSON, compiler-style text, DOT export,
// input digests, and the process exit status.

#include <string>
#include <string_view>
#include <vector>

#include "cogmap/model.hpp"

namespace cogmap {

struct InputDigest {
    std::string path;
    std::string digest;  // sha256 hex of the file bytes

    bool operator==(const InputDigest&) const = default;
};

struct ReportDocument {
    std::string tool_version = kToolVersion;
    std::vector<InputDigest> inputs;
    std::vector<Diagnostic> diagnostics;

    bool operator==(const ReportDocument&) const = default;
};

// Canonical JSON: keys sorted, arrays in diagnostic order, two-space indent,
// trailing newline. Summary counts are derived from the diagnostics, so they
// always match the tallies.
std::string render_json(const ReportDocument& doc);

// Inverse of render_json. Throws ParseError on malformed input.
ReportDocument parse_report_json(std::string_view text);

// One line per diagnostic, `severity[CODE] message (subjects) -- suggestion`,
// then a summary footer. `notes` lines (e.g. a cycle-cap truncation notice)
// are appended verbatim after the footer.
std::string render_text(const ReportDocument& doc,
                        const std::vector<std::string>& notes = {});

// DOT digraph: variables as ellipses, artificial nodes as dashed boxes;
// variable-causal edges solid, artificial-causal dashed, membership dotted.
std::string render_dot(const CausalDiagram& diagram);

// Diagram serialization for `export --json` and for loading hand-edited
// diagrams in tests. from-json validates node-name uniqueness and edge
// endpoints, but deliberately accepts rule-violating typing so the R3
// checker can flag it.
std::string diagram_to_json(const CausalDiagram& diagram);
CausalDiagram diagram_from_json(std::string_view text);

// 0 when no error-severity diagnostics (and, under the flag, no warnings);
// 1 otherwise. Usage/parse failures use status 2, set by the CLI.
int exit_status(const ReportDocument& doc, bool warnings_as_errors);

// One-line rendering of a split/reclassify suggestion.
std::string suggestion_text(const Suggestion& suggestion);

std::string sha256_hex(std::string_view bytes);

}  // namespace cogmap
