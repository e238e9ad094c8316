#pragma once
// Domain types shared by every stage of the pipeline: corpus entities,
// curated variables/interactions, the causal diagram, and diagnostics.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cogmap {

inline constexpr const char* kToolVersion = "1.0.0";

// 1-based position inside an input file; {0,0} means "unknown".
struct SourceSpan {
    int line = 0;
    int column = 0;
    bool operator==(const SourceSpan&) const = default;
};

// Raised by the parsers (CSV corpus, curation DSL) and by operations whose
// preconditions are violated by the caller.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line, int column = 0)
        : std::runtime_error(std::move(msg)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

enum class EntitySource { CognitiveMap, CausalDiagram };

// A raw brainstormed phrase together with the clusters it was filed under.
struct TextEntity {
    int id = 0;
    std::string label;
    std::set<std::string> clusters;
    EntitySource source = EntitySource::CognitiveMap;

    bool operator==(const TextEntity&) const = default;
};

// One digitized cause/effect row between two text entities.
struct EntityAssertion {
    std::string cause;
    std::string effect;
    std::string cluster;

    bool operator==(const EntityAssertion&) const = default;
};

// A causal variable: named values, each value owning one or more entity
// labels. Entities mapped to the same value are "same as"; entities in
// different values of one variable are mutually exclusive.
struct CausalVariable {
    std::string name;
    std::map<std::string, std::set<std::string>> values;  // value name -> entity labels

    bool operator==(const CausalVariable&) const = default;
};

struct Constituent {
    std::string variable;
    std::string value;

    auto operator<=>(const Constituent&) const = default;
};

// An interaction entity: a node standing for the simultaneous occurrence of
// specific values of two or more causal variables.
struct ArtificialNode {
    std::string name;
    std::set<Constituent> constituents;

    bool operator==(const ArtificialNode&) const = default;
};

// Expert statement that `cause` does not cause `effect` at the variable level.
struct DeniedRelation {
    std::string cause;
    std::string effect;

    auto operator<=>(const DeniedRelation&) const = default;
};

enum class EdgeKind { VariableCausal, ArtificialCausal, Membership };

std::string to_string(EdgeKind kind);
std::optional<EdgeKind> edge_kind_from_string(const std::string& text);

// A typed diagram edge. Provenance holds indices into the corpus assertion
// list that support the edge; membership edges carry none.
struct DiagramEdge {
    std::string src;
    std::string dst;
    EdgeKind kind = EdgeKind::VariableCausal;
    std::set<std::size_t> provenance;

    bool operator==(const DiagramEdge&) const = default;
};

struct CausalDiagram {
    std::map<std::string, CausalVariable> variables;
    std::map<std::string, ArtificialNode> artificials;
    std::vector<DiagramEdge> edges;  // kept sorted by (src, dst, kind), unique
    // Nodes hit by assertions whose cause and effect resolve to the same
    // node; these surface as length-1 cycles, never as edges.
    std::map<std::string, std::set<std::size_t>> self_loops;

    bool has_node(const std::string& name) const;
    bool is_artificial(const std::string& name) const;
    std::vector<std::string> node_names() const;  // sorted
    const DiagramEdge* find_edge(const std::string& src, const std::string& dst,
                                 EdgeKind kind) const;

    bool operator==(const CausalDiagram&) const = default;
};

// A simple directed path over causal edges; kinds[i] is the kind of the
// edge nodes[i] -> nodes[i+1].
struct CausalPath {
    std::vector<std::string> nodes;
    std::vector<EdgeKind> kinds;

    bool operator==(const CausalPath&) const = default;
};

enum class Severity { Error, Warning, Info };

enum class DiagnosticCode {
    NameUnresolved,
    AliasChain,
    ClusterOverlap,
    R1Dup,
    R1Unassigned,
    R1NearDup,
    R2Misplaced,
    R3Unsupported,
    R3Mediated,
    R3UntypedArtificial,
    R4Transitivity,
    R4Cycle,
};

inline constexpr DiagnosticCode kAllDiagnosticCodes[] = {
    DiagnosticCode::NameUnresolved,   DiagnosticCode::AliasChain,
    DiagnosticCode::ClusterOverlap,   DiagnosticCode::R1Dup,
    DiagnosticCode::R1Unassigned,     DiagnosticCode::R1NearDup,
    DiagnosticCode::R2Misplaced,      DiagnosticCode::R3Unsupported,
    DiagnosticCode::R3Mediated,       DiagnosticCode::R3UntypedArtificial,
    DiagnosticCode::R4Transitivity,   DiagnosticCode::R4Cycle,
};

std::string to_string(DiagnosticCode code);
std::string to_string(Severity severity);
std::optional<DiagnosticCode> code_from_string(const std::string& text);
std::optional<Severity> severity_from_string(const std::string& text);

// The fixed code -> severity mapping.
Severity severity_of(DiagnosticCode code);

// Errors sort before warnings before infos.
int severity_rank(Severity severity);

// Fig.-4 style repair: split an over-general mediator into an incoming half
// and an outgoing half so the invalid transitive chain is severed.
struct SplitSuggestion {
    std::string mediator;
    std::string part_a;   // mediator + "_a", keeps the upstream in-edges
    std::string part_b;   // mediator + "_b", keeps the downstream out-edges
    std::string upstream;
    std::string downstream;

    bool operator==(const SplitSuggestion&) const = default;
};

struct ReclassifyNote {
    std::string note;

    bool operator==(const ReclassifyNote&) const = default;
};

using Suggestion = std::variant<SplitSuggestion, ReclassifyNote>;

struct Diagnostic {
    DiagnosticCode code = DiagnosticCode::NameUnresolved;
    Severity severity = Severity::Error;
    std::string message;
    std::vector<std::string> subjects;
    std::optional<Suggestion> suggestion;

    bool operator==(const Diagnostic&) const = default;
};

Diagnostic make_diagnostic(DiagnosticCode code, std::string message,
                           std::vector<std::string> subjects,
                           std::optional<Suggestion> suggestion = std::nullopt);

struct SpecConfig {
    double near_dup_threshold = 0.5;
    int max_path_len = 6;

    bool operator==(const SpecConfig&) const = default;
};

// The declarative record of expert decisions: aliases, variable groupings,
// interactions, denied relations, and tool configuration. Spans point back
// into the DSL file; they are empty for specs built programmatically and do
// not take part in equality.
struct CurationSpec {
    std::map<std::string, std::string> aliases;  // raw label -> canonical label
    std::map<std::string, CausalVariable> variables;
    std::map<std::string, ArtificialNode> interactions;
    std::set<DeniedRelation> denials;
    SpecConfig config;
    std::map<std::string, SourceSpan> spans;  // "alias:<key>", "variable:<name>", ...

    bool operator==(const CurationSpec& other) const {
        return aliases == other.aliases && variables == other.variables &&
               interactions == other.interactions && denials == other.denials &&
               config == other.config;
    }

    const SourceSpan* span_of(const std::string& key) const;
};

// Local well-formedness of a spec: duplicate names, value overlap inside a
// variable, dangling constituent references, denial names that match no
// declared variable/interaction, alias chains. Violations come back as
// diagnostics; an empty list means the spec is locally well-formed.
std::vector<Diagnostic> validate_spec(const CurationSpec& spec);

// Inserts the edge, or merges provenance when (src, dst, kind) already
// exists. Throws ParseError when an endpoint is not a diagram node.
CausalDiagram add_edge(CausalDiagram diagram, const DiagramEdge& edge);

}  // namespace cogmap
