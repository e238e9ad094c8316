#include "cogmap/model.hpp"

#include <algorithm>

namespace cogmap {

std::string to_string(EdgeKind kind) {
    switch (kind) {
    case EdgeKind::VariableCausal: return "variable-causal";
    case EdgeKind::ArtificialCausal: return "artificial-causal";
    case EdgeKind::Membership: return "membership";
    }
    return "?";
}

std::optional<EdgeKind> edge_kind_from_string(const std::string& text) {
    if (text == "variable-causal") return EdgeKind::VariableCausal;
    if (text == "artificial-causal") return EdgeKind::ArtificialCausal;
    if (text == "membership") return EdgeKind::Membership;
    return std::nullopt;
}

std::string to_string(DiagnosticCode code) {
    switch (code) {
    case DiagnosticCode::NameUnresolved: return "NAME-UNRESOLVED";
    case DiagnosticCode::AliasChain: return "ALIAS-CHAIN";
    case DiagnosticCode::ClusterOverlap: return "CLUSTER-OVERLAP";
    case DiagnosticCode::R1Dup: return "R1-DUP";
    case DiagnosticCode::R1Unassigned: return "R1-UNASSIGNED";
    case DiagnosticCode::R1NearDup: return "R1-NEARDUP";
    case DiagnosticCode::R2Misplaced: return "R2-MISPLACED";
    case DiagnosticCode::R3Unsupported: return "R3-UNSUPPORTED";
    case DiagnosticCode::R3Mediated: return "R3-MEDIATED";
    case DiagnosticCode::R3UntypedArtificial: return "R3-UNTYPED-ARTIFICIAL";
    case DiagnosticCode::R4Transitivity: return "R4-TRANSITIVITY";
    case DiagnosticCode::R4Cycle: return "R4-CYCLE";
    }
    return "?";
}

std::string to_string(Severity severity) {
    switch (severity) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
    }
    return "?";
}

std::optional<DiagnosticCode> code_from_string(const std::string& text) {
    for (DiagnosticCode code : kAllDiagnosticCodes) {
        if (to_string(code) == text) return code;
    }
    return std::nullopt;
}

std::optional<Severity> severity_from_string(const std::string& text) {
    if (text == "error") return Severity::Error;
    if (text == "warning") return Severity::Warning;
    if (text == "info") return Severity::Info;
    return std::nullopt;
}

Severity severity_of(DiagnosticCode code) {
    switch (code) {
    case DiagnosticCode::NameUnresolved:
    case DiagnosticCode::AliasChain:
    case DiagnosticCode::R1Dup:
    case DiagnosticCode::R2Misplaced:
    case DiagnosticCode::R3Unsupported:
    case DiagnosticCode::R3UntypedArtificial:
    case DiagnosticCode::R4Transitivity:
    case DiagnosticCode::R4Cycle:
        return Severity::Error;
    case DiagnosticCode::R1NearDup:
    case DiagnosticCode::R1Unassigned:
    case DiagnosticCode::R3Mediated:
        return Severity::Warning;
    case DiagnosticCode::ClusterOverlap:
        return Severity::Info;
    }
    return Severity::Error;
}

int severity_rank(Severity severity) {
    switch (severity) {
    case Severity::Error: return 0;
    case Severity::Warning: return 1;
    case Severity::Info: return 2;
    }
    return 0;
}

Diagnostic make_diagnostic(DiagnosticCode code, std::string message,
                           std::vector<std::string> subjects,
                           std::optional<Suggestion> suggestion) {
    Diagnostic d;
    d.code = code;
    d.severity = severity_of(code);
    d.message = std::move(message);
    d.subjects = std::move(subjects);
    d.suggestion = std::move(suggestion);
    return d;
}

bool CausalDiagram::has_node(const std::string& name) const {
    return variables.count(name) > 0 || artificials.count(name) > 0;
}

bool CausalDiagram::is_artificial(const std::string& name) const {
    return artificials.count(name) > 0;
}

std::vector<std::string> CausalDiagram::node_names() const {
    std::vector<std::string> names;
    names.reserve(variables.size() + artificials.size());
    for (const auto& [name, _] : variables) names.push_back(name);
    for (const auto& [name, _] : artificials) names.push_back(name);
    std::sort(names.begin(), names.end());
    return names;
}

const DiagramEdge* CausalDiagram::find_edge(const std::string& src, const std::string& dst,
                                            EdgeKind kind) const {
    for (const DiagramEdge& e : edges) {
        if (e.src == src && e.dst == dst && e.kind == kind) return &e;
    }
    return nullptr;
}

const SourceSpan* CurationSpec::span_of(const std::string& key) const {
    auto it = spans.find(key);
    return it == spans.end() ? nullptr : &it->second;
}

namespace {

std::string span_suffix(const CurationSpec& spec, const std::string& key) {
    const SourceSpan* span = spec.span_of(key);
    if (span == nullptr || span->line == 0) return "";
    return " (declared at " + std::to_string(span->line) + ":" + std::to_string(span->column) +
           ")";
}

}  // namespace

std::vector<Diagnostic> validate_spec(const CurationSpec& spec) {
    std::vector<Diagnostic> out;

    // Variable/interaction name clashes.
    for (const auto& [name, _] : spec.variables) {
        if (spec.interactions.count(name) > 0) {
            out.push_back(make_diagnostic(
                DiagnosticCode::R1Dup,
                "name '" + name + "' is declared both as a variable and as an interaction" +
                    span_suffix(spec, "variable:" + name),
                {name}));
        }
    }

    // Value-label overlap inside one variable.
    for (const auto& [name, variable] : spec.variables) {
        std::map<std::string, std::string> seen;  // label -> value name
        for (const auto& [value_name, labels] : variable.values) {
            for (const std::string& label : labels) {
                auto [it, inserted] = seen.emplace(label, value_name);
                if (!inserted) {
                    out.push_back(make_diagnostic(
                        DiagnosticCode::R1Dup,
                        "variable '" + name + "' claims entity \"" + label +
                            "\" under both values '" + it->second + "' and '" + value_name + "'" +
                            span_suffix(spec, "variable:" + name),
                        {label, name}));
                }
            }
        }
        if (variable.values.empty()) {
            out.push_back(make_diagnostic(
                DiagnosticCode::R1Dup,
                "variable '" + name + "' declares no values" + span_suffix(spec, "variable:" + name),
                {name}));
        }
    }

    // Constituent references.
    for (const auto& [name, interaction] : spec.interactions) {
        for (const Constituent& c : interaction.constituents) {
            auto var_it = spec.variables.find(c.variable);
            if (var_it == spec.variables.end()) {
                out.push_back(make_diagnostic(
                    DiagnosticCode::R2Misplaced,
                    "interaction \"" + name + "\" references unknown variable '" + c.variable +
                        "'" + span_suffix(spec, "interaction:" + name),
                    {name, c.variable}));
            } else if (var_it->second.values.count(c.value) == 0) {
                out.push_back(make_diagnostic(
                    DiagnosticCode::R2Misplaced,
                    "interaction \"" + name + "\" references unknown value '" + c.value +
                        "' of variable '" + c.variable + "'" +
                        span_suffix(spec, "interaction:" + name),
                    {name, c.variable, c.value}));
            }
        }
        if (interaction.constituents.size() < 2) {
            out.push_back(make_diagnostic(
                DiagnosticCode::R2Misplaced,
                "interaction \"" + name + "\" needs at least two constituents" +
                    span_suffix(spec, "interaction:" + name),
                {name}));
        }
    }

    // Denial names must match a declared variable or interaction.
    for (const DeniedRelation& denial : spec.denials) {
        for (const std::string& side : {denial.cause, denial.effect}) {
            if (spec.variables.count(side) == 0 && spec.interactions.count(side) == 0) {
                out.push_back(make_diagnostic(
                    DiagnosticCode::NameUnresolved,
                    "denied relation " + denial.cause + " -> " + denial.effect +
                        " references undeclared name '" + side + "'",
                    {side}));
            }
        }
        if (denial.cause == denial.effect) {
            out.push_back(make_diagnostic(DiagnosticCode::R4Cycle,
                                          "denied relation may not be self-referential: " +
                                              denial.cause + " -> " + denial.effect,
                                          {denial.cause}));
        }
    }

    // Alias chains: a target that is itself an alias key.
    for (const auto& [key, target] : spec.aliases) {
        if (spec.aliases.count(target) > 0 && target != key) {
            out.push_back(make_diagnostic(
                DiagnosticCode::AliasChain,
                "alias target \"" + target + "\" is itself an alias key; chains are not applied" +
                    span_suffix(spec, "alias:" + key),
                {target, key}));
        }
    }

    return out;
}

CausalDiagram add_edge(CausalDiagram diagram, const DiagramEdge& edge) {
    for (const std::string& endpoint : {edge.src, edge.dst}) {
        if (!diagram.has_node(endpoint)) {
            throw ParseError("unknown edge endpoint '" + endpoint + "'", 0, 0);
        }
    }
    auto pos = std::lower_bound(diagram.edges.begin(), diagram.edges.end(), edge,
                                [](const DiagramEdge& a, const DiagramEdge& b) {
                                    return std::tie(a.src, a.dst, a.kind) <
                                           std::tie(b.src, b.dst, b.kind);
                                });
    if (pos != diagram.edges.end() && pos->src == edge.src && pos->dst == edge.dst &&
        pos->kind == edge.kind) {
        pos->provenance.insert(edge.provenance.begin(), edge.provenance.end());
    } else {
        diagram.edges.insert(pos, edge);
    }
    return diagram;
}

}  // namespace cogmap
