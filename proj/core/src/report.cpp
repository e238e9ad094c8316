#include "cogmap/report.hpp"

#include <openssl/evp.h>

#include <map>

#include "json.hpp"

namespace cogmap {

namespace {

using nlohmann::json;

json suggestion_to_json(const Suggestion& suggestion) {
    if (const auto* split = std::get_if<SplitSuggestion>(&suggestion)) {
        return json{{"kind", "split"},
                    {"mediator", split->mediator},
                    {"part_a", split->part_a},
                    {"part_b", split->part_b},
                    {"upstream", split->upstream},
                    {"downstream", split->downstream}};
    }
    const auto& note = std::get<ReclassifyNote>(suggestion);
    return json{{"kind", "reclassify"}, {"note", note.note}};
}

Suggestion suggestion_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "split") {
        SplitSuggestion split;
        split.mediator = j.at("mediator").get<std::string>();
        split.part_a = j.at("part_a").get<std::string>();
        split.part_b = j.at("part_b").get<std::string>();
        split.upstream = j.at("upstream").get<std::string>();
        split.downstream = j.at("downstream").get<std::string>();
        return split;
    }
    if (kind == "reclassify") {
        return ReclassifyNote{j.at("note").get<std::string>()};
    }
    throw ParseError("unknown suggestion kind '" + kind + "'", 0);
}

json diagnostic_to_json(const Diagnostic& diagnostic) {
    json j{{"code", to_string(diagnostic.code)},
           {"severity", to_string(diagnostic.severity)},
           {"message", diagnostic.message},
           {"subjects", diagnostic.subjects}};
    j["suggestion"] = diagnostic.suggestion ? suggestion_to_json(*diagnostic.suggestion)
                                            : json(nullptr);
    return j;
}

}  // namespace

std::string suggestion_text(const Suggestion& suggestion) {
    if (const auto* split = std::get_if<SplitSuggestion>(&suggestion)) {
        return "split '" + split->mediator + "' into '" + split->part_a +
               "' (keeps the in-edges from " + split->upstream + ") and '" + split->part_b +
               "' (keeps the out-edges to " + split->downstream + ")";
    }
    return std::get<ReclassifyNote>(suggestion).note;
}

std::string render_json(const ReportDocument& doc) {
    json root;
    root["tool_version"] = doc.tool_version;

    root["inputs"] = json::array();
    for (const InputDigest& input : doc.inputs) {
        root["inputs"].push_back(json{{"path", input.path}, {"digest", input.digest}});
    }

    root["diagnostics"] = json::array();
    std::map<std::string, int> by_code;
    for (DiagnosticCode code : kAllDiagnosticCodes) by_code[to_string(code)] = 0;
    std::map<std::string, int> by_severity{{"error", 0}, {"warning", 0}, {"info", 0}};
    for (const Diagnostic& diagnostic : doc.diagnostics) {
        root["diagnostics"].push_back(diagnostic_to_json(diagnostic));
        ++by_code[to_string(diagnostic.code)];
        ++by_severity[to_string(diagnostic.severity)];
    }

    root["summary"] = json{{"by_code", by_code}, {"by_severity", by_severity}};
    return root.dump(2) + "\n";
}

ReportDocument parse_report_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid report JSON: ") + e.what(), 0);
    }
    try {
        ReportDocument doc;
        doc.tool_version = root.at("tool_version").get<std::string>();
        for (const json& input : root.at("inputs")) {
            doc.inputs.push_back(
                InputDigest{input.at("path").get<std::string>(),
                            input.at("digest").get<std::string>()});
        }
        for (const json& entry : root.at("diagnostics")) {
            Diagnostic diagnostic;
            auto code = code_from_string(entry.at("code").get<std::string>());
            auto severity = severity_from_string(entry.at("severity").get<std::string>());
            if (!code || !severity) {
                throw ParseError("unknown diagnostic code or severity in report", 0);
            }
            diagnostic.code = *code;
            diagnostic.severity = *severity;
            diagnostic.message = entry.at("message").get<std::string>();
            diagnostic.subjects = entry.at("subjects").get<std::vector<std::string>>();
            if (!entry.at("suggestion").is_null()) {
                diagnostic.suggestion = suggestion_from_json(entry.at("suggestion"));
            }
            doc.diagnostics.push_back(std::move(diagnostic));
        }
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid report JSON: ") + e.what(), 0);
    }
}

std::string render_text(const ReportDocument& doc, const std::vector<std::string>& notes) {
    std::string out;
    std::map<std::string, int> by_code;
    int errors = 0, warnings = 0, infos = 0;
    for (const Diagnostic& diagnostic : doc.diagnostics) {
        out += to_string(diagnostic.severity) + "[" + to_string(diagnostic.code) + "] " +
               diagnostic.message;
        if (!diagnostic.subjects.empty()) {
            out += " (";
            for (std::size_t i = 0; i < diagnostic.subjects.size(); ++i) {
                if (i > 0) out += "; ";
                out += diagnostic.subjects[i];
            }
            out += ")";
        }
        if (diagnostic.suggestion) {
            out += " -- suggestion: " + suggestion_text(*diagnostic.suggestion);
        }
        out += "\n";
        ++by_code[to_string(diagnostic.code)];
        switch (diagnostic.severity) {
        case Severity::Error: ++errors; break;
        case Severity::Warning: ++warnings; break;
        case Severity::Info: ++infos; break;
        }
    }
    out += "summary: " + std::to_string(doc.diagnostics.size()) + " diagnostic(s): " +
           std::to_string(errors) + " error(s), " + std::to_string(warnings) + " warning(s), " +
           std::to_string(infos) + " info(s)\n";
    if (!by_code.empty()) {
        out += "by code:";
        for (const auto& [code, count] : by_code) {
            out += " " + code + "=" + std::to_string(count);
        }
        out += "\n";
    }
    for (const std::string& note : notes) {
        out += note + "\n";
    }
    return out;
}

namespace {

std::string dot_quote(const std::string& name) {
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string render_dot(const CausalDiagram& diagram) {
    std::string out = "digraph causal_diagram {\n";
    for (const auto& [name, _] : diagram.variables) {
        out += "  " + dot_quote(name) + " [shape=ellipse];\n";
    }
    for (const auto& [name, _] : diagram.artificials) {
        out += "  " + dot_quote(name) + " [shape=box, style=dashed];\n";
    }
    for (const DiagramEdge& edge : diagram.edges) {
        const char* style = "solid";
        if (edge.kind == EdgeKind::ArtificialCausal) style = "dashed";
        if (edge.kind == EdgeKind::Membership) style = "dotted";
        out += "  " + dot_quote(edge.src) + " -> " + dot_quote(edge.dst) + " [style=" + style +
               "];\n";
    }
    out += "}\n";
    return out;
}

std::string diagram_to_json(const CausalDiagram& diagram) {
    json root;
    root["variables"] = json::array();
    for (const auto& [name, variable] : diagram.variables) {
        json values = json::object();
        for (const auto& [value_name, labels] : variable.values) {
            values[value_name] = labels;
        }
        root["variables"].push_back(json{{"name", name}, {"values", values}});
    }
    root["artificials"] = json::array();
    for (const auto& [name, node] : diagram.artificials) {
        json constituents = json::array();
        for (const Constituent& c : node.constituents) {
            constituents.push_back(json::array({c.variable, c.value}));
        }
        root["artificials"].push_back(json{{"name", name}, {"constituents", constituents}});
    }
    root["edges"] = json::array();
    for (const DiagramEdge& edge : diagram.edges) {
        root["edges"].push_back(json{{"src", edge.src},
                                     {"dst", edge.dst},
                                     {"kind", to_string(edge.kind)},
                                     {"provenance", edge.provenance}});
    }
    root["self_loops"] = json::object();
    for (const auto& [node, provenance] : diagram.self_loops) {
        root["self_loops"][node] = provenance;
    }
    return root.dump(2) + "\n";
}

CausalDiagram diagram_from_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid diagram JSON: ") + e.what(), 0);
    }
    try {
        CausalDiagram diagram;
        for (const json& entry : root.at("variables")) {
            CausalVariable variable;
            variable.name = entry.at("name").get<std::string>();
            for (const auto& [value_name, labels] : entry.at("values").items()) {
                variable.values[value_name] = labels.get<std::set<std::string>>();
            }
            if (diagram.has_node(variable.name)) {
                throw ParseError("duplicate node name '" + variable.name + "'", 0);
            }
            diagram.variables[variable.name] = std::move(variable);
        }
        for (const json& entry : root.at("artificials")) {
            ArtificialNode node;
            node.name = entry.at("name").get<std::string>();
            for (const json& pair : entry.at("constituents")) {
                node.constituents.insert(
                    Constituent{pair.at(0).get<std::string>(), pair.at(1).get<std::string>()});
            }
            if (diagram.has_node(node.name)) {
                throw ParseError("duplicate node name '" + node.name + "'", 0);
            }
            diagram.artificials[node.name] = std::move(node);
        }
        for (const json& entry : root.at("edges")) {
            DiagramEdge edge;
            edge.src = entry.at("src").get<std::string>();
            edge.dst = entry.at("dst").get<std::string>();
            auto kind = edge_kind_from_string(entry.at("kind").get<std::string>());
            if (!kind) {
                throw ParseError("unknown edge kind in diagram JSON", 0);
            }
            edge.kind = *kind;
            edge.provenance = entry.at("provenance").get<std::set<std::size_t>>();
            diagram = add_edge(std::move(diagram), edge);
        }
        if (root.contains("self_loops")) {
            for (const auto& [node, provenance] : root.at("self_loops").items()) {
                if (!diagram.has_node(node)) {
                    throw ParseError("self-loop on unknown node '" + node + "'", 0);
                }
                diagram.self_loops[node] = provenance.get<std::set<std::size_t>>();
            }
        }
        return diagram;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid diagram JSON: ") + e.what(), 0);
    }
}

int exit_status(const ReportDocument& doc, bool warnings_as_errors) {
    bool any_error = false, any_warning = false;
    for (const Diagnostic& diagnostic : doc.diagnostics) {
        if (diagnostic.severity == Severity::Error) any_error = true;
        if (diagnostic.severity == Severity::Warning) any_warning = true;
    }
    if (any_error) return 1;
    if (warnings_as_errors && any_warning) return 1;
    return 0;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

}  // namespace cogmap
