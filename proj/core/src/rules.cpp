#include "cogmap/rules.hpp"

#include <algorithm>
#include <sstream>

namespace cogmap {

namespace {

std::string quoted(const std::string& text) { return "\"" + text + "\""; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

std::string path_string(const CausalPath& path) { return join(path.nodes, " -> "); }

std::vector<Diagnostic> check_r1(const CorpusBundle& bundle, const CurationSpec& spec,
                                 double threshold) {
    std::vector<Diagnostic> out;

    // Claims per normalized label: which variables own it, whether an
    // interaction carries it as its name.
    struct Claim {
        std::set<std::string> variables;
        std::set<std::string> interactions;
        std::string display;
    };
    std::map<std::string, Claim> claims;
    for (const auto& [name, variable] : spec.variables) {
        for (const auto& [_, labels] : variable.values) {
            for (const std::string& label : labels) {
                Claim& claim = claims[normalize(label)];
                claim.variables.insert(name);
                if (claim.display.empty()) claim.display = label;
            }
        }
    }
    for (const auto& [name, _] : spec.interactions) {
        Claim& claim = claims[normalize(name)];
        claim.interactions.insert(name);
        if (claim.display.empty()) claim.display = name;
    }
    for (const auto& [_, claim] : claims) {
        if (claim.variables.size() + claim.interactions.size() < 2) continue;
        std::vector<std::string> subjects{claim.display};
        subjects.insert(subjects.end(), claim.variables.begin(), claim.variables.end());
        subjects.insert(subjects.end(), claim.interactions.begin(), claim.interactions.end());
        std::vector<std::string> owners(subjects.begin() + 1, subjects.end());
        out.push_back(make_diagnostic(DiagnosticCode::R1Dup,
                                      "entity " + quoted(claim.display) + " is claimed by " +
                                          join(owners, ", ") +
                                          "; one entity belongs to exactly one node",
                                      std::move(subjects)));
    }

    // Unassigned cognitive-map entities.
    std::map<std::string, std::string> owner = owner_index(spec);
    for (const TextEntity& entity : bundle.entities) {
        if (owner.count(normalize(entity.label)) == 0) {
            out.push_back(make_diagnostic(
                DiagnosticCode::R1Unassigned,
                "entity " + quoted(entity.label) +
                    " is not grouped under any variable value or interaction",
                {entity.label}));
        }
    }

    // Near-duplicates not grouped in the same node.
    for (const NearDupPair& pair : near_duplicates(bundle.entities, threshold)) {
        auto owner_a = owner.find(normalize(pair.a));
        auto owner_b = owner.find(normalize(pair.b));
        bool same_group = owner_a != owner.end() && owner_b != owner.end() &&
                          owner_a->second == owner_b->second;
        if (same_group) continue;
        std::ostringstream score;
        score << pair.shared << "/" << pair.total;
        out.push_back(make_diagnostic(
            DiagnosticCode::R1NearDup,
            "entities " + quoted(pair.a) + " and " + quoted(pair.b) +
                " look like values of one variable (token similarity " + score.str() +
                ") but are not grouped together",
            {pair.a, pair.b}));
    }

    // Cluster overlap is a symptom worth surfacing, not a rule breach.
    for (const TextEntity& entity : bundle.entities) {
        if (entity.clusters.size() >= 2) {
            std::vector<std::string> clusters(entity.clusters.begin(), entity.clusters.end());
            out.push_back(make_diagnostic(DiagnosticCode::ClusterOverlap,
                                          "entity " + quoted(entity.label) + " appears in " +
                                              std::to_string(clusters.size()) + " clusters: " +
                                              join(clusters, ", "),
                                          {entity.label}));
        }
    }
    return out;
}

namespace {

std::vector<Diagnostic> r2_findings(const CurationSpec& spec) {
    std::vector<Diagnostic> out;

    std::map<std::string, std::string> owning_variable;  // normalized label -> variable
    for (const auto& [name, variable] : spec.variables) {
        for (const auto& [_, labels] : variable.values) {
            for (const std::string& label : labels) {
                owning_variable.emplace(normalize(label), name);
            }
        }
    }

    for (const auto& [name, interaction] : spec.interactions) {
        auto it = owning_variable.find(normalize(name));
        if (it != owning_variable.end()) {
            out.push_back(make_diagnostic(
                DiagnosticCode::R2Misplaced,
                "interaction " + quoted(name) + " also appears as an entity inside variable '" +
                    it->second + "'; interaction entities must stay outside causal variables",
                {name, it->second}));
        }

        std::set<std::string> distinct_variables;
        for (const Constituent& c : interaction.constituents) {
            distinct_variables.insert(c.variable);
        }
        if (distinct_variables.size() < 2) {
            out.push_back(make_diagnostic(
                DiagnosticCode::R2Misplaced,
                "interaction " + quoted(name) + " spans " +
                    std::to_string(distinct_variables.size()) +
                    " distinct variable(s); an interaction needs at least two",
                {name}));
        }
    }
    return out;
}

}  // namespace

std::vector<Diagnostic> check_r2(const CorpusBundle& bundle, const CurationSpec& spec) {
    (void)bundle;  // interactions and variables are spec-side facts
    return r2_findings(spec);
}

std::vector<Diagnostic> check_r3(const CausalDiagram& diagram) {
    std::vector<Diagnostic> out;

    for (const DiagramEdge& edge : diagram.edges) {
        if (edge.kind == EdgeKind::Membership) continue;
        if (edge.provenance.empty()) {
            out.push_back(make_diagnostic(
                DiagnosticCode::R3Unsupported,
                "edge " + edge.src + " -> " + edge.dst +
                    " has no supporting entity-level assertion",
                {edge.src, edge.dst}));
        }
    }

    for (const MediatedEdge& hit : find_mediated(diagram)) {
        out.push_back(make_diagnostic(
            DiagnosticCode::R3Mediated,
            "edge " + hit.src + " -> " + hit.dst + " is fully mediated by '" + hit.mediator +
                "'; keep direct effects only unless the direct relation is independently real",
            {hit.src, hit.dst, hit.mediator}));
    }

    for (const DiagramEdge& edge : diagram.edges) {
        bool artificial_endpoint =
            diagram.is_artificial(edge.src) || diagram.is_artificial(edge.dst);
        if (artificial_endpoint && edge.kind == EdgeKind::VariableCausal) {
            out.push_back(make_diagnostic(
                DiagnosticCode::R3UntypedArtificial,
                "edge " + edge.src + " -> " + edge.dst +
                    " touches an artificial node but is typed variable-causal; relations with "
                    "interaction entities must use the distinct relation type",
                {edge.src, edge.dst}));
        }
    }
    return out;
}

namespace {

Suggestion suggestion_for_mediator(const CausalDiagram& diagram, const CurationSpec& spec,
                                   const std::string& upstream, const std::string& mediator,
                                   const std::string& downstream) {
    std::set<std::string> r2_names;
    for (const Diagnostic& finding : r2_findings(spec)) {
        r2_names.insert(finding.subjects.begin(), finding.subjects.end());
    }
    if (diagram.is_artificial(mediator) || r2_names.count(mediator) > 0) {
        return ReclassifyNote{"mediator " + quoted(mediator) +
                              " is an interaction entity: represent it as an artificial node, "
                              "whose relations are a distinct non-causal type and do not carry "
                              "the chain " +
                              upstream + " -> " + downstream};
    }
    SplitSuggestion split;
    split.mediator = mediator;
    split.part_a = mediator + "_a";
    split.part_b = mediator + "_b";
    split.upstream = upstream;
    split.downstream = downstream;
    return split;
}

}  // namespace

std::vector<SplitFinding> collect_split_suggestions(const CausalDiagram& diagram,
                                                    const CurationSpec& spec, int max_path_len) {
    std::vector<SplitFinding> out;
    for (const DeniedRelation& denial : spec.denials) {
        if (!diagram.has_node(denial.cause) || !diagram.has_node(denial.effect)) continue;
        for (const CausalPath& path :
             collect_paths(diagram, denial.cause, denial.effect, 3, std::min(3, max_path_len))) {
            if (path.nodes.size() != 3) continue;
            out.push_back(SplitFinding{
                denial, path,
                suggestion_for_mediator(diagram, spec, path.nodes[0], path.nodes[1],
                                        path.nodes[2])});
        }
    }
    return out;
}

std::vector<Diagnostic> check_r4(const CausalDiagram& diagram, const CurationSpec& spec,
                                 int max_path_len) {
    std::vector<Diagnostic> out;

    for (const Cycle& cycle : find_cycles(diagram).cycles) {
        std::string message;
        if (cycle.nodes.size() == 1) {
            message = "self-referential causal relation on '" + cycle.nodes.front() +
                      "' forms a loop";
        } else {
            message = "causal path forms a loop: " + join(cycle.nodes, " -> ") + " -> " +
                      cycle.nodes.front();
        }
        out.push_back(make_diagnostic(DiagnosticCode::R4Cycle, std::move(message), cycle.nodes));
    }

    for (const DeniedRelation& denial : spec.denials) {
        if (!diagram.has_node(denial.cause) || !diagram.has_node(denial.effect)) continue;
        if (!reachable(diagram, denial.cause, denial.effect)) continue;

        std::vector<CausalPath> paths =
            collect_paths(diagram, denial.cause, denial.effect, 2, max_path_len);
        std::vector<std::string> subjects;
        for (const CausalPath& path : paths) subjects.push_back(path_string(path));
        if (subjects.empty()) {
            // Reachable only beyond max_path_len; name the endpoints.
            subjects = {denial.cause, denial.effect};
        }

        std::optional<Suggestion> suggestion;
        for (const CausalPath& path : paths) {
            if (path.nodes.size() == 3) {
                suggestion = suggestion_for_mediator(diagram, spec, path.nodes[0], path.nodes[1],
                                                     path.nodes[2]);
                break;
            }
        }

        out.push_back(make_diagnostic(
            DiagnosticCode::R4Transitivity,
            "denied relation " + denial.cause + " -> " + denial.effect + " is realized by " +
                std::to_string(paths.size()) + " causal path(s); the mediating variables need "
                "revision",
            std::move(subjects), std::move(suggestion)));
    }
    return out;
}

std::vector<Diagnostic> check_all(const CorpusBundle& bundle, const CurationSpec& spec,
                                  const CausalDiagram& diagram) {
    std::vector<Diagnostic> out;
    auto append = [&out](std::vector<Diagnostic> batch) {
        out.insert(out.end(), std::make_move_iterator(batch.begin()),
                   std::make_move_iterator(batch.end()));
    };
    append(unresolved_diagnostics(bundle, spec));
    append(validate_spec(spec));
    append(check_r1(bundle, spec, spec.config.near_dup_threshold));
    append(check_r2(bundle, spec));
    append(check_r3(diagram));
    append(check_r4(diagram, spec, spec.config.max_path_len));

    std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
        int rank_a = severity_rank(a.severity);
        int rank_b = severity_rank(b.severity);
        if (rank_a != rank_b) return rank_a < rank_b;
        std::string code_a = to_string(a.code);
        std::string code_b = to_string(b.code);
        if (code_a != code_b) return code_a < code_b;
        const std::string& subject_a = a.subjects.empty() ? std::string() : a.subjects.front();
        const std::string& subject_b = b.subjects.empty() ? std::string() : b.subjects.front();
        return subject_a < subject_b;
    });
    return out;
}

}  // namespace cogmap
