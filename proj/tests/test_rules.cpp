#include "doctest.h"

#include <algorithm>

#include "cogmap/curation.hpp"
#include "cogmap/rules.hpp"
#include "support.hpp"

using namespace cogmap;

namespace {

bool has_code_with_subject(const std::vector<Diagnostic>& diagnostics, DiagnosticCode code,
                           const std::string& subject) {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) {
        return d.code == code && std::find(d.subjects.begin(), d.subjects.end(), subject) !=
                                     d.subjects.end();
    });
}

std::vector<Diagnostic> with_code(const std::vector<Diagnostic>& diagnostics,
                                  DiagnosticCode code) {
    std::vector<Diagnostic> out;
    for (const Diagnostic& d : diagnostics) {
        if (d.code == code) out.push_back(d);
    }
    return out;
}

CausalVariable simple_variable(const std::string& name, const std::set<std::string>& labels) {
    CausalVariable variable;
    variable.name = name;
    variable.values["a"] = labels;
    return variable;
}

}  // namespace

TEST_CASE("R1 reports cluster overlap for multi-cluster entities") {
    CorpusBundle bundle;
    bundle.entities.push_back(TextEntity{49, "Nightlife", {"Public Space", "Social Context"}});
    CurationSpec spec;
    spec.variables["Nightlife_Level"] = simple_variable("Nightlife_Level", {"Nightlife"});

    auto diagnostics = check_r1(bundle, spec, 0.5);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].code == DiagnosticCode::ClusterOverlap);
    CHECK(diagnostics[0].severity == Severity::Info);
    CHECK(diagnostics[0].subjects.front() == "Nightlife");
}

TEST_CASE("grouped near-duplicates are not flagged") {
    CorpusBundle bundle;
    bundle.entities.push_back(TextEntity{51, "Little Inspection", {"Public Policy"}});
    bundle.entities.push_back(TextEntity{52, "Lack of Inspection", {"Public Policy"}});
    CurationSpec spec;
    spec.variables["Inspection"] =
        simple_variable("Inspection", {"Little Inspection", "Lack of Inspection"});

    // At a permissive threshold the pair scores 1/4; grouping must keep it
    // quiet regardless.
    auto diagnostics = check_r1(bundle, spec, 0.2);
    CHECK(with_code(diagnostics, DiagnosticCode::R1NearDup).empty());
    CHECK(with_code(diagnostics, DiagnosticCode::R1Unassigned).empty());
}

TEST_CASE("ungrouped near-duplicates and unassigned entities are flagged") {
    CorpusBundle bundle;
    bundle.entities.push_back(TextEntity{21, "Gas Leak Inside Buildings", {"Urbanism"}});
    bundle.entities.push_back(TextEntity{23, "Gas Leak Inside Dwellings", {"Urbanism"}});
    bundle.entities.push_back(TextEntity{20, "Earthquakes", {"Urbanism"}});
    CurationSpec spec;

    auto diagnostics = check_r1(bundle, spec, 0.5);
    CHECK(has_code_with_subject(diagnostics, DiagnosticCode::R1NearDup,
                                "Gas Leak Inside Buildings"));
    CHECK(has_code_with_subject(diagnostics, DiagnosticCode::R1NearDup,
                                "Gas Leak Inside Dwellings"));
    CHECK(has_code_with_subject(diagnostics, DiagnosticCode::R1Unassigned, "Earthquakes"));
}

TEST_CASE("a label claimed by two owners is an R1 duplication error") {
    CorpusBundle bundle;
    CurationSpec spec;
    spec.variables["A"] = simple_variable("A", {"Shared Label"});
    spec.variables["B"] = simple_variable("B", {"Shared Label"});

    auto diagnostics = with_code(check_r1(bundle, spec, 0.5), DiagnosticCode::R1Dup);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].severity == Severity::Error);
    CHECK(diagnostics[0].subjects.front() == "Shared Label");
}

TEST_CASE("an interaction listed inside a variable is misplaced") {
    CorpusBundle bundle;
    CurationSpec spec;
    spec.variables["Vacancy"] = simple_variable("Vacancy", {"Abandoned Housing"});
    spec.variables["Condition"] = simple_variable("Condition", {"Risk of Defeat"});
    ArtificialNode housing;
    housing.name = "Abandoned Housing";
    housing.constituents = {{"Vacancy", "a"}, {"Condition", "a"}};
    spec.interactions["Abandoned Housing"] = housing;

    auto diagnostics = with_code(check_r2(bundle, spec), DiagnosticCode::R2Misplaced);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].subjects ==
          std::vector<std::string>{"Abandoned Housing", "Vacancy"});
}

TEST_CASE("a well-placed interaction raises nothing") {
    CorpusBundle bundle;
    CurationSpec spec;
    spec.variables["Vacancy"] =
        CausalVariable{"Vacancy", {{"occupied", {"Occupied Housing"}}, {"vacant", {"Vacant"}}}};
    spec.variables["OccupancyLoad"] = simple_variable("OccupancyLoad", {"Crowding"});
    ArtificialNode overcrowding;
    overcrowding.name = "Housing Overcrowding";
    overcrowding.constituents = {{"Vacancy", "occupied"}, {"OccupancyLoad", "a"}};
    spec.interactions["Housing Overcrowding"] = overcrowding;

    CHECK(check_r2(bundle, spec).empty());
}

TEST_CASE("an interaction confined to one variable is degenerate") {
    CorpusBundle bundle;
    CurationSpec spec;
    spec.variables["V"] =
        CausalVariable{"V", {{"a", {"EntA"}}, {"b", {"EntB"}}}};
    ArtificialNode degenerate;
    degenerate.name = "Degenerate";
    degenerate.constituents = {{"V", "a"}, {"V", "b"}};
    spec.interactions["Degenerate"] = degenerate;

    auto diagnostics = with_code(check_r2(bundle, spec), DiagnosticCode::R2Misplaced);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].subjects.front() == "Degenerate");
}

TEST_CASE("edges with provenance pass the support check") {
    CausalDiagram diagram;
    diagram.variables["A"] = simple_variable("A", {"a"});
    diagram.variables["B"] = simple_variable("B", {"b"});
    diagram = add_edge(std::move(diagram), {"A", "B", EdgeKind::VariableCausal, {12}});
    CHECK(with_code(check_r3(diagram), DiagnosticCode::R3Unsupported).empty());
}

TEST_CASE("hand-loaded edges without provenance are unsupported") {
    CausalDiagram diagram;
    diagram.variables["A"] = simple_variable("A", {"a"});
    diagram.variables["B"] = simple_variable("B", {"b"});
    diagram = add_edge(std::move(diagram), {"A", "B", EdgeKind::VariableCausal, {}});
    auto diagnostics = with_code(check_r3(diagram), DiagnosticCode::R3Unsupported);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].severity == Severity::Error);
}

TEST_CASE("a mediated edge is reported with its mediator") {
    CausalDiagram diagram;
    for (const char* name : {"A", "B", "C"}) {
        diagram.variables[name] = simple_variable(name, {std::string(name) + "1"});
    }
    diagram = add_edge(std::move(diagram), {"A", "B", EdgeKind::VariableCausal, {0}});
    diagram = add_edge(std::move(diagram), {"B", "C", EdgeKind::VariableCausal, {1}});
    diagram = add_edge(std::move(diagram), {"A", "C", EdgeKind::VariableCausal, {2}});

    auto diagnostics = with_code(check_r3(diagram), DiagnosticCode::R3Mediated);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].subjects == std::vector<std::string>{"A", "C", "B"});
}

TEST_CASE("a variable-causal edge into an artificial node is untyped") {
    CausalDiagram diagram;
    diagram.variables["V"] = simple_variable("V", {"v1"});
    ArtificialNode housing;
    housing.name = "Abandoned Housing";
    housing.constituents = {{"V", "a"}, {"V", "b"}};
    diagram.artificials["Abandoned Housing"] = housing;
    diagram = add_edge(std::move(diagram),
                       {"V", "Abandoned Housing", EdgeKind::VariableCausal, {3}});

    auto diagnostics = with_code(check_r3(diagram), DiagnosticCode::R3UntypedArtificial);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].severity == Severity::Error);
    CHECK(diagnostics[0].subjects == std::vector<std::string>{"V", "Abandoned Housing"});
}

TEST_CASE("a denied chain yields a transitivity error with a split suggestion") {
    CorpusBundle bundle;
    bundle.assertions.push_back({"e1", "f1", "C"});
    bundle.assertions.push_back({"f1", "g1", "C"});
    CurationSpec spec;
    spec.variables["E"] = simple_variable("E", {"e1"});
    spec.variables["F"] = simple_variable("F", {"f1"});
    spec.variables["G"] = simple_variable("G", {"g1"});
    spec.denials.insert({"E", "G"});

    CausalDiagram diagram = build_diagram(bundle, spec).diagram;
    auto diagnostics = with_code(check_r4(diagram, spec, 6), DiagnosticCode::R4Transitivity);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].subjects == std::vector<std::string>{"E -> F -> G"});
    REQUIRE(diagnostics[0].suggestion.has_value());
    const auto* split = std::get_if<SplitSuggestion>(&*diagnostics[0].suggestion);
    REQUIRE(split != nullptr);
    CHECK(split->mediator == "F");
    CHECK(split->part_a == "F_a");
    CHECK(split->part_b == "F_b");
    CHECK(split->upstream == "E");
    CHECK(split->downstream == "G");
}

TEST_CASE("a denied chain through an artificial node suggests reclassification") {
    CorpusBundle bundle;
    bundle.assertions.push_back({"Vacant Buildings", "abandoned dwellings", "U"});
    bundle.assertions.push_back({"abandoned dwellings", "Low Infra", "U"});
    CurationSpec spec;
    spec.variables["Vacancy"] = simple_variable("Vacancy", {"Vacant Buildings"});
    spec.variables["Condition"] = simple_variable("Condition", {"Disrepair"});
    spec.variables["Infrastructure"] = simple_variable("Infrastructure", {"Low Infra"});
    ArtificialNode housing;
    housing.name = "Abandoned Housing";
    housing.constituents = {{"Vacancy", "a"}, {"Condition", "a"}};
    spec.interactions["Abandoned Housing"] = housing;
    spec.aliases["abandoned dwellings"] = "Abandoned Housing";
    spec.denials.insert({"Vacancy", "Infrastructure"});

    CausalDiagram diagram = build_diagram(bundle, spec).diagram;
    auto diagnostics = with_code(check_r4(diagram, spec, 6), DiagnosticCode::R4Transitivity);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].subjects ==
          std::vector<std::string>{"Vacancy -> Abandoned Housing -> Infrastructure"});
    REQUIRE(diagnostics[0].suggestion.has_value());
    CHECK(std::holds_alternative<ReclassifyNote>(*diagnostics[0].suggestion));
}

TEST_CASE("acyclic diagrams with no denials pass rule four") {
    CausalDiagram diagram;
    for (const char* name : {"A", "B", "C"}) {
        diagram.variables[name] = simple_variable(name, {std::string(name) + "1"});
    }
    diagram = add_edge(std::move(diagram), {"A", "B", EdgeKind::VariableCausal, {0}});
    diagram = add_edge(std::move(diagram), {"B", "C", EdgeKind::VariableCausal, {1}});
    CHECK(check_r4(diagram, CurationSpec{}, 6).empty());
}

TEST_CASE("the cycle diagnostic count equals the cycle enumeration") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        CausalDiagram diagram = support::random_diagram(seed);
        auto diagnostics = with_code(check_r4(diagram, CurationSpec{}, 6),
                                     DiagnosticCode::R4Cycle);
        CHECK(diagnostics.size() == find_cycles(diagram).cycles.size());
    }
}

TEST_CASE("collect_split_suggestions lists every three-node violating path") {
    CorpusBundle bundle;
    bundle.assertions.push_back({"e1", "f1", "C"});
    bundle.assertions.push_back({"f1", "g1", "C"});
    bundle.assertions.push_back({"e1", "h1", "C"});
    bundle.assertions.push_back({"h1", "g1", "C"});
    CurationSpec spec;
    for (const char* name : {"E", "F", "G", "H"}) {
        std::string entity = std::string(1, std::tolower(name[0])) + "1";
        spec.variables[name] = simple_variable(name, {entity});
    }
    spec.denials.insert({"E", "G"});

    CausalDiagram diagram = build_diagram(bundle, spec).diagram;
    auto findings = collect_split_suggestions(diagram, spec, 6);
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].path.nodes == std::vector<std::string>{"E", "F", "G"});
    CHECK(findings[1].path.nodes == std::vector<std::string>{"E", "H", "G"});
}

TEST_CASE("each checker emits only its own codes") {
    auto codes_of = [](const std::vector<Diagnostic>& diagnostics) {
        std::set<DiagnosticCode> codes;
        for (const Diagnostic& d : diagnostics) codes.insert(d.code);
        return codes;
    };
    const std::set<DiagnosticCode> r1_codes{DiagnosticCode::R1Dup, DiagnosticCode::R1Unassigned,
                                            DiagnosticCode::R1NearDup,
                                            DiagnosticCode::ClusterOverlap};
    const std::set<DiagnosticCode> r3_codes{DiagnosticCode::R3Unsupported,
                                            DiagnosticCode::R3Mediated,
                                            DiagnosticCode::R3UntypedArtificial};
    const std::set<DiagnosticCode> r4_codes{DiagnosticCode::R4Cycle,
                                            DiagnosticCode::R4Transitivity};
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        auto inst = support::random_lift_instance(seed);
        CausalDiagram diagram = build_diagram(inst.bundle, inst.spec).diagram;
        for (DiagnosticCode code :
             codes_of(check_r1(inst.bundle, inst.spec, inst.spec.config.near_dup_threshold))) {
            CHECK(r1_codes.count(code) == 1);
        }
        for (DiagnosticCode code : codes_of(check_r2(inst.bundle, inst.spec))) {
            CHECK(code == DiagnosticCode::R2Misplaced);
        }
        for (DiagnosticCode code : codes_of(check_r3(diagram))) {
            CHECK(r3_codes.count(code) == 1);
        }
        for (DiagnosticCode code :
             codes_of(check_r4(diagram, inst.spec, inst.spec.config.max_path_len))) {
            CHECK(r4_codes.count(code) == 1);
        }
        for (DiagnosticCode code : codes_of(unresolved_diagnostics(inst.bundle, inst.spec))) {
            CHECK(code == DiagnosticCode::NameUnresolved);
        }
    }
}

TEST_CASE("check_all is deterministic and partitions by checker code") {
    CorpusBundle bundle = load_corpus(support::fixture("map.csv"),
                                      support::fixture("relations.csv"));
    CurationSpec spec = parse_curation(read_file(support::fixture("baseline.cdsl")));
    CausalDiagram diagram = build_diagram(bundle, spec).diagram;

    auto first = check_all(bundle, spec, diagram);
    auto second = check_all(bundle, spec, diagram);
    CHECK(first == second);

    // Sorted by severity rank first.
    int last_rank = 0;
    for (const Diagnostic& d : first) {
        CHECK(severity_rank(d.severity) >= last_rank);
        last_rank = severity_rank(d.severity);
        CHECK(!d.subjects.empty());
        CHECK(d.severity == severity_of(d.code));
    }

    // The multiset equals the concatenation of the individual checkers.
    std::vector<Diagnostic> expected;
    auto append = [&expected](std::vector<Diagnostic> batch) {
        expected.insert(expected.end(), batch.begin(), batch.end());
    };
    append(unresolved_diagnostics(bundle, spec));
    append(validate_spec(spec));
    append(check_r1(bundle, spec, spec.config.near_dup_threshold));
    append(check_r2(bundle, spec));
    append(check_r3(diagram));
    append(check_r4(diagram, spec, spec.config.max_path_len));
    CHECK(expected.size() == first.size());
    for (const Diagnostic& d : expected) {
        CHECK(std::count(first.begin(), first.end(), d) ==
              std::count(expected.begin(), expected.end(), d));
    }
}
