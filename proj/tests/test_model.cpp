#include "doctest.h"

#include "cogmap/model.hpp"

using namespace cogmap;

namespace {

CurationSpec inspection_spec() {
    CurationSpec spec;
    CausalVariable inspection;
    inspection.name = "Inspection";
    inspection.values["present"] = {"Inspection"};
    inspection.values["absent"] = {"Little Inspection", "Lack of Inspection"};
    spec.variables["Inspection"] = inspection;
    return spec;
}

}  // namespace

TEST_CASE("validate_spec accepts a well-formed two-value variable") {
    CHECK(validate_spec(inspection_spec()).empty());
}

TEST_CASE("validate_spec accepts the empty spec") {
    CHECK(validate_spec(CurationSpec{}).empty());
}

TEST_CASE("validate_spec reports alias chains naming the shared link") {
    CurationSpec spec;
    spec.aliases["a"] = "b";
    spec.aliases["b"] = "c";
    auto diagnostics = validate_spec(spec);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].code == DiagnosticCode::AliasChain);
    CHECK(diagnostics[0].subjects.front() == "b");
}

TEST_CASE("validate_spec flags label overlap across values of one variable") {
    CurationSpec spec;
    CausalVariable variable;
    variable.name = "X";
    variable.values["a"] = {"Shared"};
    variable.values["b"] = {"Shared", "Other"};
    spec.variables["X"] = variable;
    auto diagnostics = validate_spec(spec);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].code == DiagnosticCode::R1Dup);
    CHECK(diagnostics[0].subjects.front() == "Shared");
}

TEST_CASE("validate_spec flags dangling constituent references") {
    CurationSpec spec;
    CausalVariable variable;
    variable.name = "V";
    variable.values["a"] = {"E"};
    spec.variables["V"] = variable;
    ArtificialNode node;
    node.name = "I";
    node.constituents = {{"V", "a"}, {"Ghost", "x"}};
    spec.interactions["I"] = node;
    auto diagnostics = validate_spec(spec);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].code == DiagnosticCode::R2Misplaced);
    CHECK(diagnostics[0].message.find("Ghost") != std::string::npos);
}

TEST_CASE("validate_spec flags denials that reference undeclared names") {
    CurationSpec spec = inspection_spec();
    spec.denials.insert({"Inspection", "Nowhere"});
    auto diagnostics = validate_spec(spec);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].code == DiagnosticCode::NameUnresolved);
    CHECK(diagnostics[0].subjects.front() == "Nowhere");
}

TEST_CASE("validate_spec is pure") {
    CurationSpec spec = inspection_spec();
    spec.aliases["a"] = "b";
    spec.aliases["b"] = "c";
    CHECK(validate_spec(spec) == validate_spec(spec));
}

TEST_CASE("add_edge merges provenance for repeated (src, dst, kind) triples") {
    CausalDiagram diagram;
    CausalVariable a{"A", {{"v", {"a1"}}}};
    CausalVariable b{"B", {{"v", {"b1"}}}};
    diagram.variables["A"] = a;
    diagram.variables["B"] = b;

    diagram = add_edge(std::move(diagram), {"A", "B", EdgeKind::VariableCausal, {1}});
    diagram = add_edge(std::move(diagram), {"A", "B", EdgeKind::VariableCausal, {2}});
    REQUIRE(diagram.edges.size() == 1);
    CHECK(diagram.edges[0].provenance == std::set<std::size_t>{1, 2});
}

TEST_CASE("add_edge rejects unknown endpoints by name") {
    CausalDiagram diagram;
    diagram.variables["A"] = CausalVariable{"A", {{"v", {"a1"}}}};
    CHECK_THROWS_WITH_AS(
        add_edge(std::move(diagram), {"A", "Ghost", EdgeKind::VariableCausal, {1}}),
        "unknown edge endpoint 'Ghost'", ParseError);
}

TEST_CASE("membership edges between an artificial node and a variable carry no provenance") {
    CausalDiagram diagram;
    diagram.variables["Vacancy"] = CausalVariable{"Vacancy", {{"vacant", {"Vacant Buildings"}}}};
    ArtificialNode housing;
    housing.name = "Abandoned Housing";
    housing.constituents = {{"Vacancy", "vacant"}, {"Condition", "bad"}};
    diagram.artificials["Abandoned Housing"] = housing;

    diagram = add_edge(std::move(diagram),
                       {"Abandoned Housing", "Vacancy", EdgeKind::Membership, {}});
    REQUIRE(diagram.edges.size() == 1);
    CHECK(diagram.edges[0].kind == EdgeKind::Membership);
    CHECK(diagram.edges[0].provenance.empty());
}

TEST_CASE("add_edge never shrinks provenance") {
    CausalDiagram diagram;
    diagram.variables["A"] = CausalVariable{"A", {{"v", {"a1"}}}};
    diagram.variables["B"] = CausalVariable{"B", {{"v", {"b1"}}}};
    std::size_t before = 0;
    for (std::size_t i = 0; i < 20; ++i) {
        diagram = add_edge(std::move(diagram),
                           {"A", "B", EdgeKind::VariableCausal, {i % 7}});
        std::size_t after = diagram.edges[0].provenance.size();
        CHECK(after >= before);
        before = after;
    }
}

TEST_CASE("the code to severity mapping is fixed") {
    CHECK(severity_of(DiagnosticCode::NameUnresolved) == Severity::Error);
    CHECK(severity_of(DiagnosticCode::AliasChain) == Severity::Error);
    CHECK(severity_of(DiagnosticCode::R1Dup) == Severity::Error);
    CHECK(severity_of(DiagnosticCode::R2Misplaced) == Severity::Error);
    CHECK(severity_of(DiagnosticCode::R3Unsupported) == Severity::Error);
    CHECK(severity_of(DiagnosticCode::R3UntypedArtificial) == Severity::Error);
    CHECK(severity_of(DiagnosticCode::R4Transitivity) == Severity::Error);
    CHECK(severity_of(DiagnosticCode::R4Cycle) == Severity::Error);
    CHECK(severity_of(DiagnosticCode::R1NearDup) == Severity::Warning);
    CHECK(severity_of(DiagnosticCode::R1Unassigned) == Severity::Warning);
    CHECK(severity_of(DiagnosticCode::R3Mediated) == Severity::Warning);
    CHECK(severity_of(DiagnosticCode::ClusterOverlap) == Severity::Info);
}

TEST_CASE("diagnostic codes round-trip through their names") {
    for (DiagnosticCode code : kAllDiagnosticCodes) {
        CHECK(code_from_string(to_string(code)) == code);
    }
    CHECK(!code_from_string("NOT-A-CODE"));
}
