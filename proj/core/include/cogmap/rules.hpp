#pragma once
// The four rule checkers plus corpus hygiene checks.
//
//   R1  entities group under causal variables, not realized values
//   R2  interaction entities live as artificial nodes, outside variables
//   R3  causal edges need entity-level support, direct effects only, and
//       artificial endpoints need the distinct relation type
//   R4  transitivity of causal relations holds; loops are encoding flaws

#include <vector>

#include "cogmap/diagram.hpp"
#include "cogmap/model.hpp"

namespace cogmap {

// R1-DUP, R1-UNASSIGNED, R1-NEARDUP, CLUSTER-OVERLAP.
std::vector<Diagnostic> check_r1(const CorpusBundle& bundle, const CurationSpec& spec,
                                 double threshold);

// R2-MISPLACED: interaction named like an owned entity, or an interaction
// whose constituents span fewer than two distinct variables.
std::vector<Diagnostic> check_r2(const CorpusBundle& bundle, const CurationSpec& spec);

// R3-UNSUPPORTED, R3-MEDIATED, R3-UNTYPED-ARTIFICIAL.
std::vector<Diagnostic> check_r3(const CausalDiagram& diagram);

// R4-CYCLE per enumerated cycle; R4-TRANSITIVITY per denied relation whose
// effect is reachable from its cause, with split/reclassification
// suggestions on three-node violating paths.
std::vector<Diagnostic> check_r4(const CausalDiagram& diagram, const CurationSpec& spec,
                                 int max_path_len);

// Everything: resolution findings, spec validation, R1..R4, stably sorted by
// (severity rank, code, first subject).
std::vector<Diagnostic> check_all(const CorpusBundle& bundle, const CurationSpec& spec,
                                  const CausalDiagram& diagram);

struct SplitFinding {
    DeniedRelation denial;
    CausalPath path;  // three nodes: upstream, mediator, downstream
    Suggestion suggestion;
};

// One finding per three-node path realizing a denied relation, across all
// denials; the material behind the `suggest-splits` command.
std::vector<SplitFinding> collect_split_suggestions(const CausalDiagram& diagram,
                                                    const CurationSpec& spec, int max_path_len);

// Renders a path as "A -> B -> C" (used for diagnostic subjects).
std::string path_string(const CausalPath& path);

}  // namespace cogmap
