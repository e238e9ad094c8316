#pragma once
// Variable-level diagram construction (edge lifting from entity assertions)
// and read-only graph analytics: simple paths, simple cycles, mediated edges.

#include <optional>
#include <string>
#include <vector>

#include "cogmap/ingest.hpp"
#include "cogmap/model.hpp"
#include "cogmap/resolve.hpp"

namespace cogmap {

// A simple directed cycle, canonicalized to start at the lexicographically
// smallest node. Length 1 is a self-loop.
struct Cycle {
    std::vector<std::string> nodes;

    auto operator<=>(const Cycle&) const = default;
};

struct CycleSet {
    std::vector<Cycle> cycles;  // lexicographically sorted
    bool truncated = false;     // enumeration hit the safety cap
};

struct BuildResult {
    CausalDiagram diagram;
    std::vector<Diagnostic> diagnostics;  // NAME-UNRESOLVED findings
    ResolutionTable resolution;
};

// Lifts entity-level assertions onto the spec's variables and interactions:
// one causal edge per distinct resolved (src, dst) pair, provenance = the
// supporting assertion indices. Assertions whose endpoints land in the same
// node are recorded as self-loops, not edges.
BuildResult build_diagram(const CorpusBundle& bundle, const CurationSpec& spec);

// All simple directed paths over causal edges with node count in
// [3, max_len], optionally endpoint-filtered; lexicographic order.
// Throws ParseError when `from`/`to` name no diagram node.
std::vector<CausalPath> enumerate_paths(const CausalDiagram& diagram, int max_len,
                                        const std::optional<std::string>& from = std::nullopt,
                                        const std::optional<std::string>& to = std::nullopt);

// Internal workhorse shared with the rule-4 checker: node count range
// [min_nodes, max_nodes], both endpoints fixed or free.
std::vector<CausalPath> collect_paths(const CausalDiagram& diagram,
                                      const std::optional<std::string>& from,
                                      const std::optional<std::string>& to, int min_nodes,
                                      int max_nodes);

// All simple directed cycles over causal edges plus recorded self-loops.
// Exact enumeration (Johnson) with a safety cap of 100000 cycles; when the
// cap trips, `truncated` is set and the partial result is still sorted.
CycleSet find_cycles(const CausalDiagram& diagram);

inline constexpr std::size_t kMaxEnumeratedCycles = 100000;

struct MediatedEdge {
    std::string src;
    std::string dst;
    EdgeKind kind = EdgeKind::VariableCausal;
    std::string mediator;

    auto operator<=>(const MediatedEdge&) const = default;
};

// Every causal edge (A, C) for which some third node B has causal edges
// (A, B) and (B, C); one entry per (edge, mediator) pair.
std::vector<MediatedEdge> find_mediated(const CausalDiagram& diagram);

// True when `to` is reachable from `from` over causal edges (any length).
bool reachable(const CausalDiagram& diagram, const std::string& from, const std::string& to);

}  // namespace cogmap
