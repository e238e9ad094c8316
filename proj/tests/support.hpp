#pragma once
// Shared test plumbing: fixture locations, a process runner for CLI-level
// checks, and seeded random instance generators for the oracle suites.

#include <array>
#include <cstdio>
#include <random>
#include <string>

#include "cogmap/ingest.hpp"
#include "cogmap/model.hpp"

#ifndef COGMAP_FIXTURES_DIR
#define COGMAP_FIXTURES_DIR "fixtures"
#endif
#ifndef COGMAPLINT_BIN
#define COGMAPLINT_BIN "cogmaplint"
#endif

namespace support {

inline std::string fixture(const std::string& name) {
    return std::string(COGMAP_FIXTURES_DIR) + "/urban_blight/" + name;
}

inline std::string lint_binary() { return COGMAPLINT_BIN; }

struct CommandResult {
    int status = -1;
    std::string output;  // stdout only
};

inline CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return result;
    std::array<char, 4096> buffer;
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), n);
    }
    int raw = pclose(pipe);
    result.status = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    return result;
}

// Deterministic bounded ints on top of mt19937_64 (distribution classes are
// implementation-defined, so they stay out of test data).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    int below(int bound) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound)); }
    bool chance(int percent) { return below(100) < percent; }

private:
    std::mt19937_64 engine_;
};

// Random corpus + spec with up to 8 variables, occasional interactions,
// aliases, unknown labels, and self-landing assertions. Exercises the edge
// lifting, not the rule checkers.
struct RandomInstance {
    cogmap::CorpusBundle bundle;
    cogmap::CurationSpec spec;
};

inline RandomInstance random_lift_instance(std::uint64_t seed) {
    Rng rng(seed);
    RandomInstance inst;

    int n_vars = 3 + rng.below(6);  // 3..8
    std::vector<std::string> labels;
    int id = 1;
    for (int i = 1; i <= n_vars; ++i) {
        cogmap::CausalVariable variable;
        variable.name = "V" + std::to_string(i);
        int values = 1 + rng.below(2);
        for (int v = 0; v < values; ++v) {
            std::string value_name = v == 0 ? "a" : "b";
            int entities = 1 + rng.below(2);
            std::set<std::string> owned;
            for (int e = 1; e <= entities; ++e) {
                std::string label = "L" + std::to_string(i) + value_name + std::to_string(e);
                owned.insert(label);
                labels.push_back(label);
                inst.bundle.entities.push_back(
                    cogmap::TextEntity{id++, label, {"C" + std::to_string(i)}});
            }
            variable.values[value_name] = std::move(owned);
        }
        inst.spec.variables[variable.name] = std::move(variable);
    }

    if (n_vars >= 2 && rng.chance(60)) {
        cogmap::ArtificialNode node;
        node.name = "Inter" + std::to_string(seed % 97);
        node.constituents = {{"V1", "a"}, {"V2", "a"}};
        inst.spec.interactions[node.name] = node;
        labels.push_back(node.name);
        if (rng.chance(50)) {
            inst.spec.aliases["IAlias" + std::to_string(seed % 97)] = node.name;
            labels.push_back("IAlias" + std::to_string(seed % 97));
        }
    }
    if (rng.chance(50) && !labels.empty()) {
        inst.spec.aliases["RawName" + std::to_string(seed % 89)] = labels[rng.below(
            static_cast<int>(labels.size()))];
        labels.push_back("RawName" + std::to_string(seed % 89));
    }

    int assertions = 4 + rng.below(16);
    for (int k = 0; k < assertions; ++k) {
        std::string cause, effect;
        if (rng.chance(8)) {
            cause = "Unknown" + std::to_string(k);
        } else {
            cause = labels[rng.below(static_cast<int>(labels.size()))];
        }
        if (rng.chance(8)) {
            effect = "Unknown" + std::to_string(100 + k);
        } else if (rng.chance(10)) {
            effect = cause;  // literal self-assertion
        } else {
            effect = labels[rng.below(static_cast<int>(labels.size()))];
        }
        inst.bundle.assertions.push_back(cogmap::EntityAssertion{cause, effect, "C"});
    }
    return inst;
}

// Random small diagram built directly: 2..8 nodes, ~30% edge density, a
// couple of artificial nodes, occasional recorded self-loops.
inline cogmap::CausalDiagram random_diagram(std::uint64_t seed) {
    Rng rng(seed);
    cogmap::CausalDiagram diagram;

    int n = 2 + rng.below(7);  // 2..8
    int artificials = rng.below(3);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        std::string name = "N" + std::to_string(i);
        names.push_back(name);
        if (i < n - artificials) {
            cogmap::CausalVariable variable;
            variable.name = name;
            variable.values["a"] = {name + "_ent"};
            diagram.variables[name] = std::move(variable);
        } else {
            cogmap::ArtificialNode node;
            node.name = name;
            node.constituents = {{"N0", "a"}, {"N1", "a"}};
            diagram.artificials[name] = std::move(node);
        }
    }
    std::size_t provenance = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j || !rng.chance(30)) continue;
            bool artificial_endpoint = diagram.is_artificial(names[i]) ||
                                       diagram.is_artificial(names[j]);
            cogmap::DiagramEdge edge{names[i], names[j],
                                     artificial_endpoint ? cogmap::EdgeKind::ArtificialCausal
                                                         : cogmap::EdgeKind::VariableCausal,
                                     {provenance++}};
            diagram = cogmap::add_edge(std::move(diagram), edge);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (rng.chance(15)) diagram.self_loops[names[i]].insert(provenance++);
    }
    return diagram;
}

}  // namespace support
