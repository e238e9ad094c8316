#include "cogmap/synth.hpp"

#include <random>

#include "json.hpp"

namespace cogmap {

namespace {

// All randomness flows through mt19937_64 with explicit seeding and modulo
// reduction, so output is a function of the arguments alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    int below(int bound) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound)); }

private:
    std::mt19937_64 engine_;
};

class Generator {
public:
    Generator(std::uint64_t seed, int n_vars) : rng_(seed), n_vars_(n_vars) {}

    SynthResult run(const std::map<DiagnosticCode, int>& plants) {
        build_clean_chain();
        for (const auto& [code, count] : plants) {
            for (int i = 0; i < count; ++i) plant(code);
        }
        result_.bundle.provenance = {"map.csv", "relations.csv"};
        return std::move(result_);
    }

private:
    void add_entity(const std::string& label, const std::string& cluster_cell) {
        TextEntity entity;
        entity.id = next_id_++;
        entity.label = label;
        std::size_t start = 0;
        const std::string sep = " & ";
        std::string rest = cluster_cell;
        while (true) {
            std::size_t pos = rest.find(sep, start);
            if (pos == std::string::npos) {
                entity.clusters.insert(rest.substr(start));
                break;
            }
            entity.clusters.insert(rest.substr(start, pos - start));
            start = pos + sep.size();
        }
        result_.bundle.entities.push_back(std::move(entity));
    }

    void add_assertion(const std::string& cause, const std::string& effect,
                       const std::string& cluster) {
        result_.bundle.assertions.push_back(EntityAssertion{cause, effect, cluster});
    }

    // Single-variable declaration owning freshly named single-token labels,
    // so clean instances cannot trip the near-duplicate scan.
    std::string declare_variable(const std::string& name, const std::vector<std::string>& labels,
                                 const std::string& cluster) {
        CausalVariable variable;
        variable.name = name;
        variable.values["a"] = {labels.begin(), labels.end()};
        result_.spec.variables[name] = std::move(variable);
        for (const std::string& label : labels) add_entity(label, cluster);
        return name;
    }

    void build_clean_chain() {
        std::vector<std::string> heads;
        for (int i = 1; i <= n_vars_; ++i) {
            std::string var = "Var" + std::to_string(i);
            CausalVariable variable;
            variable.name = var;
            int value_count = 1 + rng_.below(2);
            std::vector<std::string> value_names{"a", "b"};
            std::string head;
            for (int v = 0; v < value_count; ++v) {
                int entity_count = 1 + rng_.below(2);
                std::set<std::string> labels;
                for (int e = 1; e <= entity_count; ++e) {
                    std::string label =
                        "Entity" + std::to_string(i) + value_names[v] + std::to_string(e);
                    labels.insert(label);
                    add_entity(label, "Cluster" + std::to_string(i));
                    if (head.empty()) head = label;
                }
                variable.values[value_names[v]] = std::move(labels);
            }
            result_.spec.variables[var] = std::move(variable);
            heads.push_back(head);
        }
        // A bare chain: acyclic, no skip edges, nothing mediated.
        for (int i = 0; i + 1 < n_vars_; ++i) {
            add_assertion(heads[i], heads[i + 1], "Cluster" + std::to_string(i + 1));
        }
    }

    void plant(DiagnosticCode code) {
        std::string p = std::to_string(++plant_counter_);
        switch (code) {
        case DiagnosticCode::NameUnresolved: {
            declare_variable("Unres" + p, {"UnresEnt" + p}, "UnresCluster" + p);
            add_assertion("UnresEnt" + p, "Ghost" + p, "UnresCluster" + p);
            record(code, {"Ghost" + p});
            return;
        }
        case DiagnosticCode::AliasChain: {
            result_.spec.aliases["ChainA" + p] = "ChainB" + p;
            result_.spec.aliases["ChainB" + p] = "ChainC" + p;
            record(code, {"ChainB" + p});
            return;
        }
        case DiagnosticCode::ClusterOverlap: {
            std::string label = "OvlEnt" + p;
            CausalVariable variable;
            variable.name = "Ovl" + p;
            variable.values["a"] = {label};
            result_.spec.variables[variable.name] = std::move(variable);
            add_entity(label, "OvlClusterX" + p + " & OvlClusterY" + p);
            record(code, {label});
            return;
        }
        case DiagnosticCode::R1Dup: {
            std::string label = "DupEnt" + p;
            declare_variable("DupA" + p, {label}, "DupCluster" + p);
            CausalVariable other;
            other.name = "DupB" + p;
            other.values["a"] = {label};
            result_.spec.variables[other.name] = std::move(other);
            record(code, {label});
            return;
        }
        case DiagnosticCode::R1Unassigned: {
            add_entity("Lone" + p, "LoneCluster" + p);
            record(code, {"Lone" + p});
            return;
        }
        case DiagnosticCode::R1NearDup: {
            std::string label_a = "Nd" + p + " alen" + p + " blen" + p + " gamma" + p;
            std::string label_b = "Nd" + p + " alen" + p + " blen" + p + " delta" + p;
            declare_variable("NdA" + p, {label_a}, "NdCluster" + p);
            declare_variable("NdB" + p, {label_b}, "NdCluster" + p);
            std::vector<std::string> subjects{label_a, label_b};
            std::sort(subjects.begin(), subjects.end());
            record(code, subjects);
            return;
        }
        case DiagnosticCode::R2Misplaced: {
            CausalVariable variable;
            variable.name = "Deg" + p;
            variable.values["a"] = {"DegEntA" + p};
            variable.values["b"] = {"DegEntB" + p};
            result_.spec.variables[variable.name] = std::move(variable);
            add_entity("DegEntA" + p, "DegCluster" + p);
            add_entity("DegEntB" + p, "DegCluster" + p);
            std::string interaction_name = "DegInter" + p;
            ArtificialNode node;
            node.name = interaction_name;
            node.constituents = {{"Deg" + p, "a"}, {"Deg" + p, "b"}};
            result_.spec.interactions[interaction_name] = std::move(node);
            record(code, {interaction_name});
            return;
        }
        case DiagnosticCode::R3Mediated: {
            declare_variable("MedA" + p, {"MedEntA" + p}, "MedCluster" + p);
            declare_variable("MedB" + p, {"MedEntB" + p}, "MedCluster" + p);
            declare_variable("MedC" + p, {"MedEntC" + p}, "MedCluster" + p);
            add_assertion("MedEntA" + p, "MedEntB" + p, "MedCluster" + p);
            add_assertion("MedEntB" + p, "MedEntC" + p, "MedCluster" + p);
            add_assertion("MedEntA" + p, "MedEntC" + p, "MedCluster" + p);
            record(code, {"MedA" + p, "MedC" + p, "MedB" + p});
            return;
        }
        case DiagnosticCode::R4Transitivity: {
            declare_variable("TrE" + p, {"TrEntE" + p}, "TrCluster" + p);
            declare_variable("TrF" + p, {"TrEntF" + p}, "TrCluster" + p);
            declare_variable("TrG" + p, {"TrEntG" + p}, "TrCluster" + p);
            add_assertion("TrEntE" + p, "TrEntF" + p, "TrCluster" + p);
            add_assertion("TrEntF" + p, "TrEntG" + p, "TrCluster" + p);
            result_.spec.denials.insert(DeniedRelation{"TrE" + p, "TrG" + p});
            record(code, {"TrE" + p + " -> TrF" + p + " -> TrG" + p});
            return;
        }
        case DiagnosticCode::R4Cycle: {
            declare_variable("CycA" + p, {"CycEntA" + p}, "CycCluster" + p);
            declare_variable("CycB" + p, {"CycEntB" + p}, "CycCluster" + p);
            declare_variable("CycC" + p, {"CycEntC" + p}, "CycCluster" + p);
            add_assertion("CycEntA" + p, "CycEntB" + p, "CycCluster" + p);
            add_assertion("CycEntB" + p, "CycEntC" + p, "CycCluster" + p);
            add_assertion("CycEntC" + p, "CycEntA" + p, "CycCluster" + p);
            record(code, {"CycA" + p, "CycB" + p, "CycC" + p});
            return;
        }
        case DiagnosticCode::R3Unsupported:
        case DiagnosticCode::R3UntypedArtificial:
            throw ParseError("plant " + to_string(code) +
                                 " is infeasible: diagram construction always types edges and "
                                 "attaches provenance; these checks guard hand-edited diagrams",
                             0);
        }
        throw ParseError("unknown plant code", 0);
    }

    void record(DiagnosticCode code, std::vector<std::string> subjects) {
        result_.ledger.plants.push_back(Plant{code, std::move(subjects)});
    }

    Rng rng_;
    int n_vars_;
    int next_id_ = 1;
    int plant_counter_ = 0;
    SynthResult result_;
};

}  // namespace

SynthResult generate(std::uint64_t seed, int n_vars,
                     const std::map<DiagnosticCode, int>& plants) {
    if (n_vars < 1) {
        throw ParseError("n_vars must be at least 1, got " + std::to_string(n_vars), 0);
    }
    bool wants_r4 = false;
    for (const auto& [code, count] : plants) {
        if (count < 0) {
            throw ParseError("plant count for " + to_string(code) + " may not be negative", 0);
        }
        if (count > 0 &&
            (code == DiagnosticCode::R4Cycle || code == DiagnosticCode::R4Transitivity)) {
            wants_r4 = true;
        }
    }
    if (wants_r4 && n_vars < 3) {
        throw ParseError("R4 plants need n_vars >= 3, got " + std::to_string(n_vars), 0);
    }
    Generator generator(seed, n_vars);
    return generator.run(plants);
}

std::string ledger_to_json(const PlantLedger& ledger) {
    nlohmann::json root;
    root["plants"] = nlohmann::json::array();
    for (const Plant& plant : ledger.plants) {
        root["plants"].push_back(
            nlohmann::json{{"code", to_string(plant.code)}, {"subjects", plant.subjects}});
    }
    return root.dump(2) + "\n";
}

PlantLedger ledger_from_json(std::string_view text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid ledger JSON: ") + e.what(), 0);
    }
    PlantLedger ledger;
    try {
        for (const nlohmann::json& entry : root.at("plants")) {
            Plant plant;
            auto code = code_from_string(entry.at("code").get<std::string>());
            if (!code) throw ParseError("unknown diagnostic code in ledger", 0);
            plant.code = *code;
            plant.subjects = entry.at("subjects").get<std::vector<std::string>>();
            ledger.plants.push_back(std::move(plant));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid ledger JSON: ") + e.what(), 0);
    }
    return ledger;
}

}  // namespace cogmap
