#pragma once
// Seeded generator of synthetic corpora (map + relations + spec) with a
// ledger of deliberately planted violations. Powers the recall and
// no-false-positive suites.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "cogmap/ingest.hpp"
#include "cogmap/model.hpp"

namespace cogmap {

struct Plant {
    DiagnosticCode code = DiagnosticCode::NameUnresolved;
    std::vector<std::string> subjects;

    bool operator==(const Plant&) const = default;
};

struct PlantLedger {
    std::vector<Plant> plants;

    bool operator==(const PlantLedger&) const = default;
};

struct SynthResult {
    CorpusBundle bundle;
    CurationSpec spec;
    PlantLedger ledger;
};

// Pure function of (seed, n_vars, plants). With zero plants the generated
// triple lints clean. Each requested plant injects one minimal violation on
// fresh nodes and records it in the ledger.
//
// Throws ParseError for infeasible requests: n_vars < 1, negative counts,
// R4 plants with n_vars < 3, and the two codes that cannot arise from a
// corpus build (R3-UNSUPPORTED, R3-UNTYPED-ARTIFICIAL guard hand-edited
// diagrams only).
SynthResult generate(std::uint64_t seed, int n_vars,
                     const std::map<DiagnosticCode, int>& plants);

std::string ledger_to_json(const PlantLedger& ledger);
PlantLedger ledger_from_json(std::string_view text);

}  // namespace cogmap
