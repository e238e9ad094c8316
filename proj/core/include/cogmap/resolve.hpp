#pragma once
// Label canonicalization: normalization, single-hop alias application, and
// token-set near-duplicate detection between corpus entities.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cogmap/ingest.hpp"
#include "cogmap/model.hpp"

namespace cogmap {

// Lowercases, turns punctuation into spaces, collapses whitespace runs,
// trims. Idempotent.
std::string normalize(std::string_view label);

// Tokens of the normalized label.
std::set<std::string> label_tokens(std::string_view label);

struct ResolutionTable {
    std::map<std::string, std::string> canonical;  // normalized key -> canonical label
    std::set<std::string> unresolved;              // raw labels that failed to resolve
};

// Applies the alias map exactly once on the normalized key, then matches
// against `known` by normalized equality. Unresolved is a value, not an
// error.
std::optional<std::string> resolve(std::string_view label, const CurationSpec& spec,
                                   const std::set<std::string>& known);

// Canonical labels a spec can resolve to: every entity label owned by a
// variable value, plus every interaction name.
std::set<std::string> known_labels(const CurationSpec& spec);

// Resolves every raw label in `labels`; misses land in `unresolved`.
ResolutionTable make_resolution_table(const CurationSpec& spec,
                                      const std::vector<std::string>& labels);

// Normalized label -> owning node name (the variable whose value owns the
// label, or the interaction carrying it as its name), with aliases applied
// one hop.
std::map<std::string, std::string> owner_index(const CurationSpec& spec);

// One NAME-UNRESOLVED diagnostic per distinct assertion label that resolves
// to no variable value or interaction.
std::vector<Diagnostic> unresolved_diagnostics(const CorpusBundle& bundle,
                                               const CurationSpec& spec);

struct NearDupPair {
    std::string a;  // a < b lexicographically
    std::string b;
    int shared = 0;  // |token-set intersection|
    int total = 0;   // |token-set union|

    double score() const { return total == 0 ? 0.0 : static_cast<double>(shared) / total; }
    auto operator<=>(const NearDupPair&) const = default;
};

// Unordered entity pairs whose token-set Jaccard similarity reaches the
// threshold. Pairs with identical normalized labels are excluded; those are
// duplicate territory, not near-duplicate territory.
std::vector<NearDupPair> near_duplicates(const std::vector<TextEntity>& entities,
                                         double threshold);

}  // namespace cogmap
