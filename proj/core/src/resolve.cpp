#include "cogmap/resolve.hpp"

#include <algorithm>
#include <cctype>

namespace cogmap {

std::string normalize(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    bool pending_space = false;
    for (char c : label) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc)) {
            if (pending_space && !out.empty()) out += ' ';
            pending_space = false;
            out += static_cast<char>(std::tolower(uc));
        } else {
            pending_space = true;
        }
    }
    return out;
}

std::set<std::string> label_tokens(std::string_view label) {
    std::set<std::string> tokens;
    std::string normalized = normalize(label);
    std::size_t start = 0;
    while (start < normalized.size()) {
        std::size_t end = normalized.find(' ', start);
        if (end == std::string::npos) end = normalized.size();
        if (end > start) tokens.insert(normalized.substr(start, end - start));
        start = end + 1;
    }
    return tokens;
}

std::set<std::string> known_labels(const CurationSpec& spec) {
    std::set<std::string> known;
    for (const auto& [_, variable] : spec.variables) {
        for (const auto& [_, labels] : variable.values) {
            known.insert(labels.begin(), labels.end());
        }
    }
    for (const auto& [name, _] : spec.interactions) {
        known.insert(name);
    }
    return known;
}

std::optional<std::string> resolve(std::string_view label, const CurationSpec& spec,
                                   const std::set<std::string>& known) {
    std::map<std::string, std::string> by_key;
    for (const std::string& canonical : known) {
        by_key.emplace(normalize(canonical), canonical);
    }

    std::string key = normalize(label);
    // Single-hop alias application on the normalized key.
    for (const auto& [alias_key, target] : spec.aliases) {
        if (normalize(alias_key) == key) {
            key = normalize(target);
            break;
        }
    }
    auto it = by_key.find(key);
    if (it == by_key.end()) return std::nullopt;
    return it->second;
}

ResolutionTable make_resolution_table(const CurationSpec& spec,
                                      const std::vector<std::string>& labels) {
    ResolutionTable table;
    std::map<std::string, std::string> base;  // frozen: no alias-through-alias
    for (const std::string& canonical : known_labels(spec)) {
        base.emplace(normalize(canonical), canonical);
    }
    table.canonical = base;
    std::set<std::string> alias_written;
    for (const auto& [alias_key, target] : spec.aliases) {
        std::string key = normalize(alias_key);
        if (!alias_written.insert(key).second) continue;  // first alias per key wins
        auto it = base.find(normalize(target));
        if (it != base.end()) {
            // An alias wins over direct ownership of the same key: aliases
            // are applied before the known-label match.
            table.canonical.insert_or_assign(key, it->second);
        } else {
            table.canonical.erase(key);
        }
    }
    for (const std::string& label : labels) {
        if (table.canonical.count(normalize(label)) == 0) {
            table.unresolved.insert(label);
        }
    }
    return table;
}

std::map<std::string, std::string> owner_index(const CurationSpec& spec) {
    std::map<std::string, std::string> owner;
    for (const auto& [name, variable] : spec.variables) {
        for (const auto& [_, labels] : variable.values) {
            for (const std::string& label : labels) {
                owner.emplace(normalize(label), name);
            }
        }
    }
    for (const auto& [name, _] : spec.interactions) {
        owner.emplace(normalize(name), name);
    }
    std::map<std::string, std::string> with_aliases = owner;
    std::set<std::string> alias_written;
    for (const auto& [alias_key, target] : spec.aliases) {
        std::string key = normalize(alias_key);
        if (!alias_written.insert(key).second) continue;  // first alias per key wins
        auto it = owner.find(normalize(target));
        if (it != owner.end()) {
            with_aliases.insert_or_assign(key, it->second);
        } else {
            with_aliases.erase(key);
        }
    }
    return with_aliases;
}

std::vector<Diagnostic> unresolved_diagnostics(const CorpusBundle& bundle,
                                               const CurationSpec& spec) {
    std::map<std::string, std::string> owner = owner_index(spec);
    // First occurrence (1-based assertion number) of each unresolved label.
    std::map<std::string, std::size_t> first_seen;
    for (std::size_t i = 0; i < bundle.assertions.size(); ++i) {
        const EntityAssertion& assertion = bundle.assertions[i];
        for (const std::string& label : {assertion.cause, assertion.effect}) {
            if (owner.count(normalize(label)) == 0) {
                first_seen.emplace(label, i + 1);
            }
        }
    }
    std::vector<Diagnostic> out;
    for (const auto& [label, first] : first_seen) {
        out.push_back(make_diagnostic(
            DiagnosticCode::NameUnresolved,
            "\"" + label + "\" (first used by assertion #" + std::to_string(first) +
                ") does not resolve to any variable value or interaction",
            {label}));
    }
    return out;
}

std::vector<NearDupPair> near_duplicates(const std::vector<TextEntity>& entities,
                                         double threshold) {
    struct Prepared {
        const TextEntity* entity;
        std::string normalized;
        std::set<std::string> tokens;
    };
    std::vector<Prepared> prepared;
    prepared.reserve(entities.size());
    for (const TextEntity& entity : entities) {
        prepared.push_back({&entity, normalize(entity.label), label_tokens(entity.label)});
    }

    std::set<NearDupPair> out;
    for (std::size_t i = 0; i < prepared.size(); ++i) {
        for (std::size_t j = i + 1; j < prepared.size(); ++j) {
            const Prepared& a = prepared[i];
            const Prepared& b = prepared[j];
            if (a.normalized == b.normalized) continue;  // duplicates, not near-dups
            std::vector<std::string> inter;
            std::set_intersection(a.tokens.begin(), a.tokens.end(), b.tokens.begin(),
                                  b.tokens.end(), std::back_inserter(inter));
            int shared = static_cast<int>(inter.size());
            int total = static_cast<int>(a.tokens.size() + b.tokens.size() - inter.size());
            if (total == 0) continue;
            double score = static_cast<double>(shared) / total;
            if (score >= threshold) {
                NearDupPair pair;
                if (a.entity->label <= b.entity->label) {
                    pair = {a.entity->label, b.entity->label, shared, total};
                } else {
                    pair = {b.entity->label, a.entity->label, shared, total};
                }
                out.insert(pair);
            }
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace cogmap
