// cogmaplint: lints brainstormed cognitive maps against the four causal
// modeling rules and reports violations as actionable diagnostics.
//
// Exit status: 0 clean, 1 rule violations, 2 usage or parse failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cogmap/curation.hpp"
#include "cogmap/diagram.hpp"
#include "cogmap/ingest.hpp"
#include "cogmap/report.hpp"
#include "cogmap/rules.hpp"
#include "cogmap/synth.hpp"

namespace fs = std::filesystem;

namespace {

struct CorpusOptions {
    std::string map_path;
    std::string relations_path;
    std::string spec_path;
    std::optional<int> max_path_len;
    std::optional<double> near_dup_threshold;
};

struct Pipeline {
    cogmap::CorpusBundle bundle;
    cogmap::CurationSpec spec;
    cogmap::BuildResult build;
    std::vector<cogmap::InputDigest> inputs;
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& opts, bool with_overrides) {
    cmd->add_option("--map", opts.map_path, "cognitive map CSV (index,text_entity,cluster)")
        ->required();
    cmd->add_option("--relations", opts.relations_path,
                    "entity-level assertions CSV (cause,effect,cluster)")
        ->required();
    cmd->add_option("--spec", opts.spec_path, "curation spec (.cdsl)")->required();
    if (with_overrides) {
        cmd->add_option("--max-path-len", opts.max_path_len,
                        "override max nodes per reviewed path (spec `set max_path_len`, default 6)");
        cmd->add_option("--near-dup-threshold", opts.near_dup_threshold,
                        "override the near-duplicate similarity threshold (default 0.5)")
            ->check(CLI::Range(0.0, 1.0));
    }
}

// Flag overrides beat spec `set` statements, which beat defaults.
Pipeline load_pipeline(const CorpusOptions& opts) {
    Pipeline pipeline;

    std::string spec_text = cogmap::read_file(opts.spec_path);
    try {
        pipeline.spec = cogmap::parse_curation(spec_text);
    } catch (const cogmap::ParseError& e) {
        throw cogmap::ParseError(opts.spec_path + ":" + e.what(), e.line(), e.column());
    }
    if (opts.max_path_len) pipeline.spec.config.max_path_len = *opts.max_path_len;
    if (opts.near_dup_threshold) pipeline.spec.config.near_dup_threshold = *opts.near_dup_threshold;

    pipeline.bundle = cogmap::load_corpus(opts.map_path, opts.relations_path);
    pipeline.build = cogmap::build_diagram(pipeline.bundle, pipeline.spec);

    for (const std::string& path : {opts.map_path, opts.relations_path, opts.spec_path}) {
        pipeline.inputs.push_back(
            cogmap::InputDigest{path, cogmap::sha256_hex(cogmap::read_file(path))});
    }
    return pipeline;
}

int run_lint(const CorpusOptions& opts, const std::string& format, bool warnings_as_errors) {
    Pipeline pipeline = load_pipeline(opts);

    cogmap::ReportDocument doc;
    doc.inputs = pipeline.inputs;
    doc.diagnostics = cogmap::check_all(pipeline.bundle, pipeline.spec, pipeline.build.diagram);

    if (format == "json") {
        std::cout << cogmap::render_json(doc);
    } else {
        std::vector<std::string> notes;
        if (cogmap::find_cycles(pipeline.build.diagram).truncated) {
            notes.push_back("note: cycle enumeration truncated at " +
                            std::to_string(cogmap::kMaxEnumeratedCycles) +
                            " cycles; loop findings are partial");
        }
        std::cout << cogmap::render_text(doc, notes);
    }
    return cogmap::exit_status(doc, warnings_as_errors);
}

int run_export(const CorpusOptions& opts, const std::string& dot_path,
               const std::string& json_path) {
    Pipeline pipeline = load_pipeline(opts);
    if (!dot_path.empty()) {
        std::ofstream out(dot_path, std::ios::binary);
        if (!out) throw cogmap::ParseError("cannot write " + dot_path, 0);
        out << cogmap::render_dot(pipeline.build.diagram);
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw cogmap::ParseError("cannot write " + json_path, 0);
        out << cogmap::diagram_to_json(pipeline.build.diagram);
    }
    return 0;
}

int run_paths(const CorpusOptions& opts, const std::string& from, const std::string& to) {
    Pipeline pipeline = load_pipeline(opts);
    auto paths = cogmap::enumerate_paths(pipeline.build.diagram,
                                         pipeline.spec.config.max_path_len, from, to);
    for (const cogmap::CausalPath& path : paths) {
        std::string kinds;
        for (std::size_t i = 0; i < path.kinds.size(); ++i) {
            if (i > 0) kinds += ", ";
            kinds += cogmap::to_string(path.kinds[i]);
        }
        std::cout << cogmap::path_string(path) << "  (" << kinds << ")\n";
    }
    return 0;
}

int run_suggest_splits(const CorpusOptions& opts) {
    Pipeline pipeline = load_pipeline(opts);
    auto findings = cogmap::collect_split_suggestions(pipeline.build.diagram, pipeline.spec,
                                                      pipeline.spec.config.max_path_len);
    for (const cogmap::SplitFinding& finding : findings) {
        std::cout << "deny " << finding.denial.cause << " -> " << finding.denial.effect
                  << ": path " << cogmap::path_string(finding.path) << ": "
                  << cogmap::suggestion_text(finding.suggestion) << "\n";
    }
    return 0;
}

std::map<cogmap::DiagnosticCode, int> parse_plants(const std::string& text) {
    std::map<cogmap::DiagnosticCode, int> plants;
    if (text.empty()) return plants;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        std::string item =
            end == std::string::npos ? text.substr(start) : text.substr(start, end - start);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw cogmap::ParseError("--plant items look like CODE=COUNT, got '" + item + "'", 0);
        }
        auto code = cogmap::code_from_string(item.substr(0, eq));
        if (!code) {
            throw cogmap::ParseError("unknown diagnostic code '" + item.substr(0, eq) + "'", 0);
        }
        int count = 0;
        try {
            count = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw cogmap::ParseError("bad plant count in '" + item + "'", 0);
        }
        plants[*code] += count;
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return plants;
}

int run_synth(std::uint64_t seed, int vars, const std::string& plant_arg,
              const std::string& out_dir) {
    cogmap::SynthResult result = cogmap::generate(seed, vars, parse_plants(plant_arg));
    fs::create_directories(out_dir);
    auto write = [&](const std::string& name, const std::string& content) {
        fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw cogmap::ParseError("cannot write " + path.string(), 0);
        out << content;
        std::cerr << "wrote " << path.string() << "\n";
    };
    write("map.csv", cogmap::write_cognitive_map(result.bundle.entities));
    write("relations.csv", cogmap::write_assertions(result.bundle.assertions));
    write("spec.cdsl", cogmap::pretty_print(result.spec));
    write("ledger.json", cogmap::ledger_to_json(result.ledger));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cogmaplint: turn brainstormed cognitive maps into well-formed causal diagrams"};
    app.set_version_flag("--version", cogmap::kToolVersion);
    app.require_subcommand(1);

    CorpusOptions lint_opts;
    std::string format = "text";
    bool warnings_as_errors = false;
    CLI::App* lint = app.add_subcommand("lint", "run the full rule pipeline and print a report");
    add_corpus_options(lint, lint_opts, true);
    lint->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    lint->add_flag("--warnings-as-errors", warnings_as_errors,
                   "exit nonzero on warnings as well");

    CorpusOptions export_opts;
    std::string dot_path, json_path;
    CLI::App* exp = app.add_subcommand("export", "serialize the lifted diagram");
    add_corpus_options(exp, export_opts, false);
    exp->add_option("--dot", dot_path, "write a DOT digraph to FILE");
    exp->add_option("--json", json_path, "write the diagram JSON to FILE");

    CorpusOptions paths_opts;
    std::string from, to;
    CLI::App* paths = app.add_subcommand(
        "paths", "enumerate causal paths between two nodes for expert review");
    add_corpus_options(paths, paths_opts, true);
    paths->add_option("--from", from, "start node")->required();
    paths->add_option("--to", to, "end node")->required();
    paths->add_option("--max-len", paths_opts.max_path_len, "max nodes per path (default 6)");

    CorpusOptions splits_opts;
    CLI::App* splits = app.add_subcommand(
        "suggest-splits", "print mediator split/reclassification suggestions for denied relations");
    add_corpus_options(splits, splits_opts, true);

    std::uint64_t seed = 0;
    int vars = 5;
    std::string plant_arg, out_dir;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus with a plant ledger");
    synth->add_option("--seed", seed, "generator seed")->required();
    synth->add_option("--vars", vars, "number of clean chain variables")->required();
    synth->add_option("--plant", plant_arg, "violations to plant, CODE=COUNT[,CODE=COUNT...]");
    synth->add_option("-o,--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help / --version
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (lint->parsed()) return run_lint(lint_opts, format, warnings_as_errors);
        if (exp->parsed()) {
            if (dot_path.empty() && json_path.empty()) {
                std::cerr << "export needs --dot FILE and/or --json FILE\n";
                return 2;
            }
            return run_export(export_opts, dot_path, json_path);
        }
        if (paths->parsed()) return run_paths(paths_opts, from, to);
        if (splits->parsed()) return run_suggest_splits(splits_opts);
        if (synth->parsed()) return run_synth(seed, vars, plant_arg, out_dir);
    } catch (const cogmap::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
