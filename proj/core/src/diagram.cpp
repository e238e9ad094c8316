#include "cogmap/diagram.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cogmap {

namespace {

std::map<std::string, std::vector<std::pair<std::string, EdgeKind>>> causal_adjacency(
    const CausalDiagram& diagram) {
    std::map<std::string, std::vector<std::pair<std::string, EdgeKind>>> adj;
    for (const std::string& node : diagram.node_names()) {
        adj[node];  // every node present, even if isolated
    }
    for (const DiagramEdge& edge : diagram.edges) {
        if (edge.kind == EdgeKind::Membership) continue;
        if (edge.src == edge.dst) continue;  // self-edges surface as cycles only
        adj[edge.src].emplace_back(edge.dst, edge.kind);
    }
    for (auto& [_, neighbors] : adj) {
        std::sort(neighbors.begin(), neighbors.end());
    }
    return adj;
}

}  // namespace

BuildResult build_diagram(const CorpusBundle& bundle, const CurationSpec& spec) {
    BuildResult result;
    result.diagram.variables = spec.variables;
    result.diagram.artificials = spec.interactions;

    // Membership edges from interaction constituents.
    for (const auto& [name, interaction] : spec.interactions) {
        for (const Constituent& constituent : interaction.constituents) {
            if (result.diagram.variables.count(constituent.variable) == 0) continue;
            DiagramEdge edge{name, constituent.variable, EdgeKind::Membership, {}};
            result.diagram = add_edge(std::move(result.diagram), edge);
        }
    }

    std::map<std::string, std::string> owner = owner_index(spec);

    std::vector<std::string> assertion_labels;
    assertion_labels.reserve(bundle.assertions.size() * 2);
    for (const EntityAssertion& assertion : bundle.assertions) {
        assertion_labels.push_back(assertion.cause);
        assertion_labels.push_back(assertion.effect);
    }
    result.resolution = make_resolution_table(spec, assertion_labels);
    result.diagnostics = unresolved_diagnostics(bundle, spec);

    for (std::size_t i = 0; i < bundle.assertions.size(); ++i) {
        const EntityAssertion& assertion = bundle.assertions[i];
        auto src_it = owner.find(normalize(assertion.cause));
        auto dst_it = owner.find(normalize(assertion.effect));
        if (src_it == owner.end() || dst_it == owner.end()) continue;

        const std::string& src = src_it->second;
        const std::string& dst = dst_it->second;
        if (src == dst) {
            result.diagram.self_loops[src].insert(i);
            continue;
        }
        EdgeKind kind = (result.diagram.is_artificial(src) || result.diagram.is_artificial(dst))
                            ? EdgeKind::ArtificialCausal
                            : EdgeKind::VariableCausal;
        result.diagram = add_edge(std::move(result.diagram), DiagramEdge{src, dst, kind, {i}});
    }
    return result;
}

std::vector<CausalPath> collect_paths(const CausalDiagram& diagram,
                                      const std::optional<std::string>& from,
                                      const std::optional<std::string>& to, int min_nodes,
                                      int max_nodes) {
    for (const auto& endpoint : {from, to}) {
        if (endpoint && !diagram.has_node(*endpoint)) {
            throw ParseError("unknown node '" + *endpoint + "'", 0, 0);
        }
    }

    auto adj = causal_adjacency(diagram);
    std::vector<CausalPath> out;

    CausalPath current;
    std::set<std::string> on_path;

    auto dfs = [&](auto&& self, const std::string& node) -> void {
        int nodes_so_far = static_cast<int>(current.nodes.size());
        if (nodes_so_far >= min_nodes && (!to || current.nodes.back() == *to)) {
            out.push_back(current);
        }
        if (nodes_so_far >= max_nodes) return;
        for (const auto& [next, kind] : adj[node]) {
            if (on_path.count(next) > 0) continue;
            current.nodes.push_back(next);
            current.kinds.push_back(kind);
            on_path.insert(next);
            self(self, next);
            on_path.erase(next);
            current.nodes.pop_back();
            current.kinds.pop_back();
        }
    };

    std::vector<std::string> starts;
    if (from) {
        starts.push_back(*from);
    } else {
        starts = diagram.node_names();
    }
    for (const std::string& start : starts) {
        current = CausalPath{{start}, {}};
        on_path = {start};
        dfs(dfs, start);
    }
    std::sort(out.begin(), out.end(), [](const CausalPath& a, const CausalPath& b) {
        return a.nodes < b.nodes;
    });
    return out;
}

std::vector<CausalPath> enumerate_paths(const CausalDiagram& diagram, int max_len,
                                        const std::optional<std::string>& from,
                                        const std::optional<std::string>& to) {
    if (max_len < 3) {
        throw ParseError("max_len must be at least 3 nodes, got " + std::to_string(max_len), 0, 0);
    }
    return collect_paths(diagram, from, to, 3, max_len);
}

namespace {

// Johnson-style simple-cycle enumeration over the subgraph of vertices with
// index >= s, restricted to s's strongly connected component.
class CycleEnumerator {
public:
    CycleEnumerator(std::vector<std::string> names, std::vector<std::vector<int>> adj)
        : names_(std::move(names)), adj_(std::move(adj)), n_(static_cast<int>(names_.size())) {}

    CycleSet run() {
        CycleSet result;
        for (int s = 0; s < n_ && !capped_; ++s) {
            std::vector<int> scc = scc_of(s);
            if (scc.size() < 2) continue;
            std::set<int> members(scc.begin(), scc.end());
            blocked_.assign(n_, false);
            block_map_.assign(n_, {});
            stack_.clear();
            circuit(s, s, members);
        }
        std::sort(cycles_.begin(), cycles_.end());
        result.cycles = std::move(cycles_);
        result.truncated = capped_;
        return result;
    }

private:
    // SCC containing s within the subgraph of vertices >= s (iterative Tarjan).
    std::vector<int> scc_of(int s) {
        std::vector<int> index(n_, -1), low(n_, 0);
        std::vector<bool> on_stack(n_, false);
        std::vector<int> stack;
        int counter = 0;
        std::vector<int> result;

        struct Frame {
            int v;
            std::size_t next_edge;
        };
        std::vector<Frame> call_stack;

        auto push_vertex = [&](int v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            call_stack.push_back({v, 0});
        };

        for (int root = s; root < n_; ++root) {
            if (index[root] != -1) continue;
            push_vertex(root);
            while (!call_stack.empty()) {
                Frame& frame = call_stack.back();
                int v = frame.v;
                bool descended = false;
                while (frame.next_edge < adj_[v].size()) {
                    int w = adj_[v][frame.next_edge++];
                    if (w < s) continue;
                    if (index[w] == -1) {
                        push_vertex(w);
                        descended = true;
                        break;
                    }
                    if (on_stack[w]) low[v] = std::min(low[v], index[w]);
                }
                if (descended) continue;
                if (low[v] == index[v]) {
                    std::vector<int> component;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        component.push_back(w);
                        if (w == v) break;
                    }
                    if (std::find(component.begin(), component.end(), s) != component.end()) {
                        result = component;
                    }
                }
                call_stack.pop_back();
                if (!call_stack.empty()) {
                    int parent = call_stack.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
            if (!result.empty()) break;
        }
        return result;
    }

    bool circuit(int v, int s, const std::set<int>& members) {
        if (capped_) return false;
        bool found = false;
        stack_.push_back(v);
        blocked_[v] = true;
        for (int w : adj_[v]) {
            if (capped_) break;
            if (members.count(w) == 0) continue;
            if (w == s) {
                record();
                found = true;
            } else if (!blocked_[w]) {
                if (circuit(w, s, members)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (int w : adj_[v]) {
                if (members.count(w) > 0) block_map_[w].insert(v);
            }
        }
        stack_.pop_back();
        return found;
    }

    void unblock(int v) {
        blocked_[v] = false;
        std::set<int> pending = std::move(block_map_[v]);
        block_map_[v].clear();
        for (int u : pending) {
            if (blocked_[u]) unblock(u);
        }
    }

    void record() {
        if (cycles_.size() >= kMaxEnumeratedCycles) {
            capped_ = true;
            return;
        }
        Cycle cycle;
        cycle.nodes.reserve(stack_.size());
        for (int v : stack_) cycle.nodes.push_back(names_[v]);
        cycles_.push_back(std::move(cycle));
    }

    std::vector<std::string> names_;
    std::vector<std::vector<int>> adj_;
    int n_;
    std::vector<bool> blocked_;
    std::vector<std::set<int>> block_map_;
    std::vector<int> stack_;
    std::vector<Cycle> cycles_;
    bool capped_ = false;
};

}  // namespace

CycleSet find_cycles(const CausalDiagram& diagram) {
    std::vector<std::string> names = diagram.node_names();
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);

    std::vector<std::vector<int>> adj(names.size());
    std::set<std::string> self_loop_nodes;
    for (const auto& [node, _] : diagram.self_loops) self_loop_nodes.insert(node);
    for (const DiagramEdge& edge : diagram.edges) {
        if (edge.kind == EdgeKind::Membership) continue;
        if (edge.src == edge.dst) {
            self_loop_nodes.insert(edge.src);  // hand-loaded self-edges
            continue;
        }
        adj[index.at(edge.src)].push_back(index.at(edge.dst));
    }
    for (auto& neighbors : adj) {
        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    }

    CycleEnumerator enumerator(names, std::move(adj));
    CycleSet result = enumerator.run();

    for (const std::string& node : self_loop_nodes) {
        result.cycles.push_back(Cycle{{node}});
    }
    std::sort(result.cycles.begin(), result.cycles.end());
    return result;
}

std::vector<MediatedEdge> find_mediated(const CausalDiagram& diagram) {
    // Causal reach as plain (src -> dst) lookups, ignoring edge kind.
    std::set<std::pair<std::string, std::string>> direct;
    for (const DiagramEdge& edge : diagram.edges) {
        if (edge.kind == EdgeKind::Membership || edge.src == edge.dst) continue;
        direct.emplace(edge.src, edge.dst);
    }

    std::vector<std::string> nodes = diagram.node_names();
    std::vector<MediatedEdge> out;
    for (const DiagramEdge& edge : diagram.edges) {
        if (edge.kind == EdgeKind::Membership || edge.src == edge.dst) continue;
        for (const std::string& mediator : nodes) {
            if (mediator == edge.src || mediator == edge.dst) continue;
            if (direct.count({edge.src, mediator}) > 0 && direct.count({mediator, edge.dst}) > 0) {
                out.push_back(MediatedEdge{edge.src, edge.dst, edge.kind, mediator});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool reachable(const CausalDiagram& diagram, const std::string& from, const std::string& to) {
    auto adj = causal_adjacency(diagram);
    std::set<std::string> visited{from};
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
        std::string node = queue.front();
        queue.pop_front();
        for (const auto& [next, _] : adj[node]) {
            if (next == to) return true;
            if (visited.insert(next).second) queue.push_back(next);
        }
    }
    return false;
}

}  // namespace cogmap
