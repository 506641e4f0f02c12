#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cito/model.hpp"

namespace cito {

/// Strongly connected components plus the DFS edge ranks used by the
/// deterministic tie-breaks. Roots and neighbors are visited in canonical
/// id order, so ranks are reproducible for a given graph.
struct SccInfo {
    std::vector<int> component_id;                 // per node index
    std::vector<std::vector<int>> components;      // node indices, each ascending
    std::map<std::pair<int, int>, int> dfs_edge_rank;  // (client, server) -> first-traversal order

    bool same_component(int u, int v) const { return component_id[u] == component_id[v]; }

    int rank(int u, int v) const {
        auto it = dfs_edge_rank.find({u, v});
        return it == dfs_edge_rank.end() ? -1 : it->second;
    }
};

inline SccInfo tarjan_scc(const Cdg& cdg) {
    const int n = static_cast<int>(cdg.node_count());
    SccInfo info;
    info.component_id.assign(n, -1);

    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int counter = 0;
    int edge_counter = 0;

    // iterative DFS; frame = (node, next successor position)
    struct Frame { int node; std::size_t next; };
    std::vector<Frame> frames;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& succs = cdg.successors(f.node);
            if (f.next < succs.size()) {
                int w = succs[f.next++];
                auto key = std::make_pair(f.node, w);
                if (!info.dfs_edge_rank.count(key)) info.dfs_edge_rank[key] = edge_counter++;
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    if (index[w] < low[f.node]) low[f.node] = index[w];
                }
            } else {
                int v = f.node;
                frames.pop_back();
                if (!frames.empty() && low[v] < low[frames.back().node])
                    low[frames.back().node] = low[v];
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    int cid = static_cast<int>(info.components.size());
                    for (int w : comp) info.component_id[w] = cid;
                    info.components.push_back(std::move(comp));
                }
            }
        }
    }
    return info;
}

/// True when the graph has no cycle: every SCC is a singleton (self-loops
/// are rejected at construction).
inline bool verify_acyclic(const Cdg& cdg) {
    SccInfo scc = tarjan_scc(cdg);
    for (const auto& comp : scc.components)
        if (comp.size() > 1) return false;
    return true;
}

}  // namespace cito
