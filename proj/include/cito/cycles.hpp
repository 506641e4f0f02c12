#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cito/model.hpp"
#include "cito/scc.hpp"

namespace cito {

/// Elementary directed cycle as a closed node walk. nodes[0] is the smallest
/// node index on the cycle (rotation normalization); the closing edge runs
/// nodes.back() -> nodes.front().
struct Cycle {
    std::vector<int> nodes;

    std::size_t length() const { return nodes.size(); }

    bool contains_edge(int client, int server) const {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i] == client && nodes[(i + 1) % nodes.size()] == server) return true;
        return false;
    }

    std::string str(const Cdg& cdg) const {
        std::string out;
        for (int v : nodes) {
            out += cdg.node(v).id;
            out += "->";
        }
        out += cdg.node(nodes.front()).id;
        return out;
    }
};

struct CycleLimitError : std::runtime_error {
    explicit CycleLimitError(std::size_t cap)
        : std::runtime_error("elementary cycle count exceeds cap of " + std::to_string(cap)) {}
};

/// Enumerates every elementary cycle of the subgraph induced by `scc_nodes`.
///
/// Classic ordered search: each cycle is discovered exactly once from its
/// smallest node, visiting only larger nodes, so the output is already
/// rotation-normalized. Results sorted by (length, node sequence); node
/// indices follow canonical id order. Throws CycleLimitError past the cap,
/// since elementary-cycle counts can grow exponentially.
inline std::vector<Cycle> enumerate_cycles(const Cdg& cdg, const std::vector<int>& scc_nodes,
                                           std::size_t max_cycles = 1000000) {
    std::vector<bool> in_scc(cdg.node_count(), false);
    for (int v : scc_nodes) in_scc[static_cast<std::size_t>(v)] = true;

    std::vector<Cycle> cycles;
    std::vector<int> path;
    std::vector<bool> visited(cdg.node_count(), false);

    struct Frame { int node; std::size_t next; };
    std::vector<Frame> frames;

    for (int start : scc_nodes) {
        path.assign(1, start);
        visited.assign(cdg.node_count(), false);
        visited[static_cast<std::size_t>(start)] = true;
        frames.assign(1, {start, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& succs = cdg.successors(f.node);
            if (f.next < succs.size()) {
                int w = succs[f.next++];
                if (!in_scc[static_cast<std::size_t>(w)]) continue;
                if (w == start && path.size() >= 2) {
                    cycles.push_back({path});
                    if (cycles.size() > max_cycles) throw CycleLimitError(max_cycles);
                } else if (w > start && !visited[static_cast<std::size_t>(w)]) {
                    visited[static_cast<std::size_t>(w)] = true;
                    path.push_back(w);
                    frames.push_back({w, 0});
                }
            } else {
                visited[static_cast<std::size_t>(f.node)] = false;
                path.pop_back();
                frames.pop_back();
            }
        }
    }
    std::sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) {
        if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
        return a.nodes < b.nodes;
    });
    return cycles;
}

/// All cycles of the graph: union over nontrivial SCCs, canonical order.
inline std::vector<Cycle> enumerate_all_cycles(const Cdg& cdg, const SccInfo& scc,
                                               std::size_t max_cycles = 1000000) {
    std::vector<Cycle> all;
    for (const auto& comp : scc.components) {
        if (comp.size() < 2) continue;
        auto part = enumerate_cycles(cdg, comp, max_cycles);
        if (all.size() + part.size() > max_cycles) throw CycleLimitError(max_cycles);
        all.insert(all.end(), part.begin(), part.end());
    }
    std::sort(all.begin(), all.end(), [](const Cycle& a, const Cycle& b) {
        if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
        return a.nodes < b.nodes;
    });
    return all;
}

}  // namespace cito
