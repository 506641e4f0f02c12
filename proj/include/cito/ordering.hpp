#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cito/breaking.hpp"
#include "cito/model.hpp"

namespace cito {

/// Which side of a surviving edge must be integrated first.
/// clients_first emits a vertex once everything pointing at it is emitted
/// (the default); servers_first emits a vertex once everything it points to
/// is emitted.
enum class OrderConvention { clients_first, servers_first };

inline const char* to_string(OrderConvention c) {
    return c == OrderConvention::clients_first ? "clients-first" : "servers-first";
}

struct TestOrder {
    std::vector<std::string> sequence;
    std::map<std::string, std::vector<std::string>> stub_map;  // filled by stub_report
};

/// Kahn linearization with the smallest available id emitted first.
inline TestOrder topo_order(const Cdg& residual,
                            OrderConvention convention = OrderConvention::clients_first) {
    const int n = static_cast<int>(residual.node_count());
    std::vector<std::set<int>> blockers(static_cast<std::size_t>(n));
    for (const CdgEdge& e : residual.edges()) {
        int u = residual.node_index(e.client);
        int v = residual.node_index(e.server);
        if (convention == OrderConvention::clients_first)
            blockers[static_cast<std::size_t>(v)].insert(u);
        else
            blockers[static_cast<std::size_t>(u)].insert(v);
    }

    TestOrder order;
    std::vector<bool> emitted(static_cast<std::size_t>(n), false);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {  // ascending = canonical id order
            if (emitted[static_cast<std::size_t>(v)]) continue;
            bool free = true;
            for (int b : blockers[static_cast<std::size_t>(v)])
                if (!emitted[static_cast<std::size_t>(b)]) { free = false; break; }
            if (free) { pick = v; break; }
        }
        if (pick == -1) throw ModelError("topo_order: input graph is cyclic");
        emitted[static_cast<std::size_t>(pick)] = true;
        order.sequence.push_back(residual.node(pick).id);
    }
    return order;
}

/// Checks the sequence against every surviving edge under the convention.
inline bool is_valid_linearization(const Cdg& residual, const std::vector<std::string>& sequence,
                                   OrderConvention convention) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < sequence.size(); ++i) pos[sequence[i]] = i;
    if (pos.size() != residual.node_count()) return false;
    for (const CdgEdge& e : residual.edges()) {
        auto c = pos.find(e.client), s = pos.find(e.server);
        if (c == pos.end() || s == pos.end()) return false;
        if (convention == OrderConvention::clients_first) {
            if (c->second > s->second) return false;
        } else {
            if (s->second > c->second) return false;
        }
    }
    return true;
}

/// Stub accounting for a break plan and an integration order.
struct StubReport {
    std::vector<CdgEdge> specific_stubs;      // one per removed edge
    std::vector<std::string> realistic_stubs; // distinct servers of removed edges
    int integration_steps = 0;                // classes + specific stubs
    Rational integration_cost{0};
};

inline StubReport stub_report(const Cdg& cdg, const BreakPlan& plan, TestOrder& order) {
    StubReport report;
    std::set<std::string> servers;
    order.stub_map.clear();
    for (const Removal& r : plan.removals) {
        const CdgEdge& e = cdg.edges()[static_cast<std::size_t>(r.edge_index)];
        report.specific_stubs.push_back(e);
        servers.insert(e.server);
        order.stub_map[e.client].push_back(e.server);
    }
    for (auto& [client, stubs] : order.stub_map) std::sort(stubs.begin(), stubs.end());
    report.realistic_stubs.assign(servers.begin(), servers.end());
    report.integration_steps =
        static_cast<int>(cdg.node_count()) + static_cast<int>(report.specific_stubs.size());
    report.integration_cost = plan.total_cost;
    return report;
}

}  // namespace cito
