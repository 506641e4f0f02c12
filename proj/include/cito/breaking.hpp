#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cito/metrics.hpp"
#include "cito/model.hpp"

namespace cito {

enum class BreakStrategy { greedy, cwr };

inline const char* to_string(BreakStrategy s) {
    return s == BreakStrategy::greedy ? "greedy" : "cwr";
}

struct Removal {
    int edge_index;
    Rational weight;                 // Eq.-4 weight (greedy) or CWR at removal time
    std::vector<int> cycles_broken;  // newly broken cycle indices
};

struct BreakPlan {
    BreakStrategy strategy = BreakStrategy::greedy;
    CouplingVariant variant = CouplingVariant::cs_eq1;
    std::vector<Removal> removals;
    std::vector<int> skipped;  // edges visited while all their cycles were already broken
    Cdg residual;
    Rational total_cost{0};

    std::vector<int> removed_edges() const {
        std::vector<int> out;
        out.reserve(removals.size());
        for (const Removal& r : removals) out.push_back(r.edge_index);
        return out;
    }
};

struct InfeasibleCycleError : std::runtime_error {
    explicit InfeasibleCycleError(const std::string& cycle)
        : std::runtime_error("cycle " + cycle + " contains no breakable dependency") {}
};

namespace detail {

inline bool breakable(const EdgeMetrics& m) { return m.k == 1 && !m.weight.unbreakable; }

// every cycle needs at least one breakable edge, or no plan exists
inline void check_feasible(const Cdg& cdg, const AnalysisResult& analysis) {
    std::vector<bool> covered(analysis.cycles.size(), false);
    for (const EdgeMetrics& m : analysis.metrics)
        if (breakable(m))
            for (int c : m.cycles) covered[static_cast<std::size_t>(c)] = true;
    for (std::size_t c = 0; c < covered.size(); ++c)
        if (!covered[c]) throw InfeasibleCycleError(analysis.cycles[c].str(cdg));
}

inline int kind_preference(DepKind k) {
    // optional/use dependencies go first between equal weights
    return (k == DepKind::optional_dependency || k == DepKind::use_dependency) ? 0 : 1;
}

}  // namespace detail

/// Weight-greedy strategy: one descending pass over each SCC's edges,
/// removing an edge only while it still has an unbroken cycle. Ties resolve
/// by kind preference, then weight (vacuous inside a tie, kept for rule
/// fidelity), then first-traversed DFS edge.
inline BreakPlan greedy_break(const Cdg& cdg, const AnalysisResult& analysis) {
    detail::check_feasible(cdg, analysis);

    BreakPlan plan;
    plan.strategy = BreakStrategy::greedy;
    plan.variant = analysis.variant;

    std::vector<bool> broken(analysis.cycles.size(), false);

    for (const auto& comp : analysis.scc.components) {
        if (comp.size() < 2) continue;
        std::set<int> members(comp.begin(), comp.end());

        std::vector<int> order;
        for (std::size_t i = 0; i < cdg.edge_count(); ++i) {
            const CdgEdge& e = cdg.edges()[i];
            int u = cdg.node_index(e.client), v = cdg.node_index(e.server);
            if (members.count(u) && members.count(v)) order.push_back(static_cast<int>(i));
        }
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const EdgeMetrics& ma = analysis.metrics[static_cast<std::size_t>(a)];
            const EdgeMetrics& mb = analysis.metrics[static_cast<std::size_t>(b)];
            if (ma.weight.value != mb.weight.value) return mb.weight.value < ma.weight.value;
            int pa = detail::kind_preference(cdg.edges()[static_cast<std::size_t>(a)].kind);
            int pb = detail::kind_preference(cdg.edges()[static_cast<std::size_t>(b)].kind);
            if (pa != pb) return pa < pb;
            const auto& ra = analysis.scc.dfs_edge_rank;
            int u1 = cdg.node_index(cdg.edges()[static_cast<std::size_t>(a)].client);
            int v1 = cdg.node_index(cdg.edges()[static_cast<std::size_t>(a)].server);
            int u2 = cdg.node_index(cdg.edges()[static_cast<std::size_t>(b)].client);
            int v2 = cdg.node_index(cdg.edges()[static_cast<std::size_t>(b)].server);
            return ra.at({u1, v1}) < ra.at({u2, v2});
        });

        for (int idx : order) {
            const EdgeMetrics& m = analysis.metrics[static_cast<std::size_t>(idx)];
            if (!detail::breakable(m)) continue;
            std::vector<int> alive;
            for (int c : m.cycles)
                if (!broken[static_cast<std::size_t>(c)]) alive.push_back(c);
            if (alive.empty()) {
                if (!m.cycles.empty()) plan.skipped.push_back(idx);
                continue;
            }
            for (int c : alive) broken[static_cast<std::size_t>(c)] = true;
            plan.removals.push_back({idx, m.weight.value, std::move(alive)});
            plan.total_cost += m.weight.value;
        }
    }

    plan.residual = cdg.without_edges(plan.removed_edges());
    if (!verify_acyclic(plan.residual))
        throw std::logic_error("greedy_break left a cyclic residual");
    return plan;
}

/// Recomputing strategy: repeatedly remove the edge whose surviving cycle
/// count over its coupling weight is largest, then refresh the counts.
/// Ties resolve by first-traversed DFS edge.
inline BreakPlan cwr_break(const Cdg& cdg, const AnalysisResult& analysis) {
    detail::check_feasible(cdg, analysis);

    BreakPlan plan;
    plan.strategy = BreakStrategy::cwr;
    plan.variant = analysis.variant;

    std::vector<bool> broken(analysis.cycles.size(), false);

    for (const auto& comp : analysis.scc.components) {
        if (comp.size() < 2) continue;
        std::set<int> members(comp.begin(), comp.end());

        std::vector<int> comp_edges;
        std::set<int> comp_cycles;
        for (std::size_t i = 0; i < cdg.edge_count(); ++i) {
            const CdgEdge& e = cdg.edges()[i];
            int u = cdg.node_index(e.client), v = cdg.node_index(e.server);
            if (!members.count(u) || !members.count(v)) continue;
            comp_edges.push_back(static_cast<int>(i));
            for (int c : analysis.metrics[i].cycles) comp_cycles.insert(c);
        }

        std::size_t alive = 0;
        for (int c : comp_cycles)
            if (!broken[static_cast<std::size_t>(c)]) ++alive;
        std::set<int> removed;

        while (alive > 0) {
            int best_edge = -1;
            int best_rank = 0;
            Rational best_ratio{0};
            std::vector<int> best_alive;
            for (int idx : comp_edges) {
                if (removed.count(idx)) continue;
                const EdgeMetrics& m = analysis.metrics[static_cast<std::size_t>(idx)];
                if (!detail::breakable(m)) continue;
                std::vector<int> live;
                for (int c : m.cycles)
                    if (!broken[static_cast<std::size_t>(c)]) live.push_back(c);
                if (live.empty()) continue;
                Rational ratio = Rational(static_cast<long long>(live.size())) / *m.coupling;
                const CdgEdge& e = cdg.edges()[static_cast<std::size_t>(idx)];
                int rank = analysis.scc.rank(cdg.node_index(e.client), cdg.node_index(e.server));
                if (best_edge == -1 || ratio > best_ratio ||
                    (ratio == best_ratio && rank < best_rank)) {
                    best_edge = idx;
                    best_ratio = ratio;
                    best_rank = rank;
                    best_alive = std::move(live);
                }
            }
            if (best_edge == -1) {
                for (int c : comp_cycles)
                    if (!broken[static_cast<std::size_t>(c)])
                        throw InfeasibleCycleError(analysis.cycles[static_cast<std::size_t>(c)].str(cdg));
                throw std::logic_error("cwr_break: live cycle count out of sync");
            }
            for (int c : best_alive) broken[static_cast<std::size_t>(c)] = true;
            alive -= best_alive.size();
            removed.insert(best_edge);
            plan.removals.push_back({best_edge, best_ratio, std::move(best_alive)});
            plan.total_cost += best_ratio;
        }
    }

    plan.residual = cdg.without_edges(plan.removed_edges());
    if (!verify_acyclic(plan.residual))
        throw std::logic_error("cwr_break left a cyclic residual");
    return plan;
}

}  // namespace cito
