#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cito/cycles.hpp"
#include "cito/model.hpp"
#include "cito/rational.hpp"
#include "cito/scc.hpp"

namespace cito {

enum class IfMode { additive, multiplicative };

/// Denominator used in the stub-cost weight. cs_eq1 is the member-usage
/// ratio; the rest are the coupling cost-function variants, fed from a
/// coupling data table.
enum class CouplingVariant {
    cs_eq1,
    broken_dependencies,
    attribute_coupling,
    method_coupling,
    attr_and_method_4,
    attr_and_method_5,
    five_param_cs,
};

inline const char* to_string(CouplingVariant v) {
    switch (v) {
        case CouplingVariant::cs_eq1: return "cs_eq1";
        case CouplingVariant::broken_dependencies: return "broken_dependencies";
        case CouplingVariant::attribute_coupling: return "attribute_coupling";
        case CouplingVariant::method_coupling: return "method_coupling";
        case CouplingVariant::attr_and_method_4: return "attr_and_method_4";
        case CouplingVariant::attr_and_method_5: return "attr_and_method_5";
        case CouplingVariant::five_param_cs: return "five_param_cs";
    }
    return "?";
}

/// Per directed class pair coupling measurements. C is 5 for
/// inheritance/composition and 1 otherwise; Vd/Md/Rd/Pd are the distinct
/// variable/method/return/parameter counts. attr/meth/am4/am5 back the
/// other cost-function variants; absent values mean the variant has no
/// signal for the pair (unbreakable).
struct PairCoupling {
    Rational c{1};
    Rational vd{0};
    Rational md{0};
    Rational rd{0};
    Rational pd{0};
    std::optional<Rational> attr;
    std::optional<Rational> meth;
    std::optional<Rational> am4;
    std::optional<Rational> am5;

    Rational five_param() const { return c + vd + md + rd + pd; }
};

using CouplingData = std::map<std::pair<std::string, std::string>, PairCoupling>;

/// Fan-in + fan-out (additive, the default) or their product.
inline long long if_complexity(const Cdg& cdg, int node, IfMode mode = IfMode::additive) {
    long long fan_in = 0, fan_out = 0;
    for (const CdgEdge& e : cdg.edges()) {
        if (cdg.node_index(e.client) == node) ++fan_out;
        if (cdg.node_index(e.server) == node) ++fan_in;
    }
    return mode == IfMode::additive ? fan_in + fan_out : fan_in * fan_out;
}

/// Members of the server used by the client over the member total of both
/// classes. nullopt is the no_coupling sentinel (nothing measured).
inline std::optional<Rational> coupling_strength(const CdgEdge& edge, const ClassNode& client,
                                                 const ClassNode& server) {
    if (edge.used_members == 0) return std::nullopt;
    long long denom = client.total_members() + server.total_members();
    if (denom == 0) throw ModelError("coupled classes " + client.id + " and " + server.id +
                                     " have no members");
    return Rational(edge.used_members, denom);
}

/// k constant of the weight formula: inheritance and composition edges are
/// never stubbed.
inline int stub_k(DepKind kind) {
    return (kind == DepKind::inheritance || kind == DepKind::composition) ? 0 : 1;
}

/// Share of the component's elementary cycles passing through an edge;
/// zero off-cycle or in an acyclic component.
inline Rational cycle_weight(long long cycles_through_edge, long long total_cycles_in_scc) {
    if (total_cycles_in_scc == 0 || cycles_through_edge == 0) return Rational(0);
    return Rational(cycles_through_edge, total_cycles_in_scc);
}

/// Weight of a breakable edge; `unbreakable` when k = 1 but the denominator
/// carries no signal.
struct EdgeWeight {
    bool unbreakable = false;
    Rational value{0};

    double to_double() const { return value.to_double(); }
};

inline EdgeWeight edge_weight(int k, const Rational& cw, long long if_complexity,
                              const std::optional<Rational>& denom) {
    if (k == 0) return {false, Rational(0)};
    if (!denom || denom->is_zero()) return {true, Rational(0)};
    return {false, cw * Rational(if_complexity) / *denom};
}

/// Full metric row for one edge: exact CS/CW, IF, k, weight and CWR, plus
/// which cycles the edge lies on.
struct EdgeMetrics {
    int edge_index = -1;
    std::optional<Rational> cs;
    Rational cw{0};
    long long if_complexity = 0;
    int k = 1;
    std::optional<Rational> coupling;  // the variant denominator; nullopt = no signal
    EdgeWeight weight;
    std::optional<Rational> cwr;       // cycles-through / CS; nullopt if CS missing
    std::vector<int> cycles;           // indices into AnalysisResult::cycles
};

/// Everything downstream passes need: SCCs, the cycle inventory, and a
/// metric row per edge.
struct AnalysisResult {
    SccInfo scc;
    std::vector<Cycle> cycles;
    std::vector<EdgeMetrics> metrics;  // parallel to cdg.edges()
    IfMode if_mode = IfMode::additive;
    CouplingVariant variant = CouplingVariant::cs_eq1;

    const EdgeMetrics& for_edge(int idx) const { return metrics.at(static_cast<std::size_t>(idx)); }
};

/// Variant denominator for one edge; nullopt = unbreakable under this variant.
inline std::optional<Rational> variant_denominator(CouplingVariant variant,
                                                   const std::optional<Rational>& cs,
                                                   const PairCoupling* data) {
    switch (variant) {
        case CouplingVariant::cs_eq1:
            return cs;
        case CouplingVariant::broken_dependencies:
            return Rational(1);
        case CouplingVariant::attribute_coupling:
            if (!data || !data->attr || data->attr->is_zero()) return std::nullopt;
            return data->attr;
        case CouplingVariant::method_coupling:
            if (!data || !data->meth || data->meth->is_zero()) return std::nullopt;
            return data->meth;
        case CouplingVariant::attr_and_method_4:
            if (!data || !data->am4 || data->am4->is_zero()) return std::nullopt;
            return data->am4;
        case CouplingVariant::attr_and_method_5:
            if (!data || !data->am5 || data->am5->is_zero()) return std::nullopt;
            return data->am5;
        case CouplingVariant::five_param_cs: {
            if (!data) return std::nullopt;
            Rational fp = data->five_param();
            if (fp.is_zero()) return std::nullopt;
            return fp;
        }
    }
    return std::nullopt;
}

inline AnalysisResult analyze(const Cdg& cdg, IfMode if_mode = IfMode::additive,
                              CouplingVariant variant = CouplingVariant::cs_eq1,
                              const CouplingData* coupling = nullptr,
                              std::size_t max_cycles = 1000000) {
    AnalysisResult out;
    out.if_mode = if_mode;
    out.variant = variant;
    out.scc = tarjan_scc(cdg);
    out.cycles = enumerate_all_cycles(cdg, out.scc, max_cycles);

    std::vector<long long> node_if(cdg.node_count());
    for (std::size_t v = 0; v < cdg.node_count(); ++v)
        node_if[v] = if_complexity(cdg, static_cast<int>(v), if_mode);

    // CW divides by the cycle count of the edge's own SCC
    std::vector<long long> scc_cycles(out.scc.components.size(), 0);
    for (const Cycle& c : out.cycles)
        ++scc_cycles[static_cast<std::size_t>(out.scc.component_id[c.nodes.front()])];

    out.metrics.resize(cdg.edge_count());
    for (std::size_t i = 0; i < cdg.edge_count(); ++i) {
        const CdgEdge& e = cdg.edges()[i];
        int u = cdg.node_index(e.client);
        int v = cdg.node_index(e.server);
        EdgeMetrics& m = out.metrics[i];
        m.edge_index = static_cast<int>(i);
        m.k = stub_k(e.kind);
        m.if_complexity = node_if[u] + node_if[v];
        m.cs = coupling_strength(e, cdg.node(u), cdg.node(v));

        for (std::size_t c = 0; c < out.cycles.size(); ++c)
            if (out.cycles[c].contains_edge(u, v)) m.cycles.push_back(static_cast<int>(c));
        long long denom_cycles =
            out.scc.same_component(u, v) ? scc_cycles[static_cast<std::size_t>(out.scc.component_id[u])] : 0;
        m.cw = cycle_weight(static_cast<long long>(m.cycles.size()), denom_cycles);

        const PairCoupling* data = nullptr;
        if (coupling) {
            auto it = coupling->find({e.client, e.server});
            if (it != coupling->end()) data = &it->second;
        }
        m.coupling = variant_denominator(variant, m.cs, data);
        m.weight = edge_weight(m.k, m.cw, m.if_complexity, m.coupling);
        if (m.cs && !m.cs->is_zero())
            m.cwr = Rational(static_cast<long long>(m.cycles.size())) / *m.cs;
    }
    return out;
}

/// Cycles-through-edge over the coupling weight, the ratio the recomputing
/// strategy greedily maximizes.
inline Rational cycle_weight_ratio(long long cycles_through, const Rational& coupling_weight) {
    if (cycles_through == 0) return Rational(0);
    return Rational(cycles_through) / coupling_weight;
}

}  // namespace cito
