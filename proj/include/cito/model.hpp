#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cito {

/// A class in the model. attribute_count + method_count is the member total
/// entering coupling-strength denominators.
struct ClassNode {
    std::string id;
    std::string name;
    int attribute_count = 0;
    int method_count = 0;

    int total_members() const { return attribute_count + method_count; }
};

enum class RelationKind {
    association_uni,
    association_bi,
    aggregation,
    composition,
    inheritance,
    use_dependency,
};

/// A UML-level relation between two classes. `whole` names the whole
/// endpoint for aggregation/composition and is empty otherwise.
/// used_* carry how many of the opposite endpoint's members each side uses.
struct UmlRelation {
    RelationKind kind = RelationKind::association_uni;
    std::string source;
    std::string target;
    std::string whole;
    int used_src_tgt = 0;
    int used_tgt_src = 0;
};

enum class DepKind {
    association,
    use_dependency,
    optional_dependency,
    inheritance,
    composition,
};

inline const char* to_string(DepKind k) {
    switch (k) {
        case DepKind::association: return "association";
        case DepKind::use_dependency: return "use_dependency";
        case DepKind::optional_dependency: return "optional_dependency";
        case DepKind::inheritance: return "inheritance";
        case DepKind::composition: return "composition";
    }
    return "?";
}

inline const char* to_string(RelationKind k) {
    switch (k) {
        case RelationKind::association_uni: return "association_uni";
        case RelationKind::association_bi: return "association_bi";
        case RelationKind::aggregation: return "aggregation";
        case RelationKind::composition: return "composition";
        case RelationKind::inheritance: return "inheritance";
        case RelationKind::use_dependency: return "use_dependency";
    }
    return "?";
}

/// Directed dependency: client uses server.
struct CdgEdge {
    std::string client;
    std::string server;
    DepKind kind = DepKind::association;
    int used_members = 0;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Class dependency graph. Nodes are kept sorted by id (the canonical order
/// used by every deterministic tie-break); edges sorted by
/// (client, server, kind). Immutable after construction.
class Cdg {
public:
    Cdg() = default;

    Cdg(std::vector<ClassNode> nodes, std::vector<CdgEdge> edges)
        : nodes_(std::move(nodes)), edges_(std::move(edges)) {
        std::sort(nodes_.begin(), nodes_.end(),
                  [](const ClassNode& a, const ClassNode& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (i > 0 && nodes_[i].id == nodes_[i - 1].id)
                throw ModelError("duplicate class id: " + nodes_[i].id);
            if (nodes_[i].attribute_count < 0 || nodes_[i].method_count < 0)
                throw ModelError("negative member count on class " + nodes_[i].id);
            index_[nodes_[i].id] = static_cast<int>(i);
        }
        std::sort(edges_.begin(), edges_.end(), [](const CdgEdge& a, const CdgEdge& b) {
            return std::tie(a.client, a.server, a.kind) < std::tie(b.client, b.server, b.kind);
        });
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const CdgEdge& e = edges_[i];
            if (!index_.count(e.client)) throw ModelError("unknown class id: " + e.client);
            if (!index_.count(e.server)) throw ModelError("unknown class id: " + e.server);
            if (e.client == e.server) throw ModelError("self-loop on class " + e.client);
            if (e.used_members < 0) throw ModelError("negative used_members on edge " + e.client + "->" + e.server);
            if (i > 0) {
                const CdgEdge& p = edges_[i - 1];
                if (p.client == e.client && p.server == e.server && p.kind == e.kind)
                    throw ModelError("duplicate edge " + e.client + "->" + e.server +
                                     " (" + to_string(e.kind) + ")");
            }
        }
        successors_.assign(nodes_.size(), {});
        for (const CdgEdge& e : edges_) {
            auto& row = successors_[index_.at(e.client)];
            int s = index_.at(e.server);
            if (row.empty() || row.back() != s) row.push_back(s);  // edges sorted, dedupe kinds
        }
    }

    const std::vector<ClassNode>& nodes() const { return nodes_; }
    const std::vector<CdgEdge>& edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    int node_index(const std::string& id) const {
        auto it = index_.find(id);
        return it == index_.end() ? -1 : it->second;
    }
    const ClassNode& node(int idx) const { return nodes_.at(static_cast<std::size_t>(idx)); }

    /// Distinct successor node indices of `node`, ascending (canonical order).
    const std::vector<int>& successors(int node) const {
        return successors_.at(static_cast<std::size_t>(node));
    }

    bool has_edge(int client, int server) const {
        const auto& row = successors_[static_cast<std::size_t>(client)];
        return std::binary_search(row.begin(), row.end(), server);
    }

    /// Copy of the graph without the given edge indices.
    Cdg without_edges(const std::vector<int>& edge_indices) const {
        std::set<int> drop(edge_indices.begin(), edge_indices.end());
        std::vector<CdgEdge> kept;
        kept.reserve(edges_.size() - drop.size());
        for (std::size_t i = 0; i < edges_.size(); ++i)
            if (!drop.count(static_cast<int>(i))) kept.push_back(edges_[i]);
        return Cdg(nodes_, std::move(kept));
    }

private:
    std::vector<ClassNode> nodes_;
    std::vector<CdgEdge> edges_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> successors_;
};

/// Maps UML relations onto directed CDG edges.
///
/// composition(part A, whole B): A->B use_dependency, B->A association.
/// aggregation(part A, whole B): A->B association,    B->A optional_dependency.
/// association_bi:               both directions as association.
/// association_uni / use_dependency / inheritance: single edge source->target.
inline Cdg map_uml_to_cdg(std::vector<ClassNode> nodes, const std::vector<UmlRelation>& relations) {
    std::set<std::string> ids;
    for (const auto& n : nodes) ids.insert(n.id);

    std::vector<CdgEdge> edges;
    for (const UmlRelation& r : relations) {
        if (!ids.count(r.source)) throw ModelError("relation references unknown class: " + r.source);
        if (!ids.count(r.target)) throw ModelError("relation references unknown class: " + r.target);
        if (r.source == r.target) throw ModelError("self-relation on class " + r.source);

        switch (r.kind) {
            case RelationKind::composition:
            case RelationKind::aggregation: {
                if (r.whole != r.source && r.whole != r.target)
                    throw ModelError("aggregation/composition between " + r.source + " and " +
                                     r.target + " must name one endpoint as the whole");
                const bool src_is_part = (r.whole == r.target);
                const std::string& part = src_is_part ? r.source : r.target;
                const std::string& whole = src_is_part ? r.target : r.source;
                const int used_part_whole = src_is_part ? r.used_src_tgt : r.used_tgt_src;
                const int used_whole_part = src_is_part ? r.used_tgt_src : r.used_src_tgt;
                if (r.kind == RelationKind::composition) {
                    edges.push_back({part, whole, DepKind::use_dependency, used_part_whole});
                    edges.push_back({whole, part, DepKind::association, used_whole_part});
                } else {
                    edges.push_back({part, whole, DepKind::association, used_part_whole});
                    edges.push_back({whole, part, DepKind::optional_dependency, used_whole_part});
                }
                break;
            }
            case RelationKind::association_bi:
                edges.push_back({r.source, r.target, DepKind::association, r.used_src_tgt});
                edges.push_back({r.target, r.source, DepKind::association, r.used_tgt_src});
                break;
            case RelationKind::association_uni:
                edges.push_back({r.source, r.target, DepKind::association, r.used_src_tgt});
                break;
            case RelationKind::use_dependency:
                edges.push_back({r.source, r.target, DepKind::use_dependency, r.used_src_tgt});
                break;
            case RelationKind::inheritance:
                // child -> parent, untouched
                edges.push_back({r.source, r.target, DepKind::inheritance, r.used_src_tgt});
                break;
        }
    }
    return Cdg(std::move(nodes), std::move(edges));
}

}  // namespace cito
