#pragma once

#include <cctype>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cito/breaking.hpp"
#include "cito/metrics.hpp"
#include "cito/model.hpp"
#include "cito/ordering.hpp"
#include "cito/search.hpp"

namespace cito {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
    int line;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
                else quoted = false;
            } else cur += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else cur += c;
    }
    out.push_back(trim(cur));
    return out;
}

inline bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (char c : id)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

inline int parse_count(const std::string& text, int line, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size() || v < 0) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "invalid " + what + ": '" + text + "'");
    }
}

}  // namespace detail

struct ParsedModel {
    std::vector<ClassNode> nodes;
    std::vector<UmlRelation> relations;
};

/// Line-oriented model file: a [classes] section of `id,name,attributes,methods`
/// rows and a [relations] section of
/// `kind,source,target,whole,used_src_tgt,used_tgt_src` rows. `#` comments.
inline ParsedModel parse_model(const std::string& text) {
    ParsedModel model;
    enum { none, classes, relations } section = none;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line == "[classes]") { section = classes; continue; }
        if (line == "[relations]") { section = relations; continue; }
        if (line[0] == '[') throw ParseError(lineno, "unknown section header " + line);
        if (section == none) throw ParseError(lineno, "content before any section header");

        auto fields = detail::split_csv_line(line);
        if (section == classes) {
            if (fields.size() != 4) throw ParseError(lineno, "expected id,name,attributes,methods");
            if (!detail::valid_id(fields[0])) throw ParseError(lineno, "invalid class id '" + fields[0] + "'");
            ClassNode node;
            node.id = fields[0];
            node.name = fields[1];
            node.attribute_count = detail::parse_count(fields[2], lineno, "attribute count");
            node.method_count = detail::parse_count(fields[3], lineno, "method count");
            model.nodes.push_back(std::move(node));
        } else {
            if (fields.size() != 6)
                throw ParseError(lineno, "expected kind,source,target,whole,used_src_tgt,used_tgt_src");
            UmlRelation rel;
            const std::string& kind = fields[0];
            if (kind == "association_uni") rel.kind = RelationKind::association_uni;
            else if (kind == "association_bi") rel.kind = RelationKind::association_bi;
            else if (kind == "aggregation") rel.kind = RelationKind::aggregation;
            else if (kind == "composition") rel.kind = RelationKind::composition;
            else if (kind == "inheritance") rel.kind = RelationKind::inheritance;
            else if (kind == "use_dependency") rel.kind = RelationKind::use_dependency;
            else throw ParseError(lineno, "unknown relation kind '" + kind + "'");
            rel.source = fields[1];
            rel.target = fields[2];
            rel.whole = fields[3];
            if (!detail::valid_id(rel.source)) throw ParseError(lineno, "invalid source id");
            if (!detail::valid_id(rel.target)) throw ParseError(lineno, "invalid target id");
            bool needs_whole = rel.kind == RelationKind::aggregation ||
                               rel.kind == RelationKind::composition;
            if (needs_whole && rel.whole != rel.source && rel.whole != rel.target)
                throw ParseError(lineno, "whole must name the source or the target");
            if (!needs_whole && !rel.whole.empty())
                throw ParseError(lineno, "whole is only valid for aggregation/composition");
            rel.used_src_tgt = detail::parse_count(fields[4], lineno, "used_src_tgt");
            rel.used_tgt_src = detail::parse_count(fields[5], lineno, "used_tgt_src");
            model.relations.push_back(std::move(rel));
        }
    }
    // undeclared ids surface here rather than deep in the mapping
    std::set<std::string> ids;
    for (const auto& n : model.nodes) ids.insert(n.id);
    for (const auto& r : model.relations) {
        if (!ids.count(r.source)) throw ParseError(0, "relation references undeclared class '" + r.source + "'");
        if (!ids.count(r.target)) throw ParseError(0, "relation references undeclared class '" + r.target + "'");
    }
    return model;
}

/// Square dependency matrix: header row/column carry class ids, cells are
/// one of "", As, Ag, Cp, Us, I. Cell (row i, col j) is a directed CDG edge
/// i -> j of the coded kind, consumed without remapping.
inline Cdg parse_matrix(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<std::string> header;
    std::vector<ClassNode> nodes;
    std::vector<CdgEdge> edges;
    std::size_t row = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (detail::trim(line).empty() || detail::trim(line)[0] == '#') continue;
        auto fields = detail::split_csv_line(line);
        if (header.empty()) {
            if (fields.size() < 2) throw ParseError(lineno, "matrix header needs at least one class id");
            header.assign(fields.begin() + 1, fields.end());
            for (const auto& id : header) {
                if (!detail::valid_id(id)) throw ParseError(lineno, "invalid class id '" + id + "' in header");
                nodes.push_back({id, id, 0, 0});
            }
            continue;
        }
        if (fields.size() != header.size() + 1)
            throw ParseError(lineno, "matrix is not square: expected " +
                                         std::to_string(header.size() + 1) + " cells, got " +
                                         std::to_string(fields.size()));
        if (row >= header.size()) throw ParseError(lineno, "more rows than header columns");
        if (fields[0] != header[row])
            throw ParseError(lineno, "row label '" + fields[0] + "' does not match header order");
        for (std::size_t col = 0; col < header.size(); ++col) {
            const std::string& cell = fields[col + 1];
            if (cell.empty()) continue;
            if (col == row)
                throw ParseError(lineno, "diagonal entry at (" + header[row] + "," + header[col] + ")");
            DepKind kind;
            if (cell == "As") kind = DepKind::association;
            else if (cell == "Ag") kind = DepKind::optional_dependency;
            else if (cell == "Cp") kind = DepKind::composition;
            else if (cell == "Us") kind = DepKind::use_dependency;
            else if (cell == "I") kind = DepKind::inheritance;
            else throw ParseError(lineno, "unknown code '" + cell + "' at (" + header[row] + "," +
                                              header[col] + ")");
            edges.push_back({header[row], header[col], kind, 0});
        }
        ++row;
    }
    if (header.empty()) throw ParseError(0, "empty matrix file");
    if (row != header.size())
        throw ParseError(lineno, "matrix is not square: " + std::to_string(row) + " rows for " +
                                     std::to_string(header.size()) + " columns");
    return Cdg(std::move(nodes), std::move(edges));
}

/// Coupling table rows: client,server,C,Vd,Md,Rd,Pd[,attr,meth,am4,am5].
/// The trailing four back the Briand cost functions; blank or "inf" marks a
/// pair the variant cannot price.
inline CouplingData parse_coupling(const std::string& text) {
    CouplingData data;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    auto parse_opt = [&](const std::string& cell) -> std::optional<Rational> {
        if (cell.empty() || cell == "inf" || cell == "Inf") return std::nullopt;
        return Rational::parse(cell);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 7 && fields.size() != 11)
            throw ParseError(lineno, "expected 7 or 11 columns");
        PairCoupling pc;
        try {
            pc.c = Rational::parse(fields[2]);
            pc.vd = Rational::parse(fields[3]);
            pc.md = Rational::parse(fields[4]);
            pc.rd = Rational::parse(fields[5]);
            pc.pd = Rational::parse(fields[6]);
            if (fields.size() == 11) {
                pc.attr = parse_opt(fields[7]);
                pc.meth = parse_opt(fields[8]);
                pc.am4 = parse_opt(fields[9]);
                pc.am5 = parse_opt(fields[10]);
            }
        } catch (const std::exception& e) {
            throw ParseError(lineno, std::string("bad coupling value: ") + e.what());
        }
        data[{fields[0], fields[1]}] = pc;
    }
    return data;
}

/// Reads back the `map` output (client,server,kind,used_members rows).
inline std::vector<CdgEdge> parse_edge_list(const std::string& text) {
    std::vector<CdgEdge> edges;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) { header_seen = true; continue; }
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 4) throw ParseError(lineno, "expected client,server,kind,used_members");
        CdgEdge e;
        e.client = fields[0];
        e.server = fields[1];
        const std::string& kind = fields[2];
        if (kind == "association") e.kind = DepKind::association;
        else if (kind == "use_dependency") e.kind = DepKind::use_dependency;
        else if (kind == "optional_dependency") e.kind = DepKind::optional_dependency;
        else if (kind == "inheritance") e.kind = DepKind::inheritance;
        else if (kind == "composition") e.kind = DepKind::composition;
        else throw ParseError(lineno, "unknown dependency kind '" + kind + "'");
        e.used_members = detail::parse_count(fields[3], lineno, "used_members");
        edges.push_back(std::move(e));
    }
    return edges;
}

// ---------------------------------------------------------------- reports

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string format_fixed(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(6) << v;
    return out.str();
}

inline std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline constexpr const char* kToolVersion = "cito 1.0.0";

/// Comment-style metadata block emitted atop every report; byte-deterministic
/// for fixed inputs.
inline std::string report_metadata(const std::string& input_text, const std::string& strategy,
                                   const std::string& variant, const std::string& seed) {
    std::ostringstream out;
    out << "# tool: " << kToolVersion << "\n";
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(input_text);
    out << "# input_hash: " << hex.str() << "\n";
    if (!strategy.empty()) out << "# strategy: " << strategy << "\n";
    if (!variant.empty()) out << "# variant: " << variant << "\n";
    if (!seed.empty()) out << "# seed: " << seed << "\n";
    return out.str();
}

inline std::string write_edge_list_csv(const Cdg& cdg) {
    std::ostringstream out;
    out << "client,server,kind,used_members\n";
    for (const CdgEdge& e : cdg.edges())
        out << csv_escape(e.client) << ',' << csv_escape(e.server) << ',' << to_string(e.kind)
            << ',' << e.used_members << "\n";
    return out.str();
}

inline std::string write_metrics_csv(const Cdg& cdg, const AnalysisResult& analysis) {
    std::ostringstream out;
    out << "client,server,kind,used_members,cs,cw,if,k,weight,cwr\n";
    for (std::size_t i = 0; i < cdg.edge_count(); ++i) {
        const CdgEdge& e = cdg.edges()[i];
        const EdgeMetrics& m = analysis.metrics[i];
        out << csv_escape(e.client) << ',' << csv_escape(e.server) << ',' << to_string(e.kind)
            << ',' << e.used_members << ',' << (m.cs ? m.cs->str() : "no_coupling") << ','
            << m.cw.str() << ',' << m.if_complexity << ',' << m.k << ','
            << (m.weight.unbreakable ? "unbreakable" : format_fixed(m.weight.to_double())) << ','
            << (m.cwr ? format_fixed(m.cwr->to_double()) : "") << "\n";
    }
    return out.str();
}

inline std::string write_plan_csv(const Cdg& cdg, const BreakPlan& plan) {
    std::ostringstream out;
    out << "edge,kind,weight,cycles_broken,cumulative_cost\n";
    Rational running{0};
    for (const Removal& r : plan.removals) {
        const CdgEdge& e = cdg.edges()[static_cast<std::size_t>(r.edge_index)];
        running += r.weight;
        std::string cycles;
        for (std::size_t i = 0; i < r.cycles_broken.size(); ++i) {
            if (i) cycles += ' ';
            cycles += std::to_string(r.cycles_broken[i] + 1);
        }
        out << csv_escape(e.client + "->" + e.server) << ',' << to_string(e.kind) << ','
            << format_fixed(r.weight.to_double()) << ',' << csv_escape(cycles) << ','
            << format_fixed(running.to_double()) << "\n";
    }
    return out.str();
}

inline std::string write_order_csv(const TestOrder& order) {
    std::ostringstream out;
    out << "position,class,stubs_used\n";
    for (std::size_t i = 0; i < order.sequence.size(); ++i) {
        const std::string& id = order.sequence[i];
        std::string stubs;
        auto it = order.stub_map.find(id);
        if (it != order.stub_map.end()) {
            for (std::size_t j = 0; j < it->second.size(); ++j) {
                if (j) stubs += ' ';
                stubs += it->second[j];
            }
        }
        out << (i + 1) << ',' << csv_escape(id) << ',' << csv_escape(stubs) << "\n";
    }
    return out.str();
}

/// Bracketed order text: each class followed by the stubs it is tested with.
inline std::string write_order_text(const TestOrder& order) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < order.sequence.size(); ++i) {
        if (i) out << ", ";
        const std::string& id = order.sequence[i];
        out << id;
        auto it = order.stub_map.find(id);
        if (it != order.stub_map.end() && !it->second.empty()) {
            out << " < ";
            for (std::size_t j = 0; j < it->second.size(); ++j) {
                if (j) out << ", ";
                out << it->second[j];
            }
            out << " >";
        }
    }
    out << "}";
    return out.str();
}

inline std::string write_stats_csv(const Cdg& cdg, const SearchResult& result) {
    std::ostringstream out;
    out << "algorithm,seed,generation,avg_fitness,min_fitness,best_order\n";
    for (const GenerationStats& g : result.stats) {
        std::string order;
        for (std::size_t i = 0; i < g.best_order.size(); ++i) {
            if (i) order += ' ';
            order += cdg.node(g.best_order[i]).id;
        }
        out << to_string(result.algorithm) << ',' << result.seed << ',' << g.generation << ','
            << format_fixed(g.avg_fitness) << ',' << format_fixed(g.min_fitness) << ','
            << csv_escape(order) << "\n";
    }
    return out.str();
}

inline std::string write_comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::ostringstream out;
    out << "algorithm,seed,generation,avg_fitness,min_fitness\n";
    for (const ComparisonRow& r : rows)
        out << to_string(r.algorithm) << ',' << r.seed << ',' << r.generation << ','
            << format_fixed(r.avg_fitness) << ',' << format_fixed(r.min_fitness) << "\n";
    return out.str();
}

}  // namespace cito
