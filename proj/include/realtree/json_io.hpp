#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "realtree/errors.hpp"
#include "realtree/finite_metric.hpp"
#include "realtree/heighted_order.hpp"
#include "realtree/tree_query.hpp"
#include "realtree/triangles.hpp"
#include "realtree/weighted_tree.hpp"

// Parsing uses nlohmann::json; output goes through a small canonical writer
// (keys in schema order, doubles at 12 significant digits, exact fractions in
// rational mode) so identical inputs always produce byte-identical files.

namespace realtree {

inline std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

inline std::string scalar_json(double x) { return format_length(x); }
inline std::string scalar_json(long long x) { return format_length(x); }
inline std::string scalar_json(const Rat& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    return json_escape(format_length(x));
}

template <class S>
S parse_scalar(const nlohmann::json& j) {
    if constexpr (std::is_same_v<S, double>) {
        if (j.is_number()) return j.get<double>();
    } else {
        if (j.is_number_integer()) return scalar_traits<S>::from_int(j.get<long long>());
        if (j.is_number_float())
            throw ValidationError("number_format", {},
                                  "exact mode requires integer or \"p/q\" entries");
    }
    if (j.is_string()) {
        S out;
        if (parse_length(j.get<std::string>(), out)) return out;
    }
    throw ValidationError("number_format", {}, "cannot read length from " + j.dump());
}

// ---- finite metric: {"points": [labels], "d": [[row-major matrix]]} ----

template <class S>
FiniteMetric<S> metric_from_json(const nlohmann::json& j,
                                 S tol = scalar_traits<S>::default_tol()) {
    if (!j.is_object() || !j.contains("points") || !j.contains("d"))
        throw ValidationError("schema", {}, "expected {\"points\": [...], \"d\": [[...]]}");
    std::vector<std::string> labels;
    for (const auto& p : j.at("points")) labels.push_back(p.get<std::string>());
    std::vector<S> d;
    for (const auto& row : j.at("d"))
        for (const auto& cell : row) d.push_back(parse_scalar<S>(cell));
    return FiniteMetric<S>(std::move(labels), std::move(d), tol);
}

template <class S>
std::string metric_to_json(const FiniteMetric<S>& m) {
    std::string out = "{\"d\":[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ",";
        out += "[";
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out += ",";
            out += scalar_json(m.d(i, j));
        }
        out += "]";
    }
    out += "],\"points\":[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ",";
        out += json_escape(m.label(i));
    }
    out += "]}";
    return out;
}

// ---- weighted tree: {"vertices": [...], "edges": [{"u","v","len"}], "root"?} ----

template <class S>
WeightedTree<S> tree_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw ValidationError("schema", {},
                              "expected {\"vertices\": [...], \"edges\": [...], \"root\"?}");
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(v.get<std::string>());
    std::vector<typename WeightedTree<S>::RawEdge> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back({e.at("u").get<std::string>(), e.at("v").get<std::string>(),
                         parse_scalar<S>(e.at("len"))});
    std::optional<std::string> root;
    if (j.contains("root") && !j.at("root").is_null()) root = j.at("root").get<std::string>();
    return WeightedTree<S>(std::move(vertices), edges, root);
}

template <class S>
std::string tree_to_json(const WeightedTree<S>& t) {
    std::string out = "{\"edges\":[";
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        if (e) out += ",";
        out += "{\"len\":" + scalar_json(t.edge(e).len);
        out += ",\"u\":" + json_escape(t.id(t.edge(e).u));
        out += ",\"v\":" + json_escape(t.id(t.edge(e).v)) + "}";
    }
    out += "]";
    if (t.root()) out += ",\"root\":" + json_escape(t.id(*t.root()));
    out += ",\"vertices\":[";
    for (std::size_t v = 0; v < t.size(); ++v) {
        if (v) out += ",";
        out += json_escape(t.id(v));
    }
    out += "]}";
    return out;
}

// ---- weighted graph: tree schema without acyclicity (no root) ----

template <class S>
WeightedGraph<S> graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw ValidationError("schema", {}, "expected {\"vertices\": [...], \"edges\": [...]}");
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(v.get<std::string>());
    std::vector<typename WeightedGraph<S>::RawEdge> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back({e.at("u").get<std::string>(), e.at("v").get<std::string>(),
                         parse_scalar<S>(e.at("len"))});
    return WeightedGraph<S>(std::move(vertices), edges);
}

// ---- heighted order: {"elements": [{"id", "h", "parent"?}]} ----

template <class S>
HeightedOrder<S> order_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("elements"))
        throw ValidationError("schema", {}, "expected {\"elements\": [{id, h, parent?}]}");
    HeightedOrder<S> order;
    std::map<std::string, std::size_t> index;
    for (const auto& el : j.at("elements")) {
        index.emplace(el.at("id").get<std::string>(), order.elements.size());
        order.elements.push_back(el.at("id").get<std::string>());
        order.height.push_back(parse_scalar<S>(el.at("h")));
    }
    for (const auto& el : j.at("elements")) {
        if (el.contains("parent") && !el.at("parent").is_null()) {
            auto it = index.find(el.at("parent").get<std::string>());
            if (it == index.end()) throw UnknownLabel(el.at("parent").get<std::string>());
            order.parent.push_back(it->second);
        } else {
            order.parent.push_back(std::nullopt);
        }
    }
    return order;
}

// ---- segments ----

template <class S>
std::string segment_to_json(const WeightedTree<S>& t, const Segment<S>& seg) {
    std::string out = "{\"cumulative\":[";
    for (std::size_t i = 0; i < seg.cumulative.size(); ++i) {
        if (i) out += ",";
        out += scalar_json(seg.cumulative[i]);
    }
    out += "],\"points\":[";
    for (std::size_t i = 0; i < seg.points.size(); ++i) {
        if (i) out += ",";
        out += json_escape(format_tree_point(t, seg.points[i]));
    }
    out += "]}";
    return out;
}

}  // namespace realtree
