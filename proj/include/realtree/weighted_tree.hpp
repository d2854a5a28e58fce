#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "realtree/errors.hpp"
#include "realtree/scalar.hpp"

namespace realtree {

/*
 * A finite representation of a compact real tree: vertices joined by edges of
 * strictly positive length. Construction validates connectivity, acyclicity
 * and positivity, sorts vertices by identifier, and normalizes every edge so
 * that u is the lexicographically smaller endpoint; serialized output is
 * therefore byte-stable. Instances are immutable afterwards and safe to share
 * across threads.
 */
template <class S>
class WeightedTree {
public:
    struct Edge {
        std::size_t u, v;
        S len;
    };

    struct RawEdge {
        std::string u, v;
        S len;
    };

    WeightedTree(std::vector<std::string> vertex_ids, const std::vector<RawEdge>& raw_edges,
                 std::optional<std::string> root_id = std::nullopt) {
        std::sort(vertex_ids.begin(), vertex_ids.end());
        ids_ = std::move(vertex_ids);
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (i > 0 && ids_[i] == ids_[i - 1])
                throw ValidationError("duplicate_vertex", {i}, "vertex id " + ids_[i] + " repeats");
            index_.emplace(ids_[i], i);
        }
        if (ids_.empty()) throw ValidationError("nonempty", {}, "tree has no vertices");

        edges_.reserve(raw_edges.size());
        for (const auto& e : raw_edges) {
            std::size_t u = vertex(e.u);
            std::size_t v = vertex(e.v);
            if (!(e.len > scalar_traits<S>::zero())) throw NonpositiveLength(e.u, e.v);
            if (u == v) throw Cyclic(e.u, e.v);
            if (ids_[u] > ids_[v]) std::swap(u, v);
            edges_.push_back(Edge{u, v, e.len});
        }
        std::sort(edges_.begin(), edges_.end(), [&](const Edge& a, const Edge& b) {
            return std::pair(ids_[a.u], ids_[a.v]) < std::pair(ids_[b.u], ids_[b.v]);
        });

        // union-find over the sorted edges: a repeated or component-closing
        // edge is the cycle witness, a component gap is the disconnection witness
        std::vector<std::size_t> parent(ids_.size());
        for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& e : edges_) {
            std::size_t ru = find(e.u), rv = find(e.v);
            if (ru == rv) throw Cyclic(ids_[e.u], ids_[e.v]);
            parent[ru] = rv;
        }
        for (std::size_t i = 1; i < ids_.size(); ++i)
            if (find(i) != find(0)) throw Disconnected(ids_[0], ids_[i]);

        adj_.assign(ids_.size(), {});
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            adj_[edges_[e].u].push_back(e);
            adj_[edges_[e].v].push_back(e);
        }
        if (root_id) root_ = vertex(*root_id);
    }

    std::size_t size() const { return ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::string>& vertex_ids() const { return ids_; }
    const std::string& id(std::size_t v) const { return ids_[v]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t e) const { return edges_[e]; }
    const std::vector<std::size_t>& incident_edges(std::size_t v) const { return adj_[v]; }
    std::size_t degree_of_vertex(std::size_t v) const { return adj_[v].size(); }
    std::optional<std::size_t> root() const { return root_; }

    std::size_t vertex(std::string_view id) const {
        auto it = index_.find(std::string(id));
        if (it == index_.end()) throw UnknownLabel(std::string(id));
        return it->second;
    }

    bool has_vertex(std::string_view id) const {
        return index_.find(std::string(id)) != index_.end();
    }

    std::size_t other_end(std::size_t e, std::size_t v) const {
        return edges_[e].u == v ? edges_[e].v : edges_[e].u;
    }

    // Edge joining two vertices, if present.
    std::optional<std::size_t> edge_between(std::size_t a, std::size_t b) const {
        for (std::size_t e : adj_[a])
            if (other_end(e, a) == b) return e;
        return std::nullopt;
    }

private:
    std::vector<std::string> ids_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adj_;
    std::map<std::string, std::size_t> index_;
    std::optional<std::size_t> root_;
};

// Ingestion gate: returns its argument unchanged. Invariants are enforced by
// the constructor; this exists so pipelines can make the check explicit.
template <class S>
const WeightedTree<S>& validate_tree(const WeightedTree<S>& t) {
    return t;
}

/*
 * A location in a tree: a vertex, or a point strictly inside an edge at a
 * given distance from the edge's u endpoint. Offsets 0 and len collapse to
 * the corresponding vertex, so equality of canonical points is structural.
 */
template <class S>
struct TreePoint {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t vertex = npos;
    std::size_t edge = npos;
    S offset = scalar_traits<S>::zero();

    bool is_vertex() const { return vertex != npos; }

    static TreePoint at_vertex(std::size_t v) {
        TreePoint p;
        p.vertex = v;
        return p;
    }

    static TreePoint on_edge(const WeightedTree<S>& t, std::size_t e, const S& off,
                             const S& tol = scalar_traits<S>::default_tol()) {
        if (off <= tol) return at_vertex(t.edge(e).u);
        if (off >= t.edge(e).len - tol) return at_vertex(t.edge(e).v);
        TreePoint p;
        p.edge = e;
        p.offset = off;
        return p;
    }

    friend bool operator==(const TreePoint& a, const TreePoint& b) {
        if (a.is_vertex() != b.is_vertex()) return false;
        if (a.is_vertex()) return a.vertex == b.vertex;
        return a.edge == b.edge && a.offset == b.offset;
    }
};

template <class S>
std::string format_tree_point(const WeightedTree<S>& t, const TreePoint<S>& p) {
    if (p.is_vertex()) return t.id(p.vertex);
    const auto& e = t.edge(p.edge);
    return t.id(e.u) + "-" + t.id(e.v) + "@" + format_length(p.offset);
}

// Parses "vertexID" or "u-v@offset"; the offset is measured from the first
// named endpoint, whichever orientation the caller wrote.
template <class S>
TreePoint<S> parse_tree_point(const WeightedTree<S>& t, const std::string& text,
                              const S& tol = scalar_traits<S>::default_tol()) {
    auto at = text.rfind('@');
    if (at == std::string::npos) {
        if (!t.has_vertex(text)) throw InvalidPoint("no vertex named " + text);
        return TreePoint<S>::at_vertex(t.vertex(text));
    }
    std::string pair = text.substr(0, at);
    S off;
    if (!parse_length(text.substr(at + 1), off)) throw InvalidPoint("bad offset in " + text);
    // split at the dash that separates two known vertex ids
    for (std::size_t dash = pair.find('-'); dash != std::string::npos;
         dash = pair.find('-', dash + 1)) {
        std::string a = pair.substr(0, dash);
        std::string b = pair.substr(dash + 1);
        if (!t.has_vertex(a) || !t.has_vertex(b)) continue;
        std::size_t va = t.vertex(a), vb = t.vertex(b);
        auto e = t.edge_between(va, vb);
        if (!e) throw InvalidPoint("no edge between " + a + " and " + b);
        S len = t.edge(*e).len;
        if (off < -tol || off > len + tol) throw InvalidPoint("offset outside edge in " + text);
        S from_u = (t.edge(*e).u == va) ? off : len - off;
        return TreePoint<S>::on_edge(t, *e, from_u, tol);
    }
    throw InvalidPoint("cannot resolve edge in " + text);
}

}  // namespace realtree
