#pragma once

#include <optional>
#include <string>
#include <vector>

#include "realtree/errors.hpp"
#include "realtree/finite_metric.hpp"

namespace realtree {

/*
 * A partial order given by a parent (cover) relation plus a height function
 * that strictly increases upward. Validity requires every pair to have a
 * greatest lower bound, which for a finite cover forest means a unique root.
 */
template <class S>
struct HeightedOrder {
    std::vector<std::string> elements;
    std::vector<std::optional<std::size_t>> parent;
    std::vector<S> height;

    void validate() const {
        if (elements.empty()) throw ValidationError("nonempty", {}, "order has no elements");
        if (parent.size() != elements.size() || height.size() != elements.size())
            throw ValidationError("order_shape", {}, "field sizes disagree");
        std::optional<std::size_t> root;
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if (!parent[i]) {
                if (root) throw NoMeet(elements[*root], elements[i]);
                root = i;
                continue;
            }
            if (*parent[i] >= elements.size())
                throw ValidationError("order_shape", {i}, "parent index out of range");
            if (!(height[i] > height[*parent[i]]))
                throw ValidationError("height_monotone", {i, *parent[i]},
                                      "height must strictly increase along covers");
        }
        if (!root) throw ValidationError("order_shape", {}, "cover relation is cyclic");
        // every chain must reach the root
        for (std::size_t i = 0; i < elements.size(); ++i) {
            std::size_t v = i, hops = 0;
            while (parent[v]) {
                v = *parent[v];
                if (++hops > elements.size())
                    throw ValidationError("order_shape", {i}, "cover relation is cyclic");
            }
        }
    }

    std::size_t glb(std::size_t a, std::size_t b) const {
        // climb the lower chain until the two chains join
        std::vector<char> seen(elements.size(), 0);
        for (std::size_t v = a;; v = *parent[v]) {
            seen[v] = 1;
            if (!parent[v]) break;
        }
        for (std::size_t v = b;; v = *parent[v]) {
            if (seen[v]) return v;
            if (!parent[v]) break;
        }
        throw NoMeet(elements[a], elements[b]);
    }
};

// d(x,y) = h(x) + h(y) - 2 h(glb(x,y)): the tree metric of the order.
template <class S>
FiniteMetric<S> metric_from_order(const HeightedOrder<S>& order) {
    order.validate();
    const std::size_t n = order.elements.size();
    std::vector<S> d(n * n, scalar_traits<S>::zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            S m = order.height[order.glb(i, j)];
            d[i * n + j] = d[j * n + i] = order.height[i] + order.height[j] - m - m;
        }
    return FiniteMetric<S>(order.elements, std::move(d));
}

}  // namespace realtree
