#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "realtree/errors.hpp"
#include "realtree/scalar.hpp"

namespace realtree {

/*
 * Per-level edge lengths of the binary tree whose vertices are 0/1 strings:
 * every edge from depth n-1 to depth n has length ell(n). Given as an explicit
 * prefix plus an optional tail rule, so that the tail sums needed by boundary
 * (infinite-string) queries have closed forms.
 */
template <class S>
struct BinaryEdgeLengths {
    enum class Tail { none, constant, geometric };

    std::vector<S> prefix;  // ell(1..N), all > 0
    Tail tail = Tail::none;
    S tail_param = scalar_traits<S>::zero();  // constant value, or geometric ratio

    void validate() const {
        if (prefix.empty()) throw ValidationError("lengths", {}, "length prefix is empty");
        for (std::size_t i = 0; i < prefix.size(); ++i)
            if (!(prefix[i] > scalar_traits<S>::zero()))
                throw ValidationError("lengths", {i}, "lengths must be positive");
        if (tail != Tail::none && !(tail_param > scalar_traits<S>::zero()))
            throw ValidationError("lengths", {}, "tail parameter must be positive");
    }

    // ell(n), 1-based.
    S at(std::size_t n) const {
        if (n == 0) throw DepthExceeded(0);
        if (n <= prefix.size()) return prefix[n - 1];
        switch (tail) {
            case Tail::constant:
                return tail_param;
            case Tail::geometric: {
                S v = prefix.back();
                for (std::size_t i = prefix.size(); i < n; ++i) v = v * tail_param;
                return v;
            }
            default:
                throw DepthExceeded(n);
        }
    }

    bool summable() const {
        return tail == Tail::geometric && tail_param < scalar_traits<S>::from_int(1);
    }

    // Lambda(n) = sum of ell(i) for i >= n; requires a summable tail.
    S tail_sum_from(std::size_t n) const {
        if (!summable()) throw DivergentLengths();
        S acc = scalar_traits<S>::zero();
        for (std::size_t i = std::max<std::size_t>(n, 1); i <= prefix.size(); ++i)
            acc = acc + prefix[i - 1];
        // closed-form geometric tail starting at max(n, N+1)
        std::size_t start = std::max(n, prefix.size() + 1);
        S first = at(start);
        acc = acc + first / (scalar_traits<S>::from_int(1) - tail_param);
        return acc;
    }

    // Finite sum of ell(i) for a <= i <= b.
    S range_sum(std::size_t a, std::size_t b) const {
        S acc = scalar_traits<S>::zero();
        for (std::size_t i = a; i <= b; ++i) acc = acc + at(i);
        return acc;
    }
};

// A vertex of the binary tree (finite string) or a boundary point of its
// completion (eventually periodic infinite string u(p)^inf, written "u(p)*").
struct BinaryString {
    std::string head;    // over {0,1}
    std::string period;  // empty => finite string

    bool infinite() const { return !period.empty(); }

    char at(std::size_t i) const {  // 0-based
        if (i < head.size()) return head[i];
        return period[(i - head.size()) % period.size()];
    }

    std::size_t finite_length() const { return head.size(); }

    // "0110" (vertex), "01(10)*" or "(1)*" (boundary point).
    static BinaryString parse(const std::string& text) {
        BinaryString s;
        std::size_t i = 0;
        while (i < text.size() && (text[i] == '0' || text[i] == '1')) s.head += text[i++];
        if (i == text.size()) return s;
        if (text[i] != '(')
            throw ValidationError("binary_string", {i}, "bad character in " + text);
        ++i;
        while (i < text.size() && (text[i] == '0' || text[i] == '1')) s.period += text[i++];
        if (s.period.empty() || i + 2 != text.size() || text[i] != ')' || text[i + 1] != '*')
            throw ValidationError("binary_string", {i}, "expected u(p)* in " + text);
        return s;
    }
};

namespace detail {

// First index (1-based) where two boundary strings disagree; 0 if equal.
// Agreement through both heads plus the lcm of the periods forces equality.
inline std::size_t first_disagreement(const BinaryString& v, const BinaryString& w) {
    std::size_t pl = v.period.size() / std::gcd(v.period.size(), w.period.size()) *
                     w.period.size();
    std::size_t horizon = std::max(v.head.size(), w.head.size()) + pl;
    for (std::size_t i = 0; i < horizon; ++i)
        if (v.at(i) != w.at(i)) return i + 1;
    return 0;
}

}  // namespace detail

/*
 * Distance in the (completed) binary tree. Finite strings are interior
 * vertices: the geodesic runs through the longest common prefix. Boundary
 * strings sit at depth Lambda(1); two distinct boundary points are at
 * distance 2*Lambda(D) where D is the first disagreement, which requires a
 * summable length sequence.
 */
template <class S>
S binary_tree_distance(const BinaryEdgeLengths<S>& ell, const BinaryString& v,
                       const BinaryString& w) {
    ell.validate();

    auto common_prefix = [&](std::size_t bound) {
        std::size_t c = 0;
        while (c < bound && v.at(c) == w.at(c)) ++c;
        return c;
    };

    if (!v.infinite() && !w.infinite()) {
        std::size_t c = common_prefix(std::min(v.finite_length(), w.finite_length()));
        return ell.range_sum(c + 1, v.finite_length()) + ell.range_sum(c + 1, w.finite_length());
    }
    if (v.infinite() != w.infinite()) {
        const BinaryString& fin = v.infinite() ? w : v;
        std::size_t c = common_prefix(fin.finite_length());
        return ell.range_sum(c + 1, fin.finite_length()) + ell.tail_sum_from(c + 1);
    }
    std::size_t d = detail::first_disagreement(v, w);
    if (d == 0) return scalar_traits<S>::zero();
    S lam = ell.tail_sum_from(d);
    return lam + lam;
}

}  // namespace realtree
