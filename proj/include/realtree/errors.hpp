#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace realtree {

// All library failures derive from Error. `malformed_input()` distinguishes
// bad input data (file/schema/axiom violations) from domain-level failures
// (e.g. a metric that is not a tree metric); the CLI maps the former to
// exit code 2 and the latter to exit code 1.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message, bool malformed)
        : std::runtime_error(message), kind_(std::move(kind)), malformed_(malformed) {}

    const std::string& kind() const { return kind_; }
    bool malformed_input() const { return malformed_; }

private:
    std::string kind_;
    bool malformed_;
};

// Metric axiom violation; names the axiom and the witnessing indices.
class ValidationError : public Error {
public:
    ValidationError(std::string axiom, std::vector<std::size_t> witness, const std::string& detail)
        : Error("validation", "metric validation failed: " + axiom + " (" + detail + ")", true),
          axiom_(std::move(axiom)), witness_(std::move(witness)) {}

    const std::string& axiom() const { return axiom_; }
    const std::vector<std::size_t>& witness() const { return witness_; }

private:
    std::string axiom_;
    std::vector<std::size_t> witness_;
};

class UnknownLabel : public Error {
public:
    explicit UnknownLabel(const std::string& label)
        : Error("unknown_label", "unknown point label: " + label, false), label_(label) {}
    const std::string& label() const { return label_; }

private:
    std::string label_;
};

class InvalidPoint : public Error {
public:
    explicit InvalidPoint(const std::string& what)
        : Error("invalid_point", "invalid tree point: " + what, false) {}
};

class Disconnected : public Error {
public:
    Disconnected(std::string a, std::string b)
        : Error("disconnected", "tree is disconnected: no path between " + a + " and " + b, true),
          a_(std::move(a)), b_(std::move(b)) {}
    const std::string& witness_a() const { return a_; }
    const std::string& witness_b() const { return b_; }

private:
    std::string a_, b_;
};

class Cyclic : public Error {
public:
    Cyclic(std::string u, std::string v)
        : Error("cyclic", "edge {" + u + ", " + v + "} closes a cycle", true),
          u_(std::move(u)), v_(std::move(v)) {}

private:
    std::string u_, v_;
};

class NonpositiveLength : public Error {
public:
    NonpositiveLength(std::string u, std::string v)
        : Error("nonpositive_length", "edge {" + u + ", " + v + "} has nonpositive length", true) {}
};

class NoRoot : public Error {
public:
    NoRoot() : Error("no_root", "operation requires a rooted tree", false) {}
};

class NoMeet : public Error {
public:
    NoMeet(const std::string& a, const std::string& b)
        : Error("no_meet", "elements " + a + " and " + b + " have no greatest lower bound", false) {}
};

class FourPointViolation : public Error {
public:
    explicit FourPointViolation(std::vector<std::string> witness)
        : Error("four_point_violation",
                "metric violates the four-point condition at quadruple {" + join(witness) + "}",
                false),
          witness_(std::move(witness)) {}
    const std::vector<std::string>& witness() const { return witness_; }

private:
    static std::string join(const std::vector<std::string>& w) {
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out += ", ";
            out += w[i];
        }
        return out;
    }
    std::vector<std::string> witness_;
};

class MissingLabel : public Error {
public:
    explicit MissingLabel(const std::string& label)
        : Error("missing_label", "embedding does not cover label: " + label, false) {}
};

class EmptySet : public Error {
public:
    EmptySet() : Error("empty_set", "point set must be nonempty", false) {}
};

class TooLarge : public Error {
public:
    TooLarge(std::size_t n, std::size_t max_points)
        : Error("too_large",
                "space has " + std::to_string(n) + " points, limit is " + std::to_string(max_points),
                false) {}
};

class DivergentLengths : public Error {
public:
    DivergentLengths()
        : Error("divergent_lengths", "boundary query requires a summable length sequence", false) {}
};

class DepthExceeded : public Error {
public:
    explicit DepthExceeded(std::size_t depth)
        : Error("depth_exceeded",
                "length sequence has no tail rule and is undefined at depth " + std::to_string(depth),
                false) {}
};

class NotAShortestPath : public Error {
public:
    explicit NotAShortestPath(const std::string& which)
        : Error("not_a_shortest_path", "triangle side is not a shortest path: " + which, false) {}
};

class IncommensurableLengths : public Error {
public:
    IncommensurableLengths()
        : Error("incommensurable_lengths",
                "edge lengths admit no common grid step; contour sampling is not representable",
                false) {}
};

}  // namespace realtree
