#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "realtree/errors.hpp"
#include "realtree/scalar.hpp"

namespace realtree {

/*
 * A labeled finite metric space: the ambient object for all tree-likeness
 * analysis. The constructor enforces the metric axioms (exact symmetry and
 * zero diagonal, strictly positive off-diagonal entries, triangle inequality
 * within `tol`) and rejects duplicate labels.
 */
template <class S>
class FiniteMetric {
public:
    FiniteMetric(std::vector<std::string> labels, std::vector<S> matrix,
                 S tol = scalar_traits<S>::default_tol())
        : labels_(std::move(labels)), d_(std::move(matrix)), n_(labels_.size()) {
        validate(tol);
        for (std::size_t i = 0; i < n_; ++i) {
            if (!index_.emplace(labels_[i], i).second)
                throw ValidationError("duplicate_label", {i}, "label " + labels_[i] + " repeats");
        }
    }

    std::size_t size() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }

    std::size_t index(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) throw UnknownLabel(std::string(label));
        return it->second;
    }

    bool has_label(std::string_view label) const {
        return index_.find(std::string(label)) != index_.end();
    }

    const S& d(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

    S diameter() const {
        S best = scalar_traits<S>::zero();
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (best < d(i, j)) best = d(i, j);
        return best;
    }

private:
    void validate(const S& tol) const {
        const S zero = scalar_traits<S>::zero();
        if (n_ == 0) throw ValidationError("nonempty", {}, "metric has no points");
        if (d_.size() != n_ * n_)
            throw ValidationError("matrix_shape", {d_.size(), n_},
                                  "matrix size does not match label count");
        for (std::size_t i = 0; i < n_; ++i) {
            if (!(d(i, i) == zero))
                throw ValidationError("zero_diagonal", {i}, "d[" + std::to_string(i) + "][" +
                                                                std::to_string(i) + "] != 0");
            for (std::size_t j = i + 1; j < n_; ++j) {
                if (!(d(i, j) == d(j, i)))
                    throw ValidationError("symmetry", {i, j},
                                          "d[" + std::to_string(i) + "][" + std::to_string(j) +
                                              "] differs from its transpose");
                if (!(d(i, j) > zero))
                    throw ValidationError(
                        "positivity", {i, j},
                        "points " + labels_[i] + " and " + labels_[j] + " are at distance <= 0");
            }
        }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k)
                    if (d(i, j) > d(i, k) + d(k, j) + tol)
                        throw ValidationError("triangle_inequality", {i, j, k},
                                              "d(" + labels_[i] + "," + labels_[j] + ") > d(" +
                                                  labels_[i] + "," + labels_[k] + ") + d(" +
                                                  labels_[k] + "," + labels_[j] + ")");
    }

    std::vector<std::string> labels_;
    std::vector<S> d_;
    std::size_t n_;
    std::map<std::string, std::size_t> index_;
};

}  // namespace realtree
