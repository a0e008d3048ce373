#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace border3 {

/// Nodes and weights that pick the degree-i component out of values Q(node_j):
/// sum_j weights_j * nodes_j^k is 0 for k < i and 1 for k = i.
struct ExtractionScheme {
    unsigned target_index = 0;
    std::vector<Rational> nodes;
    std::vector<Rational> weights;

    /// sum_j weights_j * nodes_j^k
    Rational moment(unsigned k) const
    {
        Rational acc(0);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            acc += weights[j] * pow(nodes[j], k);
        }
        return acc;
    }

    bool satisfies_invariant() const
    {
        for (unsigned k = 0; k <= target_index; ++k) {
            if (moment(k) != (k == target_index ? 1 : 0)) {
                return false;
            }
        }
        return true;
    }
};

/// 0, 1, ..., count-1
inline std::vector<Rational> default_nodes(std::size_t count)
{
    std::vector<Rational> nodes;
    nodes.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        nodes.emplace_back(static_cast<long>(j));
    }
    return nodes;
}

inline void require_distinct(const std::vector<Rational>& nodes)
{
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        for (std::size_t k = j + 1; k < nodes.size(); ++k) {
            if (nodes[j] == nodes[k]) {
                throw std::invalid_argument("interpolation nodes must be pairwise distinct");
            }
        }
    }
}

/// Closed-form weights 1 / prod_{k != j}(node_j - node_k). With i+1 nodes these are the
/// leading coefficients of the Lagrange basis, which is exactly the degree-i extraction row.
inline ExtractionScheme lagrange_extraction_coefficients(std::vector<Rational> nodes, unsigned i)
{
    if (nodes.size() != static_cast<std::size_t>(i) + 1) {
        throw std::invalid_argument("extraction of degree i needs exactly i+1 nodes");
    }
    require_distinct(nodes);
    ExtractionScheme scheme;
    scheme.target_index = i;
    scheme.weights.reserve(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        Rational denom(1);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (k != j) {
                denom *= nodes[j] - nodes[k];
            }
        }
        scheme.weights.push_back(Rational(1) / denom);
    }
    scheme.nodes = std::move(nodes);
    return scheme;
}

/// Row `index` of the inverse Vandermonde matrix on `nodes`: weights w with
/// sum_j w_j nodes_j^k = delta_{k,index} for every k < nodes.size().
/// Equals the y^index coefficient of each Lagrange basis polynomial.
inline std::vector<Rational> interpolation_row(const std::vector<Rational>& nodes, unsigned index)
{
    require_distinct(nodes);
    if (index >= nodes.size()) {
        throw std::invalid_argument("interpolation_row: index exceeds the number of nodes");
    }
    std::vector<Rational> row;
    row.reserve(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        // prod_{k != j} (y - node_k), lowest degree first
        std::vector<Rational> basis{Rational(1)};
        Rational denom(1);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (k == j) {
                continue;
            }
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= basis[t] * nodes[k];
            }
            basis = std::move(next);
            denom *= nodes[j] - nodes[k];
        }
        row.push_back(basis[index] / denom);
    }
    return row;
}

} // namespace border3
