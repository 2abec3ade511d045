#include "qsvm/graph.hpp"

#include <cmath>
#include <string>

#include "qsvm/errors.hpp"

namespace qsvm {

GraphInstance::GraphInstance(int vertex_count)
    : n(vertex_count), weights(static_cast<std::size_t>(vertex_count) * vertex_count, 0.0) {
    if (vertex_count < 1) throw config_error("graph needs at least one vertex");
}

void GraphInstance::set_weight(int j, int k, double w) {
    if (j < 0 || k < 0 || j >= n || k >= n) throw index_error("vertex index out of range");
    if (j == k) throw domain_error("diagonal weights must stay zero");
    weights[static_cast<std::size_t>(j) * n + k] = w;
    weights[static_cast<std::size_t>(k) * n + j] = w;
}

double GraphInstance::max_abs_weight() const {
    double best = 0.0;
    for (double w : weights) best = std::max(best, std::abs(w));
    return best;
}

void GraphInstance::validate() const {
    if (weights.size() != static_cast<std::size_t>(n) * n) {
        throw shape_error("weight matrix size does not match vertex count");
    }
    for (int j = 0; j < n; ++j) {
        if (weight(j, j) != 0.0) throw shape_error("weight matrix diagonal must be zero");
        for (int k = j + 1; k < n; ++k) {
            if (weight(j, k) != weight(k, j)) throw shape_error("weight matrix must be symmetric");
        }
    }
}

GraphInstance GraphInstance::ring(std::span<const double> edge_weights) {
    const int n = static_cast<int>(edge_weights.size());
    if (n < 3) throw config_error("ring graphs need at least 3 vertices");
    GraphInstance g(n);
    for (int i = 0; i < n; ++i) {
        g.set_weight(i, (i + 1) % n, edge_weights[static_cast<std::size_t>(i)]);
    }
    return g;
}

}  // namespace qsvm
