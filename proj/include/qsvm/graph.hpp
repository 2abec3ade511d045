#pragma once

#include <span>
#include <vector>

namespace qsvm {

// Undirected weighted graph as a dense symmetric weight matrix with zero
// diagonal. Generated datasets use ring topology (edges (i, i+1 mod n)), but
// nothing downstream assumes it.
struct GraphInstance {
    int n = 0;
    std::vector<double> weights;   // row-major n*n

    GraphInstance() = default;
    explicit GraphInstance(int vertex_count);

    double weight(int j, int k) const { return weights[static_cast<std::size_t>(j) * n + k]; }
    void set_weight(int j, int k, double w);   // keeps the matrix symmetric

    double max_abs_weight() const;

    // Throws shape_error on asymmetry or a nonzero diagonal.
    void validate() const;

    static GraphInstance ring(std::span<const double> edge_weights);
};

}  // namespace qsvm
