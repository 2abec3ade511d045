#pragma once

#include <cstddef>
#include <vector>

namespace qsvm {

// Eigenvalues of a symmetric matrix (row-major n*n) by cyclic Jacobi
// rotations, ascending. Intended for the small Gram matrices this toolkit
// produces (n <= a few dozen).
std::vector<double> symmetric_eigenvalues(std::vector<double> matrix, std::size_t n);

double min_symmetric_eigenvalue(const std::vector<double>& matrix, std::size_t n);

}  // namespace qsvm
