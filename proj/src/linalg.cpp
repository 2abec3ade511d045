#include "qsvm/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qsvm/errors.hpp"

namespace qsvm {

std::vector<double> symmetric_eigenvalues(std::vector<double> matrix, std::size_t n) {
    if (matrix.size() != n * n) throw shape_error("eigenvalue input is not n*n");
    auto at = [&](std::size_t r, std::size_t c) -> double& { return matrix[r * n + c]; };

    // Cyclic Jacobi. Converges quadratically; the sweep cap is generous for
    // the matrix sizes seen here.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off_diagonal = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off_diagonal += std::abs(at(p, q));
        }
        if (off_diagonal < 1e-14) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> eigenvalues(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = at(i, i);
    std::sort(eigenvalues.begin(), eigenvalues.end());
    return eigenvalues;
}

double min_symmetric_eigenvalue(const std::vector<double>& matrix, std::size_t n) {
    return symmetric_eigenvalues(matrix, n).front();
}

}  // namespace qsvm
