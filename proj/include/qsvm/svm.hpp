#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qsvm/kernel.hpp"

namespace qsvm {

struct SvmModel {
    std::vector<double> alphas;
    std::vector<int> labels;                    // +1 / -1 per training sample
    std::vector<std::size_t> support_indices;   // alpha_i > 1e-8 * C
    double bias = 0.0;
    double C = 1.0;
};

struct TrainDiagnostics {
    std::size_t iterations = 0;
    double kkt_gap = 0.0;
    // Shot-estimated Gram matrices may be slightly non-PSD; they are used
    // as-is, and this reports how non-PSD they were.
    double min_gram_eigenvalue = 0.0;
};

// Dual soft-margin solver: pairwise coordinate updates with maximal-violating-
// pair selection, stopping at KKT gap <= 1e-6 and failing hard (convergence_
// error) after 10^5 iterations. Deterministic: no randomness, fixed scan
// order. The Gram matrix is symmetrized by averaging before solving (shot
// estimation measures each triangle independently). Labels must contain both
// classes.
SvmModel train(const KernelMatrix& gram, const std::vector<int>& labels, double C = 1.0,
               TrainDiagnostics* diagnostics = nullptr);

// Pre-sign decision quantity for one test sample; `kernel_row` holds
// K(x', x_i) for every training sample i.
double decision_value(const SvmModel& model, std::span<const double> kernel_row);

// Sign of the decision value; exactly zero maps to +1.
int predict(const SvmModel& model, std::span<const double> kernel_row);

// Fraction of rows of `cross` (test x train) predicted as `true_labels`.
double accuracy(const SvmModel& model, const KernelMatrix& cross,
                const std::vector<int>& true_labels);

double dual_objective(const KernelMatrix& gram, const std::vector<int>& labels,
                      const std::vector<double>& alphas);

// Maximal-violating-pair gap of a trained model; <= tolerance at optimality.
double kkt_violation(const KernelMatrix& gram, const std::vector<int>& labels,
                     const SvmModel& model);

std::string svm_model_to_json(const SvmModel& model);
SvmModel svm_model_from_json(const std::string& text);

}  // namespace qsvm
