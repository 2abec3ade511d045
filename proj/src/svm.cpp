#include "qsvm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "qsvm/errors.hpp"
#include "qsvm/linalg.hpp"

namespace qsvm {

namespace {

constexpr double kKktTolerance = 1e-6;
constexpr std::size_t kMaxIterations = 100000;
constexpr double kCurvatureFloor = 1e-12;

// Support threshold: "alpha > 0" needs a numeric cutoff.
double alpha_threshold(double C) { return 1e-8 * C; }

struct ViolatingPair {
    std::size_t up = 0;
    std::size_t low = 0;
    double gap = 0.0;
    bool valid = false;
};

// Maximal violating pair over the index sets that can still move:
// up-set ascends along +l_i, low-set descends. Optimality when the gap of
// -l_i * grad_i values between the sets closes.
ViolatingPair select_pair(const std::vector<double>& alphas, const std::vector<int>& labels,
                          const std::vector<double>& grad, double C) {
    ViolatingPair pair;
    double best_up = -std::numeric_limits<double>::infinity();
    double best_low = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double score = -labels[i] * grad[i];
        const bool in_up = (labels[i] > 0 && alphas[i] < C) || (labels[i] < 0 && alphas[i] > 0);
        const bool in_low = (labels[i] < 0 && alphas[i] < C) || (labels[i] > 0 && alphas[i] > 0);
        if (in_up && score > best_up) {
            best_up = score;
            pair.up = i;
        }
        if (in_low && score < best_low) {
            best_low = score;
            pair.low = i;
        }
    }
    if (!std::isfinite(best_up) || !std::isfinite(best_low)) return pair;
    pair.gap = best_up - best_low;
    pair.valid = true;
    return pair;
}

// Shot-estimated Grams measure (i, j) and (j, i) as separate circuit runs,
// so mild asymmetry is expected; the solver works on the symmetric average.
std::vector<double> symmetrized_entries(const KernelMatrix& gram) {
    const std::size_t n = gram.rows;
    std::vector<double> sym(gram.entries);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double mean = 0.5 * (gram.at(i, j) + gram.at(j, i));
            sym[i * n + j] = mean;
            sym[j * n + i] = mean;
        }
    }
    return sym;
}

}  // namespace

SvmModel train(const KernelMatrix& gram, const std::vector<int>& labels, double C,
               TrainDiagnostics* diagnostics) {
    const std::size_t n = gram.rows;
    if (gram.rows != gram.cols) throw shape_error("Gram matrix must be square");
    if (labels.size() != n) throw shape_error("label count must match Gram size");
    if (n == 0) throw training_error("cannot train on an empty dataset");
    if (C <= 0.0) throw config_error("regularization parameter C must be positive");
    for (double entry : gram.entries) {
        if (!std::isfinite(entry)) throw data_error("Gram matrix contains non-finite entries");
    }
    bool has_positive = false, has_negative = false;
    for (int label : labels) {
        if (label == +1) has_positive = true;
        else if (label == -1) has_negative = true;
        else throw training_error("labels must be +1 or -1");
    }
    if (!has_positive || !has_negative) {
        throw training_error("training requires samples from both classes");
    }

    const std::vector<double> K = symmetrized_entries(gram);
    auto k_at = [&](std::size_t i, std::size_t j) { return K[i * n + j]; };

    std::vector<double> alphas(n, 0.0);
    std::vector<double> grad(n, -1.0);   // d/d_alpha_i of the dual objective at alpha = 0
    std::size_t iterations = 0;
    double gap = 0.0;

    while (true) {
        const ViolatingPair pair = select_pair(alphas, labels, grad, C);
        gap = pair.valid ? pair.gap : 0.0;
        if (!pair.valid || gap <= kKktTolerance) break;
        if (++iterations > kMaxIterations) {
            throw convergence_error("SMO did not converge within " +
                                    std::to_string(kMaxIterations) + " iterations (gap " +
                                    std::to_string(gap) + ")");
        }

        const std::size_t i = pair.up, j = pair.low;
        // Move along alpha_i += l_i * d, alpha_j -= l_j * d, which preserves
        // the equality constraint. Curvature along that line:
        const double eta = k_at(i, i) + k_at(j, j) - 2.0 * k_at(i, j);
        double step_limit = labels[i] > 0 ? C - alphas[i] : alphas[i];
        step_limit = std::min(step_limit, labels[j] > 0 ? alphas[j] : C - alphas[j]);
        const double step =
            eta > kCurvatureFloor ? std::min(gap / eta, step_limit) : step_limit;

        alphas[i] += labels[i] * step;
        alphas[j] -= labels[j] * step;
        alphas[i] = std::clamp(alphas[i], 0.0, C);
        alphas[j] = std::clamp(alphas[j], 0.0, C);
        for (std::size_t k = 0; k < n; ++k) {
            grad[k] += labels[k] * step * (k_at(k, i) - k_at(k, j));
        }
    }

    SvmModel model;
    model.alphas = alphas;
    model.labels = labels;
    model.C = C;
    for (std::size_t i = 0; i < n; ++i) {
        if (alphas[i] > alpha_threshold(C)) model.support_indices.push_back(i);
    }

    // Bias averaged over the support set.
    if (!model.support_indices.empty()) {
        double total = 0.0;
        for (std::size_t s : model.support_indices) {
            double weighted = 0.0;
            for (std::size_t m : model.support_indices) {
                weighted += alphas[m] * labels[m] * k_at(m, s);
            }
            total += labels[s] - weighted;
        }
        model.bias = total / static_cast<double>(model.support_indices.size());
    }

    if (diagnostics != nullptr) {
        diagnostics->iterations = iterations;
        diagnostics->kkt_gap = gap;
        diagnostics->min_gram_eigenvalue = min_symmetric_eigenvalue(K, n);
    }
    return model;
}

double decision_value(const SvmModel& model, std::span<const double> kernel_row) {
    if (kernel_row.size() != model.alphas.size()) {
        throw shape_error("kernel row length must match training size");
    }
    double value = model.bias;
    for (std::size_t s : model.support_indices) {
        value += model.alphas[s] * model.labels[s] * kernel_row[s];
    }
    return value;
}

int predict(const SvmModel& model, std::span<const double> kernel_row) {
    return decision_value(model, kernel_row) >= 0.0 ? +1 : -1;
}

double accuracy(const SvmModel& model, const KernelMatrix& cross,
                const std::vector<int>& true_labels) {
    if (cross.rows != true_labels.size()) {
        throw shape_error("label count must match cross-kernel rows");
    }
    if (cross.rows == 0) throw shape_error("cannot score an empty sample set");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < cross.rows; ++i) {
        if (predict(model, cross.row(i)) == true_labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(cross.rows);
}

double dual_objective(const KernelMatrix& gram, const std::vector<int>& labels,
                      const std::vector<double>& alphas) {
    const std::size_t n = alphas.size();
    double quadratic = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            quadratic += alphas[i] * alphas[j] * labels[i] * labels[j] * gram.at(i, j);
        }
    }
    double linear = 0.0;
    for (double a : alphas) linear += a;
    return 0.5 * quadratic - linear;
}

double kkt_violation(const KernelMatrix& gram, const std::vector<int>& labels,
                     const SvmModel& model) {
    const std::size_t n = model.alphas.size();
    std::vector<double> grad(n, -1.0);
    for (std::size_t k = 0; k < n; ++k) {
        double weighted = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            weighted += model.alphas[m] * labels[m] * gram.at(k, m);
        }
        grad[k] = labels[k] * weighted - 1.0;
    }
    const ViolatingPair pair = select_pair(model.alphas, labels, grad, model.C);
    return pair.valid ? std::max(0.0, pair.gap) : 0.0;
}

std::string svm_model_to_json(const SvmModel& model) {
    nlohmann::json j;
    j["alphas"] = model.alphas;
    j["labels"] = model.labels;
    j["support_indices"] = model.support_indices;
    j["bias"] = model.bias;
    j["C"] = model.C;
    return j.dump(2) + "\n";
}

SvmModel svm_model_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SvmModel model;
    model.alphas = j.at("alphas").get<std::vector<double>>();
    model.labels = j.at("labels").get<std::vector<int>>();
    model.support_indices = j.at("support_indices").get<std::vector<std::size_t>>();
    model.bias = j.at("bias").get<double>();
    model.C = j.at("C").get<double>();
    return model;
}

}  // namespace qsvm
