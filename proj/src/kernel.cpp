#include "qsvm/kernel.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qsvm/errors.hpp"
#include "qsvm/rng.hpp"
#include "qsvm/statevector.hpp"
#include "qsvm/transpile.hpp"

namespace qsvm {

const char* transpile_mode_name(TranspileMode mode) {
    return mode == TranspileMode::NonOptimized ? "nonopt" : "opt";
}

EstimationMode EstimationMode::exact_mode() { return EstimationMode{}; }

EstimationMode EstimationMode::shot_mode(std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw config_error("shot count must be positive");
    EstimationMode mode;
    mode.exact = false;
    mode.shots = shots;
    mode.seed = seed;
    return mode;
}

EstimationMode EstimationMode::noisy_mode(std::uint64_t shots, std::uint64_t seed,
                                          NoiseConfig cfg) {
    EstimationMode mode = shot_mode(shots, seed);
    cfg.validate();
    mode.noise = cfg;
    return mode;
}

std::string EstimationMode::describe() const {
    if (exact) return "exact";
    std::string text = "shots(" + std::to_string(shots) + ", seed=" + std::to_string(seed) + ")";
    if (noise && noise->enabled) text = "noisy " + text;
    return text;
}

KernelMatrix::KernelMatrix(std::vector<std::string> row_ids_in,
                           std::vector<std::string> col_ids_in)
    : rows(row_ids_in.size()),
      cols(col_ids_in.size()),
      entries(row_ids_in.size() * col_ids_in.size(), 0.0),
      row_ids(std::move(row_ids_in)),
      col_ids(std::move(col_ids_in)) {}

std::span<const double> KernelMatrix::row(std::size_t i) const {
    return std::span<const double>(entries).subspan(i * cols, cols);
}

Circuit mirror_circuit(const Circuit& encode_x, const Circuit& encode_y, TranspileMode mode) {
    if (encode_x.n_qubits != encode_y.n_qubits) {
        throw shape_error("mirror circuit requires equal qubit counts");
    }
    const Circuit raw = concat(encode_x, adjoint(encode_y));
    if (mode == TranspileMode::NonOptimized) {
        return transpile_cx(raw);
    }
    // Rewrite before decomposing so mirrored CX layers cancel as CX pairs,
    // then once more to merge the rotations the decomposition introduces.
    return optimize(transpile_cx(optimize(raw)));
}

double kernel_entry(const Circuit& circuit, const EstimationMode& mode) {
    if (mode.exact) {
        return run_circuit(circuit).probability_all_zeros();
    }
    const std::string all_zeros(static_cast<std::size_t>(circuit.n_qubits), '0');
    MeasurementOutcome outcome;
    if (mode.noise && mode.noise->enabled) {
        outcome = sample_noisy(circuit, *mode.noise, mode.shots, mode.seed);
    } else {
        outcome = run_circuit(circuit).sample(mode.shots, mode.seed);
    }
    const auto it = outcome.counts.find(all_zeros);
    const std::uint64_t hits = it == outcome.counts.end() ? 0 : it->second;
    return static_cast<double>(hits) / static_cast<double>(mode.shots);
}

KernelMatrix kernel_matrix(const std::vector<std::string>& row_ids,
                           const std::vector<std::string>& col_ids,
                           const PairCircuitBuilder& builder, const KernelOptions& options) {
    if (options.symmetric && row_ids != col_ids) {
        throw shape_error("symmetric kernel evaluation requires identical row and column ids");
    }
    KernelMatrix matrix(row_ids, col_ids);
    matrix.mode = options.mode.describe();

    struct Task {
        std::size_t i, j;
    };
    std::vector<Task> tasks;
    tasks.reserve(matrix.rows * matrix.cols);
    const bool mirror_triangle = options.symmetric && options.mode.exact;
    for (std::size_t i = 0; i < matrix.rows; ++i) {
        for (std::size_t j = 0; j < matrix.cols; ++j) {
            if (mirror_triangle && j < i) continue;
            if (!options.mode.exact && options.pin_diagonal && options.symmetric && i == j) {
                matrix.at(i, j) = 1.0;
                continue;
            }
            tasks.push_back({i, j});
        }
    }

    auto evaluate = [&](const Task& task) {
        EstimationMode entry_mode = options.mode;
        if (!entry_mode.exact) {
            entry_mode.seed = mix_seed(mix_seed(options.mode.seed, fnv1a(row_ids[task.i])),
                                       fnv1a(col_ids[task.j]));
        }
        matrix.at(task.i, task.j) = kernel_entry(builder(task.i, task.j), entry_mode);
    };

    const int threads = std::max(1, options.threads);
    if (threads == 1 || tasks.size() < 2) {
        for (const Task& task : tasks) evaluate(task);
    } else {
        // Entries land in disjoint cells and per-entry seeds are derived from
        // ids, so scheduling order cannot change the result.
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                const std::size_t k = next.fetch_add(1);
                if (k >= tasks.size()) return;
                evaluate(tasks[k]);
            }
        };
        std::vector<std::thread> pool;
        const int spawn = std::min<int>(threads, static_cast<int>(tasks.size()));
        pool.reserve(static_cast<std::size_t>(spawn));
        for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (mirror_triangle) {
        for (std::size_t i = 0; i < matrix.rows; ++i) {
            for (std::size_t j = 0; j < i; ++j) matrix.at(i, j) = matrix.at(j, i);
        }
    }
    return matrix;
}

double matrix_distance(const KernelMatrix& a, const KernelMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw shape_error("kernel matrix shapes differ");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
        worst = std::max(worst, std::abs(a.entries[k] - b.entries[k]));
    }
    return worst;
}

double bhattacharyya_coefficient(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw shape_error("distribution sizes differ");
    double coefficient = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) coefficient += std::sqrt(p[x] * q[x]);
    return coefficient;
}

double classical_fidelity(const Circuit& circuit, const NoiseConfig& cfg, std::uint64_t shots,
                          std::uint64_t seed) {
    const std::vector<double> ideal = run_circuit(circuit).born_probabilities();
    if (!cfg.enabled) {
        // Noiseless observation is the Born distribution itself.
        return bhattacharyya_coefficient(ideal, ideal);
    }
    // Fidelity figures are SPAM-corrected: the comparison is against the
    // gate-error-only distribution, so readout flips are stripped here (they
    // stay on for kernel estimation).
    NoiseConfig corrected = cfg;
    corrected.p_readout = 0.0;
    const MeasurementOutcome observed = sample_noisy(circuit, corrected, shots, seed);
    std::vector<double> empirical(ideal.size(), 0.0);
    for (const auto& [bits, count] : observed.counts) {
        empirical[bitstring_to_index(bits)] =
            static_cast<double>(count) / static_cast<double>(shots);
    }
    return bhattacharyya_coefficient(empirical, ideal);
}

namespace {

std::string format_entry(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace

std::string kernel_to_csv(const KernelMatrix& m) {
    std::ostringstream out;
    out << "id";
    for (const auto& id : m.col_ids) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < m.rows; ++i) {
        out << m.row_ids[i];
        for (std::size_t j = 0; j < m.cols; ++j) out << ',' << format_entry(m.at(i, j));
        out << '\n';
    }
    return out.str();
}

KernelMatrix kernel_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty kernel CSV", 1);
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream row(s);
        std::string token;
        while (std::getline(row, token, ',')) parts.push_back(token);
        return parts;
    };
    std::vector<std::string> header = split(line);
    if (header.empty()) throw parse_error("missing header", 1);
    std::vector<std::string> col_ids(header.begin() + 1, header.end());

    std::vector<std::string> row_ids;
    std::vector<double> entries;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line);
        if (fields.size() != col_ids.size() + 1) {
            throw parse_error("expected " + std::to_string(col_ids.size() + 1) + " fields",
                              line_number);
        }
        row_ids.push_back(fields[0]);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            try {
                entries.push_back(std::stod(fields[j]));
            } catch (const std::exception&) {
                throw parse_error("invalid entry '" + fields[j] + "'", line_number);
            }
        }
    }
    KernelMatrix matrix(row_ids, col_ids);
    matrix.entries = std::move(entries);
    return matrix;
}

std::string kernel_to_json(const KernelMatrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["row_ids"] = m.row_ids;
    j["col_ids"] = m.col_ids;
    j["mode"] = m.mode;
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        entries.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    }
    j["entries"] = entries;
    return j.dump(2) + "\n";
}

KernelMatrix kernel_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    KernelMatrix matrix(j.at("row_ids").get<std::vector<std::string>>(),
                        j.at("col_ids").get<std::vector<std::string>>());
    matrix.mode = j.value("mode", "");
    const auto& entries = j.at("entries");
    if (entries.size() != matrix.rows) throw data_error("kernel JSON row count mismatch");
    for (std::size_t i = 0; i < matrix.rows; ++i) {
        if (entries[i].size() != matrix.cols) throw data_error("kernel JSON column count mismatch");
        for (std::size_t jcol = 0; jcol < matrix.cols; ++jcol) {
            matrix.at(i, jcol) = entries[i][jcol].get<double>();
        }
    }
    return matrix;
}

}  // namespace qsvm
