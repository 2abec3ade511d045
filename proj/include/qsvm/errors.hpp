#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsvm {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes:
// usage problems -> 2, data/file problems -> 3, solver non-convergence -> 4.

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct index_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct shape_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    parse_error(const std::string& message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_number(line) {}
    std::size_t line_number;
};

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct unsupported_gate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct training_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct generation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qsvm
