#pragma once

#include <map>
#include <string>

namespace qsvm {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Per-module versions recorded in report provenance. Bumped independently
// when a module's observable behaviour changes.
inline const std::map<std::string, std::string>& module_versions() {
    static const std::map<std::string, std::string> versions{
        {"simulator", "1"}, {"circuit", "1"}, {"encodings", "1"}, {"kernel", "1"},
        {"svm", "1"},       {"data", "1"},    {"noise", "1"},     {"cli", "1"},
    };
    return versions;
}

}  // namespace qsvm
