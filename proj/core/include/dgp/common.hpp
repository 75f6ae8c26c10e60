#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dgp {

/// Input or precondition fault. CLI maps these to exit code 2.
class Fault : public std::runtime_error {
public:
    explicit Fault(const std::string& what) : std::runtime_error(what) {}
};

/// Engine-internal inconsistency; indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// Outcome of a structural validation pass. Empty violation list == valid.
struct Report {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void fail(std::string msg) { violations.push_back(std::move(msg)); }
    void merge(const Report& other) {
        violations.insert(violations.end(), other.violations.begin(),
                          other.violations.end());
    }
};

} // namespace dgp
