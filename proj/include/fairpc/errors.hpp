#pragma once

#include <stdexcept>
#include <string>

namespace fairpc {

// Bad user-supplied configuration (instance, family descriptor, experiment file).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument to a library call.
struct argument_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration or allocation exceeded a configured cap.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structural violation, e.g. pulling a super arm that is not a family member.
struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested diagnostic was not recorded during the run.
struct diagnostic_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Benchmark program has no feasible distribution at the requested slack.
struct infeasible_error : std::runtime_error {
    infeasible_error(const std::string& msg, double requested, double max_feasible)
        : std::runtime_error(msg), delta_requested(requested), delta_max(max_feasible) {}
    double delta_requested = 0.0;
    double delta_max = 0.0;
};

}  // namespace fairpc
