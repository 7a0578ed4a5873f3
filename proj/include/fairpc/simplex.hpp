#pragma once

#include <vector>

namespace fairpc::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status = Status::infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

// maximize c.x  subject to  A x = b, x >= 0.
// Dense two-phase tableau simplex. Pivoting starts with Dantzig's rule and falls
// back to Bland's rule after an iteration budget, which rules out cycling.
Result solve_equality_form(std::vector<std::vector<double>> a, std::vector<double> b,
                           const std::vector<double>& c);

}  // namespace fairpc::lp
