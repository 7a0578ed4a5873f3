#include "fairpc/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "fairpc/errors.hpp"

namespace fairpc::lp {

namespace {

constexpr double kTol = 1e-10;

struct Tableau {
    size_t rows = 0;       // constraint count
    size_t cols = 0;       // structural + artificial variables
    size_t structural = 0; // structural variable count
    std::vector<std::vector<double>> t;  // rows x (cols + 1), last column is rhs
    std::vector<double> obj;             // reduced-cost row, z_j - c_j, plus objective value
    std::vector<size_t> basis;           // basic variable per row

    void pivot(size_t r, size_t s) {
        const double inv = 1.0 / t[r][s];
        for (double& v : t[r]) v *= inv;
        t[r][s] = 1.0;  // kill residual rounding on the pivot element
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double f = t[i][s];
            if (f == 0.0) continue;
            for (size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
            t[i][s] = 0.0;
        }
        const double f = obj[s];
        if (f != 0.0) {
            for (size_t j = 0; j <= cols; ++j) obj[j] -= f * t[r][j];
            obj[s] = 0.0;
        }
        basis[r] = s;
    }

    // Runs the pivot loop until optimal or unbounded. `allowed[j]` gates entering
    // columns (artificials are locked out in phase 2).
    Status iterate(const std::vector<bool>& allowed) {
        const size_t bland_threshold = 16 * (rows + cols + 1);
        for (size_t iter = 0;; ++iter) {
            const bool bland = iter > bland_threshold;
            size_t enter = cols;
            double best = -kTol;
            for (size_t j = 0; j < cols; ++j) {
                if (!allowed[j]) continue;
                const double rc = obj[j];
                if (rc < -kTol) {
                    if (bland) {
                        enter = j;
                        break;
                    }
                    if (rc < best) {
                        best = rc;
                        enter = j;
                    }
                }
            }
            if (enter == cols) return Status::optimal;

            size_t leave = rows;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < rows; ++i) {
                const double a = t[i][enter];
                if (a > kTol) {
                    const double ratio = t[i][cols] / a;
                    if (ratio < best_ratio - kTol ||
                        (ratio < best_ratio + kTol && (leave == rows || basis[i] < basis[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == rows) return Status::unbounded;
            pivot(leave, enter);
        }
    }
};

}  // namespace

Result solve_equality_form(std::vector<std::vector<double>> a, std::vector<double> b,
                           const std::vector<double>& c) {
    const size_t m = a.size();
    const size_t n = c.size();
    for (size_t i = 0; i < m; ++i) {
        if (a[i].size() != n) throw argument_error("lp: constraint row length != variable count");
        if (b[i] < 0.0) {  // phase 1 needs nonnegative rhs
            for (double& v : a[i]) v = -v;
            b[i] = -b[i];
        }
    }

    Tableau tab;
    tab.rows = m;
    tab.structural = n;
    tab.cols = n + m;  // structural then one artificial per row
    tab.t.assign(m, std::vector<double>(tab.cols + 1, 0.0));
    tab.basis.resize(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) tab.t[i][j] = a[i][j];
        tab.t[i][n + i] = 1.0;
        tab.t[i][tab.cols] = b[i];
        tab.basis[i] = n + i;
    }

    // Phase 1: maximize -(sum of artificials). With the artificial basis, reduced
    // costs are -(column sums) for structural columns and 0 for artificials.
    tab.obj.assign(tab.cols + 1, 0.0);
    for (size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (size_t i = 0; i < m; ++i) s += tab.t[i][j];
        tab.obj[j] = -s;
    }
    {
        double s = 0.0;
        for (size_t i = 0; i < m; ++i) s += tab.t[i][tab.cols];
        tab.obj[tab.cols] = -s;  // objective value, negated artificial sum
    }

    std::vector<bool> allowed(tab.cols, true);
    if (tab.iterate(allowed) == Status::unbounded) return Result{Status::unbounded, 0.0, {}};
    if (tab.obj[tab.cols] < -1e-8) return Result{Status::infeasible, 0.0, {}};

    // Drive any artificial left in the basis out, or pin its row if degenerate.
    for (size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        size_t enter = tab.cols;
        for (size_t j = 0; j < n; ++j) {
            if (std::fabs(tab.t[i][j]) > kTol) {
                enter = j;
                break;
            }
        }
        if (enter != tab.cols) tab.pivot(i, enter);
        // else: redundant row; the artificial stays basic at value ~0.
    }

    // Phase 2: real objective. Rebuild the reduced-cost row from the current basis.
    for (size_t j = 0; j <= tab.cols; ++j) {
        double z = 0.0;
        for (size_t i = 0; i < m; ++i) {
            const size_t bv = tab.basis[i];
            if (bv < n) z += c[bv] * tab.t[i][j];
        }
        tab.obj[j] = z - (j < n ? c[j] : 0.0);
    }
    for (size_t j = n; j < tab.cols; ++j) allowed[j] = false;

    const Status st = tab.iterate(allowed);
    if (st == Status::unbounded) return Result{Status::unbounded, 0.0, {}};

    Result res;
    res.status = Status::optimal;
    res.x.assign(n, 0.0);
    for (size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][tab.cols];
    }
    double obj = 0.0;
    for (size_t j = 0; j < n; ++j) obj += c[j] * res.x[j];
    res.objective = obj;
    return res;
}

}  // namespace fairpc::lp
