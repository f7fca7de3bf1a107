#include "tdu/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "tdu/errors.hpp"

namespace tdu {

namespace {

constexpr double kPivotTol = 1e-11;

// Tableau rows: one per constraint, last row = objective (reduced costs).
// Column layout: structural vars | slack/surplus | artificial | rhs.
struct Tableau {
    int m, ncols;
    std::vector<std::vector<double>> a; // m+1 rows, ncols+1 columns
    std::vector<int> basis;             // basic column per row

    Tableau(int m_, int ncols_) : m(m_), ncols(ncols_) {
        a.assign(static_cast<std::size_t>(m + 1), std::vector<double>(static_cast<std::size_t>(ncols + 1), 0.0));
        basis.assign(static_cast<std::size_t>(m), -1);
    }

    double& at(int r, int c) { return a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    double& rhs(int r) { return a[static_cast<std::size_t>(r)][static_cast<std::size_t>(ncols)]; }
    double rhs(int r) const { return a[static_cast<std::size_t>(r)][static_cast<std::size_t>(ncols)]; }

    void pivot(int pr, int pc) {
        double piv = at(pr, pc);
        for (int c = 0; c <= ncols; ++c) at(pr, c) /= piv;
        for (int r = 0; r <= m; ++r) {
            if (r == pr) continue;
            double f = at(r, pc);
            if (f == 0.0) continue;
            for (int c = 0; c <= ncols; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
        basis[static_cast<std::size_t>(pr)] = pc;
    }

    // Bland's rule: entering = lowest-index column with negative reduced cost,
    // leaving = lowest ratio then lowest basis index. Returns false when optimal.
    bool iterate(bool allow_col(int, const void*), const void* ctx) {
        while (true) {
            int pc = -1;
            for (int c = 0; c < ncols; ++c) {
                if (!allow_col(c, ctx)) continue;
                if (at(m, c) < -kPivotTol) {
                    pc = c;
                    break;
                }
            }
            if (pc < 0) return true; // optimal
            int pr = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m; ++r) {
                double arc = at(r, pc);
                if (arc > kPivotTol) {
                    double ratio = rhs(r) / arc;
                    if (ratio < best - kPivotTol ||
                        (ratio < best + kPivotTol && pr >= 0 &&
                         basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(pr)])) {
                        best = ratio;
                        pr = r;
                    }
                }
            }
            if (pr < 0) return false; // unbounded in this column
            pivot(pr, pc);
        }
    }
};

} // namespace

LpResult solve_lp(const std::vector<double>& c, const std::vector<LpConstraint>& constraints) {
    int n = static_cast<int>(c.size());
    int m = static_cast<int>(constraints.size());

    // Count extra columns.
    int n_slack = 0;
    for (const auto& con : constraints)
        if (con.sense != LpSense::eq) ++n_slack;
    int n_art = m; // one artificial per row keeps phase-1 startup uniform

    int ncols = n + n_slack + n_art;
    Tableau t(m, ncols);

    int slack_col = n;
    for (int r = 0; r < m; ++r) {
        const auto& con = constraints[static_cast<std::size_t>(r)];
        if (static_cast<int>(con.coeffs.size()) != n)
            throw Error("LP constraint arity mismatch");
        double sign = con.rhs < 0.0 ? -1.0 : 1.0; // normalize rhs >= 0
        for (int j = 0; j < n; ++j) t.at(r, j) = sign * con.coeffs[static_cast<std::size_t>(j)];
        t.rhs(r) = sign * con.rhs;
        if (con.sense != LpSense::eq) {
            double s = (con.sense == LpSense::le) ? 1.0 : -1.0;
            t.at(r, slack_col++) = sign * s;
        }
    }
    int art0 = n + n_slack;
    for (int r = 0; r < m; ++r) {
        t.at(r, art0 + r) = 1.0;
        t.basis[static_cast<std::size_t>(r)] = art0 + r;
    }

    // Phase 1: minimize the sum of artificials.
    for (int j = 0; j <= ncols; ++j) {
        double s = 0.0;
        for (int r = 0; r < m; ++r) s += t.at(r, j);
        t.at(m, j) = (j >= art0 && j < ncols) ? 0.0 : -s;
    }
    auto allow_all = [](int, const void*) { return true; };
    if (!t.iterate(allow_all, nullptr)) return {LpStatus::infeasible, {}, 0.0}; // phase 1 is bounded
    if (t.rhs(m) < -1e-8 || t.rhs(m) > 1e-8) {
        // objective row tracks -(sum of artificials); nonzero means infeasible
        if (std::abs(t.rhs(m)) > 1e-8) return {LpStatus::infeasible, {}, 0.0};
    }

    // Drive leftover artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
        if (t.basis[static_cast<std::size_t>(r)] < art0) continue;
        int pc = -1;
        for (int j = 0; j < art0; ++j)
            if (std::abs(t.at(r, j)) > kPivotTol) {
                pc = j;
                break;
            }
        if (pc >= 0) t.pivot(r, pc);
        // else the row is redundant; its artificial stays basic at value ~0
    }

    // Phase 2: original objective, artificial columns barred.
    for (int j = 0; j <= ncols; ++j) t.at(m, j) = 0.0;
    for (int j = 0; j < n; ++j) t.at(m, j) = c[static_cast<std::size_t>(j)];
    for (int r = 0; r < m; ++r) {
        int b = t.basis[static_cast<std::size_t>(r)];
        double cb = (b < n) ? c[static_cast<std::size_t>(b)] : 0.0;
        if (cb == 0.0) continue;
        for (int j = 0; j <= ncols; ++j) t.at(m, j) -= cb * t.at(r, j);
    }
    struct Ctx {
        int art0;
    } ctx{art0};
    auto no_artificials = [](int col, const void* p) { return col < static_cast<const Ctx*>(p)->art0; };
    if (!t.iterate(no_artificials, &ctx)) return {LpStatus::unbounded, {}, 0.0};

    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < m; ++r) {
        int b = t.basis[static_cast<std::size_t>(r)];
        if (b < n) x[static_cast<std::size_t>(b)] = t.rhs(r);
    }
    double value = 0.0;
    for (int j = 0; j < n; ++j) value += c[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    return {LpStatus::optimal, std::move(x), value};
}

} // namespace tdu
