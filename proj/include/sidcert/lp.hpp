#ifndef SIDCERT_LP_HPP
#define SIDCERT_LP_HPP

#include <map>
#include <vector>

#include "sidcert/rational.hpp"

namespace sidcert {

/** One column of an exact equality system, sparse over row indices. */
struct LPColumn {
    std::map<int, Rational> entries;
    bool nonneg = true; // cone variable; free variables are split internally
};

struct FeasibilityResult {
    bool feasible = false;
    // Solution per input column when feasible.
    std::vector<Rational> x;
    // When infeasible: y with  y^T a_j >= 0 for cone columns,
    // y^T a_j == 0 for free columns, and  y^T b < 0.
    std::vector<Rational> farkas;
};

/**
 * Exact rational feasibility for  A x = b  with sign constraints, via a
 * phase-1 tableau simplex.  Pivoting is steepest-coefficient with a
 * permanent switch to Bland's rule after a run of degenerate pivots, so
 * termination is guaranteed.
 */
inline FeasibilityResult solve_exact_feasibility(int nrows,
                                                 const std::vector<LPColumn>& cols,
                                                 const std::vector<Rational>& rhs) {
    const int m = nrows;
    // Split free columns into a positive and negative part.
    std::vector<int> owner;     // tableau column -> input column
    std::vector<int> sign;      // +1 or -1 part
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
        owner.push_back(j);
        sign.push_back(1);
        if (!cols[j].nonneg) {
            owner.push_back(j);
            sign.push_back(-1);
        }
    }
    const int n = static_cast<int>(owner.size());
    const int art0 = n;           // artificial block
    const int width = n + m + 1;  // + artificials + rhs

    std::vector<int> rowsign(m, 1);
    std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(width, Rational(0)));
    // Constraint rows, flipped to nonnegative right-hand sides.
    for (int i = 0; i < m; ++i) {
        if (rhs[i] < 0) rowsign[i] = -1;
        t[i][width - 1] = rowsign[i] * rhs[i];
        t[i][art0 + i] = 1;
    }
    for (int jt = 0; jt < n; ++jt) {
        const LPColumn& c = cols[owner[jt]];
        for (const auto& [i, v] : c.entries)
            t[i][jt] = Rational(rowsign[i] * sign[jt]) * v;
    }
    // Phase-1 objective row: reduced costs with the artificial basis.
    std::vector<Rational>& z = t[m];
    for (int j = 0; j < width; ++j) {
        Rational s(0);
        for (int i = 0; i < m; ++i) s += t[i][j];
        z[j] = (j >= art0 && j < art0 + m) ? Rational(0) : -s;
    }

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = art0 + i;

    bool bland = false;
    int degenerate_run = 0;
    while (true) {
        // Entering column.
        int enter = -1;
        if (bland) {
            for (int j = 0; j < width - 1; ++j)
                if (z[j] < 0) { enter = j; break; }
        } else {
            const Rational* best = nullptr;
            for (int j = 0; j < width - 1; ++j)
                if (z[j] < 0 && (!best || z[j] < *best)) { best = &z[j]; enter = j; }
        }
        if (enter < 0) break;
        // Ratio test; ties go to the smallest basis index.
        int leave = -1;
        Rational best_ratio(0);
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][width - 1] / t[i][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0)
            throw ParameterError("unbounded phase-1 objective; inconsistent system");
        if (best_ratio == 0) {
            if (++degenerate_run > 2 * m) bland = true;
        } else {
            degenerate_run = 0;
        }
        // Pivot.
        Rational piv = t[leave][enter];
        for (int j = 0; j < width; ++j)
            if (t[leave][j] != 0) t[leave][j] /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            Rational f = t[i][enter];
            if (f == 0) continue;
            for (int j = 0; j < width; ++j)
                if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    FeasibilityResult out;
    // Objective value = -z[rhs]; feasible iff it is zero.
    if (z[width - 1] != 0) {
        out.feasible = false;
        // Optimal duals: y_i = 1 - (reduced cost of artificial i); the
        // separating vector in the original row space is -rowsign * y.
        out.farkas.assign(m, Rational(0));
        for (int i = 0; i < m; ++i) {
            Rational y_i = Rational(1) - z[art0 + i];
            out.farkas[i] = Rational(-rowsign[i]) * y_i;
        }
        return out;
    }
    out.feasible = true;
    out.x.assign(cols.size(), Rational(0));
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n && t[i][width - 1] != 0)
            out.x[owner[basis[i]]] += Rational(sign[basis[i]]) * t[i][width - 1];
    }
    return out;
}

} // namespace sidcert

#endif
