// Copyright 2026 The magicsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "magicsim/simplex.h"

#include <limits>
#include <stdexcept>
#include <vector>

namespace magicsim {

std::string lp_status_name(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
        case LPStatus::IterationLimit: return "iteration_limit";
    }
    return "?";
}

namespace {

struct Revised {
    const Eigen::MatrixXd &A;  // m x N, includes artificial columns
    const Eigen::VectorXd &b;
    std::vector<int> basis;
    Eigen::MatrixXd Binv;
    Eigen::VectorXd xB;
    const SimplexOptions &opts;
    int iters = 0;
    int since_refactor = 0;

    Revised(const Eigen::MatrixXd &A_, const Eigen::VectorXd &b_, const SimplexOptions &o) : A(A_), b(b_), opts(o) {}

    void refactor() {
        int m = (int)A.rows();
        Eigen::MatrixXd B(m, m);
        for (int i = 0; i < m; i++) B.col(i) = A.col(basis[i]);
        Binv = B.partialPivLu().inverse();
        xB = Binv * b;
        since_refactor = 0;
    }

    void pivot(int row, int enter, const Eigen::VectorXd &u) {
        double piv = u(row);
        Eigen::RowVectorXd prow = Binv.row(row) / piv;
        for (int i = 0; i < Binv.rows(); i++) {
            if (i == row) continue;
            if (u(i) != 0.0) Binv.row(i) -= u(i) * prow;
        }
        Binv.row(row) = prow;
        basis[row] = enter;
        if (++since_refactor >= opts.refactor_every) {
            refactor();
        } else {
            double t = xB(row) / piv;
            xB -= t * u;
            xB(row) = t;
        }
    }

    // allowed[j] false columns never enter.
    LPStatus run(const Eigen::VectorXd &c, const std::vector<char> &allowed) {
        int m = (int)A.rows();
        int N = (int)A.cols();
        std::vector<char> in_basis(N, 0);
        int degenerate_run = 0;
        while (iters < opts.max_iterations) {
            std::fill(in_basis.begin(), in_basis.end(), 0);
            Eigen::VectorXd cB(m);
            for (int i = 0; i < m; i++) {
                cB(i) = c(basis[i]);
                in_basis[basis[i]] = 1;
            }
            Eigen::RowVectorXd y = cB.transpose() * Binv;
            // Dantzig pricing; Bland's first-index rule takes over during
            // long runs of degenerate pivots so the method cannot cycle.
            const bool bland = degenerate_run > 2 * m;
            int enter = -1;
            double most = -opts.tol;
            for (int j = 0; j < N; j++) {
                if (in_basis[j] || !allowed[j]) continue;
                double d = c(j) - y.dot(A.col(j));
                if (d < most) {
                    enter = j;
                    if (bland) break;
                    most = d;
                }
            }
            if (enter < 0) return LPStatus::Optimal;
            Eigen::VectorXd u = Binv * A.col(enter);
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; i++) {
                if (u(i) > 1e-9) {
                    double ratio = std::max(xB(i), 0.0) / u(i);
                    if (ratio < best - 1e-12) {
                        best = ratio;
                        leave = i;
                    } else if (ratio <= best + 1e-12 && leave >= 0 &&
                               (bland ? basis[i] < basis[leave] : u(i) > u(leave))) {
                        leave = i;
                    }
                }
            }
            if (leave >= 0 && best <= 1e-12)
                degenerate_run++;
            else
                degenerate_run = 0;
            if (leave < 0) return LPStatus::Unbounded;
            pivot(leave, enter, u);
            iters++;
        }
        return LPStatus::IterationLimit;
    }
};

}  // namespace

LPResult solve_standard_lp(const Eigen::MatrixXd &A0, const Eigen::VectorXd &b0, const Eigen::VectorXd &c0,
                           const SimplexOptions &opts) {
    const int m = (int)A0.rows();
    const int n = (int)A0.cols();
    if (b0.size() != m || c0.size() != n) throw std::invalid_argument("LP dimension mismatch");
    Eigen::MatrixXd A(m, n + m);
    Eigen::VectorXd b = b0;
    A.leftCols(n) = A0;
    A.rightCols(m).setIdentity();
    std::vector<double> flip(m, 1.0);
    for (int i = 0; i < m; i++) {
        if (b(i) < 0) {
            flip[i] = -1.0;
            A.row(i).head(n) *= -1.0;
            b(i) = -b(i);
        }
    }
    Revised rs(A, b, opts);
    rs.basis.resize(m);
    for (int i = 0; i < m; i++) rs.basis[i] = n + i;
    rs.refactor();

    LPResult res;
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n + m);
    c1.tail(m).setOnes();
    std::vector<char> allowed(n + m, 1);
    LPStatus st = rs.run(c1, allowed);
    res.iterations = rs.iters;
    if (st != LPStatus::Optimal) {
        res.status = st == LPStatus::Unbounded ? LPStatus::Infeasible : st;
        return res;
    }
    double infeas = 0;
    for (int i = 0; i < m; i++) {
        if (rs.basis[i] >= n) infeas += std::max(rs.xB(i), 0.0);
    }
    double bscale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (infeas > 1e-8 * bscale) {
        res.status = LPStatus::Infeasible;
        return res;
    }
    // Drive zero-level artificials out where possible; the rest sit on
    // redundant rows and are barred from re-entering.
    for (int i = 0; i < m; i++) {
        if (rs.basis[i] < n) continue;
        Eigen::RowVectorXd row = rs.Binv.row(i) * A.leftCols(n);
        int best = -1;
        for (int j = 0; j < n; j++) {
            bool basic = false;
            for (int t = 0; t < m; t++) basic |= rs.basis[t] == j;
            if (!basic && std::abs(row(j)) > 1e-7) {
                best = j;
                break;
            }
        }
        if (best >= 0) {
            Eigen::VectorXd u = rs.Binv * A.col(best);
            rs.pivot(i, best, u);
        }
    }
    for (int j = n; j < n + m; j++) allowed[j] = 0;
    Eigen::VectorXd c2 = Eigen::VectorXd::Zero(n + m);
    c2.head(n) = c0;
    rs.refactor();
    st = rs.run(c2, allowed);
    res.iterations = rs.iters;
    res.status = st;
    rs.refactor();
    res.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; i++) {
        if (rs.basis[i] < n) res.x(rs.basis[i]) = std::max(rs.xB(i), 0.0);
    }
    res.objective = c0.dot(res.x);
    Eigen::VectorXd cB(m);
    for (int i = 0; i < m; i++) cB(i) = c2(rs.basis[i]);
    Eigen::VectorXd y = (cB.transpose() * rs.Binv).transpose();
    for (int i = 0; i < m; i++) y(i) *= flip[i];
    res.y = y;
    return res;
}

}  // namespace magicsim
