#include "fairpath/qp_solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fairpath/errors.hpp"

namespace fairpath {

KktResiduals kkt_residuals(const QpProblem& problem, const QpSolution& solution) {
    KktResiduals res;
    const Eigen::VectorXd& x = solution.x;

    Eigen::VectorXd grad = problem.Q * x + problem.b;
    if (problem.eq_lhs.rows() > 0) {
        Eigen::VectorXd eq_res = problem.eq_lhs * x - problem.eq_rhs;
        res.primal = eq_res.cwiseAbs().maxCoeff();
        grad += problem.eq_lhs.transpose() * solution.eq_duals;
    }
    if (problem.ineq_lhs.rows() > 0) {
        Eigen::VectorXd slack = problem.ineq_lhs * x - problem.ineq_rhs;  // <= 0 when feasible
        res.primal = std::max(res.primal, slack.maxCoeff());
        res.complementarity = slack.cwiseProduct(solution.ineq_duals).cwiseAbs().maxCoeff();
        res.dual = std::max(0.0, -solution.ineq_duals.minCoeff());
        grad += problem.ineq_lhs.transpose() * solution.ineq_duals;
    }
    res.stationarity = grad.size() > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;
    return res;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Zeroes d[iq..n) into d[iq-1]'s running norm with Givens rotations (applied
// to J's columns as well), then installs d's head as column iq of R. Returns
// false when the new normal is linearly dependent on the active set.
bool add_constraint(Eigen::MatrixXd& R, Eigen::MatrixXd& J, Eigen::VectorXd& d, int& iq,
                    double& r_norm) {
    const int n = static_cast<int>(d.size());
    for (int j = n - 1; j >= iq + 1; --j) {
        double cc = d[j - 1];
        double ss = d[j];
        double h = std::hypot(cc, ss);
        if (std::abs(h) < kEps) continue;
        d[j] = 0.0;
        ss /= h;
        cc /= h;
        if (cc < 0.0) {
            cc = -cc;
            ss = -ss;
            d[j - 1] = -h;
        } else {
            d[j - 1] = h;
        }
        double xny = ss / (1.0 + cc);
        for (int k = 0; k < n; ++k) {
            double t1 = J(k, j - 1);
            double t2 = J(k, j);
            J(k, j - 1) = t1 * cc + t2 * ss;
            J(k, j) = xny * (t1 + J(k, j - 1)) - t2;
        }
    }
    ++iq;
    R.col(iq - 1).head(iq) = d.head(iq);
    if (std::abs(d[iq - 1]) <= kEps * r_norm) return false;
    r_norm = std::max(r_norm, std::abs(d[iq - 1]));
    return true;
}

// Removes inequality constraint `l` from the active set, restoring R to
// upper-triangular form with Givens rotations. Equality slots (< p) are
// never removed.
void delete_constraint(Eigen::MatrixXd& R, Eigen::MatrixXd& J, Eigen::VectorXi& A,
                       Eigen::VectorXd& u, int n, int p, int& iq, int l) {
    int qq = -1;
    for (int i = p; i < iq; ++i)
        if (A[i] == l) {
            qq = i;
            break;
        }
    for (int i = qq; i < iq - 1; ++i) {
        A[i] = A[i + 1];
        u[i] = u[i + 1];
        R.col(i) = R.col(i + 1);
    }
    A[iq - 1] = A[iq];
    u[iq - 1] = u[iq];
    A[iq] = 0;
    u[iq] = 0.0;
    for (int j = 0; j < iq; ++j) R(j, iq - 1) = 0.0;
    --iq;
    if (iq == 0) return;

    for (int j = qq; j < iq; ++j) {
        double cc = R(j, j);
        double ss = R(j + 1, j);
        double h = std::hypot(cc, ss);
        if (std::abs(h) < kEps) continue;
        cc /= h;
        ss /= h;
        R(j + 1, j) = 0.0;
        if (cc < 0.0) {
            R(j, j) = -h;
            cc = -cc;
            ss = -ss;
        } else {
            R(j, j) = h;
        }
        double xny = ss / (1.0 + cc);
        for (int k = j + 1; k < iq; ++k) {
            double t1 = R(j, k);
            double t2 = R(j + 1, k);
            R(j, k) = t1 * cc + t2 * ss;
            R(j + 1, k) = xny * (t1 + R(j, k)) - t2;
        }
        for (int k = 0; k < n; ++k) {
            double t1 = J(k, j);
            double t2 = J(k, j + 1);
            J(k, j) = t1 * cc + t2 * ss;
            J(k, j + 1) = xny * (J(k, j) + t1) - t2;
        }
    }
}

}  // namespace

QpSolution solve_qp(const QpProblem& problem, const QpOptions& options) {
    const int n = static_cast<int>(problem.Q.cols());
    const int p = static_cast<int>(problem.eq_lhs.rows());
    const int m = static_cast<int>(problem.ineq_lhs.rows());
    if (problem.Q.rows() != n || problem.b.size() != n ||
        (p > 0 && problem.eq_lhs.cols() != n) || problem.eq_rhs.size() != p ||
        (m > 0 && problem.ineq_lhs.cols() != n) || problem.ineq_rhs.size() != m)
        throw SolverFailure("inconsistent problem dimensions");

    // Internal Goldfarb-Idnani convention: CE' x + ce0 = 0, CI' x + ci0 >= 0.
    Eigen::MatrixXd CE = problem.eq_lhs.transpose();
    Eigen::VectorXd ce0 = -problem.eq_rhs;
    Eigen::MatrixXd CI = -problem.ineq_lhs.transpose();
    Eigen::VectorXd ci0 = problem.ineq_rhs;

    double c1 = problem.Q.trace();
    Eigen::LLT<Eigen::MatrixXd> llt(problem.Q);
    if (llt.info() != Eigen::Success)
        throw SolverFailure("objective matrix is not positive definite");
    // J = L^-T, so J J' = Q^-1; c1 * c2 estimates cond(Q).
    Eigen::MatrixXd J = llt.matrixU().solve(Eigen::MatrixXd::Identity(n, n));
    double c2 = J.trace();

    // Unconstrained minimizer: the dual-feasible starting point.
    Eigen::VectorXd x = llt.solve(-problem.b);

    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
    double r_norm = 1.0;
    const double inf = std::numeric_limits<double>::infinity();

    Eigen::VectorXd s(std::max(m, 1)), z(n), d(n), np(n), x_old(n);
    Eigen::VectorXd r(m + p + 1), u(m + p + 1), u_old(m + p + 1);
    Eigen::VectorXi A(m + p + 1), A_old(m + p + 1), iai(std::max(m, 1));
    std::vector<bool> iaexcl(m, true);
    int iq = 0;
    int iter = 0;
    int ip = -1;

    auto spend_iteration = [&] {
        if (++iter <= options.max_iterations) return;
        double worst = 0.0;
        for (int i = 0; i < m; ++i)
            worst = std::min(worst, CI.col(i).dot(x) + ci0[i]);
        std::ostringstream msg;
        msg << "iteration budget (" << options.max_iterations
            << ") exhausted; worst constraint violation " << -worst;
        throw SolverFailure(msg.str());
    };
    auto step_direction = [&] {
        d.noalias() = J.transpose() * np;
        z.setZero();
        if (iq < n) z.noalias() = J.rightCols(n - iq) * d.tail(n - iq);
        for (int i = iq - 1; i >= 0; --i) {
            double sum = 0.0;
            for (int j = i + 1; j < iq; ++j) sum += R(i, j) * r[j];
            r[i] = (d[i] - sum) / R(i, i);
        }
    };

    // Phase 1: equality constraints enter the active set for good.
    for (int i = 0; i < p; ++i) {
        np = CE.col(i);
        step_direction();
        double t2 = 0.0;
        if (z.squaredNorm() > kEps) t2 = (-np.dot(x) - ce0[i]) / z.dot(np);
        x += t2 * z;
        u[iq] = t2;
        u.head(iq) -= t2 * r.head(iq);
        A[iq] = -i - 1;
        if (!add_constraint(R, J, d, iq, r_norm))
            throw SolverFailure("equality constraints are linearly dependent");
    }
    for (int i = 0; i < m; ++i) iai[i] = i;

l1:  // Phase 2: pick the most violated inequality.
    spend_iteration();
    for (int i = p; i < iq; ++i) iai[A[i]] = -1;

    {
        double psi = 0.0;
        for (int i = 0; i < m; ++i) {
            iaexcl[i] = true;
            s[i] = CI.col(i).dot(x) + ci0[i];
            psi += std::min(0.0, s[i]);
        }
        if (std::abs(psi) <= m * kEps * c1 * c2 * 100.0) goto done;
    }
    u_old.head(iq) = u.head(iq);
    A_old.head(iq) = A.head(iq);
    x_old = x;

l2:
    {
        double ss = 0.0;
        ip = -1;
        for (int i = 0; i < m; ++i)
            if (s[i] < ss && iai[i] != -1 && iaexcl[i]) {
                ss = s[i];
                ip = i;
            }
        if (ip < 0) goto done;
    }
    np = CI.col(ip);
    u[iq] = 0.0;
    A[iq] = ip;

l2a:  // Step toward constraint ip, dropping blocking constraints as needed.
    spend_iteration();
    step_direction();
    {
        double t1 = inf;  // max dual step before an active inequality's dual hits 0
        int l = -1;
        for (int k = p; k < iq; ++k)
            if (r[k] > 0.0 && u[k] / r[k] < t1) {
                t1 = u[k] / r[k];
                l = A[k];
            }
        double t2 = inf;  // primal step making constraint ip feasible
        if (z.squaredNorm() > kEps) t2 = -s[ip] / z.dot(np);
        double t = std::min(t1, t2);
        if (t >= inf) throw SolverFailure("problem is infeasible (unbounded dual step)");

        if (t2 >= inf) {
            // Dual-space step only: constraint l leaves the active set.
            u.head(iq) -= t * r.head(iq);
            u[iq] += t;
            iai[l] = l;
            delete_constraint(R, J, A, u, n, p, iq, l);
            goto l2a;
        }

        x += t * z;
        u.head(iq) -= t * r.head(iq);
        u[iq] += t;
        if (std::abs(t - t2) < kEps) {
            if (!add_constraint(R, J, d, iq, r_norm)) {
                // Degenerate normal: exclude ip this round and restore the
                // last consistent active set.
                iaexcl[ip] = false;
                delete_constraint(R, J, A, u, n, p, iq, ip);
                for (int i = 0; i < m; ++i) iai[i] = i;
                for (int i = p; i < iq; ++i) {
                    A[i] = A_old[i];
                    u[i] = u_old[i];
                    iai[A[i]] = -1;
                }
                x = x_old;
                goto l2;
            }
            iai[ip] = -1;
            goto l1;
        }
        // Partial step: drop the blocking constraint and keep pushing.
        iai[l] = l;
        delete_constraint(R, J, A, u, n, p, iq, l);
        s[ip] = CI.col(ip).dot(x) + ci0[ip];
    }
    goto l2a;

done:
    QpSolution solution;
    solution.x = x;
    solution.objective = 0.5 * x.dot(problem.Q * x) + problem.b.dot(x);
    solution.eq_duals = Eigen::VectorXd::Zero(p);
    solution.ineq_duals = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < iq; ++i) {
        if (A[i] < 0)
            solution.eq_duals[-A[i] - 1] = -u[i];
        else
            solution.ineq_duals[A[i]] = u[i];
    }
    solution.iterations = iter;
    return solution;
}

}  // namespace fairpath
