#ifndef FAIRPATH_QP_SOLVER_HPP
#define FAIRPATH_QP_SOLVER_HPP

#include <Eigen/Dense>

namespace fairpath {

/// Default iteration budget; overridable per solve via QpOptions (the CLI
/// maps FAIRPATH_SOLVER_ITERS onto it).
inline constexpr int kDefaultSolverIterations = 10000;

/// minimize 0.5 x'Qx + b'x  subject to  eq_lhs x = eq_rhs, ineq_lhs x <= ineq_rhs.
/// Q must be symmetric positive definite.
struct QpProblem {
    Eigen::MatrixXd Q;
    Eigen::VectorXd b;
    Eigen::MatrixXd eq_lhs;    // p x n
    Eigen::VectorXd eq_rhs;    // p
    Eigen::MatrixXd ineq_lhs;  // m x n
    Eigen::VectorXd ineq_rhs;  // m
};

struct QpOptions {
    int max_iterations = kDefaultSolverIterations;
};

/// Multipliers follow the Lagrangian
///   0.5 x'Qx + b'x + eq_duals'(eq_lhs x - eq_rhs) + ineq_duals'(ineq_lhs x - ineq_rhs)
/// so stationarity reads Qx + b + eq_lhs' eq_duals + ineq_lhs' ineq_duals = 0
/// with ineq_duals >= 0.
struct QpSolution {
    Eigen::VectorXd x;
    double objective = 0.0;  // 0.5 x'Qx + b'x at x
    Eigen::VectorXd eq_duals;
    Eigen::VectorXd ineq_duals;
    int iterations = 0;
};

/// Worst-case KKT violations of a candidate solution, for verification.
struct KktResiduals {
    double primal = 0.0;           // max equality residual / inequality violation
    double stationarity = 0.0;     // inf-norm of the gradient of the Lagrangian
    double complementarity = 0.0;  // max |dual * slack| over inequalities
    double dual = 0.0;             // largest negative inequality dual, as a magnitude
};

KktResiduals kkt_residuals(const QpProblem& problem, const QpSolution& solution);

/// Dual active-set method of Goldfarb and Idnani. Starts from the
/// unconstrained minimizer, adds equality constraints permanently, then
/// repeatedly steps toward the most violated inequality, maintaining a QR
/// factorization of the active-set normals updated by Givens rotations.
/// Deterministic: identical inputs take identical pivot sequences.
/// Throws SolverFailure if Q is not positive definite, the equality rows are
/// linearly dependent, or the iteration budget runs out.
QpSolution solve_qp(const QpProblem& problem, const QpOptions& options = {});

}  // namespace fairpath

#endif
