#pragma once

#include <Eigen/Dense>

#include "netscale/operators.hpp"

namespace netscale {

// All "performance" values in this module are squared H2 norms (steady-state
// output variance under unit-intensity white noise); h2_norm reports the
// square root alongside.

/// Controllability Gramian: symmetric positive definite solution of
/// A X + X A^T = B B^T.
struct Gramian {
    Eigen::MatrixXd X;
};

/// Solves A X + X A^T = Q for symmetric Q and -A Hurwitz. Routed to a
/// vectorized Kronecker solve for small systems and a Schur (Bartels-Stewart)
/// solve for larger ones; the result is symmetrized and residual-checked.
/// Throws UnstableA, IllConditioned.
Gramian solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

/// Forced routing, exposed so the two backends can be checked against each
/// other.
Gramian solve_lyapunov_kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);
Gramian solve_lyapunov_schur(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

struct H2Value {
    double norm = 0.0;
    double squared = 0.0;
};

/// H2 norm of the edge system via the Lyapunov route:
/// squared = tr(C X C^T) with X = solve_lyapunov(A, B B^T).
H2Value h2_norm(const EdgeSystem& sys);

/// Separable-noise Gramian in closed form:
/// X = (sigma_omega^2 (R W R^T)^{-1} + sigma_v^2 L_es) / 2.
Gramian closed_form_gramian(const IncidenceDecomposition& inc, const CutBasis& cb,
                            const ScaleWeightPair& sw, double sigma_omega,
                            double sigma_v);

/// Weight and time-scale contributions to the squared H2 norm in the
/// separable case; term_W + term_E equals h2_norm(...).squared.
struct SeparatedH2 {
    double term_W = 0.0;
    double term_E = 0.0;
};

SeparatedH2 separated_h2(const IncidenceDecomposition& inc, const CutBasis& cb,
                         const ScaleWeightPair& sw, double sigma_omega,
                         double sigma_v, OutputMode mode);

/// The cycle states' share of each term: the Sigma-mode term equals the
/// SigmaHat-mode term plus these. Zero on trees, nonnegative always.
struct CycleContributions {
    double cycle_W = 0.0;
    double cycle_E = 0.0;
};

CycleContributions cycle_contributions(const IncidenceDecomposition& inc,
                                       const CutBasis& cb, const ScaleWeightPair& sw,
                                       double sigma_omega, double sigma_v);

/// Squared H2 norm of a tree network without any matrix solve:
/// (sigma_omega^2 sum 1/w_k + sigma_v^2 sum deg(i)/eps_i) / 2.
/// Throws NotATree on graphs with cycles.
double tree_h2_closed_form(const Graph& g, const ScaleWeightPair& sw,
                           double sigma_omega, double sigma_v);

/// Fraction of the time-scale term visible from the spanning-tree states
/// alone; 1 on trees, in (0, 1] always.
double k_ratio(const IncidenceDecomposition& inc, const CutBasis& cb,
               const ScaleWeightPair& sw, double sigma_v);

/// Full separable-noise report. Values are squared-norm units.
struct H2Report {
    double h2_sigma = 0.0;
    double h2_sigma_hat = 0.0;
    double term_W = 0.0;        // Sigma-mode weight term
    double term_E = 0.0;        // Sigma-mode time-scale term
    double cycle_term_W = 0.0;
    double cycle_term_E = 0.0;
    double k_ratio = 0.0;
};

H2Report analyze(const IncidenceDecomposition& inc, const CutBasis& cb,
                 const ScaleWeightPair& sw, double sigma_omega, double sigma_v);

}  // namespace netscale
