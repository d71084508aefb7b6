#pragma once

#include <Eigen/Dense>

#include "netscale/h2.hpp"
#include "netscale/operators.hpp"

namespace netscale {

/// Observability Gramian: solution of A^T P + P A = C^T C.
struct ObservabilityGramian {
    Eigen::MatrixXd P;
};

ObservabilityGramian observability_gramian(const EdgeSystem& sys);

/// Bracket lower <= value <= upper plus the spectral quantities it was built
/// from. gramian_trace_bounds fills only the input-Gram entries; the
/// covariance entries are populated by covariance_h2_bounds.
struct BoundReport {
    double lower = 0.0;
    double value = 0.0;
    double upper = 0.0;
    struct Components {
        double omega_cov_min = 0.0, omega_cov_max = 0.0;  // eigenvalues of Omega Omega^T
        double gamma_cov_min = 0.0, gamma_cov_max = 0.0;  // eigenvalues of Gamma Gamma^T
        double bt_gram_min = 0.0, bt_gram_max = 0.0;      // process input Gram
        double bc_gram_min = 0.0, bc_gram_max = 0.0;      // measurement input Gram
        double bbt_min = 0.0, bbt_max = 0.0;              // eigenvalues of B B^T
        double trace_P = 0.0;
    } components;
};

/// lambda_min(B B^T) tr(P) <= tr(B^T P B) <= lambda_max(B B^T) tr(P),
/// with value = tr(B^T P B), the squared H2 norm.
BoundReport gramian_trace_bounds(const EdgeSystem& sys);

/// Extreme-eigenvalue bounds for the congruence Z^T M Z with Hermitian M and
/// Z of trivial null space:
///   lambda_min(M) lambda_min(Z^T Z) <= lambda(Z^T M Z)
///                                   <= lambda_max(M) lambda_max(Z^T Z).
/// Throws RankDeficientZ when the smallest singular value of Z is below 1e-10.
struct RayleighBounds {
    double min_bound = 0.0;
    double min_actual = 0.0;
    double max_actual = 0.0;
    double max_bound = 0.0;
};

RayleighBounds rayleigh_product_bounds(const Eigen::MatrixXd& M, const Eigen::MatrixXd& Z);

/// Covariance-factor bracket on the squared H2 norm (Sigma output):
///   [min(QQ) min(Gt) + min(GG) min(Gc)] tr(P) <= H2^2 <= (max analogue),
/// where Gt = D_tau^T E^{-2} D_tau and Gc = L_es R R^T L_es are the Gram
/// matrices of the two input channels. value comes from the Lyapunov route.
BoundReport covariance_h2_bounds(const IncidenceDecomposition& inc, const CutBasis& cb,
                                 const ScaleWeightPair& sw, const Eigen::MatrixXd& Omega,
                                 const Eigen::MatrixXd& Gamma);

}  // namespace netscale
