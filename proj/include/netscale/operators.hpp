#pragma once

#include <Eigen/Dense>
#include <optional>

#include "netscale/graph.hpp"

namespace netscale {

/// Per-node time scales (diagonal of E) and per-edge weights (diagonal of W,
/// indexed by the edge ordering). All entries must be strictly positive; a
/// zero or negative entry produces an unstable edge system and is rejected
/// downstream.
struct ScaleWeightPair {
    Eigen::VectorXd epsilon;  // size n
    Eigen::VectorXd weights;  // size m
};

/// Validating constructor; throws ValidationError on nonpositive entries.
ScaleWeightPair make_scale_weight(Eigen::VectorXd epsilon, Eigen::VectorXd weights);

/// Process/measurement noise description. Without explicit factors the model
/// is "separable": Omega = sigma_omega * E^{1/2} and Gamma = sigma_v * W^{1/2},
/// materialized on demand. Explicit factors (covariance = factor * factor^T)
/// override the separable construction, in which case the sigmas are unused.
struct NoiseModel {
    double sigma_omega = 1.0;
    double sigma_v = 1.0;
    std::optional<Eigen::MatrixXd> omega_factor;  // n x n
    std::optional<Eigen::MatrixXd> gamma_factor;  // m x m

    bool separable() const { return !omega_factor && !gamma_factor; }
    Eigen::MatrixXd omega(const ScaleWeightPair& sw) const;
    Eigen::MatrixXd gamma(const ScaleWeightPair& sw) const;
};

/// L_w = D W D^T. Symmetric PSD, zero row sums.
Eigen::MatrixXd weighted_laplacian(const IncidenceDecomposition& inc,
                                   const ScaleWeightPair& sw);

/// Edge Laplacian of the spanning tree, scaled by the time-scale inverses:
/// D_tau^T E^{-1} D_tau. Symmetric positive definite; the diagonal entry for
/// edge (i, j) is 1/eps_i + 1/eps_j.
Eigen::MatrixXd scaled_edge_laplacian(const IncidenceDecomposition& inc,
                                      const ScaleWeightPair& sw);

/// Change of coordinates that block-diagonalizes E^{-1} L_w into the tree-edge
/// dynamics plus an isolated zero (consensus) eigenvalue.
struct SimilarityPair {
    Eigen::MatrixXd S_v;      // n x n
    Eigen::MatrixXd S_v_inv;  // n x n
};

SimilarityPair similarity_transform(const IncidenceDecomposition& inc,
                                    const CutBasis& cb, const ScaleWeightPair& sw);

/// Which output the edge system exposes: Sigma sees every edge difference
/// (z = R^T x_tau, cycle states included), SigmaHat sees only the spanning
/// tree states (z = x_tau).
enum class OutputMode { Sigma, SigmaHat };

/// State-space triple of the tree-edge dynamics
///   xdot = -A x + B [what; vhat],  z = C x,
/// with A = (D_tau^T E^{-1} D_tau)(R W R^T) and
/// B = [D_tau^T E^{-1} Omega  -(D_tau^T E^{-1} D_tau) R Gamma].
struct EdgeSystem {
    Eigen::MatrixXd A;  // (n-1) x (n-1), all eigenvalues strictly positive
    Eigen::MatrixXd B;  // (n-1) x (n+m)
    Eigen::MatrixXd C;  // m x (n-1) for Sigma, identity for SigmaHat
    OutputMode mode = OutputMode::Sigma;
};

/// Assembles the edge system. Throws UnstablePair when A has a nonpositive
/// eigenvalue (which signals invalid epsilon or weights), DimensionMismatch
/// on inconsistent inputs.
EdgeSystem edge_system(const IncidenceDecomposition& inc, const CutBasis& cb,
                       const ScaleWeightPair& sw, const NoiseModel& noise,
                       OutputMode mode);

/// Eigenvalues of A = L_es * (R W R^T), which are real and positive for valid
/// inputs (A is similar to a symmetric positive definite matrix). Ascending.
Eigen::VectorXd edge_dynamics_spectrum(const Eigen::MatrixXd& edge_lap,
                                       const Eigen::MatrixXd& cut_gram);

}  // namespace netscale
