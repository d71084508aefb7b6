#include "netscale/bounds.hpp"

#include <string>

namespace netscale {

namespace {

// Eigenvalues of a Gram-type matrix, symmetrized first for robustness.
Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig((M + M.transpose()) / 2.0);
    return eig.eigenvalues();
}

}  // namespace

ObservabilityGramian observability_gramian(const EdgeSystem& sys) {
    Gramian g = solve_lyapunov(sys.A.transpose(), sys.C.transpose() * sys.C);
    return ObservabilityGramian{std::move(g.X)};
}

BoundReport gramian_trace_bounds(const EdgeSystem& sys) {
    ObservabilityGramian obs = observability_gramian(sys);
    Eigen::VectorXd bbt = sym_eigenvalues(sys.B * sys.B.transpose());

    BoundReport report;
    report.components.bbt_min = bbt.minCoeff();
    report.components.bbt_max = bbt.maxCoeff();
    report.components.trace_P = obs.P.trace();
    report.value = (sys.B.transpose() * obs.P * sys.B).trace();
    report.lower = report.components.bbt_min * report.components.trace_P;
    report.upper = report.components.bbt_max * report.components.trace_P;
    return report;
}

RayleighBounds rayleigh_product_bounds(const Eigen::MatrixXd& M, const Eigen::MatrixXd& Z) {
    if (M.rows() != M.cols() || Z.rows() != M.rows())
        throw DimensionMismatch("need square M and Z with matching row count");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z);
    if (svd.singularValues().minCoeff() <= 1e-10 || Z.cols() > Z.rows())
        throw RankDeficientZ("Z has a nontrivial null space (smallest singular value " +
                             std::to_string(svd.singularValues().minCoeff()) + ")");

    Eigen::VectorXd m_eig = sym_eigenvalues(M);
    Eigen::VectorXd zz_eig = sym_eigenvalues(Z.transpose() * Z);
    Eigen::VectorXd zmz_eig = sym_eigenvalues(Z.transpose() * M * Z);

    RayleighBounds out;
    out.min_bound = m_eig.minCoeff() * zz_eig.minCoeff();
    out.max_bound = m_eig.maxCoeff() * zz_eig.maxCoeff();
    out.min_actual = zmz_eig.minCoeff();
    out.max_actual = zmz_eig.maxCoeff();
    return out;
}

BoundReport covariance_h2_bounds(const IncidenceDecomposition& inc, const CutBasis& cb,
                                 const ScaleWeightPair& sw, const Eigen::MatrixXd& Omega,
                                 const Eigen::MatrixXd& Gamma) {
    NoiseModel noise;
    noise.omega_factor = Omega;
    noise.gamma_factor = Gamma;
    EdgeSystem sys = edge_system(inc, cb, sw, noise, OutputMode::Sigma);
    ObservabilityGramian obs = observability_gramian(sys);

    Eigen::VectorXd inv_eps = sw.epsilon.cwiseInverse();
    Eigen::MatrixXd edge_lap = scaled_edge_laplacian(inc, sw);
    // Gram matrices of the two input channels: the process channel carries
    // E^{-1} D_tau, the measurement channel R^T L_es.
    Eigen::MatrixXd bt_gram =
        inc.D_tau.transpose() * inv_eps.cwiseProduct(inv_eps).asDiagonal() * inc.D_tau;
    Eigen::MatrixXd bc_gram = edge_lap * (cb.R * cb.R.transpose()) * edge_lap;

    Eigen::VectorXd q_eig = sym_eigenvalues(Omega * Omega.transpose());
    Eigen::VectorXd g_eig = sym_eigenvalues(Gamma * Gamma.transpose());
    Eigen::VectorXd bt_eig = sym_eigenvalues(bt_gram);
    Eigen::VectorXd bc_eig = sym_eigenvalues(bc_gram);
    Eigen::VectorXd bbt = sym_eigenvalues(sys.B * sys.B.transpose());

    BoundReport report;
    auto& c = report.components;
    c.omega_cov_min = q_eig.minCoeff();
    c.omega_cov_max = q_eig.maxCoeff();
    c.gamma_cov_min = g_eig.minCoeff();
    c.gamma_cov_max = g_eig.maxCoeff();
    c.bt_gram_min = bt_eig.minCoeff();
    c.bt_gram_max = bt_eig.maxCoeff();
    c.bc_gram_min = bc_eig.minCoeff();
    c.bc_gram_max = bc_eig.maxCoeff();
    c.bbt_min = bbt.minCoeff();
    c.bbt_max = bbt.maxCoeff();
    c.trace_P = obs.P.trace();

    report.value = h2_norm(sys).squared;
    report.lower =
        (c.omega_cov_min * c.bt_gram_min + c.gamma_cov_min * c.bc_gram_min) * c.trace_P;
    report.upper =
        (c.omega_cov_max * c.bt_gram_max + c.gamma_cov_max * c.bc_gram_max) * c.trace_P;
    return report;
}

}  // namespace netscale
