#include "netscale/operators.hpp"

#include <string>

namespace netscale {

namespace {

void check_positive(const Eigen::VectorXd& v, const char* what) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!(v(i) > 0.0))
            throw ValidationError(std::string(what) + "[" + std::to_string(i + 1) +
                                  "] = " + std::to_string(v(i)) + " must be positive");
}

void check_dims(const IncidenceDecomposition& inc, const ScaleWeightPair& sw) {
    if (sw.epsilon.size() != inc.D.rows())
        throw DimensionMismatch("epsilon has " + std::to_string(sw.epsilon.size()) +
                                " entries for " + std::to_string(inc.D.rows()) + " nodes");
    if (sw.weights.size() != inc.D.cols())
        throw DimensionMismatch("weights has " + std::to_string(sw.weights.size()) +
                                " entries for " + std::to_string(inc.D.cols()) + " edges");
}

}  // namespace

ScaleWeightPair make_scale_weight(Eigen::VectorXd epsilon, Eigen::VectorXd weights) {
    check_positive(epsilon, "epsilon");
    check_positive(weights, "weight");
    return ScaleWeightPair{std::move(epsilon), std::move(weights)};
}

Eigen::MatrixXd NoiseModel::omega(const ScaleWeightPair& sw) const {
    if (omega_factor) return *omega_factor;
    return (sigma_omega * sw.epsilon.array().sqrt()).matrix().asDiagonal();
}

Eigen::MatrixXd NoiseModel::gamma(const ScaleWeightPair& sw) const {
    if (gamma_factor) return *gamma_factor;
    return (sigma_v * sw.weights.array().sqrt()).matrix().asDiagonal();
}

Eigen::MatrixXd weighted_laplacian(const IncidenceDecomposition& inc,
                                   const ScaleWeightPair& sw) {
    check_dims(inc, sw);
    return inc.D * sw.weights.asDiagonal() * inc.D.transpose();
}

Eigen::MatrixXd scaled_edge_laplacian(const IncidenceDecomposition& inc,
                                      const ScaleWeightPair& sw) {
    check_dims(inc, sw);
    Eigen::VectorXd inv_eps = sw.epsilon.cwiseInverse();
    return inc.D_tau.transpose() * inv_eps.asDiagonal() * inc.D_tau;
}

SimilarityPair similarity_transform(const IncidenceDecomposition& inc,
                                    const CutBasis& cb, const ScaleWeightPair& sw) {
    check_dims(inc, sw);
    const Eigen::Index n = inc.D.rows();
    const Eigen::Index t = inc.D_tau.cols();

    Eigen::VectorXd inv_eps = sw.epsilon.cwiseInverse();
    Eigen::MatrixXd edge_lap = inc.D_tau.transpose() * inv_eps.asDiagonal() * inc.D_tau;
    Eigen::LLT<Eigen::MatrixXd> llt(edge_lap);
    if (llt.info() != Eigen::Success)
        throw SingularTreeGram("scaled edge Laplacian is not positive definite");

    SimilarityPair sim;
    sim.S_v.resize(n, n);
    sim.S_v.leftCols(t) =
        inv_eps.asDiagonal() * inc.D_tau * llt.solve(Eigen::MatrixXd::Identity(t, t));
    sim.S_v.col(t).setOnes();

    sim.S_v_inv.resize(n, n);
    sim.S_v_inv.topRows(t) = inc.D_tau.transpose();
    sim.S_v_inv.row(t) = sw.epsilon.transpose() / sw.epsilon.sum();

    double residual =
        (sim.S_v * sim.S_v_inv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (residual > 1e-8)
        throw IllConditioned("similarity pair inverse residual " + std::to_string(residual));
    (void)cb;
    return sim;
}

Eigen::VectorXd edge_dynamics_spectrum(const Eigen::MatrixXd& edge_lap,
                                       const Eigen::MatrixXd& cut_gram) {
    // L_es * G with both factors SPD is similar to chol(G)^T L_es chol(G).
    Eigen::LLT<Eigen::MatrixXd> llt(cut_gram);
    if (llt.info() != Eigen::Success)
        throw SingularCycleGram("cut-space Gram matrix is not positive definite");
    Eigen::MatrixXd l = llt.matrixL();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l.transpose() * edge_lap * l);
    return eig.eigenvalues();
}

EdgeSystem edge_system(const IncidenceDecomposition& inc, const CutBasis& cb,
                       const ScaleWeightPair& sw, const NoiseModel& noise,
                       OutputMode mode) {
    check_dims(inc, sw);
    const Eigen::Index n = inc.D.rows();
    const Eigen::Index m = inc.D.cols();
    const Eigen::Index t = inc.D_tau.cols();

    Eigen::MatrixXd omega = noise.omega(sw);
    Eigen::MatrixXd gamma = noise.gamma(sw);
    if (omega.rows() != n || omega.cols() != n)
        throw DimensionMismatch("omega factor must be " + std::to_string(n) + "x" +
                                std::to_string(n));
    if (gamma.rows() != m || gamma.cols() != m)
        throw DimensionMismatch("gamma factor must be " + std::to_string(m) + "x" +
                                std::to_string(m));

    Eigen::VectorXd inv_eps = sw.epsilon.cwiseInverse();
    Eigen::MatrixXd edge_lap = inc.D_tau.transpose() * inv_eps.asDiagonal() * inc.D_tau;
    Eigen::MatrixXd cut_gram = cb.R * sw.weights.asDiagonal() * cb.R.transpose();

    EdgeSystem sys;
    sys.mode = mode;
    sys.A = edge_lap * cut_gram;

    // Works for invalid (indefinite) inputs too, unlike the SPD fast path.
    Eigen::EigenSolver<Eigen::MatrixXd> eig(sys.A);
    double min_real = eig.eigenvalues().real().minCoeff();
    if (!(min_real > 0.0))
        throw UnstablePair("edge dynamics have an eigenvalue with real part " +
                           std::to_string(min_real) +
                           "; check that epsilon and weights are positive");
    sys.B.resize(t, n + m);
    sys.B.leftCols(n) = inc.D_tau.transpose() * inv_eps.asDiagonal() * omega;
    sys.B.rightCols(m) = -edge_lap * cb.R * gamma;
    sys.C = (mode == OutputMode::Sigma)
                ? Eigen::MatrixXd(cb.R.transpose())
                : Eigen::MatrixXd(Eigen::MatrixXd::Identity(t, t));
    return sys;
}

}  // namespace netscale
