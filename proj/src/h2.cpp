#include "netscale/h2.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace netscale {

namespace {

constexpr int kKroneckerLimit = 32;  // state dimension above which Schur is used

void require_stable(const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> eig(A);
    double min_real = eig.eigenvalues().real().minCoeff();
    if (!(min_real > 0.0))
        throw UnstableA("A has an eigenvalue with real part " + std::to_string(min_real) +
                        "; -A must be Hurwitz");
}

Gramian finish(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q, Eigen::MatrixXd X) {
    X = ((X + X.transpose()) / 2.0).eval();
    double residual = (A * X + X * A.transpose() - Q).cwiseAbs().maxCoeff();
    if (!(residual < 1e-8))
        throw IllConditioned("Lyapunov residual " + std::to_string(residual) +
                             " exceeds 1e-8");
    return Gramian{std::move(X)};
}

Eigen::MatrixXd cut_gram_inverse(const CutBasis& cb, const ScaleWeightPair& sw) {
    Eigen::MatrixXd cut_gram = cb.R * sw.weights.asDiagonal() * cb.R.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(cut_gram);
    if (llt.info() != Eigen::Success)
        throw SingularCycleGram("R W R^T is not positive definite");
    return llt.solve(Eigen::MatrixXd::Identity(cut_gram.rows(), cut_gram.cols()));
}

}  // namespace

Gramian solve_lyapunov_kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
    const Eigen::Index d = A.rows();
    // (I (x) A + A (x) I) vec(X) = vec(Q) in column-major vec convention.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d * d, d * d);
    for (Eigen::Index j = 0; j < d; ++j)
        M.block(j * d, j * d, d, d) = A;
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index k = 0; k < d; ++k)
                M(i * d + k, j * d + k) += A(i, j);

    Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(Q.data(), d * d);
    Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(M).solve(q);
    Eigen::MatrixXd X = Eigen::Map<Eigen::MatrixXd>(x.data(), d, d);
    return finish(A, Q, std::move(X));
}

Gramian solve_lyapunov_schur(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
    const Eigen::Index d = A.rows();
    // Complex Schur form sidesteps the 2x2 real blocks: with A = U T U^H and
    // Y = U^H X U, the equation becomes T Y + Y T^H = U^H Q U, solved column
    // by column from the last (each column needs only the ones after it).
    Eigen::ComplexSchur<Eigen::MatrixXd> schur(A);
    if (schur.info() != Eigen::Success)
        throw IllConditioned("Schur decomposition failed");
    const Eigen::MatrixXcd& T = schur.matrixT();
    const Eigen::MatrixXcd& U = schur.matrixU();

    Eigen::MatrixXcd Y = U.adjoint() * Q.cast<std::complex<double>>() * U;
    for (Eigen::Index k = d - 1; k >= 0; --k) {
        for (Eigen::Index j = k + 1; j < d; ++j)
            Y.col(k) -= std::conj(T(k, j)) * Y.col(j);
        Eigen::MatrixXcd shifted = T;
        shifted.diagonal().array() += std::conj(T(k, k));
        Y.col(k) = shifted.triangularView<Eigen::Upper>().solve(Y.col(k).eval());
    }
    Eigen::MatrixXd X = (U * Y * U.adjoint()).real();
    return finish(A, Q, std::move(X));
}

Gramian solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
    if (A.rows() != A.cols() || Q.rows() != Q.cols() || A.rows() != Q.rows())
        throw DimensionMismatch("Lyapunov solve needs square A and Q of equal size");
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + Q.cwiseAbs().maxCoeff()))
        throw ValidationError("Q must be symmetric");
    require_stable(A);
    return (A.rows() <= kKroneckerLimit) ? solve_lyapunov_kron(A, Q)
                                         : solve_lyapunov_schur(A, Q);
}

H2Value h2_norm(const EdgeSystem& sys) {
    Gramian g = solve_lyapunov(sys.A, sys.B * sys.B.transpose());
    double squared = (sys.C * g.X * sys.C.transpose()).trace();
    return H2Value{std::sqrt(std::max(squared, 0.0)), squared};
}

Gramian closed_form_gramian(const IncidenceDecomposition& inc, const CutBasis& cb,
                            const ScaleWeightPair& sw, double sigma_omega,
                            double sigma_v) {
    Eigen::MatrixXd edge_lap = scaled_edge_laplacian(inc, sw);
    Eigen::MatrixXd X = 0.5 * (sigma_omega * sigma_omega * cut_gram_inverse(cb, sw) +
                               sigma_v * sigma_v * edge_lap);
    return Gramian{std::move(X)};
}

SeparatedH2 separated_h2(const IncidenceDecomposition& inc, const CutBasis& cb,
                         const ScaleWeightPair& sw, double sigma_omega,
                         double sigma_v, OutputMode mode) {
    Eigen::MatrixXd edge_lap = scaled_edge_laplacian(inc, sw);
    Eigen::MatrixXd inv_gram = cut_gram_inverse(cb, sw);

    SeparatedH2 out;
    if (mode == OutputMode::SigmaHat) {
        out.term_W = 0.5 * sigma_omega * sigma_omega * inv_gram.trace();
        out.term_E = 0.5 * sigma_v * sigma_v * edge_lap.trace();
    } else {
        Eigen::MatrixXd rrt = cb.R * cb.R.transpose();
        out.term_W = 0.5 * sigma_omega * sigma_omega * (inv_gram * rrt).trace();
        out.term_E = 0.5 * sigma_v * sigma_v * (edge_lap * rrt).trace();
    }
    return out;
}

CycleContributions cycle_contributions(const IncidenceDecomposition& inc,
                                       const CutBasis& cb, const ScaleWeightPair& sw,
                                       double sigma_omega, double sigma_v) {
    const Eigen::MatrixXd& T = cb.cycle_in_tree;
    CycleContributions out;
    if (T.cols() == 0) return out;

    Eigen::MatrixXd edge_lap = scaled_edge_laplacian(inc, sw);
    Eigen::MatrixXd inv_gram = cut_gram_inverse(cb, sw);
    out.cycle_W = 0.5 * sigma_omega * sigma_omega * (T.transpose() * inv_gram * T).trace();
    out.cycle_E = 0.5 * sigma_v * sigma_v * (T.transpose() * edge_lap * T).trace();
    return out;
}

double tree_h2_closed_form(const Graph& g, const ScaleWeightPair& sw,
                           double sigma_omega, double sigma_v) {
    if (g.m() != g.n - 1)
        throw NotATree("graph has " + std::to_string(g.m()) + " edges on " +
                       std::to_string(g.n) + " nodes; a tree needs " +
                       std::to_string(g.n - 1));
    double inv_weight_sum = sw.weights.cwiseInverse().sum();
    double scale_sum = 0.0;
    std::vector<int> deg = degrees(g);
    for (int i = 0; i < g.n; ++i)
        scale_sum += deg[static_cast<size_t>(i)] / sw.epsilon(i);
    return 0.5 * (sigma_omega * sigma_omega * inv_weight_sum +
                  sigma_v * sigma_v * scale_sum);
}

double k_ratio(const IncidenceDecomposition& inc, const CutBasis& cb,
               const ScaleWeightPair& sw, double sigma_v) {
    SeparatedH2 tree_view = separated_h2(inc, cb, sw, 1.0, sigma_v, OutputMode::SigmaHat);
    SeparatedH2 full_view = separated_h2(inc, cb, sw, 1.0, sigma_v, OutputMode::Sigma);
    return tree_view.term_E / full_view.term_E;
}

H2Report analyze(const IncidenceDecomposition& inc, const CutBasis& cb,
                 const ScaleWeightPair& sw, double sigma_omega, double sigma_v) {
    SeparatedH2 sigma = separated_h2(inc, cb, sw, sigma_omega, sigma_v, OutputMode::Sigma);
    SeparatedH2 hat = separated_h2(inc, cb, sw, sigma_omega, sigma_v, OutputMode::SigmaHat);
    CycleContributions cyc = cycle_contributions(inc, cb, sw, sigma_omega, sigma_v);

    H2Report report;
    report.term_W = sigma.term_W;
    report.term_E = sigma.term_E;
    report.h2_sigma = sigma.term_W + sigma.term_E;
    report.h2_sigma_hat = hat.term_W + hat.term_E;
    report.cycle_term_W = cyc.cycle_W;
    report.cycle_term_E = cyc.cycle_E;
    report.k_ratio = hat.term_E / sigma.term_E;
    return report;
}

}  // namespace netscale
