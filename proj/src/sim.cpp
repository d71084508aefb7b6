#include "netscale/sim.hpp"

#include <cmath>
#include <random>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "netscale/h2.hpp"

namespace netscale {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
    return std::mt19937_64(
        splitmix64(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1)));
}

void check_config(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw ValidationError("dt must be positive");
    if (!(cfg.burn_in >= 0.0) || !(cfg.burn_in < cfg.horizon))
        throw ValidationError("need 0 <= burn_in < horizon");
    if (cfg.trials < 1) throw ValidationError("trials must be at least 1");
}

struct StepCounts {
    long total = 0;
    long burn = 0;
};

StepCounts step_counts(const SimConfig& cfg) {
    StepCounts s;
    s.total = std::lround(cfg.horizon / cfg.dt);
    s.burn = std::lround(cfg.burn_in / cfg.dt);
    return s;
}

// One-step propagators precomputed per system, shared read-only by trials.
struct EdgeStepper {
    Eigen::MatrixXd drift;       // EM: I - dt A; exact: exp(-A dt)
    Eigen::MatrixXd noise_gain;  // EM: sqrt(dt) B; exact: stationary-consistent factor
    const Eigen::MatrixXd* output = nullptr;
    Eigen::Index state_dim = 0;
    Eigen::Index noise_dim = 0;
};

EdgeStepper make_edge_stepper(const EdgeSystem& sys, const SimConfig& cfg) {
    const Eigen::Index t = sys.A.rows();
    EdgeStepper st;
    st.output = &sys.C;
    st.state_dim = t;
    if (cfg.exact_discretization) {
        st.drift = (-sys.A * cfg.dt).exp();
        // Step covariance consistent with the stationary Gramian:
        // Qd = X - F X F^T, sampled through its symmetric square root.
        Eigen::MatrixXd X = solve_lyapunov(sys.A, sys.B * sys.B.transpose()).X;
        Eigen::MatrixXd Qd = X - st.drift * X * st.drift.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig((Qd + Qd.transpose()) / 2.0);
        st.noise_gain = eig.eigenvectors() *
                        eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                        eig.eigenvectors().transpose();
        st.noise_dim = t;
    } else {
        double dt_max = max_stable_step(sys);
        if (cfg.dt >= dt_max)
            throw UnstableStep("dt = " + std::to_string(cfg.dt) +
                               " is unstable; largest stable step is " +
                               std::to_string(dt_max));
        st.drift = Eigen::MatrixXd::Identity(t, t) - cfg.dt * sys.A;
        st.noise_gain = std::sqrt(cfg.dt) * sys.B;
        st.noise_dim = sys.B.cols();
    }
    return st;
}

double run_edge_trial(const EdgeStepper& st, const SimConfig& cfg, int trial,
                      std::vector<TrajectorySample>* trajectory) {
    std::mt19937_64 rng = trial_rng(cfg.seed, trial);
    std::normal_distribution<double> normal;
    StepCounts steps = step_counts(cfg);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(st.state_dim);
    Eigen::VectorXd xi(st.noise_dim);
    double accum = 0.0;
    for (long k = 1; k <= steps.total; ++k) {
        for (Eigen::Index i = 0; i < st.noise_dim; ++i) xi(i) = normal(rng);
        x = st.drift * x + st.noise_gain * xi;
        if (k > steps.burn) accum += (*st.output * x).squaredNorm();
        if (trajectory && cfg.trajectory_stride > 0 && k % cfg.trajectory_stride == 0)
            trajectory->push_back({k * cfg.dt, x, *st.output * x});
    }
    return accum / static_cast<double>(steps.total - steps.burn);
}

template <typename Trial>
std::vector<double> run_trials(int trials, int threads, Trial&& trial_fn) {
    std::vector<double> means(static_cast<size_t>(trials));
    if (threads == 1) {
        // Serial reference path; bit-identical to the parallel one.
        for (int i = 0; i < trials; ++i) means[static_cast<size_t>(i)] = trial_fn(i);
        return means;
    }
#ifdef _OPENMP
    const int want = threads > 1 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(want)
    for (int i = 0; i < trials; ++i) means[static_cast<size_t>(i)] = trial_fn(i);
#else
    for (int i = 0; i < trials; ++i) means[static_cast<size_t>(i)] = trial_fn(i);
#endif
    return means;
}

}  // namespace

double max_stable_step(const EdgeSystem& sys) {
    Eigen::EigenSolver<Eigen::MatrixXd> eig(sys.A);
    double dt_max = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        std::complex<double> lam = eig.eigenvalues()(i);
        if (lam.real() <= 0.0) throw UnstableA("A is not positive stable");
        dt_max = std::min(dt_max, 2.0 * lam.real() / std::norm(lam));
    }
    return dt_max;
}

SimResult simulate_edge_system(const EdgeSystem& sys, const SimConfig& cfg) {
    check_config(cfg);
    EdgeStepper st = make_edge_stepper(sys, cfg);

    SimResult result;
    result.per_trial = run_trials(cfg.trials, cfg.threads, [&](int trial) {
        return run_edge_trial(st, cfg, trial,
                              trial == 0 ? &result.trajectory_sample : nullptr);
    });
    std::tie(result.h2_squared_estimate, result.standard_error) =
        estimate_h2(result.per_trial);
    return result;
}

NodeSimResult simulate_node_system(const Graph& g, const IncidenceDecomposition& inc,
                                   const ScaleWeightPair& sw, const NoiseModel& noise,
                                   const SimConfig& cfg, OutputMode mode) {
    check_config(cfg);
    if (cfg.exact_discretization)
        throw ValidationError(
            "exact discretization is only available for the edge system "
            "(the node dynamics have no stationary covariance)");

    CutBasis cb = cut_basis(inc);
    EdgeSystem edge_sys = edge_system(inc, cb, sw, noise, mode);
    double dt_max = max_stable_step(edge_sys);
    if (cfg.dt >= dt_max)
        throw UnstableStep("dt = " + std::to_string(cfg.dt) +
                           " is unstable; largest stable step is " +
                           std::to_string(dt_max));

    const Eigen::Index n = inc.D.rows();
    const Eigen::Index m = inc.D.cols();
    Eigen::VectorXd inv_eps = sw.epsilon.cwiseInverse();
    Eigen::MatrixXd drift =
        Eigen::MatrixXd::Identity(n, n) -
        cfg.dt * (inv_eps.asDiagonal() * weighted_laplacian(inc, sw));
    Eigen::MatrixXd gain(n, n + m);
    gain.leftCols(n) = inv_eps.asDiagonal() * noise.omega(sw);
    gain.rightCols(m) = -(inv_eps.asDiagonal() * inc.D) * noise.gamma(sw);
    gain *= std::sqrt(cfg.dt);
    // z observed through the tree-edge projection of the node states.
    Eigen::MatrixXd observe = edge_sys.C * inc.D_tau.transpose();
    Eigen::MatrixXd tree_proj = inc.D_tau.transpose();

    NodeSimResult result;
    StepCounts steps = step_counts(cfg);
    auto trial_fn = [&](int trial) {
        std::mt19937_64 rng = trial_rng(cfg.seed, trial);
        std::normal_distribution<double> normal;
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd xi(n + m);
        double accum = 0.0;
        for (long k = 1; k <= steps.total; ++k) {
            for (Eigen::Index i = 0; i < n + m; ++i) xi(i) = normal(rng);
            x = drift * x + gain * xi;
            if (k > steps.burn) accum += (observe * x).squaredNorm();
            if (trial == 0 && cfg.trajectory_stride > 0 && k % cfg.trajectory_stride == 0) {
                result.node_trajectory.emplace_back(k * cfg.dt, x);
                result.base.trajectory_sample.push_back(
                    {k * cfg.dt, tree_proj * x, observe * x});
            }
        }
        return accum / static_cast<double>(steps.total - steps.burn);
    };
    result.base.per_trial = run_trials(cfg.trials, cfg.threads, trial_fn);
    std::tie(result.base.h2_squared_estimate, result.base.standard_error) =
        estimate_h2(result.base.per_trial);
    return result;
}

std::pair<double, double> estimate_h2(const std::vector<double>& trial_means) {
    if (trial_means.empty()) throw EmptyInput("no trial means to aggregate");
    const double count = static_cast<double>(trial_means.size());
    double mean = 0.0;
    for (double v : trial_means) mean += v;
    mean /= count;
    if (trial_means.size() == 1) return {mean, 0.0};
    double var = 0.0;
    for (double v : trial_means) var += (v - mean) * (v - mean);
    var /= (count - 1.0);
    return {mean, std::sqrt(var / count)};
}

}  // namespace netscale
