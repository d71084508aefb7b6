#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "netscale/graph.hpp"
#include "netscale/operators.hpp"

namespace netscale {

/// Monte Carlo configuration. Results are deterministic in (seed, config,
/// system): every trial draws from its own generator seeded from
/// (seed, trial index), so the merged estimate is identical whether trials
/// run serially (threads = 1) or under OpenMP (threads = 0 for the runtime
/// default), and identical across runs.
struct SimConfig {
    double dt = 1e-3;
    double horizon = 200.0;
    double burn_in = 20.0;
    int trials = 8;
    std::uint64_t seed = 0;
    int threads = 0;
    /// Sample the stationary state transition exactly (matrix exponential +
    /// stationary-consistent step covariance) instead of Euler-Maruyama; no
    /// step-size bias, at the cost of a dense solve per system.
    bool exact_discretization = false;
    /// When > 0, record every stride-th step of trial 0.
    int trajectory_stride = 0;
};

struct TrajectorySample {
    double t = 0.0;
    Eigen::VectorXd x_tau;
    Eigen::VectorXd z;
};

struct SimResult {
    double h2_squared_estimate = 0.0;
    double standard_error = 0.0;
    std::vector<double> per_trial;  // one time-averaged ||z||^2 per trial
    std::vector<TrajectorySample> trajectory_sample;
};

/// Time-and-trial average of ||C x||^2 over t > burn_in for the noise-driven
/// edge dynamics, via Euler-Maruyama x+ = x - dt A x + sqrt(dt) B xi.
/// Throws UnstableStep when dt >= 2 / lambda_max(A) (message carries the
/// largest stable step).
SimResult simulate_edge_system(const EdgeSystem& sys, const SimConfig& cfg);

struct NodeSimResult {
    SimResult base;
    /// Node-state samples of trial 0 at the configured stride.
    std::vector<std::pair<double, Eigen::VectorXd>> node_trajectory;
};

/// Same estimate from the full n-dimensional node dynamics
/// xdot = -E^{-1} L_w x + E^{-1} omega - E^{-1} D v, with the output taken
/// from the projected tree states x_tau = D_tau^T x (the consensus drift
/// drops out of every output).
NodeSimResult simulate_node_system(const Graph& g, const IncidenceDecomposition& inc,
                                   const ScaleWeightPair& sw, const NoiseModel& noise,
                                   const SimConfig& cfg,
                                   OutputMode mode = OutputMode::Sigma);

/// Mean and standard error (sample std / sqrt(count)) of per-trial means.
/// Throws EmptyInput.
std::pair<double, double> estimate_h2(const std::vector<double>& trial_means);

/// Largest Euler step that keeps the mean dynamics stable: 2 / lambda_max(A).
double max_stable_step(const EdgeSystem& sys);

}  // namespace netscale
