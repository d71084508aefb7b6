#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "netscale/graph.hpp"
#include "netscale/operators.hpp"

namespace netscale {

/// Budgeted design: minimize the separable H2 objective over the box
/// [eps_min, eps_max] subject to sum(1/eps_i) >= mu. Feasible iff
/// mu <= n / eps_min.
struct P1Config {
    double eps_min = 0.01;
    double eps_max = 2.0;
    double mu = 0.0;
};

/// Regularized design: minimize the time-scale term plus (h/2) sum eps_i^r
/// over the same box. r may be any real >= 1.
struct P2Config {
    double h = 1.0;
    double r = 1.0;
    double eps_min = 0.01;
    double eps_max = 2.0;
};

enum class ConstraintTag { AtSlowBound, AtFastBound, Interior, Fractional };

const char* to_string(ConstraintTag tag);

struct DesignSolution {
    Eigen::VectorXd epsilon;
    double objective = 0.0;
    std::vector<ConstraintTag> active_constraints;
};

/// Per-node cost coefficients of the time-scale term: the node degrees.
/// The epsilon-dependent part of the objective is sum c_i / eps_i / 2.
Eigen::VectorXd p1_cost_coefficients(const Graph& g);

/// Exact solver. The objective is linear in y = 1/eps with positive
/// coefficients, so the optimum is a continuous knapsack: start every node
/// slow (eps_max), then speed nodes up in ascending-degree order (ties by
/// ascending id) until the budget sum(1/eps) = mu is met, with at most one
/// fractional node. The weight term of the objective is constant in eps and
/// included in `objective`. Throws InfeasibleMu.
DesignSolution p1_solve(const Graph& g, const ScaleWeightPair& sw, const P1Config& cfg,
                        const std::optional<EdgeOrdering>& ord = std::nullopt);

/// Independent check: projected gradient descent in y = 1/eps with exact
/// projection onto the box-plus-budget set. Agrees with p1_solve to 1e-6
/// relative in objective. Throws InfeasibleMu, NonConvergence.
DesignSolution p1_solve_reference(const Graph& g, const ScaleWeightPair& sw,
                                  const P1Config& cfg,
                                  const std::optional<EdgeOrdering>& ord = std::nullopt);

/// Analytic per-node rule: eps_i = clamp((deg_i / (h r))^{1/(r+1)}).
/// Depends only on the node's own degree and the shared h, r.
DesignSolution p2_solve(const Graph& g, const P2Config& cfg);

/// Exact regularized objective tr(R^T L_es R)/2 + (h/2) sum eps_i^r,
/// evaluated from the matrices (not the per-node shortcut).
double p2_objective(const Graph& g, const IncidenceDecomposition& inc,
                    const CutBasis& cb, const Eigen::VectorXd& epsilon,
                    const P2Config& cfg);

}  // namespace netscale
