#include "netscale/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netscale/h2.hpp"

namespace netscale {

namespace {

void check_box(double eps_min, double eps_max) {
    if (!(eps_min > 0.0) || !(eps_min < eps_max))
        throw ValidationError("need 0 < eps_min < eps_max, got [" +
                              std::to_string(eps_min) + ", " + std::to_string(eps_max) + "]");
}

void check_feasible(int n, const P1Config& cfg) {
    check_box(cfg.eps_min, cfg.eps_max);
    if (cfg.mu > n / cfg.eps_min)
        throw InfeasibleMu("mu = " + std::to_string(cfg.mu) + " exceeds n/eps_min = " +
                           std::to_string(n / cfg.eps_min));
}

// Weight term of the Sigma-mode objective; constant in epsilon.
double weight_term(const Graph& g, const ScaleWeightPair& sw,
                   const std::optional<EdgeOrdering>& ord) {
    EdgeOrdering o = ord ? *ord : spanning_tree(g);
    IncidenceDecomposition inc = incidence(g, o);
    CutBasis cb = cut_basis(inc);
    return separated_h2(inc, cb, sw, 1.0, 1.0, OutputMode::Sigma).term_W;
}

double scale_term(const Eigen::VectorXd& deg, const Eigen::VectorXd& epsilon) {
    return 0.5 * (deg.array() / epsilon.array()).sum();
}

std::vector<ConstraintTag> tag_solution(const Eigen::VectorXd& epsilon, double eps_min,
                                        double eps_max) {
    std::vector<ConstraintTag> tags(static_cast<size_t>(epsilon.size()));
    for (Eigen::Index i = 0; i < epsilon.size(); ++i) {
        if (epsilon(i) >= eps_max * (1.0 - 1e-12))
            tags[static_cast<size_t>(i)] = ConstraintTag::AtSlowBound;
        else if (epsilon(i) <= eps_min * (1.0 + 1e-12))
            tags[static_cast<size_t>(i)] = ConstraintTag::AtFastBound;
        else
            tags[static_cast<size_t>(i)] = ConstraintTag::Fractional;
    }
    return tags;
}

// Projection onto {lo <= y <= hi (componentwise), sum(y) >= mu}: clamp, and if
// the budget is violated shift by the lambda >= 0 with sum(clamp(x + lambda)) = mu
// (monotone in lambda, found by bisection).
Eigen::VectorXd project_budget_box(Eigen::VectorXd x, double lo, double hi, double mu) {
    Eigen::VectorXd y = x.cwiseMax(lo).cwiseMin(hi);
    if (y.sum() >= mu) return y;

    double lam_lo = 0.0, lam_hi = hi - x.minCoeff();
    for (int iter = 0; iter < 200; ++iter) {
        double lam = 0.5 * (lam_lo + lam_hi);
        double s = (x.array() + lam).cwiseMax(lo).cwiseMin(hi).sum();
        (s < mu ? lam_lo : lam_hi) = lam;
    }
    return (x.array() + lam_hi).cwiseMax(lo).cwiseMin(hi);
}

}  // namespace

const char* to_string(ConstraintTag tag) {
    switch (tag) {
        case ConstraintTag::AtSlowBound: return "AtSlowBound";
        case ConstraintTag::AtFastBound: return "AtFastBound";
        case ConstraintTag::Interior: return "Interior";
        case ConstraintTag::Fractional: return "Fractional";
    }
    return "Unknown";
}

Eigen::VectorXd p1_cost_coefficients(const Graph& g) {
    std::vector<int> deg = degrees(g);
    Eigen::VectorXd c(g.n);
    for (int i = 0; i < g.n; ++i) c(i) = deg[static_cast<size_t>(i)];
    return c;
}

DesignSolution p1_solve(const Graph& g, const ScaleWeightPair& sw, const P1Config& cfg,
                        const std::optional<EdgeOrdering>& ord) {
    check_feasible(g.n, cfg);
    Eigen::VectorXd deg = p1_cost_coefficients(g);
    const double y_lo = 1.0 / cfg.eps_max;  // slow
    const double y_hi = 1.0 / cfg.eps_min;  // fast

    Eigen::VectorXd y = Eigen::VectorXd::Constant(g.n, y_lo);
    double budget = cfg.mu - y.sum();
    if (budget > 0.0) {
        // Speed up the cheapest (lowest-degree) nodes first.
        std::vector<int> order(static_cast<size_t>(g.n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return deg(a) < deg(b); });
        for (int i : order) {
            double raise = std::min(budget, y_hi - y_lo);
            y(i) += raise;
            budget -= raise;
            if (budget <= 0.0) break;
        }
    }

    DesignSolution sol;
    sol.epsilon = y.cwiseInverse();
    sol.active_constraints = tag_solution(sol.epsilon, cfg.eps_min, cfg.eps_max);
    sol.objective = weight_term(g, sw, ord) + scale_term(deg, sol.epsilon);
    return sol;
}

DesignSolution p1_solve_reference(const Graph& g, const ScaleWeightPair& sw,
                                  const P1Config& cfg,
                                  const std::optional<EdgeOrdering>& ord) {
    check_feasible(g.n, cfg);
    Eigen::VectorXd deg = p1_cost_coefficients(g);
    const double y_lo = 1.0 / cfg.eps_max;
    const double y_hi = 1.0 / cfg.eps_min;
    // Objective in y-coordinates is deg.dot(y)/2; constant step 1/max(deg).
    const Eigen::VectorXd grad = 0.5 * deg;
    const double step = 1.0 / deg.maxCoeff();
    const int max_iters = 100000;

    Eigen::VectorXd y = project_budget_box(Eigen::VectorXd::Constant(g.n, y_hi), y_lo,
                                           y_hi, cfg.mu);
    bool converged = false;
    for (int iter = 0; iter < max_iters; ++iter) {
        Eigen::VectorXd next = project_budget_box(y - step * grad, y_lo, y_hi, cfg.mu);
        double delta = (next - y).cwiseAbs().maxCoeff();
        y = next;
        if (delta < 1e-13) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NonConvergence("projected gradient did not settle in " +
                             std::to_string(max_iters) + " iterations");

    DesignSolution sol;
    sol.epsilon = y.cwiseInverse();
    sol.active_constraints = tag_solution(sol.epsilon, cfg.eps_min, cfg.eps_max);
    sol.objective = weight_term(g, sw, ord) + scale_term(deg, sol.epsilon);
    return sol;
}

DesignSolution p2_solve(const Graph& g, const P2Config& cfg) {
    check_box(cfg.eps_min, cfg.eps_max);
    if (!(cfg.h > 0.0) || !(cfg.r >= 1.0))
        throw ValidationError("P2 needs h > 0 and r >= 1");
    Eigen::VectorXd deg = p1_cost_coefficients(g);

    DesignSolution sol;
    sol.epsilon.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        double unclamped = std::pow(deg(i) / (cfg.h * cfg.r), 1.0 / (cfg.r + 1.0));
        sol.epsilon(i) = std::clamp(unclamped, cfg.eps_min, cfg.eps_max);
    }

    sol.active_constraints.resize(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        if (sol.epsilon(i) >= cfg.eps_max * (1.0 - 1e-12))
            sol.active_constraints[static_cast<size_t>(i)] = ConstraintTag::AtSlowBound;
        else if (sol.epsilon(i) <= cfg.eps_min * (1.0 + 1e-12))
            sol.active_constraints[static_cast<size_t>(i)] = ConstraintTag::AtFastBound;
        else
            sol.active_constraints[static_cast<size_t>(i)] = ConstraintTag::Interior;
    }
    sol.objective = scale_term(deg, sol.epsilon) +
                    0.5 * cfg.h * sol.epsilon.array().pow(cfg.r).sum();
    return sol;
}

double p2_objective(const Graph& g, const IncidenceDecomposition& inc,
                    const CutBasis& cb, const Eigen::VectorXd& epsilon,
                    const P2Config& cfg) {
    if (epsilon.size() != g.n)
        throw DimensionMismatch("epsilon size does not match node count");
    for (Eigen::Index i = 0; i < epsilon.size(); ++i)
        if (!(epsilon(i) > 0.0)) throw ValidationError("epsilon entries must be positive");

    Eigen::VectorXd inv_eps = epsilon.cwiseInverse();
    Eigen::MatrixXd edge_lap = inc.D_tau.transpose() * inv_eps.asDiagonal() * inc.D_tau;
    double trace = (cb.R.transpose() * edge_lap * cb.R).trace();
    return 0.5 * trace + 0.5 * cfg.h * epsilon.array().pow(cfg.r).sum();
}

}  // namespace netscale
