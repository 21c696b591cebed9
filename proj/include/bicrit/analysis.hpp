#pragma once

#include <utility>
#include <vector>

#include "bicrit/core.hpp"

namespace bicrit {

// Density on a grid (trapezoid-integrated, linear interpolation between
// nodes) plus discrete point masses. Represents normalized completion-time
// profiles and the strategies of the breakpoint game. Grid nodes are
// non-negative and strictly increasing; the payoff kernel itself rejects
// anything that would place it on the 1/x singularity.
struct Pdf {
    std::vector<double> x;                          // grid nodes
    std::vector<double> d;                          // densities at the nodes, >= 0
    std::vector<std::pair<double, double>> masses;  // (location, mass), sorted

    double total() const;  // trapezoid integral plus mass sum
};

// Best achievable average-completion factor when the makespan may stretch by
// 1 + rho: beta = e^rho / (e^rho - 1).
double avg_ratio_bound(double rho);
// Inverse: the rho needed to reach a given average bound.
double rho_for_avg_bound(double beta);
// The unique rho in [0.5, 1] with 1 + rho = avg_ratio_bound(rho), bisected to 1e-12.
double balanced_rho();

// The worst-case completion profile: density e^rho/(e^rho-1) * x * e^-x on
// (0, rho) and a point mass rho/(e^rho-1) at rho. Any breakpoint in [0, rho]
// then performs equally badly (the equalizer property).
Pdf worst_case_density(double rho, int grid_points = 200000);

// The adversary's payoff at breakpoint fraction alpha:
//   integral over x >= alpha of (1 + alpha - x)/x dF(x),
// masses located exactly at alpha included.
double adversary_payoff(double alpha, const Pdf& f);

// Upper bound on the composed schedule's average ratio: 1 + adversary_payoff.
double composed_avg_bound(double alpha, const Pdf& f);

// Normalized pdf view of an optimal-average schedule: a point mass of
// w_j C_j / (sum w C) at C_j / L for every job with C_j > 0, equal locations
// merged. Mass arithmetic is exact rational before conversion to double.
Pdf schedule_to_pdf(const Schedule& s, const Instance& inst, const Rat& opt_makespan);

struct GameSolution {
    double rho = 0;
    int grid = 0;
    Pdf primal;  // distribution over completion fractions x
    Pdf dual;    // distribution over breakpoint fractions alpha
    double primal_value = 0;  // min over alpha rows of the primal payoff
    double dual_value = 0;    // max over x columns of the dual payoff
    double gap = 0;           // dual_value - primal_value, >= 0
};

// Discretizes the breakpoint game on {i*rho/N : i = 1..N} for both players
// (x = 0 excluded; the kernel is singular there) and solves it with a
// certified duality gap <= eps. Throws ConvergenceError carrying the last
// gap if the certificate cannot be met.
GameSolution solve_game(double rho, int n_grid, double eps);

// The minimizer's optimal density e^alpha/(e^rho - 1) on [0, rho].
Pdf dual_density(double rho, int grid_points = 40000);

// Payoff of pure column x against a breakpoint distribution h:
//   integral over alpha <= x of (1 + alpha - x)/x dH(alpha).
double dual_payoff(double x, const Pdf& h);

}  // namespace bicrit
