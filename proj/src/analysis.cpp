#include "bicrit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bicrit/errors.hpp"

namespace bicrit {

namespace {

// Compensated accumulation; quadrature totals must hold to ~1e-11 over 2e5 terms.
struct KahanSum {
    double sum = 0, carry = 0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double kernel(double alpha, double x) { return (1.0 + alpha - x) / x; }

void check_grid(const Pdf& f) {
    if (f.x.size() != f.d.size()) throw std::invalid_argument("pdf grid/density size mismatch");
    for (std::size_t i = 0; i < f.x.size(); ++i) {
        if (f.x[i] < 0) throw std::invalid_argument("pdf grid nodes must be non-negative");
        if (i > 0 && f.x[i] <= f.x[i - 1])
            throw std::invalid_argument("pdf grid must be strictly increasing");
    }
}

}  // namespace

double Pdf::total() const {
    check_grid(*this);
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        acc.add(0.5 * (d[i] + d[i + 1]) * (x[i + 1] - x[i]));
    for (const auto& [loc, m] : masses) acc.add(m);
    return acc.sum;
}

double avg_ratio_bound(double rho) {
    if (!(rho > 0)) throw std::domain_error("rho must be positive (bound unbounded as rho -> 0)");
    return std::exp(rho) / std::expm1(rho);
}

double rho_for_avg_bound(double beta) {
    if (!(beta > 1)) throw std::domain_error("average bound must exceed 1");
    return std::log(beta / (beta - 1.0));
}

double balanced_rho() {
    double lo = 0.5, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (1.0 + mid < avg_ratio_bound(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Pdf worst_case_density(double rho, int grid_points) {
    if (!(rho > 0)) throw std::domain_error("rho must be positive");
    if (grid_points < 2) throw std::domain_error("need at least two grid points");
    const double scale = std::exp(rho) / std::expm1(rho);
    Pdf f;
    f.x.resize(static_cast<std::size_t>(grid_points));
    f.d.resize(static_cast<std::size_t>(grid_points));
    for (int i = 1; i <= grid_points; ++i) {
        const double xv = rho * static_cast<double>(i) / static_cast<double>(grid_points);
        f.x[static_cast<std::size_t>(i - 1)] = xv;
        f.d[static_cast<std::size_t>(i - 1)] = scale * xv * std::exp(-xv);
    }
    f.masses.push_back({rho, rho / std::expm1(rho)});
    return f;
}

double adversary_payoff(double alpha, const Pdf& f) {
    if (alpha < 0) throw std::domain_error("alpha must be non-negative");
    check_grid(f);
    for (const auto& [loc, m] : f.masses)
        if (loc == 0.0 && alpha == 0.0 && m > 0)
            throw std::domain_error("singular kernel: point mass at 0 with alpha = 0");
    if (!f.x.empty() && f.x.front() == 0.0 && alpha == 0.0 && f.d.front() > 0)
        throw std::domain_error("singular kernel: density support touches 0 with alpha = 0");

    KahanSum acc;
    const std::size_t n = f.x.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double x0 = f.x[i], x1 = f.x[i + 1];
        if (x1 <= alpha) continue;
        if (x0 >= alpha) {
            acc.add(0.5 * (kernel(alpha, x0) * f.d[i] + kernel(alpha, x1) * f.d[i + 1]) * (x1 - x0));
        } else {
            // Piece straddles alpha: clip, interpolating the density.
            const double frac = (alpha - x0) / (x1 - x0);
            const double da = f.d[i] + frac * (f.d[i + 1] - f.d[i]);
            const double va = kernel(alpha, alpha) * da;  // kernel(alpha, alpha) = 1/alpha
            acc.add(0.5 * (va + kernel(alpha, x1) * f.d[i + 1]) * (x1 - alpha));
        }
    }
    for (const auto& [loc, m] : f.masses)
        if (loc >= alpha && m > 0) acc.add(kernel(alpha, loc) * m);
    return acc.sum;
}

double composed_avg_bound(double alpha, const Pdf& f) { return 1.0 + adversary_payoff(alpha, f); }

Pdf schedule_to_pdf(const Schedule& s, const Instance& inst, const Rat& opt_makespan) {
    if (opt_makespan <= 0) throw DegenerateInstanceError("optimal makespan must be positive");
    std::map<Rat, Rat> mass_at;  // completion time -> weighted mass, exact
    Rat total = 0;
    for (const auto& mach : s.machines)
        for (const Placement& p : mach) {
            const Rat contribution = inst.job(p.job).weight * p.completion;
            if (contribution == 0) continue;
            mass_at[p.completion] += contribution;
            total += contribution;
        }
    if (total == 0)
        throw DegenerateInstanceError("schedule has zero weighted completion sum");

    Pdf f;
    f.masses.reserve(mass_at.size());
    for (const auto& [c, m] : mass_at)
        f.masses.push_back({to_double(c / opt_makespan), to_double(m / total)});
    return f;
}

Pdf dual_density(double rho, int grid_points) {
    if (!(rho > 0 && rho <= 1)) throw std::domain_error("dual density requires rho in (0, 1]");
    if (grid_points < 2) throw std::domain_error("need at least two grid points");
    const double norm = std::expm1(rho);
    Pdf h;
    h.x.resize(static_cast<std::size_t>(grid_points) + 1);
    h.d.resize(static_cast<std::size_t>(grid_points) + 1);
    for (int i = 0; i <= grid_points; ++i) {
        const double a = rho * static_cast<double>(i) / static_cast<double>(grid_points);
        h.x[static_cast<std::size_t>(i)] = a;
        h.d[static_cast<std::size_t>(i)] = std::exp(a) / norm;
    }
    return h;
}

double dual_payoff(double x, const Pdf& h) {
    if (!(x > 0)) throw std::domain_error("dual payoff needs x > 0");
    check_grid(h);
    KahanSum acc;
    const std::size_t n = h.x.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a0 = h.x[i], a1 = h.x[i + 1];
        if (a0 >= x) break;  // kernel vanishes for alpha > x
        if (a1 <= x) {
            acc.add(0.5 * (kernel(a0, x) * h.d[i] + kernel(a1, x) * h.d[i + 1]) * (a1 - a0));
        } else {
            const double frac = (x - a0) / (a1 - a0);
            const double dx = h.d[i] + frac * (h.d[i + 1] - h.d[i]);
            acc.add(0.5 * (kernel(a0, x) * h.d[i] + kernel(x, x) * dx) * (x - a0));
        }
    }
    for (const auto& [loc, m] : h.masses)
        if (loc <= x && m > 0) acc.add(kernel(loc, x) * m);
    return acc.sum;
}

namespace {

// Payoffs of each pure breakpoint row alpha_i against a column distribution
// f, all rows at once. The kernel is affine in x only through 1/x, so suffix
// sums of f_j and f_j/x_j give every row payoff in one backward pass.
std::vector<double> row_payoffs(const std::vector<double>& grid, const std::vector<double>& f) {
    const std::size_t n = grid.size();
    std::vector<double> u(n);
    double s0 = 0, s1 = 0;  // suffix sums of f_j and f_j / x_j over j >= i
    for (std::size_t i = n; i-- > 0;) {
        s0 += f[i];
        s1 += f[i] / grid[i];
        u[i] = (1.0 + grid[i]) * s1 - s0;
    }
    return u;
}

// Payoffs of each pure column x_j against a row distribution h, via prefix
// sums of h_i and alpha_i * h_i over i <= j.
std::vector<double> col_payoffs(const std::vector<double>& grid, const std::vector<double>& h) {
    const std::size_t n = grid.size();
    std::vector<double> v(n);
    double t0 = 0, t1 = 0;
    for (std::size_t j = 0; j < n; ++j) {
        t0 += h[j];
        t1 += grid[j] * h[j];
        v[j] = ((1.0 - grid[j]) * t0 + t1) / grid[j];
    }
    return v;
}

}  // namespace

GameSolution solve_game(double rho, int n_grid, double eps) {
    if (!(rho > 0)) throw std::domain_error("rho must be positive");
    if (n_grid < 100) throw std::domain_error("grid must have at least 100 points");
    if (!(eps > 0)) throw std::domain_error("eps must be positive");

    const std::size_t n = static_cast<std::size_t>(n_grid);
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = rho * static_cast<double>(i + 1) / static_cast<double>(n_grid);

    // The payoff matrix K(alpha_i, x_j) = (1 + alpha_i - x_j)/x_j for j >= i,
    // 0 otherwise, is triangular with positive diagonal 1/x_i. Equalizing
    // either player's payoffs is therefore a triangular linear solve, and a
    // pair of nonnegative equalizers is an exact saddle point: both players
    // are indifferent across all pure strategies, so the bilinear value
    // matches both, and the measured gap is pure floating-point noise.
    std::vector<double> f(n), h(n);
    {
        double s0 = 0, s1 = 0;  // suffix sums over j > i of f_j, f_j / x_j
        for (std::size_t i = n; i-- > 0;) {
            f[i] = grid[i] * (1.0 - ((1.0 + grid[i]) * s1 - s0));
            s0 += f[i];
            s1 += f[i] / grid[i];
        }
        double t0 = 0, t1 = 0;  // prefix sums over i < j
        for (std::size_t j = 0; j < n; ++j) {
            h[j] = grid[j] - (1.0 - grid[j]) * t0 - t1;
            t0 += h[j];
            t1 += grid[j] * h[j];
        }
    }

    bool clipped = false;
    double fsum = 0, hsum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i] < 0) { f[i] = 0; clipped = true; }
        if (h[i] < 0) { h[i] = 0; clipped = true; }
        fsum += f[i];
        hsum += h[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        f[i] /= fsum;
        h[i] /= hsum;
    }

    auto evaluate = [&](GameSolution& sol) {
        const auto u = row_payoffs(grid, f);
        const auto v = col_payoffs(grid, h);
        sol.primal_value = *std::min_element(u.begin(), u.end());
        sol.dual_value = *std::max_element(v.begin(), v.end());
        sol.gap = sol.dual_value - sol.primal_value;
        if (sol.gap < 0) {
            if (sol.gap < -1e-9) throw std::logic_error("weak duality violated beyond roundoff");
            sol.gap = 0;  // roundoff of two nearly equal sums
        }
    };

    GameSolution sol;
    sol.rho = rho;
    sol.grid = n_grid;
    evaluate(sol);

    if (sol.gap > eps || clipped) {
        // Fictitious-play polish, keeping the best pair seen. Only reachable
        // if the triangular solve failed to equalize (or eps is below the
        // floating-point noise floor).
        std::vector<double> best_f = f, best_h = h;
        GameSolution best = sol;
        const int budget = 200000;
        std::vector<double> favg = f, havg = h;
        double weight = 1;
        for (int it = 1; it <= budget && best.gap > eps; ++it) {
            const auto u = row_payoffs(grid, favg);
            const auto v = col_payoffs(grid, havg);
            const std::size_t br_col = static_cast<std::size_t>(
                std::max_element(v.begin(), v.end()) - v.begin());
            const std::size_t br_row = static_cast<std::size_t>(
                std::min_element(u.begin(), u.end()) - u.begin());
            weight += 1;
            for (std::size_t i = 0; i < n; ++i) {
                favg[i] *= (weight - 1) / weight;
                havg[i] *= (weight - 1) / weight;
            }
            favg[br_col] += 1.0 / weight;
            havg[br_row] += 1.0 / weight;
            if (it % 256 == 0 || it == budget) {
                f = favg;
                h = havg;
                evaluate(sol);
                if (sol.gap < best.gap) {
                    best = sol;
                    best_f = f;
                    best_h = h;
                }
            }
        }
        sol = best;
        f = std::move(best_f);
        h = std::move(best_h);
        if (sol.gap > eps)
            throw ConvergenceError("game solver exhausted its refinement budget", sol.gap);
    }

    sol.primal.masses.reserve(n);
    sol.dual.masses.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        sol.primal.masses.push_back({grid[i], f[i]});
        sol.dual.masses.push_back({grid[i], h[i]});
    }
    return sol;
}

}  // namespace bicrit
