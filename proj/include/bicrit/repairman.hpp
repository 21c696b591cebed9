#pragma once

#include <vector>

#include "bicrit/rational.hpp"

namespace bicrit {

inline constexpr int kTspMaxVertices = 13;
inline constexpr int kRepairmanMaxVertices = 9;

// Symmetric metric with a start vertex and vertex weights. The triangle
// inequality is checked on construction; non-metric inputs are rejected.
struct MetricInstance {
    int n = 0;
    std::vector<std::vector<Rat>> dist;
    int start = 0;
    std::vector<Rat> weights;

    static MetricInstance make(std::vector<std::vector<Rat>> dist, int start,
                               std::vector<Rat> weights);
};

// Derived quantities of a vertex order starting at the instance's start
// vertex: along-tour prefix distances, open walk length, closed tour length
// (returning to the start) and the weighted latency sum w_i * c_i.
struct TourMetrics {
    std::vector<Rat> prefix;  // indexed by order position
    Rat open_length;
    Rat closed_length;
    Rat latency;
};

TourMetrics tour_metrics(const MetricInstance& m, const std::vector<int>& order);

struct TspResult {
    Rat length;  // closed tour
    std::vector<int> order;
};

// Exact minimum closed tour by dynamic programming over subsets.
TspResult tsp_opt(const MetricInstance& m);

struct RepairmanResult {
    Rat latency;  // open tour
    std::vector<int> order;
};

// Exact minimum weighted latency by enumerating all (n-1)! open tours.
RepairmanResult repairman_opt(const MetricInstance& m);

// Follows t_lat while its prefix distance stays <= t, then continues along
// t_tsp's cyclic order from the successor of the last prefix vertex,
// shortcutting past already-visited vertices. The open length never exceeds
// t plus the closed length of t_tsp.
std::vector<int> compose_tours(const MetricInstance& m, const std::vector<int>& t_lat,
                               const std::vector<int>& t_tsp, const Rat& t);

struct TourPoint {
    Rat length_ratio;   // open composed length vs optimal closed tour
    Rat latency_ratio;  // vs optimal latency
    Rat t;
};

struct TourReport {
    std::vector<int> order;
    TourPoint point;
};

// Sweeps breakpoints over the optimal-latency tour's prefix distances (plus 0
// and rho*L) and returns the composition with the least latency ratio among
// those with open length <= (1 + rho) * L.
TourReport best_tour_for_rho(const MetricInstance& m, const Rat& rho);

}  // namespace bicrit
