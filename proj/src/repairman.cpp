#include "bicrit/repairman.hpp"

#include <algorithm>
#include <numeric>

#include "bicrit/errors.hpp"

namespace bicrit {

MetricInstance MetricInstance::make(std::vector<std::vector<Rat>> dist, int start,
                                    std::vector<Rat> weights) {
    const int n = static_cast<int>(dist.size());
    if (n < 1) throw NonMetricError("metric needs at least one vertex");
    if (start < 0 || start >= n) throw NonMetricError("start vertex out of range");
    if (static_cast<int>(weights.size()) != n)
        throw NonMetricError("weight vector length must match vertex count");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(dist[static_cast<std::size_t>(i)].size()) != n)
            throw NonMetricError("distance matrix must be square");
        if (dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 0)
            throw NonMetricError("distance matrix diagonal must be zero");
        if (weights[static_cast<std::size_t>(i)] < 0)
            throw NonMetricError("vertex weights must be non-negative");
        for (int j = 0; j < n; ++j) {
            const Rat& d = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (d < 0) throw NonMetricError("distances must be non-negative");
            if (d != dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw NonMetricError("distance matrix must be symmetric");
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] >
                    dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +
                        dist[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)])
                    throw NonMetricError("triangle inequality violated for (" + std::to_string(a) +
                                         ", " + std::to_string(b) + ", " + std::to_string(c) + ")");
    MetricInstance m;
    m.n = n;
    m.dist = std::move(dist);
    m.start = start;
    m.weights = std::move(weights);
    return m;
}

namespace {

const Rat& d(const MetricInstance& m, int a, int b) {
    return m.dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

void require_tour(const MetricInstance& m, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != m.n || order.empty() || order[0] != m.start)
        throw std::invalid_argument("order must start at the start vertex and cover all vertices");
    std::vector<char> seen(static_cast<std::size_t>(m.n), 0);
    for (int v : order) {
        if (v < 0 || v >= m.n || seen[static_cast<std::size_t>(v)]++)
            throw std::invalid_argument("order is not a permutation of the vertices");
    }
}

}  // namespace

TourMetrics tour_metrics(const MetricInstance& m, const std::vector<int>& order) {
    require_tour(m, order);
    TourMetrics tm;
    tm.prefix.resize(order.size());
    Rat c = 0;
    tm.latency = 0;
    for (std::size_t k = 1; k < order.size(); ++k) {
        c += d(m, order[k - 1], order[k]);
        tm.prefix[k] = c;
        tm.latency += m.weights[static_cast<std::size_t>(order[k])] * c;
    }
    tm.open_length = c;
    tm.closed_length = c + (order.size() > 1 ? d(m, order.back(), m.start) : Rat(0));
    return tm;
}

TspResult tsp_opt(const MetricInstance& m) {
    if (m.n > kTspMaxVertices)
        throw SizeCapError("tsp_opt enumeration budget is n <= " +
                           std::to_string(kTspMaxVertices));
    std::vector<int> others;
    for (int v = 0; v < m.n; ++v)
        if (v != m.start) others.push_back(v);
    const int k = static_cast<int>(others.size());
    if (k == 0) return {Rat(0), {m.start}};

    const std::size_t full = static_cast<std::size_t>(1) << k;
    // best[mask][j]: cheapest path start -> ... -> others[j] visiting mask.
    std::vector<std::vector<Rat>> best(full, std::vector<Rat>(static_cast<std::size_t>(k)));
    std::vector<std::vector<char>> reach(full, std::vector<char>(static_cast<std::size_t>(k), 0));
    std::vector<std::vector<int>> parent(full, std::vector<int>(static_cast<std::size_t>(k), -1));

    for (int j = 0; j < k; ++j) {
        const std::size_t mask = static_cast<std::size_t>(1) << j;
        best[mask][static_cast<std::size_t>(j)] = d(m, m.start, others[static_cast<std::size_t>(j)]);
        reach[mask][static_cast<std::size_t>(j)] = 1;
    }
    for (std::size_t mask = 1; mask < full; ++mask) {
        for (int j = 0; j < k; ++j) {
            if (!(mask & (static_cast<std::size_t>(1) << j)) ||
                !reach[mask][static_cast<std::size_t>(j)])
                continue;
            const Rat& cur = best[mask][static_cast<std::size_t>(j)];
            for (int t = 0; t < k; ++t) {
                if (mask & (static_cast<std::size_t>(1) << t)) continue;
                const std::size_t next = mask | (static_cast<std::size_t>(1) << t);
                const Rat cand =
                    cur + d(m, others[static_cast<std::size_t>(j)], others[static_cast<std::size_t>(t)]);
                if (!reach[next][static_cast<std::size_t>(t)] ||
                    cand < best[next][static_cast<std::size_t>(t)]) {
                    best[next][static_cast<std::size_t>(t)] = cand;
                    reach[next][static_cast<std::size_t>(t)] = 1;
                    parent[next][static_cast<std::size_t>(t)] = j;
                }
            }
        }
    }

    int last = 0;
    Rat total;
    bool have = false;
    for (int j = 0; j < k; ++j) {
        const Rat cand = best[full - 1][static_cast<std::size_t>(j)] +
                         d(m, others[static_cast<std::size_t>(j)], m.start);
        if (!have || cand < total) {  // ties keep the lowest j
            total = cand;
            last = j;
            have = true;
        }
    }

    std::vector<int> rev;
    std::size_t mask = full - 1;
    int j = last;
    while (j != -1) {
        rev.push_back(others[static_cast<std::size_t>(j)]);
        const int pj = parent[mask][static_cast<std::size_t>(j)];
        mask &= ~(static_cast<std::size_t>(1) << j);
        j = pj;
    }
    std::vector<int> order{m.start};
    order.insert(order.end(), rev.rbegin(), rev.rend());
    return {total, order};
}

RepairmanResult repairman_opt(const MetricInstance& m) {
    if (m.n > kRepairmanMaxVertices)
        throw SizeCapError("repairman_opt enumeration budget is n <= " +
                           std::to_string(kRepairmanMaxVertices));
    std::vector<int> others;
    for (int v = 0; v < m.n; ++v)
        if (v != m.start) others.push_back(v);
    if (others.empty()) return {Rat(0), {m.start}};

    RepairmanResult best;
    bool have = false;
    std::vector<int> perm = others;  // ascending start gives lexicographic enumeration
    do {
        Rat c = 0, lat = 0;
        int cur = m.start;
        for (int v : perm) {
            c += d(m, cur, v);
            lat += m.weights[static_cast<std::size_t>(v)] * c;
            cur = v;
        }
        if (!have || lat < best.latency) {
            best.latency = lat;
            best.order = {m.start};
            best.order.insert(best.order.end(), perm.begin(), perm.end());
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<int> compose_tours(const MetricInstance& m, const std::vector<int>& t_lat,
                               const std::vector<int>& t_tsp, const Rat& t) {
    if (t < 0) throw std::domain_error("breakpoint must be non-negative");
    require_tour(m, t_lat);
    require_tour(m, t_tsp);

    const TourMetrics lat = tour_metrics(m, t_lat);
    std::vector<int> order;
    std::vector<char> in_prefix(static_cast<std::size_t>(m.n), 0);
    for (std::size_t k = 0; k < t_lat.size(); ++k) {
        if (lat.prefix[k] > t) break;
        order.push_back(t_lat[k]);
        in_prefix[static_cast<std::size_t>(t_lat[k])] = 1;
    }

    const int u = order.back();  // start vertex at minimum (prefix distance 0)
    const auto pos =
        static_cast<std::size_t>(std::find(t_tsp.begin(), t_tsp.end(), u) - t_tsp.begin());
    for (int step = 1; step < m.n; ++step) {
        const int v = t_tsp[(pos + static_cast<std::size_t>(step)) % t_tsp.size()];
        if (!in_prefix[static_cast<std::size_t>(v)]) order.push_back(v);
    }
    return order;
}

TourReport best_tour_for_rho(const MetricInstance& m, const Rat& rho) {
    if (rho < 0) throw std::domain_error("rho must be non-negative");
    const TspResult tsp = tsp_opt(m);
    const RepairmanResult rep = repairman_opt(m);
    if (tsp.length == 0) throw DegenerateInstanceError("optimal tour length is zero");
    if (rep.latency == 0) throw DegenerateInstanceError("optimal latency is zero");

    const TourMetrics latm = tour_metrics(m, rep.order);
    const Rat limit = rho * tsp.length;
    std::vector<Rat> candidates{Rat(0), limit};
    for (std::size_t k = 1; k < rep.order.size(); ++k)
        if (latm.prefix[k] <= limit) candidates.push_back(latm.prefix[k]);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const TourReport* picked = nullptr;
    std::vector<TourReport> reports;
    reports.reserve(candidates.size());
    for (const Rat& t : candidates) {
        TourReport r;
        r.order = compose_tours(m, rep.order, tsp.order, t);
        const TourMetrics tm = tour_metrics(m, r.order);
        r.point = {tm.open_length / tsp.length, tm.latency / rep.latency, t};
        reports.push_back(std::move(r));
        const TourReport& cur = reports.back();
        if (cur.point.length_ratio > 1 + rho) continue;
        if (picked == nullptr || cur.point.latency_ratio < picked->point.latency_ratio ||
            (cur.point.latency_ratio == picked->point.latency_ratio &&
             (cur.point.length_ratio < picked->point.length_ratio ||
              (cur.point.length_ratio == picked->point.length_ratio && cur.point.t < picked->point.t))))
            picked = &cur;
    }
    return *picked;  // t = 0 is the optimal closed tour walked open: always feasible
}

}  // namespace bicrit
