#include "rootlab/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace rootlab {

AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    AssignmentResult res;
    res.row_to_col.assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j]) res.row_to_col[p[j] - 1] = j - 1;
    for (int i = 0; i < n; ++i) res.total_cost += cost[i][res.row_to_col[i]];
    return res;
}

namespace {

struct Edge {
    int to;
    int cap;
    double cost;
    int rev;
};

class FlowGraph {
  public:
    explicit FlowGraph(int n) : adj_(n) {}

    void add_edge(int from, int to, int cap, double cost) {
        adj_[from].push_back({to, cap, cost, static_cast<int>(adj_[to].size())});
        adj_[to].push_back({from, 0, -cost, static_cast<int>(adj_[from].size()) - 1});
    }

    // Sends `flow` units from s to t via successive shortest paths with
    // Johnson potentials; costs must be nonnegative.
    double min_cost_flow(int s, int t, int flow) {
        const int n = static_cast<int>(adj_.size());
        constexpr double kInf = std::numeric_limits<double>::infinity();
        std::vector<double> potential(n, 0.0);
        double total = 0.0;
        while (flow > 0) {
            std::vector<double> dist(n, kInf);
            std::vector<int> prev_node(n, -1), prev_edge(n, -1);
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            dist[s] = 0.0;
            pq.push({0.0, s});
            while (!pq.empty()) {
                auto [d, x] = pq.top();
                pq.pop();
                if (d > dist[x]) continue;
                for (int e = 0; e < static_cast<int>(adj_[x].size()); ++e) {
                    const Edge& ed = adj_[x][e];
                    if (ed.cap <= 0) continue;
                    const double nd = d + ed.cost + potential[x] - potential[ed.to];
                    if (nd < dist[ed.to]) {
                        dist[ed.to] = nd;
                        prev_node[ed.to] = x;
                        prev_edge[ed.to] = e;
                        pq.push({nd, ed.to});
                    }
                }
            }
            if (dist[t] == kInf) throw std::runtime_error("min_cost_flow: disconnected");
            for (int i = 0; i < n; ++i)
                if (dist[i] < kInf) potential[i] += dist[i];
            // unit capacities: each augmentation ships one unit
            for (int x = t; x != s; x = prev_node[x]) {
                Edge& ed = adj_[prev_node[x]][prev_edge[x]];
                ed.cap -= 1;
                adj_[x][ed.rev].cap += 1;
                total += ed.cost;
            }
            --flow;
        }
        return total;
    }

  private:
    std::vector<std::vector<Edge>> adj_;
};

}  // namespace

double min_cost_transport(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    FlowGraph g(2 * n + 2);
    const int s = 2 * n, t = 2 * n + 1;
    for (int i = 0; i < n; ++i) g.add_edge(s, i, 1, 0.0);
    for (int j = 0; j < n; ++j) g.add_edge(n + j, t, 1, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.add_edge(i, n + j, 1, cost[i][j]);
    return g.min_cost_flow(s, t, n);
}

std::vector<std::vector<int>> assignments_within_slack(
    const std::vector<std::vector<double>>& cost, double slack) {
    const int n = static_cast<int>(cost.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> hits;
    std::vector<double> costs;
    double best = std::numeric_limits<double>::infinity();
    do {
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += cost[i][perm[i]];
        best = std::min(best, c);
        hits.push_back(perm);
        costs.push_back(c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<std::vector<int>> out;
    for (size_t k = 0; k < hits.size(); ++k)
        if (costs[k] <= best + slack) out.push_back(hits[k]);
    return out;
}

}  // namespace rootlab
