// Exact solvers for the d x d minimum-cost assignment problems behind the
// unordered-tuple metric.
#pragma once

#include <vector>

namespace rootlab {

// Jonker-Volgenant style shortest augmenting path solver. cost must be
// square; returns row -> column and the summed cost of that assignment.
struct AssignmentResult {
    std::vector<int> row_to_col;
    double total_cost = 0.0;
};
AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost);

// Independent route: successive-shortest-path min-cost flow on the bipartite
// transport network with unit supplies. Same optimum as solve_assignment but
// a structurally different algorithm; kept as a second witness.
double min_cost_transport(const std::vector<std::vector<double>>& cost);

// All permutations (as row -> col maps) whose summed cost is within slack of
// the optimum. Enumerates d! candidates; intended for d <= 8.
std::vector<std::vector<int>> assignments_within_slack(
    const std::vector<std::vector<double>>& cost, double slack);

}  // namespace rootlab
