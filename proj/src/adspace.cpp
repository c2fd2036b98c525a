#include "rootlab/adspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rootlab/assignment.hpp"

namespace rootlab {

namespace {

std::vector<std::vector<double>> squared_cost(const UnorderedTuple& a,
                                              const UnorderedTuple& b) {
    if (a.d() != b.d()) throw DimensionMismatch("tuple dimensions differ");
    const int d = a.d();
    std::vector<std::vector<double>> cost(d, std::vector<double>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) cost[i][j] = std::norm(a.values[i] - b.values[j]);
    return cost;
}

// evaluate symmetric quantities on a canonical argument order so that
// dist(a,b) and dist(b,a) are bit-identical
bool canonical_order(const UnorderedTuple& a, const UnorderedTuple& b) {
    for (int i = 0; i < a.d() && i < b.d(); ++i) {
        const cplx x = a.values[i], y = b.values[i];
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return true;
}

}  // namespace

AlmgrenConfig AlmgrenConfig::standard(int d) {
    AlmgrenConfig cfg;
    cfg.d = d;
    cfg.h = 2 * d * d + 1;
    cfg.thetas.resize(cfg.h);
    for (int l = 0; l < cfg.h; ++l) {
        const double ang = 2.0 * std::numbers::pi * l / cfg.h;
        cfg.thetas[l] = cplx(std::cos(ang), std::sin(ang));
    }
    return cfg;
}

double dist(const UnorderedTuple& a, const UnorderedTuple& b) {
    if (!canonical_order(a, b)) return dist(b, a);
    const auto cost = squared_cost(a, b);
    const double total = solve_assignment(cost).total_cost;
    return std::sqrt(std::max(0.0, total) / a.d());
}

double default_slack(double dist_value) { return 1e-9 * (1.0 + dist_value); }

std::vector<std::vector<int>> minimizing_permutations(const UnorderedTuple& a,
                                                      const UnorderedTuple& b,
                                                      double slack) {
    const auto cost = squared_cost(a, b);
    const int d = a.d();
    if (d > 8) {
        // out of the enumeration regime: report the one optimal matching
        return {solve_assignment(cost).row_to_col};
    }
    slack = std::max(slack, 0.0);
    const double dv = dist(a, b);
    // (1/sqrt d)||z - sigma w|| <= dv + slack  <=>  cost <= d (dv + slack)^2
    const double cost_cap = a.d() * (dv + slack) * (dv + slack);
    const double best = dv * dv * a.d();
    return assignments_within_slack(cost, cost_cap - best);
}

std::vector<double> almgren_map(const UnorderedTuple& t, cplx theta) {
    std::vector<double> vals(t.values.size());
    for (size_t i = 0; i < t.values.size(); ++i)
        vals[i] = (theta * t.values[i]).real();
    std::sort(vals.begin(), vals.end());
    return vals;
}

std::vector<double> almgren_embed(const UnorderedTuple& t, const AlmgrenConfig& cfg) {
    if (cfg.d != t.d()) throw DimensionMismatch("almgren_embed: config dimension differs");
    std::vector<double> out;
    out.reserve(cfg.N());
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.h));
    for (const cplx& theta : cfg.thetas) {
        const auto vals = almgren_map(t, theta);
        for (double v : vals) out.push_back(scale * v);
    }
    return out;
}

double wasserstein2(const UnorderedTuple& a, const UnorderedTuple& b) {
    if (!canonical_order(a, b)) return wasserstein2(b, a);
    const auto cost = squared_cost(a, b);
    const double total = min_cost_transport(cost);
    return std::sqrt(std::max(0.0, total) / a.d());
}

std::vector<cplx> coeffs_of(const UnorderedTuple& t) {
    return from_roots(t.values).coeffs;
}

std::vector<double> sort_increasing(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return values;
}

namespace {

// theta^j for theta = exp(2 pi i / d); exactly 1 at j = 0 mod d.
cplx unit_rotation(int j, int d) {
    j %= d;
    if (j == 0) return cplx(1.0);
    return std::polar(1.0, 2.0 * std::numbers::pi * j / d);
}

}  // namespace

double dist_rad(cplx lambda, cplx mu, int d) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= d; ++j)
        best = std::min(best, std::abs(lambda - unit_rotation(j, d) * mu));
    return best;
}

std::vector<int> minimizing_rotations(cplx lambda, cplx mu, int d, double slack) {
    const double best = dist_rad(lambda, mu, d);
    std::vector<int> out;
    for (int r = 0; r < d; ++r)
        if (std::abs(lambda - unit_rotation(r, d) * mu) <= best + slack) out.push_back(r);
    return out;
}

}  // namespace rootlab
