#include "rootlab/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace rootlab {

std::vector<double> cell_weights(const std::vector<double>& grid) {
    const size_t n = grid.size();
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    w[0] = 0.5 * (grid[1] - grid[0]);
    w[n - 1] = 0.5 * (grid[n - 1] - grid[n - 2]);
    for (size_t k = 1; k + 1 < n; ++k) w[k] = 0.5 * (grid[k + 1] - grid[k - 1]);
    return w;
}

namespace {

template <class T>
std::vector<T> fd_impl(const std::vector<double>& x, const std::vector<T>& f) {
    const size_t n = x.size();
    if (n < 3 || f.size() != n) throw GridMismatch("fd_derivative: need >= 3 grid points");
    std::vector<T> out(n);
    for (size_t m = 0; m < n; ++m) {
        const size_t i = std::clamp<size_t>(m, 1, n - 2);
        const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1], at = x[m];
        const double c0 = (2.0 * at - x1 - x2) / ((x0 - x1) * (x0 - x2));
        const double c1 = (2.0 * at - x0 - x2) / ((x1 - x0) * (x1 - x2));
        const double c2 = (2.0 * at - x0 - x1) / ((x2 - x0) * (x2 - x1));
        out[m] = c0 * f[i - 1] + c1 * f[i] + c2 * f[i + 1];
    }
    return out;
}

}  // namespace

SampledReal fd_derivative(const SampledReal& f) {
    // fd_impl may throw; run it before copying the grid (gcc leaks partially
    // constructed aggregates in return statements, PR 66139)
    std::vector<double> values = fd_impl(f.grid, f.values);
    return {f.grid, std::move(values)};
}

std::vector<cplx> fd_derivative(const std::vector<double>& grid,
                                const std::vector<cplx>& values) {
    return fd_impl(grid, values);
}

std::vector<std::vector<cplx>> fd_derivative(const std::vector<double>& grid,
                                             const std::vector<std::vector<cplx>>& values) {
    const size_t n = grid.size();
    if (n < 3 || values.size() != n) throw GridMismatch("fd_derivative: need >= 3 grid points");
    const size_t d = values[0].size();
    std::vector<std::vector<cplx>> out(n, std::vector<cplx>(d));
    std::vector<cplx> column(n);
    for (size_t j = 0; j < d; ++j) {
        for (size_t m = 0; m < n; ++m) column[m] = values[m][j];
        const std::vector<cplx> der = fd_impl(grid, column);
        for (size_t m = 0; m < n; ++m) out[m][j] = der[m];
    }
    return out;
}

double lq_norm(const SampledReal& f, double q) {
    return lq_norm_masked(f, {}, q);
}

double lq_norm_masked(const SampledReal& f, const std::vector<std::uint8_t>& mask, double q) {
    if (q < 1.0) throw DimensionMismatch("lq_norm: q must be >= 1");
    const std::vector<double> w = cell_weights(f.grid);
    double acc = 0.0;
    for (size_t k = 0; k < f.values.size(); ++k) {
        if (!mask.empty() && !mask[k]) continue;
        acc += w[k] * std::pow(std::abs(f.values[k]), q);
    }
    return std::pow(acc, 1.0 / q);
}

double weak_lp(const SampledReal& f, double p) {
    if (p < 1.0) throw DimensionMismatch("weak_lp: p must be >= 1");
    const std::vector<double> w = cell_weights(f.grid);
    std::vector<size_t> order(f.values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return std::abs(f.values[a]) > std::abs(f.values[b]);
    });
    double cum = 0.0, best = 0.0;
    for (size_t k : order) {
        cum += w[k];
        best = std::max(best, std::abs(f.values[k]) * std::pow(cum, 1.0 / p));
    }
    return best;
}

std::vector<double> ck_gamma_norm(const CoefficientCurve& curve, int k, double gamma,
                                  bool allow_fd, std::size_t max_pairs) {
    curve.validate();
    if (gamma <= 0.0 || gamma > 1.0) throw DimensionMismatch("ck_gamma_norm: gamma in (0,1]");
    if (k < 0) throw DimensionMismatch("ck_gamma_norm: k must be >= 0");
    const int d = curve.d();
    const size_t M = curve.grid.size();

    // derivative tables up to order k: exact where provided, FD beyond
    std::vector<std::vector<std::vector<cplx>>> table(k + 1);
    table[0] = curve.samples;
    for (int s = 1; s <= k; ++s) {
        if (curve.has_derivs(s)) {
            table[s] = curve.derivs[s - 1];
        } else if (allow_fd) {
            table[s] = fd_derivative(curve.grid, table[s - 1]);
        } else {
            throw InsufficientData("ck_gamma_norm: derivative order unavailable");
        }
    }

    // deterministic stride subsampling of the pair set; consecutive pairs
    // are always kept (they dominate the seminorm for gamma = 1)
    const size_t total_pairs = M < 2 ? 0 : M * (M - 1) / 2;
    const size_t stride = std::max<size_t>(1, total_pairs / std::max<size_t>(1, max_pairs));

    std::vector<double> out(d, 0.0);
    for (int j = 0; j < d; ++j) {
        double sup = 0.0;
        for (int s = 0; s <= k; ++s)
            for (size_t m = 0; m < M; ++m) sup = std::max(sup, std::abs(table[s][m][j]));
        double semi = 0.0;
        size_t counter = 0;
        for (size_t a = 0; a < M; ++a)
            for (size_t b = a + 1; b < M; ++b) {
                if (counter++ % stride) continue;
                const double dx = curve.grid[b] - curve.grid[a];
                semi = std::max(semi,
                                std::abs(table[k][b][j] - table[k][a][j]) / std::pow(dx, gamma));
            }
        for (size_t a = 0; a + 1 < M; ++a) {
            const double dx = curve.grid[a + 1] - curve.grid[a];
            semi = std::max(semi,
                            std::abs(table[k][a + 1][j] - table[k][a][j]) / std::pow(dx, gamma));
        }
        out[j] = sup + semi;
    }
    return out;
}

SampledReal metric_speed(const std::vector<double>& grid,
                         const std::vector<UnorderedTuple>& tuples) {
    const size_t n = grid.size();
    if (n < 3 || tuples.size() != n) throw GridMismatch("metric_speed: need >= 3 grid points");
    SampledReal out{grid, std::vector<double>(n)};
    out.values[0] = dist(tuples[1], tuples[0]) / (grid[1] - grid[0]);
    out.values[n - 1] = dist(tuples[n - 1], tuples[n - 2]) / (grid[n - 1] - grid[n - 2]);
    for (size_t m = 1; m + 1 < n; ++m)
        out.values[m] = dist(tuples[m + 1], tuples[m - 1]) / (grid[m + 1] - grid[m - 1]);
    return out;
}

double q_energy(const std::vector<double>& grid, const std::vector<UnorderedTuple>& tuples,
                double q) {
    const SampledReal speed = metric_speed(grid, tuples);
    return std::pow(lq_norm(speed, q), q);
}

double length(const RootCurve& rc) {
    double acc = 0.0;
    for (size_t m = 0; m + 1 < rc.lambda.size(); ++m) {
        double s = 0.0;
        for (size_t i = 0; i < rc.lambda[m].size(); ++i)
            s += std::norm(rc.lambda[m + 1][i] - rc.lambda[m][i]);
        acc += std::sqrt(s);
    }
    return acc;
}

namespace {

void check_same_grid(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw GridMismatch("grids differ in size");
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) throw GridMismatch("grids differ");
}

double min_gap(const std::vector<cplx>& v) {
    double g = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
    return g;
}

double local_step(const std::vector<std::vector<cplx>>& lam, size_t m, int d) {
    double s = 0.0;
    auto step = [&](size_t a, size_t b) {
        double acc = 0.0;
        for (int i = 0; i < d; ++i) acc += std::norm(lam[a][i] - lam[b][i]);
        return std::sqrt(acc / d);
    };
    if (m > 0) s = std::max(s, step(m, m - 1));
    if (m + 1 < lam.size()) s = std::max(s, step(m + 1, m));
    return s;
}

}  // namespace

PairComparison s0s1(const RootCurve& f, const RootCurve& g, double slack) {
    check_same_grid(f.grid, g.grid);
    if (f.d() != g.d()) throw DimensionMismatch("s0s1: degrees differ");
    const int d = f.d();
    const size_t n = f.grid.size();
    const bool stencil = n >= 3;

    PairComparison cmp;
    cmp.grid = f.grid;
    cmp.s0.resize(n);
    cmp.s1.assign(n, 0.0);
    cmp.s1_defined.assign(n, stencil ? 1 : 0);
    cmp.collision_flag.assign(n, 0);

    std::vector<std::vector<cplx>> fp, gp;
    if (stencil) {
        fp = fd_derivative(f.grid, f.lambda);
        gp = fd_derivative(g.grid, g.lambda);
    }
    for (size_t m = 0; m < n; ++m) {
        const UnorderedTuple tf(f.lambda[m]), tg(g.lambda[m]);
        cmp.s0[m] = dist(tf, tg);
        if (!stencil) continue;
        const double sl = slack >= 0.0 ? slack : default_slack(cmp.s0[m]);
        double best = 0.0;
        for (const auto& sigma : minimizing_permutations(tf, tg, sl)) {
            double acc = 0.0;
            for (int i = 0; i < d; ++i) acc += std::norm(fp[m][i] - gp[m][sigma[i]]);
            best = std::max(best, std::sqrt(acc / d));
        }
        cmp.s1[m] = best;
        const double gap = std::min(min_gap(f.lambda[m]), min_gap(g.lambda[m]));
        const double step = std::max(local_step(f.lambda, m, d), local_step(g.lambda, m, d));
        if (d > 1 && gap <= 10.0 * step) cmp.collision_flag[m] = 1;
    }
    return cmp;
}

double d1q(const PairComparison& cmp, const std::vector<std::uint8_t>& mask, double q) {
    double sup = 0.0;
    SampledReal s1{cmp.grid, std::vector<double>(cmp.grid.size(), 0.0)};
    std::vector<std::uint8_t> eff(cmp.grid.size(), 1);
    for (size_t k = 0; k < cmp.grid.size(); ++k) {
        const bool in_e = mask.empty() || mask[k];
        eff[k] = in_e ? 1 : 0;
        if (in_e) {
            sup = std::max(sup, cmp.s0[k]);
            if (cmp.s1_defined[k]) s1.values[k] = cmp.s1[k];
        }
    }
    return sup + lq_norm_masked(s1, eff, q);
}

double d1q(const PairComparison& cmp, double q) { return d1q(cmp, {}, q); }

PairComparison s_rad(const std::vector<double>& grid, const std::vector<cplx>& lambda,
                     const std::vector<cplx>& mu, int d, double slack) {
    if (grid.size() != lambda.size() || grid.size() != mu.size())
        throw GridMismatch("s_rad: grid/sample size mismatch");
    const size_t n = grid.size();
    const bool stencil = n >= 3;

    PairComparison cmp;
    cmp.grid = grid;
    cmp.s0.resize(n);
    cmp.s1.assign(n, 0.0);
    cmp.s1_defined.assign(n, stencil ? 1 : 0);
    cmp.collision_flag.assign(n, 0);

    std::vector<cplx> lp, mp;
    if (stencil) {
        lp = fd_derivative(grid, lambda);
        mp = fd_derivative(grid, mu);
    }
    for (size_t m = 0; m < n; ++m) {
        cmp.s0[m] = dist_rad(lambda[m], mu[m], d);
        if (!stencil) continue;
        const double sl = slack >= 0.0 ? slack : default_slack(cmp.s0[m]);
        double best = 0.0;
        for (int r : minimizing_rotations(lambda[m], mu[m], d, sl)) {
            const cplx rot = (r == 0) ? cplx(1.0)
                                      : std::polar(1.0, 2.0 * std::numbers::pi * r / d);
            best = std::max(best, std::abs(lp[m] - rot * mp[m]));
        }
        cmp.s1[m] = best;
        double step = 0.0;
        if (m > 0) step = std::max(step, std::abs(lambda[m] - lambda[m - 1]));
        if (m + 1 < n) step = std::max(step, std::abs(lambda[m + 1] - lambda[m]));
        if (m > 0) step = std::max(step, std::abs(mu[m] - mu[m - 1]));
        if (m + 1 < n) step = std::max(step, std::abs(mu[m + 1] - mu[m]));
        // rotation-orbit gap ~ |lambda|: flag where branches are unresolved
        const double gap = std::min(std::abs(lambda[m]), std::abs(mu[m]));
        if (d > 1 && gap <= 10.0 * step) cmp.collision_flag[m] = 1;
    }
    return cmp;
}

double dist_s(const std::vector<double>& grid, const std::vector<UnorderedTuple>& a,
              const std::vector<UnorderedTuple>& b, double q) {
    check_same_grid(grid, grid);
    if (a.size() != grid.size() || b.size() != grid.size())
        throw GridMismatch("dist_s: sample count mismatch");
    double sup = 0.0;
    for (size_t m = 0; m < grid.size(); ++m) sup = std::max(sup, dist(a[m], b[m]));
    const SampledReal sa = metric_speed(grid, a);
    const SampledReal sb = metric_speed(grid, b);
    SampledReal diff{grid, std::vector<double>(grid.size())};
    for (size_t m = 0; m < grid.size(); ++m) diff.values[m] = sa.values[m] - sb.values[m];
    return sup + lq_norm(diff, q);
}

double dist_e(const std::vector<double>& grid, const std::vector<UnorderedTuple>& a,
              const std::vector<UnorderedTuple>& b, double q) {
    if (a.size() != grid.size() || b.size() != grid.size())
        throw GridMismatch("dist_e: sample count mismatch");
    double sup = 0.0;
    for (size_t m = 0; m < grid.size(); ++m) sup = std::max(sup, dist(a[m], b[m]));
    return sup + std::abs(q_energy(grid, a, q) - q_energy(grid, b, q));
}

}  // namespace rootlab
