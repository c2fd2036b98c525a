#include "rootlab/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rootlab/assignment.hpp"

namespace rootlab {

void CoefficientCurve::validate() const {
    if (grid.size() < 1 || grid.size() != samples.size())
        throw GridMismatch("curve: grid/sample size mismatch");
    for (size_t m = 1; m < grid.size(); ++m)
        if (!(grid[m] > grid[m - 1])) throw GridMismatch("curve: grid not increasing");
    const size_t dd = samples[0].size();
    if (dd == 0) throw DimensionMismatch("curve: degree must be >= 1");
    for (const auto& s : samples)
        if (s.size() != dd) throw DimensionMismatch("curve: ragged samples");
    for (const auto& order : derivs) {
        if (order.size() != grid.size()) throw GridMismatch("curve: deriv grid mismatch");
        for (const auto& s : order)
            if (s.size() != dd) throw DimensionMismatch("curve: ragged derivs");
    }
}

std::vector<cplx> CoefficientCurve::sample_at(double x, bool* interpolated) const {
    if (sampler) {
        if (interpolated) *interpolated = false;
        return sampler(x);
    }
    if (interpolated) *interpolated = true;
    if (grid.size() < 2) return samples.at(0);
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    size_t hi = std::clamp<size_t>(it - grid.begin(), 1, grid.size() - 1);
    const size_t lo = hi - 1;
    const double t = (x - grid[lo]) / (grid[hi] - grid[lo]);
    std::vector<cplx> out(samples[lo].size());
    for (size_t j = 0; j < out.size(); ++j)
        out[j] = (1.0 - t) * samples[lo][j] + t * samples[hi][j];
    return out;
}

namespace {

// 3-point Lagrange derivative of f at nodes[1] (or an endpoint), exact for
// quadratics; equals the central quotient on uniform grids.
cplx three_point_derivative(double x0, double x1, double x2, cplx f0, cplx f1, cplx f2,
                            double at) {
    const double d0 = (2.0 * at - x1 - x2) / ((x0 - x1) * (x0 - x2));
    const double d1 = (2.0 * at - x0 - x2) / ((x1 - x0) * (x1 - x2));
    const double d2 = (2.0 * at - x0 - x1) / ((x2 - x0) * (x2 - x1));
    return d0 * f0 + d1 * f1 + d2 * f2;
}

// sup_m of |column j| and an FD estimate of its Lipschitz constant
struct SupLip {
    double sup = 0.0;
    double lip = 0.0;
};

SupLip coeff_norms(const CoefficientCurve& c, int j) {
    SupLip out;
    const size_t M = c.grid.size();
    for (size_t m = 0; m < M; ++m) out.sup = std::max(out.sup, std::abs(c.samples[m][j]));
    if (c.has_derivs(1)) {
        for (size_t m = 0; m < M; ++m) out.lip = std::max(out.lip, std::abs(c.derivs[0][m][j]));
    } else if (M >= 3) {
        for (size_t m = 0; m < M; ++m) {
            const size_t i = std::clamp<size_t>(m, 1, M - 2);
            const cplx der = three_point_derivative(
                c.grid[i - 1], c.grid[i], c.grid[i + 1], c.samples[i - 1][j], c.samples[i][j],
                c.samples[i + 1][j], c.grid[m]);
            out.lip = std::max(out.lip, std::abs(der));
        }
    } else if (M == 2) {
        out.lip = std::abs(c.samples[1][j] - c.samples[0][j]) / (c.grid[1] - c.grid[0]);
    }
    return out;
}

double vector_lip(const CoefficientCurve& c) {
    const size_t M = c.grid.size();
    const int d = c.d();
    double lip = 0.0;
    if (c.has_derivs(1)) {
        for (size_t m = 0; m < M; ++m) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += std::norm(c.derivs[0][m][j]);
            lip = std::max(lip, std::sqrt(s));
        }
        return lip;
    }
    if (M < 2) return 0.0;
    for (size_t m = 0; m < M; ++m) {
        double s = 0.0;
        if (M >= 3) {
            const size_t i = std::clamp<size_t>(m, 1, M - 2);
            for (int j = 0; j < d; ++j) {
                const cplx der = three_point_derivative(
                    c.grid[i - 1], c.grid[i], c.grid[i + 1], c.samples[i - 1][j],
                    c.samples[i][j], c.samples[i + 1][j], c.grid[m]);
                s += std::norm(der);
            }
        } else {
            for (int j = 0; j < d; ++j)
                s += std::norm((c.samples[1][j] - c.samples[0][j]) / (c.grid[1] - c.grid[0]));
        }
        lip = std::max(lip, std::sqrt(s));
    }
    return lip;
}

}  // namespace

HolderConstants holder_constants(const CoefficientCurve& curve) {
    curve.validate();
    const int d = curve.d();
    HolderConstants out;
    double max_c01 = 0.0;
    double max_sup = 0.0;
    for (int j = 0; j < d; ++j) {
        const SupLip n = coeff_norms(curve, j);
        max_c01 = std::max(max_c01, std::pow(n.sup + n.lip, 1.0 / (j + 1)));
        max_sup = std::max(max_sup, std::pow(n.sup, 1.0 / (j + 1)));
    }
    out.H = 4.0 * d * max_c01;
    const double A = vector_lip(curve);
    const double B = 2.0 * max_sup;
    double geom = 0.0;
    double bpow = 1.0;
    for (int i = 0; i < d; ++i) {
        geom += bpow;
        bpow *= B;
    }
    out.H1 = 2.0 * d * std::pow(A, 1.0 / d) * std::pow(geom, 1.0 / d);
    return out;
}

namespace {

// reorder candidate roots by minimum-cost assignment against ref
std::vector<cplx> match_to(const std::vector<cplx>& ref, const std::vector<cplx>& cand,
                           double* step_dist) {
    const int d = static_cast<int>(ref.size());
    std::vector<std::vector<double>> cost(d, std::vector<double>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) cost[i][j] = std::norm(ref[i] - cand[j]);
    const AssignmentResult res = solve_assignment(cost);
    std::vector<cplx> out(d);
    for (int i = 0; i < d; ++i) out[i] = cand[res.row_to_col[i]];
    if (step_dist) *step_dist = std::sqrt(std::max(0.0, res.total_cost) / d);
    return out;
}

struct Tracker {
    const CoefficientCurve& curve;
    double tol;
    double H;
    double H1;
    int d;
    int max_bisect;
    RootCurve out;

    std::vector<cplx> solve_at(const std::vector<cplx>& coeffs) {
        const RootMultiset rm = roots(MonicPolynomial(coeffs), tol);
        out.residual_bound = std::max(out.residual_bound, rm.residual);
        return rm.roots;
    }

    void accept(double x, std::vector<cplx> lam, double step_dist, double dx) {
        out.match_quality.push_back(step_dist);
        const double cap = H * std::pow(dx, 1.0 / d);
        out.holder_margin.push_back(cap > 0.0 ? step_dist / cap : 0.0);
        out.grid.push_back(x);
        out.lambda.push_back(std::move(lam));
    }

    void step(double x_to, const std::vector<cplx>& a_to, int depth) {
        const double x_from = out.grid.back();
        double step_dist = 0.0;
        std::vector<cplx> lam = match_to(out.lambda.back(), solve_at(a_to), &step_dist);
        const double dx = x_to - x_from;
        const double allowed = H1 * std::pow(dx, 1.0 / d) + 10.0 * tol;
        if (step_dist <= allowed || dx <= 1e-15 * (1.0 + std::abs(x_to))) {
            accept(x_to, std::move(lam), step_dist, dx);
            return;
        }
        if (depth >= max_bisect)
            throw RefinementLimit("track: adaptive criterion unmet after bisection budget");
        out.refined = true;
        const double mid = 0.5 * (x_from + x_to);
        bool interpolated = false;
        const std::vector<cplx> a_mid = curve.sample_at(mid, &interpolated);
        if (interpolated) out.interpolated_refinement = true;
        step(mid, a_mid, depth + 1);
        step(x_to, a_to, depth + 1);
    }
};

}  // namespace

RootCurve track(const CoefficientCurve& curve, double tol,
                const std::optional<std::vector<cplx>>& seed, const TrackOptions& options) {
    curve.validate();
    if (tol <= 0.0) throw DimensionMismatch("track: tol must be positive");
    const HolderConstants hc = holder_constants(curve);
    const double h1 = options.h1_override >= 0.0 ? options.h1_override : hc.H1;
    Tracker tr{curve, tol, hc.H, h1, curve.d(), options.max_bisect, {}};

    std::vector<cplx> first = tr.solve_at(curve.samples[0]);
    if (seed) {
        if (static_cast<int>(seed->size()) != curve.d())
            throw DimensionMismatch("track: seed size differs from degree");
        first = match_to(*seed, first, nullptr);
    }
    tr.out.grid.push_back(curve.grid[0]);
    tr.out.lambda.push_back(std::move(first));
    for (size_t m = 1; m < curve.grid.size(); ++m)
        tr.step(curve.grid[m], curve.samples[m], 0);
    return std::move(tr.out);
}

std::vector<UnorderedTuple> unordered_samples(const RootCurve& rc) {
    std::vector<UnorderedTuple> out;
    out.reserve(rc.lambda.size());
    for (const auto& lam : rc.lambda) out.emplace_back(lam);
    return out;
}

std::vector<cplx> nth_roots(cplx w, int d) {
    std::vector<cplx> out(d);
    if (w == cplx(0.0)) return out;
    const double r = std::pow(std::abs(w), 1.0 / d);
    const double phi = std::arg(w) / d;
    for (int k = 0; k < d; ++k)
        out[k] = std::polar(r, phi + 2.0 * std::numbers::pi * k / d);
    return out;
}

std::vector<cplx> track_radical(const std::vector<cplx>& g_samples, int d, cplx seed) {
    if (d < 1) throw DimensionMismatch("track_radical: d must be >= 1");
    std::vector<cplx> out;
    out.reserve(g_samples.size());
    cplx prev = seed;
    for (const cplx& g : g_samples) {
        const std::vector<cplx> cand = nth_roots(g, d);
        cplx best = cand[0];
        double best_dist = std::abs(cand[0] - prev);
        for (int k = 1; k < d; ++k) {
            const double dk = std::abs(cand[k] - prev);
            if (dk < best_dist) {
                best_dist = dk;
                best = cand[k];
            }
        }
        out.push_back(best);
        prev = best;
    }
    return out;
}

}  // namespace rootlab
