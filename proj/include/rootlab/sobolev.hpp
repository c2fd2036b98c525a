// Sobolev / metric analytics on sampled curves: finite differences, Lq and
// weak-Lp norms, Hoelder norm estimation, metric speed, energies, the
// matched-derivative semimetrics, and curve distances on AC^q.
#pragma once

#include <cstdint>
#include <vector>

#include "rootlab/adspace.hpp"
#include "rootlab/tracking.hpp"

namespace rootlab {

struct SampledReal {
    std::vector<double> grid;
    std::vector<double> values;
};

// Trapezoid cell widths: half-gaps to the neighbours, half cells at the ends.
std::vector<double> cell_weights(const std::vector<double>& grid);

// 3-point finite differences, order 2 everywhere (central on uniform interior
// points, one-sided at the ends).
SampledReal fd_derivative(const SampledReal& f);
std::vector<cplx> fd_derivative(const std::vector<double>& grid,
                                const std::vector<cplx>& values);
std::vector<std::vector<cplx>> fd_derivative(const std::vector<double>& grid,
                                             const std::vector<std::vector<cplx>>& values);

// Composite trapezoid approximation of (integral |f|^q)^{1/q}.
double lq_norm(const SampledReal& f, double q);
// Same restricted to the index set where mask != 0.
double lq_norm_masked(const SampledReal& f, const std::vector<std::uint8_t>& mask, double q);

// Weak-Lp quasinorm estimate: sort sampled |f| decreasingly, return
// max_k f_(k) (sum of the first k cell weights)^{1/p}.
double weak_lp(const SampledReal& f, double p);

// Per-coefficient C^{k,gamma} norms of a coefficient curve; pairwise Hoelder
// seminorm subsampled deterministically to at most max_pairs pairs.
std::vector<double> ck_gamma_norm(const CoefficientCurve& curve, int k, double gamma,
                                  bool allow_fd = true, std::size_t max_pairs = 1000000);

// Symmetric difference quotients of the unordered-tuple distance.
SampledReal metric_speed(const std::vector<double>& grid,
                         const std::vector<UnorderedTuple>& tuples);

double q_energy(const std::vector<double>& grid, const std::vector<UnorderedTuple>& tuples,
                double q);

// Polygonal length of the ordered parameterization in C^d.
double length(const RootCurve& rc);

struct PairComparison {
    std::vector<double> grid;
    std::vector<double> s0;
    std::vector<double> s1;                        // 0 where not defined
    std::vector<std::uint8_t> s1_defined;          // FD stencil available
    std::vector<std::uint8_t> collision_flag;      // FD dubious: root gap ~ step size
};

// s0 = pointwise tuple distance; s1 = max over slack-minimizing permutations
// of the matched FD-derivative discrepancy.
PairComparison s0s1(const RootCurve& f, const RootCurve& g, double slack = -1.0);

// sup of s0 over E plus Lq norm of s1 over E (mask empty = all points).
double d1q(const PairComparison& cmp, const std::vector<std::uint8_t>& mask, double q);
double d1q(const PairComparison& cmp, double q);

// Radical analogue on rotation orbits: s0 = dist_rad, s1 = max over
// slack-minimizing rotation exponents of |lambda' - theta^j mu'|.
PairComparison s_rad(const std::vector<double>& grid, const std::vector<cplx>& lambda,
                     const std::vector<cplx>& mu, int d, double slack = -1.0);

// Metrics on AC^q: sup pointwise distance plus the speed-difference Lq norm
// (dist_s) or the q-energy difference (dist_e).
double dist_s(const std::vector<double>& grid, const std::vector<UnorderedTuple>& a,
              const std::vector<UnorderedTuple>& b, double q);
double dist_e(const std::vector<double>& grid, const std::vector<UnorderedTuple>& a,
              const std::vector<UnorderedTuple>& b, double q);

}  // namespace rootlab
