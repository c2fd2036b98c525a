// Continuous root tracking along one-parameter coefficient curves, with
// adaptive bisection driven by the uniform Hoelder bounds for the roots.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootlab/adspace.hpp"
#include "rootlab/polycore.hpp"

namespace rootlab {

struct CoefficientCurve {
    double alpha = 0.0;
    double beta = 1.0;
    std::vector<double> grid;
    std::vector<std::vector<cplx>> samples;  // samples[m][j], j = 0..d-1
    // derivs[s-1][m][j] = a_j^{(s)}(x_m); empty when unavailable
    std::vector<std::vector<std::vector<cplx>>> derivs;
    std::string family_name;  // builtin family tag, empty for raw data
    std::map<std::string, double> family_params;
    // exact resampler, set for builtin families
    std::function<std::vector<cplx>(double)> sampler;

    int d() const { return samples.empty() ? 0 : static_cast<int>(samples[0].size()); }
    bool has_derivs(int order) const {
        return order >= 1 && derivs.size() >= static_cast<size_t>(order);
    }
    void validate() const;
    // value at an off-grid point: exact via sampler, else linear
    // interpolation; *interpolated reports which path was taken
    std::vector<cplx> sample_at(double x, bool* interpolated = nullptr) const;
};

struct RootCurve {
    std::vector<double> grid;
    std::vector<std::vector<cplx>> lambda;  // lambda[m][i]
    std::vector<double> match_quality;      // per step, size grid.size()-1
    std::vector<double> holder_margin;      // step distance / (H dx^{1/d})
    double residual_bound = 0.0;            // max solver residual seen
    bool refined = false;                   // bisection inserted grid points
    bool interpolated_refinement = false;   // refinement used linear interp

    int d() const { return lambda.empty() ? 0 : static_cast<int>(lambda[0].size()); }
};

struct HolderConstants {
    double H = 0.0;   // 4d max_j ||a_j||_{C^{0,1}}^{1/j}
    double H1 = 0.0;  // 2d A^{1/d} (1 + B + ... + B^{d-1})^{1/d}
};

HolderConstants holder_constants(const CoefficientCurve& curve);

struct TrackOptions {
    int max_bisect = 20;       // refinement budget per original step
    double h1_override = -1.0; // negative: use holder_constants(curve).H1
};

RootCurve track(const CoefficientCurve& curve, double tol = 1e-12,
                const std::optional<std::vector<cplx>>& seed = std::nullopt,
                const TrackOptions& options = {});

std::vector<UnorderedTuple> unordered_samples(const RootCurve& rc);

// Branch-following d-th root of the sampled function g: each value is the
// root of Z^d = g(x_m) nearest the previous one (nearest the seed at m = 0).
std::vector<cplx> track_radical(const std::vector<cplx>& g_samples, int d, cplx seed);

// All d-th roots of w, k = 0..d-1.
std::vector<cplx> nth_roots(cplx w, int d);

}  // namespace rootlab
