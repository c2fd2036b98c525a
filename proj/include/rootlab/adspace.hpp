// The metric space of unordered d-tuples of complex numbers: optimal
// assignment metric, minimizing permutations, Almgren maps and embedding,
// Wasserstein identification, coefficient map, rotation-orbit distance.
#pragma once

#include <complex>
#include <vector>

#include "rootlab/errors.hpp"
#include "rootlab/polycore.hpp"

namespace rootlab {

struct UnorderedTuple {
    std::vector<cplx> values;

    UnorderedTuple() = default;
    explicit UnorderedTuple(std::vector<cplx> v) : values(std::move(v)) {}

    int d() const { return static_cast<int>(values.size()); }
};

// Almgren embedding data: h = 2d^2 + 1 unit directions theta_l (the h-th
// roots of unity), target dimension N = d*h.
struct AlmgrenConfig {
    int d = 0;
    int h = 0;
    std::vector<cplx> thetas;

    static AlmgrenConfig standard(int d);
    int N() const { return d * h; }
};

// d([z],[w]) = min over permutations of (1/sqrt d) ||z - sigma w||_2,
// solved exactly on the squared-distance cost matrix.
double dist(const UnorderedTuple& a, const UnorderedTuple& b);

// All permutations sigma (as index maps i -> sigma(i)) with
// (1/sqrt d) ||a - sigma b||_2 <= dist(a,b) + slack.
std::vector<std::vector<int>> minimizing_permutations(const UnorderedTuple& a,
                                                      const UnorderedTuple& b,
                                                      double slack);

// Default tie slack: 1e-9 * (1 + dist).
double default_slack(double dist_value);

// Values Re(theta * z_i) sorted non-decreasingly.
std::vector<double> almgren_map(const UnorderedTuple& t, cplx theta);

// h^{-1/2} * concatenation of the h Almgren maps.
std::vector<double> almgren_embed(const UnorderedTuple& t, const AlmgrenConfig& cfg);

// W_2 between the uniform atomic measures (1/d) sum of deltas; equals dist
// but is computed by an independent transport solver.
double wasserstein2(const UnorderedTuple& a, const UnorderedTuple& b);

// a_j([z]) = (-1)^j e_j(z); agrees with from_roots.
std::vector<cplx> coeffs_of(const UnorderedTuple& t);

std::vector<double> sort_increasing(std::vector<double> values);

// min over 1 <= j <= d of |lambda - theta^j mu| for theta = exp(2 pi i / d);
// the metric restricted to rotation orbits [lambda]_theta.
double dist_rad(cplx lambda, cplx mu, int d);

// Rotation exponents r with |lambda - theta^r mu| <= dist_rad + slack.
std::vector<int> minimizing_rotations(cplx lambda, cplx mu, int d, double slack);

}  // namespace rootlab
