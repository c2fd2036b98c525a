#include "rootlab/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rootlab {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

MonicPolynomial::MonicPolynomial(std::vector<cplx> a)
    : degree(static_cast<int>(a.size())), coeffs(std::move(a)) {}

bool MonicPolynomial::valid() const {
    if (degree < 1 || coeffs.size() != static_cast<size_t>(degree)) return false;
    return std::all_of(coeffs.begin(), coeffs.end(), [](cplx c) { return finite(c); });
}

cplx eval(const MonicPolynomial& p, cplx z) {
    cplx acc = 1.0;
    for (const cplx& a : p.coeffs) acc = acc * z + a;
    return acc;
}

cplx eval_derivative(const MonicPolynomial& p, cplx z) {
    const int d = p.degree;
    cplx acc = static_cast<double>(d);
    for (int j = 1; j < d; ++j) acc = acc * z + static_cast<double>(d - j) * p.coeffs[j - 1];
    return acc;
}

double cauchy_bound(const MonicPolynomial& p) {
    double m = 0.0;
    for (int j = 1; j <= p.degree; ++j)
        m = std::max(m, std::pow(std::abs(p.coeffs[j - 1]), 1.0 / j));
    return 2.0 * m;
}

namespace {

// One Aberth-Ehrlich sweep, in-place; returns max |P(z_i)|.
double aberth_sweep(const MonicPolynomial& p, std::vector<cplx>& z) {
    const int d = p.degree;
    double max_resid = 0.0;
    for (int i = 0; i < d; ++i) {
        cplx pv = eval(p, z[i]);
        max_resid = std::max(max_resid, std::abs(pv));
        if (pv == cplx(0.0)) continue;
        cplx dv = eval_derivative(p, z[i]);
        if (dv == cplx(0.0)) {
            // nudge off the critical point, deterministically
            z[i] += cplx(1e-8, 1e-8) * (1.0 + std::abs(z[i]));
            pv = eval(p, z[i]);
            dv = eval_derivative(p, z[i]);
            if (dv == cplx(0.0)) continue;
        }
        const cplx newton = pv / dv;
        cplx repulsion = 0.0;
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            const cplx diff = z[i] - z[j];
            if (diff == cplx(0.0)) continue;
            repulsion += 1.0 / diff;
        }
        const cplx denom = 1.0 - newton * repulsion;
        const cplx step = (denom == cplx(0.0)) ? newton : newton / denom;
        z[i] -= step;
    }
    return max_resid;
}

}  // namespace

RootMultiset roots(const MonicPolynomial& p, double tol) {
    if (!p.valid()) throw DimensionMismatch("roots: invalid polynomial");
    if (tol <= 0.0) throw DimensionMismatch("roots: tol must be positive");
    const int d = p.degree;
    const double bound = cauchy_bound(p);
    const double scale = std::pow(std::max(1.0, bound), d);
    const double target = tol * scale;

    RootMultiset out;
    if (bound == 0.0) {  // all coefficients zero: Z^d
        out.roots.assign(d, cplx(0.0));
        out.residual = 0.0;
        return out;
    }

    const double radius = 0.5 * bound;
    constexpr int kMaxIters = 400;
    constexpr int kRestarts = 6;
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::vector<cplx> z(d);
    for (int restart = 0; restart < kRestarts; ++restart) {
        const double phase = 0.35 + restart * 0.618033988749895;
        const double r = radius * (1.0 + 0.25 * restart);
        for (int k = 0; k < d; ++k) {
            const double ang = two_pi * (k + phase) / d;
            z[k] = r * cplx(std::cos(ang), std::sin(ang));
        }
        double resid = std::numeric_limits<double>::infinity();
        for (int it = 0; it < kMaxIters; ++it) {
            resid = aberth_sweep(p, z);
            if (resid <= target) break;
        }
        // sweep reports residual before the final update; re-check after
        double final_resid = 0.0;
        for (int i = 0; i < d; ++i) final_resid = std::max(final_resid, std::abs(eval(p, z[i])));
        if (final_resid <= target) {
            std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
                if (a.real() != b.real()) return a.real() < b.real();
                return a.imag() < b.imag();
            });
            out.roots = z;
            out.residual = final_resid / scale;
            return out;
        }
    }
    throw NonConvergence("roots: Aberth iteration failed to reach tolerance");
}

Tschirnhausen tschirnhausen(const MonicPolynomial& p) {
    const int d = p.degree;
    const cplx shift = -p.coeffs[0] / static_cast<double>(d);
    // Taylor shift by repeated synthetic division: coefficients of p(Z + shift)
    std::vector<cplx> c(d + 1);
    c[0] = 1.0;
    for (int j = 1; j <= d; ++j) c[j] = p.coeffs[j - 1];
    for (int i = 0; i < d; ++i)
        for (int j = 1; j <= d - i; ++j) c[j] += shift * c[j - 1];
    std::vector<cplx> a(c.begin() + 1, c.end());
    a[0] = 0.0;
    return {MonicPolynomial(std::move(a)), shift};
}

MonicPolynomial from_roots(std::vector<cplx> rs) {
    std::sort(rs.begin(), rs.end(), [](cplx a, cplx b) {
        const double ma = std::norm(a), mb = std::norm(b);
        if (ma != mb) return ma < mb;
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<cplx> c(rs.size() + 1, 0.0);
    c[0] = 1.0;
    size_t len = 0;
    for (cplx r : rs) {
        ++len;
        for (size_t j = len; j >= 1; --j) c[j] -= r * c[j - 1];
    }
    return MonicPolynomial(std::vector<cplx>(c.begin() + 1, c.end()));
}

std::optional<int> dominant_index(const MonicPolynomial& p_tilde) {
    const int d = p_tilde.degree;
    int best = -1;
    double best_val = 0.0;
    for (int k = 2; k <= d; ++k) {
        const double v = std::pow(std::abs(p_tilde.coeffs[k - 1]), 1.0 / k);
        if (v > best_val) {
            best_val = v;
            best = k;
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

MonicPolynomial multiply(const MonicPolynomial& a, const MonicPolynomial& b) {
    const int da = a.degree, db = b.degree;
    std::vector<cplx> ca(da + 1), cb(db + 1);
    ca[0] = 1.0;
    std::copy(a.coeffs.begin(), a.coeffs.end(), ca.begin() + 1);
    cb[0] = 1.0;
    std::copy(b.coeffs.begin(), b.coeffs.end(), cb.begin() + 1);
    std::vector<cplx> prod(da + db + 1, 0.0);
    for (int i = 0; i <= da; ++i)
        for (int j = 0; j <= db; ++j) prod[i + j] += ca[i] * cb[j];
    return MonicPolynomial(std::vector<cplx>(prod.begin() + 1, prod.end()));
}

SplitResult split(const MonicPolynomial& p, double gap_factor, double tol) {
    if (gap_factor <= 1.0) throw DimensionMismatch("split: gap_factor must exceed 1");
    const RootMultiset rm = roots(p, tol);
    const int d = p.degree;
    const double threshold =
        gap_factor * std::pow(tol, 1.0 / d) * std::max(1.0, cauchy_bound(p));

    // single-linkage clustering of the root multiset
    std::vector<int> cluster(d);
    for (int i = 0; i < d; ++i) cluster[i] = i;
    bool merged = true;
    while (merged) {
        merged = false;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                if (cluster[i] == cluster[j]) continue;
                if (std::abs(rm.roots[i] - rm.roots[j]) <= threshold) {
                    const int from = cluster[j], to = cluster[i];
                    for (int& c : cluster)
                        if (c == from) c = to;
                    merged = true;
                }
            }
    }

    SplitResult out;
    std::vector<int> seen;
    for (int i = 0; i < d; ++i) {
        if (std::find(seen.begin(), seen.end(), cluster[i]) != seen.end()) continue;
        seen.push_back(cluster[i]);
        std::vector<cplx> members;
        for (int j = 0; j < d; ++j)
            if (cluster[j] == cluster[i]) members.push_back(rm.roots[j]);
        out.factors.push_back(from_roots(std::move(members)));
    }

    MonicPolynomial prod = out.factors.front();
    for (size_t i = 1; i < out.factors.size(); ++i) prod = multiply(prod, out.factors[i]);
    double err = 0.0;
    for (int j = 0; j < d; ++j) err = std::max(err, std::abs(prod.coeffs[j] - p.coeffs[j]));
    out.coeff_residual = err;
    return out;
}

}  // namespace rootlab
