// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rootlab/io.hpp"
#include "rootlab/lab.hpp"

using namespace rootlab;
using oracles::Rng;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::vector<cplx> random_values(Rng& rng, int d, double box) {
    std::vector<cplx> v;
    for (int i = 0; i < d; ++i) v.push_back(rng.complex_in_box(box));
    return v;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- criteria

Outcome criterion1_metric_axioms() {
    Outcome out;
    Rng rng(1001);
    double worst_triangle = 0.0, worst_brute = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 5);
        const UnorderedTuple a(random_values(rng, d, 2.0));
        const UnorderedTuple b(random_values(rng, d, 2.0));
        const UnorderedTuple c(random_values(rng, d, 2.0));
        const double ab = dist(a, b), bc = dist(b, c), ac = dist(a, c);
        out.require(ab == dist(b, a), "symmetry not exact");
        out.require(ab >= 0.0, "negative distance");
        worst_triangle = std::max(worst_triangle, ac - ab - bc);
        if (d <= 5) {
            const double ref = oracles::brute_force_dist(a.values, b.values);
            worst_brute = std::max(worst_brute, std::abs(ab - ref));
        }
    }
    out.require(worst_triangle <= 1e-10, "triangle slack " + fmt(worst_triangle));
    out.require(worst_brute <= 1e-12, "brute-force gap " + fmt(worst_brute));
    out.note("max triangle violation " + fmt(worst_triangle) + ", max brute-force gap " +
             fmt(worst_brute));
    return out;
}

Outcome criterion2_wasserstein() {
    Outcome out;
    Rng rng(1002);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 5);
        const UnorderedTuple a(random_values(rng, d, 2.0));
        const UnorderedTuple b(random_values(rng, d, 2.0));
        worst = std::max(worst, std::abs(wasserstein2(a, b) - dist(a, b)));
    }
    out.require(worst <= 1e-12, "gap " + fmt(worst));
    out.note("max |W2 - d| = " + fmt(worst));
    return out;
}

Outcome criterion3_almgren_lipschitz() {
    Outcome out;
    Rng rng(1003);
    int violations = 0;
    for (int d : {2, 3, 4}) {
        const AlmgrenConfig cfg = AlmgrenConfig::standard(d);
        const double lip = std::sqrt(2.0 * d * d + 1.0);
        for (int trial = 0; trial < 10000; ++trial) {
            const UnorderedTuple a(random_values(rng, d, 2.0));
            const UnorderedTuple b(random_values(rng, d, 2.0));
            const auto ea = almgren_embed(a, cfg);
            const auto eb = almgren_embed(b, cfg);
            double nrm = 0.0;
            for (size_t i = 0; i < ea.size(); ++i) nrm += (ea[i] - eb[i]) * (ea[i] - eb[i]);
            if (std::sqrt(nrm) > lip * dist(a, b) + 1e-10) ++violations;
        }
    }
    out.require(violations == 0, std::to_string(violations) + " violations");
    out.note("0 violations over 3x10^4 pairs");
    return out;
}

Outcome criterion4_weaknorm() {
    Outcome out;
    for (int d : {2, 3}) {
        const double p = static_cast<double>(d) / (d - 1);
        const ExperimentReport rep = run_weaknorm_example(d, p, {1, 10, 100}, 100000);
        for (const auto& row : rep.rows) {
            const double weak_lam = row.values[0], weak_n = row.values[1];
            const double target = row.values[2], absdiff = row.values[3];
            out.require(std::abs(weak_lam - 1.0 / d) <= 0.02 / d,
                        "weak lambda off at d=" + std::to_string(d));
            out.require(std::abs(weak_n - target) <= 0.02 * target,
                        "weak lambda_n off at d=" + std::to_string(d) + " n=" + fmt(row.n));
            out.require(absdiff >= 0.5 / d,
                        "difference below 1/(2d) at d=" + std::to_string(d) +
                            " n=" + fmt(row.n) + " (" + fmt(absdiff) + ")");
        }
    }
    out.note("weak norms within 2%, differences above 1/(2d)");
    return out;
}

Outcome criterion5_holder_certificate() {
    Outcome out;
    int violations = 0;
    double worst_ratio = 0.0;
    for (const char* name : {"radical_shift", "parabola_shift"}) {
        const Family fam = Family::make(name, {{"d", 2.0}});
        const CoefficientCurve curve = fam.limit().sample(10000);
        const HolderConstants hc = holder_constants(curve);
        const RootCurve rc = track(curve);
        const auto tuples = unordered_samples(rc);
        const size_t n = rc.grid.size();
        // ~1e6 pairs per family out of n(n-1)/2, deterministic stride
        size_t counter = 0;
        const size_t stride = (n * (n - 1) / 2) / 1000000 + 1;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                if (counter++ % stride) continue;
                const double dv = dist(tuples[i], tuples[j]);
                const double cap = hc.H * std::sqrt(rc.grid[j] - rc.grid[i]);
                if (dv > cap) ++violations;
                if (cap > 0.0) worst_ratio = std::max(worst_ratio, dv / cap);
            }
    }
    out.require(violations == 0, std::to_string(violations) + " violations");
    out.note("0 violations, max ratio to the bound " + fmt(worst_ratio));
    return out;
}

Outcome criterion6_cauchy() {
    Outcome out;
    Rng rng(1006);
    int violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int d = 1 + static_cast<int>(rng.next() % 8);
        const MonicPolynomial p(random_values(rng, d, 3.0));
        const double bound = cauchy_bound(p);
        for (cplx r : roots(p).roots)
            if (std::abs(r) > bound + 1e-9 * (1.0 + bound)) ++violations;
    }
    out.require(violations == 0, std::to_string(violations) + " violations");
    out.note("0 violations over 10^4 polynomials");
    return out;
}

Outcome criterion7_tschirnhausen() {
    Outcome out;
    Rng rng(1007);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 5);
        const MonicPolynomial p(random_values(rng, d, 1.5));
        const auto [pt, shift] = tschirnhausen(p);
        out.require(pt.coeffs[0] == cplx(0.0), "first coefficient not exactly zero");
        std::vector<cplx> shifted = roots(p).roots;
        const cplx delta = p.coeffs[0] / static_cast<double>(d);
        for (cplx& r : shifted) r += delta;
        worst = std::max(worst,
                         dist(UnorderedTuple(roots(pt).roots), UnorderedTuple(shifted)));
    }
    out.require(worst <= 1e-8, "assignment distance " + fmt(worst));
    out.note("max root-shift assignment distance " + fmt(worst));
    return out;
}

Outcome criterion8_metric_speed() {
    Outcome out;
    CoefficientCurve c;
    c.alpha = 1.0;
    c.beta = 2.0;
    const int pts = 10000;
    c.grid.resize(pts);
    for (int m = 0; m < pts; ++m) c.grid[m] = 1.0 + static_cast<double>(m) / (pts - 1);
    for (double x : c.grid) c.samples.push_back({cplx(0.0), cplx(-x)});
    c.sampler = [](double x) { return std::vector<cplx>{cplx(0.0), cplx(-x)}; };
    const RootCurve rc = track(c);
    const SampledReal speed = metric_speed(rc.grid, unordered_samples(rc));
    const auto der = fd_derivative(rc.grid, rc.lambda);
    double worst = 0.0;
    for (size_t m = 0; m < rc.grid.size(); ++m) {
        double s = 0.0;
        for (const cplx& v : der[m]) s += std::norm(v);
        worst = std::max(worst, std::abs(speed.values[m] - std::sqrt(s / 2.0)));
    }
    out.require(worst <= 1e-3, "pointwise gap " + fmt(worst));
    out.note("max |speed - ||lambda'||/sqrt(2)| = " + fmt(worst));
    return out;
}

// Calibration for criterion 9: the n = 1000 member tracked at two nested
// grid resolutions; the column values between the two resolutions are the
// discretization noise floor. Thresholds are 3x that, floored at 10 tol.
std::map<std::string, double> noise_floor(const Family& fam, const std::vector<double>& q_list,
                                          int fine_pts, double tol) {
    const Family cal = fam.member(1000.0);
    const CoefficientCurve fine_curve = cal.sample(fine_pts);
    const int coarse_pts = (fine_pts - 1) / 2 + 1;
    const CoefficientCurve coarse_curve = cal.sample(coarse_pts);

    const RootCurve rc_fine = track(fine_curve, tol);
    const RootCurve rc_coarse = track(coarse_curve, tol);

    // fine_pts is odd: the coarse grid is every second fine point
    if (rc_fine.grid.size() != static_cast<size_t>(fine_pts) ||
        rc_coarse.grid.size() != static_cast<size_t>(coarse_pts))
        throw GridMismatch("noise_floor: unexpected refinement");
    RootCurve fine_sub;
    fine_sub.grid = coarse_curve.grid;
    for (size_t m = 0; m < rc_fine.grid.size(); m += 2)
        fine_sub.lambda.push_back(rc_fine.lambda[m]);

    const PairComparison cmp = s0s1(fine_sub, rc_coarse);
    std::vector<std::uint8_t> mask(cmp.grid.size());
    for (size_t k = 0; k < mask.size(); ++k)
        mask[k] = cmp.s1_defined[k] && !cmp.collision_flag[k];

    std::map<std::string, double> floor;
    double sup = 0.0;
    for (double v : cmp.s0) sup = std::max(sup, v);
    floor["sup_d"] = 3.0 * std::max(sup, 10.0 * tol);
    char name[32];
    for (double q : q_list) {
        std::snprintf(name, sizeof(name), "d1q_q%g", q);
        floor[name] = 3.0 * std::max(d1q(cmp, mask, q), 10.0 * tol);
    }
    return floor;
}

Outcome criterion9_convergence() {
    Outcome out;
    const std::vector<double> q_list = {1.0, 1.2};
    const std::vector<double> ns = {1,  2,   4,   8,   16,   32,
                                    64, 128, 256, 512, 1024, kLimitMember};
    for (const char* name : {"parabola_shift", "cubic_perturb"}) {
        RunOptions opts;
        opts.grid_points = 10001;
        const Family fam = Family::make(name);
        opts.thresholds = noise_floor(fam, q_list, opts.grid_points, opts.tol);
        const ExperimentReport rep = run_convergence(fam, q_list, ns, opts);
        for (const char* col : {"sup_d", "d1q_q1", "d1q_q1.2"}) {
            const auto& flag = rep.flags.at(col);
            out.require(flag.final_below, std::string(name) + " " + col + " final " +
                                              fmt(flag.final_value) + " > threshold " +
                                              fmt(flag.threshold));
            out.require(flag.dyadic_ok,
                        std::string(name) + " " + col + " exceeds 1.1x running minimum");
        }
        out.note(std::string(name) + ": d1q(n=1024) = " +
                 fmt(rep.column("d1q_q1")[rep.rows.size() - 2].second));
    }
    return out;
}

Outcome criterion10_almgren_equivalence() {
    Outcome out;
    const std::vector<double> ns = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    for (const char* name : {"parabola_shift", "cubic_perturb"}) {
        for (double q : {1.0, 1.2}) {
            RunOptions opts;
            opts.grid_points = 10001;
            const Family fam = Family::make(name);
            const ExperimentReport rep = run_almgren_equivalence(fam, q, ns, opts);
            out.require(rep.meta.at("co_agree") == 1.0,
                        std::string(name) + " q=" + fmt(q) + ": columns disagree");
            out.require(rep.meta.at("rank_correlation") >= 0.99,
                        std::string(name) + " q=" + fmt(q) + ": rank correlation " +
                            fmt(rep.meta.at("rank_correlation")));
        }
    }
    out.note("co-agreement at every n, rank correlation >= 0.99");
    return out;
}

Outcome criterion11_lift() {
    Outcome out;
    const int n = 10000, pts = 10000;
    std::vector<double> grid(pts);
    std::vector<cplx> g(pts);
    for (int m = 0; m < pts; ++m) {
        grid[m] = -1.0 + 2.0 * m / (pts - 1);
        g[m] = cplx(grid[m], 1.0 / n);
    }
    const auto roots0 = nth_roots(g[0], 2);
    const cplx seed = (roots0[0].real() >= 0 && roots0[0].imag() >= 0) ? roots0[0] : roots0[1];
    const auto lam = track_radical(g, 2, seed);
    double worst = 0.0;
    for (int m = 0; m < pts; ++m) {
        const double x = grid[m];
        if (std::abs(x) < 0.05) continue;
        const cplx target = x > 0 ? cplx(std::sqrt(x)) : cplx(0.0, std::sqrt(-x));
        worst = std::max(worst, std::abs(lam[m] - target));
    }
    out.require(worst < 1e-2, "sup error " + fmt(worst));
    out.note("sup error off the origin " + fmt(worst));
    return out;
}

Outcome criterion12_bound_scaling() {
    Outcome out;
    const std::vector<double> ns = {1, 8, kLimitMember};
    for (const char* name : {"parabola_shift", "cubic_perturb"}) {
        RunOptions opts;
        opts.grid_points = 2001;
        const ExperimentReport base = run_bound_check(Family::make(name), {1.0, 1.2}, ns, opts);
        for (double t : {0.5, 2.0, 10.0}) {
            const ExperimentReport scaled =
                run_bound_check(Family::make(name, {{"t", t}}), {1.0, 1.2}, ns, opts);
            for (size_t r = 0; r < base.rows.size(); ++r)
                for (size_t c = 0; c < base.rows[r].values.size(); ++c) {
                    const double a = base.rows[r].values[c];
                    const double b = scaled.rows[r].values[c];
                    out.require(std::abs(a - b) <= 1e-6 * std::max(std::abs(a), 1e-30),
                                std::string(name) + " t=" + fmt(t) + " ratio drift " +
                                    fmt(std::abs(a - b) / std::max(std::abs(a), 1e-300)));
                }
        }
    }
    out.note("ratios invariant under t^j rescaling for t in {0.5, 2, 10}");
    return out;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> fn;
    };
    const std::vector<Entry> entries = {
        {1, "metric axioms and brute-force agreement", 10, criterion1_metric_axioms},
        {2, "Wasserstein identification", 10, criterion2_wasserstein},
        {3, "Almgren Lipschitz bound", 20, criterion3_almgren_lipschitz},
        {4, "weak-norm closed forms", 30, criterion4_weaknorm},
        {5, "Hoelder certificate", 30, criterion5_holder_certificate},
        {6, "Cauchy bound", 10, criterion6_cauchy},
        {7, "Tschirnhausen root shift", 10, criterion7_tschirnhausen},
        {8, "metric-speed lemma", 5, criterion8_metric_speed},
        {9, "convergence experiments", 120, criterion9_convergence},  // 60 per family
        {10, "Almgren equivalence co-convergence", 60, criterion10_almgren_equivalence},
        {11, "lift example", 10, criterion11_lift},
        {12, "bound-check scaling invariance", 10, criterion12_bound_scaling},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = e.fn();
        } catch (const std::exception& ex) {
            out.pass = false;
            out.detail = std::string("exception: ") + ex.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > e.budget_s) {
            out.pass = false;
            out.detail += (out.detail.empty() ? "" : "; ");
            out.detail += "runtime " + fmt(secs) + "s over budget " + fmt(e.budget_s) + "s";
        }
        std::printf("[%s] criterion %2d: %s (%.2fs) %s\n", out.pass ? "PASS" : "FAIL", e.id,
                    e.name, secs, out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
