#include "rootlab/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <thread>

namespace rootlab {

namespace {

// polynomial in the curve parameter x with complex coefficients
struct PolyX {
    std::vector<cplx> c;  // c[k] x^k

    cplx eval(double x) const {
        cplx acc = 0.0;
        for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    }
    PolyX deriv() const {
        PolyX d;
        for (size_t k = 1; k < c.size(); ++k) d.c.push_back(static_cast<double>(k) * c[k]);
        return d;
    }
    PolyX deriv(int s) const {
        PolyX d = *this;
        for (int i = 0; i < s; ++i) d = d.deriv();
        return d;
    }
    friend PolyX operator+(const PolyX& a, const PolyX& b) {
        PolyX r;
        r.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
        for (size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
        for (size_t k = 0; k < b.c.size(); ++k) r.c[k] += b.c[k];
        return r;
    }
    friend PolyX operator*(const PolyX& a, const PolyX& b) {
        PolyX r;
        if (a.c.empty() || b.c.empty()) return r;
        r.c.resize(a.c.size() + b.c.size() - 1, 0.0);
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
    friend PolyX operator-(const PolyX& a) {
        PolyX r = a;
        for (auto& v : r.c) v = -v;
        return r;
    }
};

enum FamilyKind {
    kRadicalShift = 1,
    kParabolaShift,
    kWeaknorm,
    kCubicPerturb,
    kKinkPerturb,
    kUserPerturb
};

const cplx kI(0.0, 1.0);

// degree-3 base curve with roots 1 + x/2, -1 + ix/2, i - x/2 + x^2/4:
// pairwise root gaps stay above 1 on [0,1], also under the b/n perturbation.
struct CubicData {
    PolyX a[3];
    PolyX b[3];
};

const CubicData& cubic_data() {
    static const CubicData data = [] {
        CubicData d;
        const PolyX r1{{cplx(1.0), cplx(0.5)}};
        const PolyX r2{{cplx(-1.0), 0.5 * kI}};
        const PolyX r3{{kI, cplx(-0.5), cplx(0.25)}};
        d.a[0] = -(r1 + r2 + r3);
        d.a[1] = r1 * r2 + r1 * r3 + r2 * r3;
        d.a[2] = -(r1 * r2 * r3);
        d.b[0] = PolyX{{cplx(0.2), 0.1 * kI}};
        d.b[1] = PolyX{{0.15 * kI, cplx(-0.1)}};
        d.b[2] = PolyX{{cplx(0.1), cplx(0.0), cplx(0.05)}};
        return d;
    }();
    return data;
}

double get_param(const std::map<std::string, double>& p, const std::string& key,
                 double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

}  // namespace

std::vector<std::string> Family::builtin_names() {
    return {"radical_shift", "parabola_shift", "weaknorm", "cubic_perturb", "kink_perturb"};
}

Family Family::make(const std::string& name, std::map<std::string, double> params) {
    Family f;
    f.name_ = name;
    f.n_ = get_param(params, "n", kLimitMember);
    params.erase("n");
    if (name == "radical_shift") {
        f.kind_ = kRadicalShift;
        f.d_ = static_cast<int>(get_param(params, "d", 2));
        f.radical_ = true;
        f.alpha_ = -1.0;
        f.beta_ = 1.0;
    } else if (name == "parabola_shift") {
        f.kind_ = kParabolaShift;
        f.d_ = static_cast<int>(get_param(params, "d", 2));
        f.radical_ = true;
        f.alpha_ = -1.0;
        f.beta_ = 1.0;
    } else if (name == "weaknorm") {
        f.kind_ = kWeaknorm;
        f.d_ = static_cast<int>(get_param(params, "d", 2));
        f.radical_ = true;
        f.alpha_ = 0.0;
        f.beta_ = 1.0;
    } else if (name == "cubic_perturb") {
        f.kind_ = kCubicPerturb;
        f.d_ = 3;
        f.radical_ = false;
        f.alpha_ = 0.0;
        f.beta_ = 1.0;
    } else if (name == "kink_perturb") {
        // probe: g_n = (1 + 1/n) x|x| converges in C^{d-1,1} but the members
        // and the limit are not C^d at 0
        f.kind_ = kKinkPerturb;
        f.d_ = static_cast<int>(get_param(params, "d", 2));
        f.radical_ = true;
        f.alpha_ = -1.0;
        f.beta_ = 1.0;
    } else {
        throw DimensionMismatch("unknown family: " + name);
    }
    if (f.d_ < 1) throw DimensionMismatch("family degree must be >= 1");
    f.alpha_ = get_param(params, "alpha", f.alpha_);
    f.beta_ = get_param(params, "beta", f.beta_);
    if (!(f.alpha_ < f.beta_)) throw DimensionMismatch("family: alpha must be < beta");
    f.params_ = std::move(params);
    f.params_["d"] = f.d_;
    return f;
}

Family Family::make_perturbation(std::vector<std::vector<cplx>> a_poly,
                                 std::vector<std::vector<cplx>> b_poly, double alpha,
                                 double beta) {
    if (a_poly.empty() || a_poly.size() != b_poly.size())
        throw DimensionMismatch("perturbation family: a and b need equal positive degree");
    if (!(alpha < beta)) throw DimensionMismatch("perturbation family: alpha must be < beta");
    Family f;
    f.name_ = "perturbation";
    f.kind_ = kUserPerturb;
    f.d_ = static_cast<int>(a_poly.size());
    f.radical_ = false;
    f.alpha_ = alpha;
    f.beta_ = beta;
    f.user_a_ = std::move(a_poly);
    f.user_b_ = std::move(b_poly);
    f.params_["d"] = f.d_;
    return f;
}

Family Family::member(double n) const {
    Family f = *this;
    f.n_ = n;
    return f;
}

cplx Family::g_deriv(int s, double x) const {
    if (!radical_) throw DimensionMismatch("family is not radical");
    const double t = get_param(params_, "t", 1.0);
    const double td = std::pow(t, d_);
    const double n = n_;
    switch (kind_) {
        case kRadicalShift: {
            const double sign = get_param(params_, "sign", 1.0);
            if (s == 0) return td * (x + (is_limit() ? cplx(0.0) : sign * kI / n));
            if (s == 1) return cplx(td);
            return 0.0;
        }
        case kParabolaShift: {
            if (s == 0) return td * (x * x + (is_limit() ? 0.0 : 1.0 / n));
            if (s == 1) return cplx(2.0 * td * x);
            if (s == 2) return cplx(2.0 * td);
            return 0.0;
        }
        case kWeaknorm: {
            const double p = static_cast<double>(d_) / (d_ - 1);
            if (s == 0) return td * (x + (is_limit() ? 0.0 : std::pow(n, -p)));
            if (s == 1) return cplx(td);
            return 0.0;
        }
        case kKinkPerturb: {
            const double scale = td * (is_limit() ? 1.0 : 1.0 + 1.0 / n);
            if (s == 0) return cplx(scale * x * std::abs(x));
            if (s == 1) return cplx(scale * 2.0 * std::abs(x));
            if (s == 2) return cplx(scale * 2.0 * (x > 0 ? 1.0 : x < 0 ? -1.0 : 0.0));
            return 0.0;
        }
        default:
            throw DimensionMismatch("family is not radical");
    }
}

cplx Family::g(double x) const { return g_deriv(0, x); }

std::vector<cplx> Family::coeff_deriv(int s, double x) const {
    if (radical_) {
        std::vector<cplx> a(d_, 0.0);
        a[d_ - 1] = -g_deriv(s, x);
        return a;
    }
    const double t = get_param(params_, "t", 1.0);
    std::vector<cplx> a(d_);
    double tj = t;
    for (int j = 0; j < d_; ++j) {
        PolyX aj, bj;
        if (kind_ == kCubicPerturb) {
            aj = cubic_data().a[j];
            bj = cubic_data().b[j];
        } else {
            aj = PolyX{user_a_[j]};
            bj = PolyX{user_b_[j]};
        }
        a[j] = aj.deriv(s).eval(x);
        if (!is_limit()) a[j] += bj.deriv(s).eval(x) / n_;
        a[j] *= tj;
        tj *= t;
    }
    return a;
}

std::vector<cplx> Family::coeffs(double x) const { return coeff_deriv(0, x); }

CoefficientCurve Family::sample(int grid_points) const {
    if (grid_points < 2) throw GridMismatch("family sample: need >= 2 grid points");
    CoefficientCurve c;
    c.alpha = alpha_;
    c.beta = beta_;
    c.grid.resize(grid_points);
    const double h = (beta_ - alpha_) / (grid_points - 1);
    for (int m = 0; m < grid_points; ++m) c.grid[m] = alpha_ + h * m;
    c.grid.back() = beta_;
    c.samples.resize(grid_points);
    for (int m = 0; m < grid_points; ++m) c.samples[m] = coeffs(c.grid[m]);
    c.derivs.resize(d_);
    for (int s = 1; s <= d_; ++s) {
        c.derivs[s - 1].resize(grid_points);
        for (int m = 0; m < grid_points; ++m) c.derivs[s - 1][m] = coeff_deriv(s, c.grid[m]);
    }
    c.family_name = name_;
    c.family_params = params_;
    if (!is_limit()) c.family_params["n"] = n_;
    Family self = *this;
    c.sampler = [self](double x) { return self.coeffs(x); };
    return c;
}

int ExperimentReport::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw DimensionMismatch("no such column: " + name);
    return static_cast<int>(it - columns.begin());
}

std::vector<std::pair<double, double>> ExperimentReport::column(const std::string& name) const {
    const int idx = column_index(name);
    std::vector<std::pair<double, double>> out;
    out.reserve(rows.size());
    for (const Row& r : rows) out.emplace_back(r.n, r.values[idx]);
    return out;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    std::size_t threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("ROOTLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) threads = static_cast<std::size_t>(v);
    }
    threads = std::min(std::max<std::size_t>(threads, 1), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

double rank_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    const size_t n = a.size();
    if (n != b.size() || n < 2) throw DimensionMismatch("rank_correlation: bad input");
    auto ranks = [](const std::vector<double>& v) {
        const size_t n = v.size();
        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return v[x] < v[y]; });
        std::vector<double> r(n);
        size_t i = 0;
        while (i < n) {
            size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = 0.5 * (i + j) + 1.0;
            for (size_t k = i; k <= j; ++k) r[order[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const std::vector<double> ra = ranks(a), rb = ranks(b);
    double ma = 0, mb = 0;
    for (size_t i = 0; i < n; ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0, va = 0, vb = 0;
    for (size_t i = 0; i < n; ++i) {
        cov += (ra[i] - ma) * (rb[i] - mb);
        va += (ra[i] - ma) * (ra[i] - ma);
        vb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (va == 0.0 || vb == 0.0) return 1.0;
    return cov / std::sqrt(va * vb);
}

ExperimentReport::ColumnFlag assess_column(const std::vector<std::pair<double, double>>& col,
                                           double threshold) {
    ExperimentReport::ColumnFlag flag;
    flag.threshold = threshold;
    if (col.empty()) return flag;
    flag.final_value = col.back().second;
    flag.final_below = flag.final_value <= threshold;
    // largest dyadic subsequence of the finite members
    std::vector<double> chain;
    double last_n = 0.0;
    for (const auto& [n, v] : col) {
        if (!std::isfinite(n)) continue;
        if (chain.empty() || n >= 2.0 * last_n) {
            chain.push_back(v);
            last_n = n;
        }
    }
    flag.dyadic_ok = true;
    double run_min = chain.empty() ? 0.0 : chain.front();
    for (size_t i = 1; i < chain.size(); ++i) {
        if (chain[i] > 1.1 * run_min) flag.dyadic_ok = false;
        run_min = std::min(run_min, chain[i]);
    }
    return flag;
}

namespace {

std::string qtag(double q) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", q);
    return buf;
}

// keeps only the rows of rc whose abscissae are in grid (refinement points
// inserted by track are dropped for grid-aligned comparisons)
RootCurve restrict_to_grid(RootCurve rc, const std::vector<double>& grid) {
    if (rc.grid == grid) return rc;
    RootCurve out;
    out.residual_bound = rc.residual_bound;
    out.refined = rc.refined;
    out.interpolated_refinement = rc.interpolated_refinement;
    size_t src = 0;
    for (double x : grid) {
        while (src < rc.grid.size() && rc.grid[src] != x) ++src;
        if (src == rc.grid.size()) throw GridMismatch("restrict_to_grid: point missing");
        out.grid.push_back(rc.grid[src]);
        out.lambda.push_back(rc.lambda[src]);
    }
    return out;
}

struct MemberAnalysis {
    RootCurve rc;
    std::vector<UnorderedTuple> tuples;
    SampledReal speed;
    std::vector<std::vector<cplx>> deriv;
    double curve_length = 0.0;
    std::map<double, double> lq;      // || ||lambda'||_2 ||_Lq
    std::map<double, double> energy;  // E_q
};

MemberAnalysis analyze_member(RootCurve rc, const std::vector<double>& q_list) {
    MemberAnalysis a;
    a.rc = std::move(rc);
    a.tuples = unordered_samples(a.rc);
    a.speed = metric_speed(a.rc.grid, a.tuples);
    a.deriv = fd_derivative(a.rc.grid, a.rc.lambda);
    a.curve_length = length(a.rc);
    SampledReal dn{a.rc.grid, std::vector<double>(a.rc.grid.size())};
    for (size_t m = 0; m < a.rc.grid.size(); ++m) {
        double s = 0.0;
        for (const cplx& v : a.deriv[m]) s += std::norm(v);
        dn.values[m] = std::sqrt(s);
    }
    for (double q : q_list) {
        a.lq[q] = lq_norm(dn, q);
        a.energy[q] = std::pow(lq_norm(a.speed, q), q);
    }
    return a;
}

std::vector<std::uint8_t> defined_mask(const PairComparison& cmp) {
    std::vector<std::uint8_t> mask(cmp.grid.size());
    for (size_t k = 0; k < mask.size(); ++k)
        mask[k] = cmp.s1_defined[k] && !cmp.collision_flag[k];
    return mask;
}

void validate_q(const std::vector<double>& q_list, int d) {
    for (double q : q_list)
        if (!(q >= 1.0) || (d > 1 && !(q < static_cast<double>(d) / (d - 1))))
            throw DimensionMismatch("q must satisfy 1 <= q < d/(d-1)");
}

void sort_rows(ExperimentReport& rep) {
    std::stable_sort(rep.rows.begin(), rep.rows.end(),
                     [](const ExperimentReport::Row& a, const ExperimentReport::Row& b) {
                         return a.n < b.n;
                     });
}

void apply_thresholds(ExperimentReport& rep, const std::map<std::string, double>& thresholds) {
    for (const auto& [name, thr] : thresholds) {
        if (std::find(rep.columns.begin(), rep.columns.end(), name) == rep.columns.end())
            continue;
        rep.flags[name] = assess_column(rep.column(name), thr);
    }
}

}  // namespace

ExperimentReport run_convergence(const Family& fam, const std::vector<double>& q_list,
                                 const std::vector<double>& n_list, const RunOptions& opts) {
    validate_q(q_list, fam.degree());
    ExperimentReport rep;
    rep.family = fam.name();
    rep.meta["d"] = fam.degree();
    rep.meta["grid"] = opts.grid_points;
    rep.meta["tol"] = opts.tol;
    rep.meta["slack"] = opts.slack;
    rep.meta["alpha"] = fam.alpha();
    rep.meta["beta"] = fam.beta();

    rep.columns.push_back("sup_d");
    for (double q : q_list) rep.columns.push_back("d1q_q" + qtag(q));
    for (double q : q_list) rep.columns.push_back("speeddiff_l" + qtag(q));
    for (double q : q_list) rep.columns.push_back("lqdiff_l" + qtag(q));
    for (double q : q_list) rep.columns.push_back("energydiff_q" + qtag(q));
    rep.columns.push_back("lengthdiff");

    const CoefficientCurve limit_curve = fam.limit().sample(opts.grid_points);
    const MemberAnalysis lim =
        analyze_member(restrict_to_grid(track(limit_curve, opts.tol), limit_curve.grid), q_list);

    const double h = (fam.beta() - fam.alpha()) / (opts.grid_points - 1);
    rep.budgets["sup_d"] = 0.005 + 20.0 * h;
    for (double q : q_list) {
        rep.budgets["d1q_q" + qtag(q)] = 0.01 + 40.0 * h;
        rep.budgets["speeddiff_l" + qtag(q)] = 0.01 + 40.0 * h;
        rep.budgets["lqdiff_l" + qtag(q)] = 0.01 + 40.0 * h;
        rep.budgets["energydiff_q" + qtag(q)] = 0.01 + 40.0 * h;
    }
    rep.budgets["lengthdiff"] = 0.01 + 40.0 * h;

    double largest_finite = -1.0;
    for (double n : n_list)
        if (std::isfinite(n)) largest_finite = std::max(largest_finite, n);

    rep.rows.resize(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t idx) {
        const auto row_t0 = std::chrono::steady_clock::now();
        const double n = n_list[idx];
        const CoefficientCurve curve = fam.member(n).sample(opts.grid_points);
        const MemberAnalysis mem =
            analyze_member(restrict_to_grid(track(curve, opts.tol), curve.grid), q_list);

        ExperimentReport::Row row;
        row.n = n;
        double sup_d = 0.0;
        for (size_t m = 0; m < lim.tuples.size(); ++m)
            sup_d = std::max(sup_d, dist(lim.tuples[m], mem.tuples[m]));
        row.values.push_back(sup_d);

        const PairComparison cmp = s0s1(lim.rc, mem.rc, opts.slack);
        const std::vector<std::uint8_t> mask = defined_mask(cmp);
        for (double q : q_list) row.values.push_back(d1q(cmp, mask, q));
        if (std::isfinite(n) && n == largest_finite) rep.largest_member_pair = cmp;

        SampledReal sd{lim.rc.grid, std::vector<double>(lim.rc.grid.size())};
        for (size_t m = 0; m < sd.values.size(); ++m)
            sd.values[m] = lim.speed.values[m] - mem.speed.values[m];
        for (double q : q_list) row.values.push_back(lq_norm(sd, q));

        for (double q : q_list)
            row.values.push_back(std::abs(lim.lq.at(q) - mem.lq.at(q)));
        for (double q : q_list)
            row.values.push_back(std::abs(lim.energy.at(q) - mem.energy.at(q)));
        row.values.push_back(std::abs(lim.curve_length - mem.curve_length));
        row.runtime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - row_t0).count();
        rep.rows[idx] = std::move(row);
    });
    sort_rows(rep);
    apply_thresholds(rep, opts.thresholds);
    return rep;
}

ExperimentReport run_parameterized_convergence(
    const Family& fam, const std::vector<double>& q_list, const std::vector<double>& n_list,
    const RunOptions& opts, const std::function<std::vector<cplx>(double)>& target) {
    validate_q(q_list, fam.degree());
    ExperimentReport rep;
    rep.family = fam.name();
    rep.meta["d"] = fam.degree();
    rep.meta["grid"] = opts.grid_points;
    rep.meta["tol"] = opts.tol;

    rep.columns.push_back("sup_param");
    for (double q : q_list) rep.columns.push_back("paramdiff_l" + qtag(q));
    rep.columns.push_back("sup_d");

    const CoefficientCurve limit_curve = fam.limit().sample(opts.grid_points);
    std::vector<std::vector<cplx>> lam_t;
    if (target) {
        lam_t.resize(limit_curve.grid.size());
        for (size_t m = 0; m < limit_curve.grid.size(); ++m) lam_t[m] = target(limit_curve.grid[m]);
    } else {
        lam_t = restrict_to_grid(track(limit_curve, opts.tol), limit_curve.grid).lambda;
    }
    const std::vector<std::vector<cplx>> lam_t_deriv = fd_derivative(limit_curve.grid, lam_t);

    rep.rows.resize(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t idx) {
        const auto row_t0 = std::chrono::steady_clock::now();
        const double n = n_list[idx];
        const CoefficientCurve curve = fam.member(n).sample(opts.grid_points);
        const RootCurve rc =
            restrict_to_grid(track(curve, opts.tol, lam_t.front()), curve.grid);
        const std::vector<std::vector<cplx>> der = fd_derivative(rc.grid, rc.lambda);

        ExperimentReport::Row row;
        row.n = n;
        double sup_param = 0.0, sup_d = 0.0;
        SampledReal dd{rc.grid, std::vector<double>(rc.grid.size())};
        for (size_t m = 0; m < rc.grid.size(); ++m) {
            double s = 0.0, sder = 0.0;
            for (int i = 0; i < rc.d(); ++i) {
                s += std::norm(lam_t[m][i] - rc.lambda[m][i]);
                sder += std::norm(lam_t_deriv[m][i] - der[m][i]);
            }
            sup_param = std::max(sup_param, std::sqrt(s));
            dd.values[m] = std::sqrt(sder);
            sup_d = std::max(sup_d, dist(UnorderedTuple(lam_t[m]), UnorderedTuple(rc.lambda[m])));
        }
        row.values.push_back(sup_param);
        for (double q : q_list) row.values.push_back(lq_norm(dd, q));
        row.values.push_back(sup_d);
        row.runtime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - row_t0).count();
        rep.rows[idx] = std::move(row);
    });
    sort_rows(rep);
    apply_thresholds(rep, opts.thresholds);
    if (rep.flags.count("sup_param"))
        rep.meta["c0_converged"] = rep.flags["sup_param"].final_below ? 1.0 : 0.0;
    return rep;
}

ExperimentReport run_weaknorm_example(int d, double p, const std::vector<double>& n_list,
                                      int grid_points) {
    if (d < 2) throw DimensionMismatch("weaknorm example: d >= 2");
    const double expect_p = static_cast<double>(d) / (d - 1);
    if (std::abs(p - expect_p) > 1e-12)
        throw DimensionMismatch("weaknorm example: p must equal d/(d-1)");

    ExperimentReport rep;
    rep.family = "weaknorm";
    rep.meta["d"] = d;
    rep.meta["p"] = p;
    rep.meta["grid"] = grid_points;
    rep.columns = {"weak_lambda", "weak_lambda_n", "target_n", "weak_absdiff"};
    rep.budgets["weak_lambda"] = 1e-3 / d;
    rep.budgets["weak_lambda_n"] = 1e-3 / d;
    rep.budgets["target_n"] = 0.0;
    // the absolute-difference column estimates a supremum approached from
    // below; it is strongly resolution-dependent by construction
    rep.budgets["weak_absdiff"] = 0.1;

    // interior grid x_k = k/M, k = 1..M, of the open interval (0,1)
    const int M = grid_points;
    std::vector<double> grid(M);
    for (int k = 1; k <= M; ++k) grid[k - 1] = static_cast<double>(k) / M;
    SampledReal lam_deriv{grid, std::vector<double>(M)};
    for (int k = 0; k < M; ++k)
        lam_deriv.values[k] = (1.0 / d) * std::pow(grid[k], 1.0 / d - 1.0);
    const double weak_lam = weak_lp(lam_deriv, p);

    rep.rows.resize(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t idx) {
        const auto row_t0 = std::chrono::steady_clock::now();
        const double n = n_list[idx];
        const double shift = std::isfinite(n) ? std::pow(n, -p) : 0.0;
        SampledReal dn{grid, std::vector<double>(M)}, diff{grid, std::vector<double>(M)};
        for (int k = 0; k < M; ++k) {
            dn.values[k] = (1.0 / d) * std::pow(grid[k] + shift, 1.0 / d - 1.0);
            diff.values[k] = std::abs(lam_deriv.values[k] - dn.values[k]);
        }
        const double target =
            std::isfinite(n) ? n / (d * std::pow(std::pow(n, p) + 1.0, 1.0 / p)) : 1.0 / d;
        ExperimentReport::Row row;
        row.n = n;
        row.values = {weak_lam, weak_lp(dn, p), target, weak_lp(diff, p)};
        row.runtime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - row_t0).count();
        rep.rows[idx] = std::move(row);
    });
    sort_rows(rep);
    return rep;
}

ExperimentReport run_bound_check(const Family& fam, const std::vector<double>& q_list,
                                 const std::vector<double>& n_list, const RunOptions& opts) {
    validate_q(q_list, fam.degree());
    const int d = fam.degree();
    ExperimentReport rep;
    rep.family = fam.name();
    rep.meta["d"] = d;
    rep.meta["grid"] = opts.grid_points;
    for (double q : q_list) rep.columns.push_back("ratio_q" + qtag(q));
    if (fam.is_radical()) rep.columns.push_back("rad_ratio");

    rep.rows.resize(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t idx) {
        const auto row_t0 = std::chrono::steady_clock::now();
        const double n = n_list[idx];
        const Family mem = fam.member(n);
        const CoefficientCurve curve = mem.sample(opts.grid_points);
        const RootCurve rc = restrict_to_grid(track(curve, opts.tol), curve.grid);
        const std::vector<std::vector<cplx>> der = fd_derivative(rc.grid, rc.lambda);
        SampledReal dn{rc.grid, std::vector<double>(rc.grid.size())};
        for (size_t m = 0; m < rc.grid.size(); ++m) {
            double s = 0.0;
            for (const cplx& v : der[m]) s += std::norm(v);
            dn.values[m] = std::sqrt(s);
        }

        const std::vector<double> cnorm = ck_gamma_norm(curve, d - 1, 1.0);
        double kernel_base = 0.0;
        for (int j = 0; j < d; ++j)
            kernel_base = std::max(kernel_base, std::pow(cnorm[j], 1.0 / (j + 1)));

        ExperimentReport::Row row;
        row.n = n;
        const double len = fam.beta() - fam.alpha();
        for (double q : q_list) {
            const double kernel = std::max(1.0, std::pow(len, 1.0 / q)) * kernel_base;
            row.values.push_back(kernel > 0.0 ? lq_norm(dn, q) / kernel : 0.0);
        }
        if (fam.is_radical()) {
            const double p = static_cast<double>(d) / (d - 1);
            std::vector<cplx> gs(curve.grid.size());
            double sup_g1 = 0.0, sup_gd = 0.0;
            for (size_t m = 0; m < curve.grid.size(); ++m) {
                gs[m] = mem.g(curve.grid[m]);
                sup_g1 = std::max(sup_g1, std::abs(mem.g_deriv(1, curve.grid[m])));
                sup_gd = std::max(sup_gd, std::abs(mem.g_deriv(d, curve.grid[m])));
            }
            const std::vector<cplx> lam = track_radical(gs, d, nth_roots(gs[0], d)[0]);
            const std::vector<cplx> lder = fd_derivative(curve.grid, lam);
            SampledReal labs{curve.grid, std::vector<double>(curve.grid.size())};
            for (size_t m = 0; m < lam.size(); ++m) labs.values[m] = std::abs(lder[m]);
            const double kernel_rad =
                std::max(std::pow(sup_gd, 1.0 / d) * std::pow(len, 1.0 / p),
                         std::pow(sup_g1, 1.0 / d));
            row.values.push_back(kernel_rad > 0.0 ? weak_lp(labs, p) / kernel_rad : 0.0);
        }
        row.runtime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - row_t0).count();
        rep.rows[idx] = std::move(row);
    });
    sort_rows(rep);
    apply_thresholds(rep, opts.thresholds);
    return rep;
}

ExperimentReport run_almgren_equivalence(const Family& fam, double q,
                                         const std::vector<double>& n_list,
                                         const RunOptions& opts) {
    validate_q({q}, fam.degree());
    const int d = fam.degree();
    ExperimentReport rep;
    rep.family = fam.name();
    rep.meta["d"] = d;
    rep.meta["grid"] = opts.grid_points;
    rep.meta["q"] = q;
    rep.columns = {"d1q", "almgren_w1q"};

    const AlmgrenConfig cfg = AlmgrenConfig::standard(d);
    const CoefficientCurve limit_curve = fam.limit().sample(opts.grid_points);
    const RootCurve rc_lim = restrict_to_grid(track(limit_curve, opts.tol), limit_curve.grid);
    const std::vector<UnorderedTuple> tup_lim = unordered_samples(rc_lim);
    std::vector<std::vector<cplx>> emb_lim(tup_lim.size());
    for (size_t m = 0; m < tup_lim.size(); ++m) {
        const std::vector<double> e = almgren_embed(tup_lim[m], cfg);
        emb_lim[m].assign(e.begin(), e.end());
    }

    rep.rows.resize(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t idx) {
        const auto row_t0 = std::chrono::steady_clock::now();
        const double n = n_list[idx];
        const CoefficientCurve curve = fam.member(n).sample(opts.grid_points);
        const RootCurve rc = restrict_to_grid(track(curve, opts.tol), curve.grid);
        const std::vector<UnorderedTuple> tup = unordered_samples(rc);

        const PairComparison cmp = s0s1(rc_lim, rc, opts.slack);
        const double val_d1q = d1q(cmp, defined_mask(cmp), q);

        std::vector<std::vector<cplx>> diff(tup.size());
        for (size_t m = 0; m < tup.size(); ++m) {
            const std::vector<double> e = almgren_embed(tup[m], cfg);
            diff[m].resize(e.size());
            for (size_t i = 0; i < e.size(); ++i) diff[m][i] = emb_lim[m][i] - e[i];
        }
        const std::vector<std::vector<cplx>> ddiff = fd_derivative(rc.grid, diff);
        SampledReal vals{rc.grid, std::vector<double>(rc.grid.size())};
        SampledReal ders{rc.grid, std::vector<double>(rc.grid.size())};
        for (size_t m = 0; m < rc.grid.size(); ++m) {
            double sv = 0.0, sd = 0.0;
            for (size_t i = 0; i < diff[m].size(); ++i) {
                sv += std::norm(diff[m][i]);
                sd += std::norm(ddiff[m][i]);
            }
            vals.values[m] = std::sqrt(sv);
            ders.values[m] = std::sqrt(sd);
        }
        const double w1q = lq_norm(vals, q) + lq_norm(ders, q);

        ExperimentReport::Row row;
        row.n = n;
        row.values = {val_d1q, w1q};
        row.runtime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - row_t0).count();
        rep.rows[idx] = std::move(row);
    });
    sort_rows(rep);

    // thresholds: caller-provided, else each column at the middle finite member
    std::map<std::string, double> thr = opts.thresholds;
    std::vector<size_t> finite;
    for (size_t i = 0; i < rep.rows.size(); ++i)
        if (std::isfinite(rep.rows[i].n)) finite.push_back(i);
    if (!finite.empty()) {
        const size_t mid = finite[finite.size() / 2];
        if (!thr.count("d1q")) thr["d1q"] = rep.rows[mid].values[0] * (1.0 + 1e-9);
        if (!thr.count("almgren_w1q")) thr["almgren_w1q"] = rep.rows[mid].values[1] * (1.0 + 1e-9);
    }
    apply_thresholds(rep, thr);

    bool co_agree = true;
    std::vector<double> col_a, col_b;
    for (const auto& row : rep.rows) {
        const bool below_a = row.values[0] <= thr["d1q"];
        const bool below_b = row.values[1] <= thr["almgren_w1q"];
        if (below_a != below_b) co_agree = false;
        if (std::isfinite(row.n)) {
            col_a.push_back(row.values[0]);
            col_b.push_back(row.values[1]);
        }
    }
    rep.meta["co_agree"] = co_agree ? 1.0 : 0.0;
    rep.meta["threshold_d1q"] = thr["d1q"];
    rep.meta["threshold_w1q"] = thr["almgren_w1q"];
    rep.meta["rank_correlation"] =
        col_a.size() >= 2 ? rank_correlation(col_a, col_b) : 1.0;
    return rep;
}

ExperimentReport run_radical_convergence(int d, const Family& fam,
                                         const std::vector<double>& q_list,
                                         const std::vector<double>& n_list,
                                         const RunOptions& opts) {
    if (!fam.is_radical()) throw DimensionMismatch("run_radical_convergence: radical family required");
    validate_q(q_list, d);
    ExperimentReport rep;
    rep.family = fam.name();
    rep.meta["d"] = d;
    rep.meta["grid"] = opts.grid_points;

    rep.columns.push_back("sup_s0rad");
    for (double q : q_list) rep.columns.push_back("s1rad_l" + qtag(q));
    for (double q : q_list) rep.columns.push_back("absdiff_l" + qtag(q));
    for (double q : q_list) rep.columns.push_back("lqdiff_l" + qtag(q));

    const Family lim = fam.limit();
    const CoefficientCurve limit_curve = lim.sample(opts.grid_points);
    const std::vector<double>& grid = limit_curve.grid;
    std::vector<cplx> gl(grid.size());
    for (size_t m = 0; m < grid.size(); ++m) gl[m] = lim.g(grid[m]);
    const std::vector<cplx> lam = track_radical(gl, d, nth_roots(gl[0], d)[0]);
    const std::vector<cplx> lam_deriv = fd_derivative(grid, lam);
    SampledReal lam_abs{grid, std::vector<double>(grid.size())};
    for (size_t m = 0; m < grid.size(); ++m) lam_abs.values[m] = std::abs(lam_deriv[m]);
    std::map<double, double> lam_lq;
    for (double q : q_list) lam_lq[q] = lq_norm(lam_abs, q);

    double largest_finite = -1.0;
    for (double n : n_list)
        if (std::isfinite(n)) largest_finite = std::max(largest_finite, n);

    rep.rows.resize(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t idx) {
        const auto row_t0 = std::chrono::steady_clock::now();
        const double n = n_list[idx];
        const Family mem = fam.member(n);
        std::vector<cplx> gn(grid.size());
        for (size_t m = 0; m < grid.size(); ++m) gn[m] = mem.g(grid[m]);
        const std::vector<cplx> mu = track_radical(gn, d, lam[0]);
        const std::vector<cplx> mu_deriv = fd_derivative(grid, mu);

        const PairComparison cmp = s_rad(grid, lam, mu, d, opts.slack);
        const std::vector<std::uint8_t> mask = defined_mask(cmp);
        if (std::isfinite(n) && n == largest_finite) rep.largest_member_pair = cmp;

        ExperimentReport::Row row;
        row.n = n;
        row.values.push_back(*std::max_element(cmp.s0.begin(), cmp.s0.end()));
        SampledReal s1{grid, cmp.s1};
        for (double q : q_list) row.values.push_back(lq_norm_masked(s1, mask, q));

        SampledReal absdiff{grid, std::vector<double>(grid.size())};
        SampledReal mu_abs{grid, std::vector<double>(grid.size())};
        for (size_t m = 0; m < grid.size(); ++m) {
            mu_abs.values[m] = std::abs(mu_deriv[m]);
            absdiff.values[m] = std::abs(lam_abs.values[m] - mu_abs.values[m]);
        }
        for (double q : q_list) row.values.push_back(lq_norm(absdiff, q));
        for (double q : q_list)
            row.values.push_back(std::abs(lam_lq.at(q) - lq_norm(mu_abs, q)));
        row.runtime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - row_t0).count();
        rep.rows[idx] = std::move(row);
    });
    sort_rows(rep);
    apply_thresholds(rep, opts.thresholds);
    return rep;
}

}  // namespace rootlab
