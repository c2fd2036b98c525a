// Experiment harness: builtin coefficient-curve families with exact
// derivatives and reproducible convergence / bound / equivalence experiments.
#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootlab/sobolev.hpp"
#include "rootlab/tracking.hpp"

namespace rootlab {

inline constexpr double kLimitMember = std::numeric_limits<double>::infinity();

// A one-parameter analytic family of coefficient curves a_n : [alpha,beta] ->
// C^d with closed-form derivatives of every order used here. n = infinity
// selects the limit member. Builtins:
//   radical_shift   g_n(x) = x + sign * i/n            (Z^d = g_n)
//   parabola_shift  g_n(x) = x^2 + 1/n                 (Z^d = g_n)
//   weaknorm        g_n(x) = x + n^{-p}, p = d/(d-1)   (Z^d = g_n)
//   cubic_perturb   a_n(x) = a(x) + b(x)/n, degree 3, separated roots
// Every family accepts parameter t (default 1) applying the homogeneous
// rescaling a_j -> t^j a_j.
class Family {
  public:
    static Family make(const std::string& name, std::map<std::string, double> params = {});
    static std::vector<std::string> builtin_names();

    // Generic perturbation a_n = a + b/n from user-supplied polynomial
    // coefficient curves: a_poly[j] and b_poly[j] hold the x-polynomial
    // coefficients (ascending powers) of the j-th polynomial coefficient.
    static Family make_perturbation(std::vector<std::vector<cplx>> a_poly,
                                    std::vector<std::vector<cplx>> b_poly, double alpha,
                                    double beta);

    Family member(double n) const;
    Family limit() const { return member(kLimitMember); }

    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }
    double n() const { return n_; }
    bool is_limit() const { return n_ == kLimitMember; }
    int degree() const { return d_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    bool is_radical() const { return radical_; }

    std::vector<cplx> coeffs(double x) const;
    std::vector<cplx> coeff_deriv(int s, double x) const;  // s >= 1
    cplx g(double x) const;                                // radical families
    cplx g_deriv(int s, double x) const;

    // Uniform grid with grid_points points, samples, exact derivatives up to
    // order d, family tag and exact resampler attached.
    CoefficientCurve sample(int grid_points) const;

  private:
    std::string name_;
    std::map<std::string, double> params_;
    double n_ = kLimitMember;
    int d_ = 2;
    double alpha_ = -1.0, beta_ = 1.0;
    bool radical_ = false;
    int kind_ = 0;
    // user-supplied perturbation data (x-polynomials, ascending powers)
    std::vector<std::vector<cplx>> user_a_, user_b_;
};

struct ExperimentReport {
    std::string family;
    std::map<std::string, double> meta;  // grid, tol, slack, d, ...
    std::vector<std::string> columns;    // names of the value columns
    struct Row {
        double n = 0.0;  // kLimitMember for the sentinel row
        std::vector<double> values;
        // wall time for this member; excluded from the CSV/JSON emitters so
        // identical configurations produce byte-identical outputs
        double runtime_s = 0.0;
    };
    std::vector<Row> rows;  // sorted by n, sentinel last
    std::map<std::string, double> budgets;  // per-column quadrature budgets

    struct ColumnFlag {
        double final_value = 0.0;
        double threshold = 0.0;
        bool final_below = false;
        bool dyadic_ok = false;  // never above 1.1x running min on dyadic n
    };
    std::map<std::string, ColumnFlag> flags;

    // pointwise s0/s1 table against the limit at the largest finite member
    // (convergence and radical runs), for the pair CSV artifact
    PairComparison largest_member_pair;

    int column_index(const std::string& name) const;
    std::vector<std::pair<double, double>> column(const std::string& name) const;
};

struct RunOptions {
    int grid_points = 10000;
    double tol = 1e-12;
    double slack = -1.0;  // negative: default 1e-9 (1 + dist)
    std::map<std::string, double> thresholds;  // per-column, for flags
};

// Theorems main1 / mainse / corollaries: track the limit and each member,
// report sup d, d1q, speed-difference, Lq-norm difference, energy and length
// differences per n, with convergence flags.
ExperimentReport run_convergence(const Family& fam, const std::vector<double>& q_list,
                                 const std::vector<double>& n_list, const RunOptions& opts);

// Variant with a fixed parameterization: members are seeded by the target at
// alpha; reports sup ||lambda - lambda_n|| and ||lambda' - lambda_n'||_Lq and
// flags when C0 convergence of the chosen parameterizations fails.
ExperimentReport run_parameterized_convergence(
    const Family& fam, const std::vector<double>& q_list, const std::vector<double>& n_list,
    const RunOptions& opts,
    const std::function<std::vector<cplx>(double)>& target = nullptr);

// Closed-form weak-norm example: lambda = x^{1/d}, lambda_n = (x+1/n^p)^{1/d}
// on (0,1) with exact derivative formulas.
ExperimentReport run_weaknorm_example(int d, double p, const std::vector<double>& n_list,
                                      int grid_points);

// Ratio of ||lambda'||_Lq to the uniform-bound kernel
// max{1,(beta-alpha)^{1/q}} max_j ||a_j||_{C^{d-1,1}}^{1/j}; for radical
// families also the weak-norm ratio against the kernel
// max{|g^{(d-1)}|_{C^{0,1}}^{1/d} |I|^{1/p}, ||g'||_inf^{1/d}}.
ExperimentReport run_bound_check(const Family& fam, const std::vector<double>& q_list,
                                 const std::vector<double>& n_list, const RunOptions& opts);

// Co-convergence of d1q and the Almgren-embedded W^{1,q} distance. When no
// thresholds are passed, each column is thresholded at its value at the
// middle finite member. Reports per-n co-agreement and the rank correlation.
ExperimentReport run_almgren_equivalence(const Family& fam, double q,
                                         const std::vector<double>& n_list,
                                         const RunOptions& opts);

// Radical-case convergence via track_radical and the rotation semimetric.
ExperimentReport run_radical_convergence(int d, const Family& fam,
                                         const std::vector<double>& q_list,
                                         const std::vector<double>& n_list,
                                         const RunOptions& opts);

// Spearman rank correlation of paired samples.
double rank_correlation(const std::vector<double>& a, const std::vector<double>& b);

// Convergence assessment used for the report flags: final value below the
// threshold and, along the largest dyadic subsequence of finite n, never
// above 1.1x the running minimum.
ExperimentReport::ColumnFlag assess_column(const std::vector<std::pair<double, double>>& col,
                                           double threshold);

// Runs fn(i) for i in [0, count) on up to ROOTLAB_THREADS threads (default:
// hardware concurrency); results must be written to disjoint slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace rootlab
