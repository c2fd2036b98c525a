#include "rootlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rootlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json complex_to_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw DimensionMismatch("expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json complex_vector_to_json(const std::vector<cplx>& v) {
    ordered_json arr = ordered_json::array();
    for (cplx z : v) arr.push_back(complex_to_json(z));
    return arr;
}

std::vector<cplx> complex_vector_from_json(const json& j) {
    std::vector<cplx> out;
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

}  // namespace

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ordered_json to_json(const MonicPolynomial& p) {
    ordered_json j;
    j["d"] = p.degree;
    j["coeffs"] = complex_vector_to_json(p.coeffs);
    return j;
}

MonicPolynomial polynomial_from_json(const json& j) {
    if (!j.contains("d") || !j.contains("coeffs"))
        throw DimensionMismatch("polynomial: need fields d and coeffs");
    MonicPolynomial p(complex_vector_from_json(j["coeffs"]));
    if (p.degree != j["d"].get<int>() || !p.valid())
        throw DimensionMismatch("polynomial: inconsistent or invalid data");
    return p;
}

ordered_json to_json(const UnorderedTuple& t) {
    ordered_json j;
    j["d"] = t.d();
    j["values"] = complex_vector_to_json(t.values);
    return j;
}

UnorderedTuple tuple_from_json(const json& j) {
    if (!j.contains("d") || !j.contains("values"))
        throw DimensionMismatch("tuple: need fields d and values");
    UnorderedTuple t(complex_vector_from_json(j["values"]));
    if (t.d() != j["d"].get<int>() || t.d() < 1)
        throw DimensionMismatch("tuple: inconsistent dimension");
    return t;
}

ordered_json to_json(const RootMultiset& r) {
    ordered_json j;
    j["roots"] = complex_vector_to_json(r.roots);
    j["residual"] = r.residual;
    return j;
}

ordered_json to_json(const CoefficientCurve& c) {
    ordered_json j;
    j["alpha"] = c.alpha;
    j["beta"] = c.beta;
    j["grid"] = c.grid;
    ordered_json samples = ordered_json::array();
    for (const auto& s : c.samples) samples.push_back(complex_vector_to_json(s));
    j["samples"] = samples;
    if (!c.derivs.empty()) {
        ordered_json derivs = ordered_json::array();
        for (const auto& order : c.derivs) {
            ordered_json rows = ordered_json::array();
            for (const auto& s : order) rows.push_back(complex_vector_to_json(s));
            derivs.push_back(rows);
        }
        j["derivs"] = derivs;
    }
    if (!c.family_name.empty()) {
        ordered_json fam;
        fam["name"] = c.family_name;
        ordered_json params;
        for (const auto& [k, v] : c.family_params)
            if (std::isfinite(v)) params[k] = v;
        fam["params"] = params;
        j["family"] = fam;
    }
    return j;
}

CoefficientCurve curve_from_json(const json& j, int default_grid_points) {
    std::string family_name;
    std::map<std::string, double> family_params;
    if (j.contains("family")) {
        family_name = j["family"].at("name").get<std::string>();
        if (j["family"].contains("params"))
            for (const auto& [k, v] : j["family"]["params"].items())
                family_params[k] = v.get<double>();
    }

    if (!j.contains("samples") && !family_name.empty()) {
        const Family fam = Family::make(family_name, family_params);
        int pts = default_grid_points;
        if (j.contains("grid_points")) pts = j["grid_points"].get<int>();
        CoefficientCurve c = fam.sample(pts);
        if (j.contains("grid")) {
            const std::vector<double> grid = j["grid"].get<std::vector<double>>();
            CoefficientCurve custom = c;
            custom.grid = grid;
            custom.samples.clear();
            custom.derivs.assign(fam.degree(), {});
            for (double x : grid) {
                custom.samples.push_back(fam.coeffs(x));
                for (int s = 1; s <= fam.degree(); ++s)
                    custom.derivs[s - 1].push_back(fam.coeff_deriv(s, x));
            }
            custom.validate();
            return custom;
        }
        return c;
    }

    CoefficientCurve c;
    if (!j.contains("alpha") || !j.contains("beta") || !j.contains("grid") ||
        !j.contains("samples"))
        throw DimensionMismatch("curve: need alpha, beta, grid, samples");
    c.alpha = j["alpha"].get<double>();
    c.beta = j["beta"].get<double>();
    c.grid = j["grid"].get<std::vector<double>>();
    for (const auto& s : j["samples"]) c.samples.push_back(complex_vector_from_json(s));
    if (j.contains("derivs"))
        for (const auto& order : j["derivs"]) {
            std::vector<std::vector<cplx>> rows;
            for (const auto& s : order) rows.push_back(complex_vector_from_json(s));
            c.derivs.push_back(std::move(rows));
        }
    c.family_name = family_name;
    c.family_params = family_params;
    if (!family_name.empty()) {
        const Family fam = Family::make(family_name, family_params);
        c.sampler = [fam](double x) { return fam.coeffs(x); };
    }
    c.validate();
    return c;
}

ordered_json to_json(const RootCurve& rc) {
    ordered_json j;
    j["grid"] = rc.grid;
    ordered_json lambda = ordered_json::array();
    for (const auto& row : rc.lambda) lambda.push_back(complex_vector_to_json(row));
    j["lambda"] = lambda;
    j["match_quality"] = rc.match_quality;
    j["holder_margin"] = rc.holder_margin;
    j["residual_bound"] = rc.residual_bound;
    j["refined"] = rc.refined;
    j["interpolated_refinement"] = rc.interpolated_refinement;
    return j;
}

std::string to_csv(const PairComparison& cmp) {
    std::string out = "x,s0,s1,defined_flag\n";
    for (size_t k = 0; k < cmp.grid.size(); ++k) {
        out += fmt_double(cmp.grid[k]);
        out += ',';
        out += fmt_double(cmp.s0[k]);
        out += ',';
        out += fmt_double(cmp.s1[k]);
        out += ',';
        out += (cmp.s1_defined[k] && !cmp.collision_flag[k]) ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string to_csv(const ExperimentReport& rep) {
    std::string out = "n";
    for (const auto& c : rep.columns) out += "," + c;
    out += '\n';
    for (const auto& row : rep.rows) {
        out += fmt_double(row.n);
        for (double v : row.values) {
            out += ',';
            out += fmt_double(v);
        }
        out += '\n';
    }
    return out;
}

ordered_json to_json(const ExperimentReport& rep) {
    ordered_json j;
    j["family"] = rep.family;
    ordered_json meta;
    for (const auto& [k, v] : rep.meta) meta[k] = v;
    j["meta"] = meta;
    j["columns"] = rep.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : rep.rows) {
        ordered_json r;
        if (std::isfinite(row.n))
            r["n"] = row.n;
        else
            r["n"] = "inf";
        r["values"] = row.values;
        rows.push_back(r);
    }
    j["rows"] = rows;
    if (!rep.budgets.empty()) {
        ordered_json budgets;
        for (const auto& [k, v] : rep.budgets) budgets[k] = v;
        j["budgets"] = budgets;
    }
    if (!rep.flags.empty()) {
        ordered_json flags;
        for (const auto& [name, f] : rep.flags) {
            ordered_json fj;
            fj["final_value"] = f.final_value;
            fj["threshold"] = f.threshold;
            fj["final_below"] = f.final_below;
            fj["dyadic_ok"] = f.dyadic_ok;
            flags[name] = fj;
        }
        j["flags"] = flags;
    }
    return j;
}

std::string svg_line_plot(const std::string& title, const std::vector<double>& xs,
                          const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    constexpr int W = 640, H = 420, ML = 60, MR = 20, MT = 40, MB = 40;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!xs.empty()) {
        xmin = *std::min_element(xs.begin(), xs.end());
        xmax = *std::max_element(xs.begin(), xs.end());
    }
    bool first = true;
    for (const auto& [name, ys] : series)
        for (double y : ys) {
            if (!std::isfinite(y)) continue;
            if (first) {
                ymin = ymax = y;
                first = false;
            } else {
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const auto px = [&](double x) {
        return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR);
    };
    const auto py = [&](double y) {
        return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";
    svg << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << (W - ML - MR)
        << "\" height=\"" << (H - MT - MB) << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ML << "\" y=\"" << H - 8 << "\" font-size=\"11\">"
        << fmt_double(xmin) << "</text>\n";
    svg << "<text x=\"" << W - MR << "\" y=\"" << H - 8
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_double(xmax) << "</text>\n";
    svg << "<text x=\"4\" y=\"" << H - MB << "\" font-size=\"11\">" << fmt_double(ymin)
        << "</text>\n";
    svg << "<text x=\"4\" y=\"" << MT + 10 << "\" font-size=\"11\">" << fmt_double(ymax)
        << "</text>\n";
    int ci = 0;
    for (const auto& [name, ys] : series) {
        const char* color = colors[ci % 6];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
            if (!std::isfinite(ys[i])) continue;
            svg << px(xs[i]) << ',' << py(ys[i]) << ' ';
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << W - MR - 4 << "\" y=\"" << MT + 14 + 14 * ci
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">" << name
            << "</text>\n";
        ++ci;
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace rootlab
