#include "rootlab/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "rootlab/io.hpp"
#include "rootlab/lab.hpp"

namespace rootlab {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
    std::string command;
    std::string experiment;
    std::string input_a, input_b;
    std::string family;
    std::vector<std::string> params;  // k=v pairs
    int d = 2;
    std::vector<double> q_list{1.0};
    std::vector<double> n_list;
    int grid = 10000;
    double tol = 1e-12;
    double slack = 1e-9;
    std::string out_dir;
    std::vector<std::string> emit{"csv", "json"};
    cplx theta{1.0, 0.0};
};

std::map<std::string, double> parse_params(const std::vector<std::string>& kv) {
    std::map<std::string, double> out;
    for (const std::string& s : kv) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw DimensionMismatch("--param expects k=v: " + s);
        out[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    }
    return out;
}

std::vector<double> parse_n_spec(const std::string& spec) {
    std::vector<double> out;
    std::string cur;
    for (char c : spec + ",") {
        if (c == ',') {
            if (cur.empty()) continue;
            if (cur == "inf")
                out.push_back(kLimitMember);
            else
                out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

// write/print: stdout only when no --out was given
void deliver(const RunConfig& cfg, const std::string& name, const std::string& contents,
             std::ostream& out) {
    if (cfg.out_dir.empty()) {
        out << contents;
        return;
    }
    fs::create_directories(cfg.out_dir);
    write_file((fs::path(cfg.out_dir) / name).string(), contents);
}

bool emits(const RunConfig& cfg, const std::string& kind) {
    for (const std::string& entry : cfg.emit) {
        std::string cur;
        for (char c : entry + ",") {
            if (c == ',') {
                if (cur == kind) return true;
                cur.clear();
            } else {
                cur += c;
            }
        }
    }
    return false;
}

void emit_report(const RunConfig& cfg, const std::string& stem, const ExperimentReport& rep,
                 std::ostream& out) {
    if (emits(cfg, "csv")) deliver(cfg, stem + ".csv", to_csv(rep), out);
    if (emits(cfg, "csv") && !cfg.out_dir.empty() && !rep.largest_member_pair.grid.empty())
        deliver(cfg, stem + "_pair.csv", to_csv(rep.largest_member_pair), out);
    if (emits(cfg, "json")) deliver(cfg, stem + ".json", to_json(rep).dump(2) + "\n", out);
    if (emits(cfg, "svg") && !cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        std::vector<double> xs;
        for (const auto& row : rep.rows)
            if (std::isfinite(row.n)) xs.push_back(row.n);
        for (size_t c = 0; c < rep.columns.size(); ++c) {
            std::vector<double> ys;
            for (const auto& row : rep.rows)
                if (std::isfinite(row.n)) ys.push_back(row.values[c]);
            const std::string svg =
                svg_line_plot(rep.family + ": " + rep.columns[c], xs, {{rep.columns[c], ys}});
            write_file((fs::path(cfg.out_dir) / (stem + "_" + rep.columns[c] + ".svg")).string(),
                       svg);
        }
    }
}

Family family_from_config(const RunConfig& cfg) {
    auto params = parse_params(cfg.params);
    if (!params.count("d")) params["d"] = cfg.d;
    return Family::make(cfg.family, params);
}

void validate_q_against_d(const RunConfig& cfg, int d) {
    for (double q : cfg.q_list) {
        if (q < 1.0 || (d > 1 && q >= static_cast<double>(d) / (d - 1)))
            throw DimensionMismatch("q must satisfy 1 <= q < d/(d-1)");
    }
}

int cmd_roots(const RunConfig& cfg, std::ostream& out) {
    const MonicPolynomial p =
        polynomial_from_json(nlohmann::json::parse(read_file(cfg.input_a)));
    const RootMultiset rm = roots(p, cfg.tol);
    nlohmann::ordered_json j = to_json(rm);
    j["cauchy_bound"] = cauchy_bound(p);
    deliver(cfg, "roots.json", j.dump(2) + "\n", out);
    return 0;
}

int cmd_dist(const RunConfig& cfg, std::ostream& out) {
    const UnorderedTuple a = tuple_from_json(nlohmann::json::parse(read_file(cfg.input_a)));
    const UnorderedTuple b = tuple_from_json(nlohmann::json::parse(read_file(cfg.input_b)));
    nlohmann::ordered_json j;
    j["dist"] = dist(a, b);
    j["wasserstein2"] = wasserstein2(a, b);
    deliver(cfg, "dist.json", j.dump(2) + "\n", out);
    return 0;
}

int cmd_embed(const RunConfig& cfg, std::ostream& out) {
    const UnorderedTuple t = tuple_from_json(nlohmann::json::parse(read_file(cfg.input_a)));
    const AlmgrenConfig acfg = AlmgrenConfig::standard(t.d());
    nlohmann::ordered_json j;
    j["d"] = acfg.d;
    j["h"] = acfg.h;
    j["N"] = acfg.N();
    j["embedding"] = almgren_embed(t, acfg);
    deliver(cfg, "embed.json", j.dump(2) + "\n", out);
    return 0;
}

int cmd_track(const RunConfig& cfg, std::ostream& out) {
    CoefficientCurve curve;
    if (!cfg.input_a.empty()) {
        curve = curve_from_json(nlohmann::json::parse(read_file(cfg.input_a)), cfg.grid);
    } else if (!cfg.family.empty()) {
        curve = family_from_config(cfg).sample(cfg.grid);
    } else {
        throw DimensionMismatch("track: need --in curve.json or --family");
    }
    const RootCurve rc = track(curve, cfg.tol);
    const HolderConstants hc = holder_constants(curve);
    nlohmann::ordered_json j = to_json(rc);
    j["H"] = hc.H;
    j["H1"] = hc.H1;
    deliver(cfg, "track.json", j.dump(2) + "\n", out);
    return 0;
}

int cmd_norms(const RunConfig& cfg, std::ostream& out) {
    const nlohmann::json j = nlohmann::json::parse(read_file(cfg.input_a));
    nlohmann::ordered_json result;
    if (j.contains("values") && j.contains("grid")) {
        SampledReal f;
        f.grid = j["grid"].get<std::vector<double>>();
        for (const auto& v : j["values"]) {
            if (v.is_array())
                f.values.push_back(std::abs(cplx(v[0].get<double>(), v[1].get<double>())));
            else
                f.values.push_back(v.get<double>());
        }
        for (double q : cfg.q_list) {
            char key[32];
            std::snprintf(key, sizeof(key), "lq_norm_q%g", q);
            result[key] = lq_norm(f, q);
        }
        const auto params = parse_params(cfg.params);
        const double p = params.count("p") ? params.at("p") : 2.0;
        result["weak_lp_p"] = p;
        result["weak_lp"] = weak_lp(f, p);
    } else {
        const CoefficientCurve curve = curve_from_json(j, cfg.grid);
        const auto params = parse_params(cfg.params);
        const int k = params.count("k") ? static_cast<int>(params.at("k")) : curve.d() - 1;
        const double gamma = params.count("gamma") ? params.at("gamma") : 1.0;
        result["k"] = k;
        result["gamma"] = gamma;
        result["ck_gamma_norms"] = ck_gamma_norm(curve, k, gamma);
        const HolderConstants hc = holder_constants(curve);
        result["H"] = hc.H;
        result["H1"] = hc.H1;
    }
    deliver(cfg, "norms.json", result.dump(2) + "\n", out);
    return 0;
}

int cmd_experiment(const RunConfig& cfg, std::ostream& out) {
    RunOptions opts;
    opts.grid_points = cfg.grid;
    opts.tol = cfg.tol;
    opts.slack = cfg.slack;
    std::vector<double> n_list = cfg.n_list;
    if (n_list.empty()) n_list = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, kLimitMember};

    if (cfg.experiment == "convergence") {
        const Family fam = family_from_config(cfg);
        validate_q_against_d(cfg, fam.degree());
        emit_report(cfg, "convergence", run_convergence(fam, cfg.q_list, n_list, opts), out);
    } else if (cfg.experiment == "parameterized") {
        const Family fam = family_from_config(cfg);
        validate_q_against_d(cfg, fam.degree());
        emit_report(cfg, "parameterized",
                    run_parameterized_convergence(fam, cfg.q_list, n_list, opts), out);
    } else if (cfg.experiment == "radical") {
        const Family fam = family_from_config(cfg);
        validate_q_against_d(cfg, fam.degree());
        emit_report(cfg, "radical",
                    run_radical_convergence(fam.degree(), fam, cfg.q_list, n_list, opts), out);
    } else if (cfg.experiment == "weaknorm") {
        const double p = static_cast<double>(cfg.d) / (cfg.d - 1);
        std::vector<double> ns = cfg.n_list;
        if (ns.empty()) ns = {1, 10, 100};
        emit_report(cfg, "weaknorm", run_weaknorm_example(cfg.d, p, ns, cfg.grid), out);
    } else if (cfg.experiment == "bound-check") {
        const Family fam = family_from_config(cfg);
        validate_q_against_d(cfg, fam.degree());
        std::vector<double> ns = cfg.n_list;
        if (ns.empty()) ns = {1, 4, 16, 64, kLimitMember};
        emit_report(cfg, "bound_check", run_bound_check(fam, cfg.q_list, ns, opts), out);
    } else if (cfg.experiment == "almgren-equivalence") {
        const Family fam = family_from_config(cfg);
        validate_q_against_d(cfg, fam.degree());
        emit_report(cfg, "almgren_equivalence",
                    run_almgren_equivalence(fam, cfg.q_list.front(), n_list, opts), out);
    } else {
        throw DimensionMismatch(
            "unknown experiment '" + cfg.experiment +
            "'; valid: convergence, parameterized, radical, weaknorm, bound-check, "
            "almgren-equivalence");
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rootlab: unordered root tuples of monic polynomials, Sobolev analytics, "
                 "and convergence experiments"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string n_spec;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--d", cfg.d, "polynomial degree");
        sub->add_option("--q", cfg.q_list, "Lq exponents");
        sub->add_option("--n", n_spec, "comma-separated member list, inf for the limit");
        sub->add_option("--grid", cfg.grid, "grid points");
        sub->add_option("--family", cfg.family, "builtin family name");
        sub->add_option("--param", cfg.params, "family parameter k=v");
        sub->add_option("--tol", cfg.tol, "solver tolerance");
        sub->add_option("--slack", cfg.slack, "assignment tie slack");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--emit", cfg.emit, "outputs: csv,json,svg");
    };

    CLI::App* roots_cmd = app.add_subcommand("roots", "roots of a polynomial JSON");
    roots_cmd->add_option("--in", cfg.input_a, "polynomial JSON")->required();
    add_common(roots_cmd);

    CLI::App* dist_cmd = app.add_subcommand("dist", "distance between two tuple JSONs");
    dist_cmd->add_option("--a", cfg.input_a, "tuple JSON")->required();
    dist_cmd->add_option("--b", cfg.input_b, "tuple JSON")->required();
    add_common(dist_cmd);

    CLI::App* embed_cmd = app.add_subcommand("embed", "Almgren embedding of a tuple JSON");
    embed_cmd->add_option("--in", cfg.input_a, "tuple JSON")->required();
    add_common(embed_cmd);

    CLI::App* track_cmd = app.add_subcommand("track", "track roots along a coefficient curve");
    track_cmd->add_option("--in", cfg.input_a, "curve JSON");
    add_common(track_cmd);

    CLI::App* norms_cmd = app.add_subcommand("norms", "norms of a sampled function or curve");
    norms_cmd->add_option("--in", cfg.input_a, "sampled function or curve JSON")->required();
    add_common(norms_cmd);

    CLI::App* exp_cmd = app.add_subcommand("experiment", "run a named experiment");
    exp_cmd->add_option("name", cfg.experiment, "experiment name")->required();
    add_common(exp_cmd);

    std::vector<const char*> argv;
    argv.push_back("rootlab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (!n_spec.empty()) cfg.n_list = parse_n_spec(n_spec);
        if (roots_cmd->parsed()) return cmd_roots(cfg, out);
        if (dist_cmd->parsed()) return cmd_dist(cfg, out);
        if (embed_cmd->parsed()) return cmd_embed(cfg, out);
        if (track_cmd->parsed()) return cmd_track(cfg, out);
        if (norms_cmd->parsed()) return cmd_norms(cfg, out);
        if (exp_cmd->parsed()) return cmd_experiment(cfg, out);
    } catch (const NonConvergence& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const RefinementLimit& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace rootlab
