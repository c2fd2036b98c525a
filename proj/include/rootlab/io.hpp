// File formats: JSON values for the domain types, deterministic CSV tables,
// and static SVG line plots.
#pragma once

#include <string>

#include <json.hpp>

#include "rootlab/lab.hpp"
#include "rootlab/sobolev.hpp"

namespace rootlab {

// deterministic double formatting used by every CSV writer ("%.17g")
std::string fmt_double(double v);

nlohmann::ordered_json to_json(const MonicPolynomial& p);
MonicPolynomial polynomial_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const UnorderedTuple& t);
UnorderedTuple tuple_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const RootMultiset& r);

nlohmann::ordered_json to_json(const CoefficientCurve& c);
// Rebuilds the exact sampler when a builtin family tag is present; a curve
// with a family tag but no samples is synthesized on a uniform grid.
CoefficientCurve curve_from_json(const nlohmann::json& j, int default_grid_points = 10000);

nlohmann::ordered_json to_json(const RootCurve& rc);

std::string to_csv(const PairComparison& cmp);

std::string to_csv(const ExperimentReport& rep);
nlohmann::ordered_json to_json(const ExperimentReport& rep);

// one polyline per series, linear axes, no interactivity
std::string svg_line_plot(const std::string& title, const std::vector<double>& xs,
                          const std::vector<std::pair<std::string, std::vector<double>>>& series);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace rootlab
