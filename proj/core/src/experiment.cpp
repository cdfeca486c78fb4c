#include "redweyl/experiment.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json_io.hpp"
#include "redweyl/domain.hpp"
#include "redweyl/error.hpp"
#include "redweyl/identities.hpp"
#include "redweyl/representations.hpp"
#include "redweyl/spectra.hpp"
#include "redweyl/symbols.hpp"
#include "redweyl/zero_level.hpp"

#ifndef REDWEYL_VERSION
#define REDWEYL_VERSION "0.0.0"
#endif

namespace redweyl {

using io::json;

const char* version() { return REDWEYL_VERSION; }

namespace {

void allow_keys(const json& j, const std::string& section, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError("section '" + section + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known |= key == k;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + (section.empty() ? "config" : "section '" + section + "'"));
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

Eigen::MatrixXd matrix_from(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw ConfigError("matrix must be a non-empty array of rows");
  const std::size_t cols = rows.at(0).size();
  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) throw ConfigError("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c].get<double>();
  }
  return m;
}

json matrix_to(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(row);
  }
  return rows;
}

ExperimentConfig from_json(const json& j) {
  allow_keys(j, "", {"group", "domain", "operator", "characters", "lambda_grid", "spectrum", "mc", "quadrature",
                     "tolerances", "oscillatory", "identities", "output"});
  for (const char* required : {"group", "domain", "operator"})
    if (!j.contains(required)) throw ConfigError(std::string("missing required section '") + required + "'");
  ExperimentConfig c;

  const json& g = j.at("group");
  allow_keys(g, "group", {"kind", "n", "plane", "order", "elements"});
  read(g, "kind", c.group.kind);
  read(g, "n", c.group.n);
  if (g.contains("plane")) {
    const auto p = g.at("plane").get<std::vector<int>>();
    if (p.size() != 2) throw ConfigError("group.plane needs two coordinate indices");
    c.group.plane = {p[0], p[1]};
  }
  read(g, "order", c.group.order);
  if (g.contains("elements"))
    for (const auto& e : g.at("elements")) c.group.elements.push_back(matrix_from(e));

  const json& d = j.at("domain");
  allow_keys(d, "domain", {"kind", "radius", "r_inner", "r_outer", "half_widths"});
  read(d, "kind", c.domain.kind);
  read(d, "radius", c.domain.radius);
  read(d, "r_inner", c.domain.r_inner);
  read(d, "r_outer", c.domain.r_outer);
  read(d, "half_widths", c.domain.half_widths);

  const json& o = j.at("operator");
  allow_keys(o, "operator", {"symbol", "order", "matrix", "weights"});
  read(o, "symbol", c.op.symbol);
  read(o, "order", c.op.order);
  read(o, "matrix", c.op.matrix);
  read(o, "weights", c.op.weights);

  read(j, "characters", c.characters);

  if (j.contains("lambda_grid")) {
    const json& l = j.at("lambda_grid");
    allow_keys(l, "lambda_grid", {"min", "max", "points", "spacing"});
    read(l, "min", c.lambda.min);
    read(l, "max", c.lambda.max);
    read(l, "points", c.lambda.points);
    if (l.contains("spacing")) {
      const auto s = l.at("spacing").get<std::string>();
      if (s != "log" && s != "linear") throw ConfigError("lambda_grid.spacing must be 'log' or 'linear'");
      c.lambda.logarithmic = s == "log";
    }
  }
  if (j.contains("spectrum")) {
    const json& s = j.at("spectrum");
    allow_keys(s, "spectrum", {"source", "h"});
    read(s, "source", c.spectrum.source);
    read(s, "h", c.spectrum.h);
  }
  if (j.contains("mc")) {
    const json& m = j.at("mc");
    allow_keys(m, "mc", {"samples", "seed"});
    read(m, "samples", c.mc.samples);
    read(m, "seed", c.mc.seed);
  }
  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    allow_keys(q, "quadrature", {"radial", "momentum", "angular"});
    read(q, "radial", c.quadrature.radial);
    read(q, "momentum", c.quadrature.momentum);
    read(q, "angular", c.quadrature.angular);
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    allow_keys(t, "tolerances", {"coefficient_rel", "exponent_abs"});
    read(t, "coefficient_rel", c.tolerances.coefficient_rel);
    read(t, "exponent_abs", c.tolerances.exponent_abs);
  }
  if (j.contains("oscillatory")) {
    const json& s = j.at("oscillatory");
    allow_keys(s, "oscillatory",
               {"mu", "points_per_wavelength", "x_radius", "xi_inner", "xi_outer", "skew", "character"});
    read(s, "mu", c.oscillatory.mu);
    read(s, "points_per_wavelength", c.oscillatory.points_per_wavelength);
    read(s, "x_radius", c.oscillatory.amplitude.x_radius);
    read(s, "xi_inner", c.oscillatory.amplitude.xi_inner);
    read(s, "xi_outer", c.oscillatory.amplitude.xi_outer);
    read(s, "skew", c.oscillatory.amplitude.skew);
    read(s, "character", c.oscillatory.character);
  }
  if (j.contains("identities")) {
    const json& s = j.at("identities");
    allow_keys(s, "identities", {"samples", "pairs", "grid_points"});
    read(s, "samples", c.identities.samples);
    read(s, "pairs", c.identities.pairs);
    read(s, "grid_points", c.identities.grid_points);
  }
  if (j.contains("output")) {
    const json& s = j.at("output");
    allow_keys(s, "output", {"dir", "prefix"});
    read(s, "dir", c.output.dir);
    read(s, "prefix", c.output.prefix);
  }

  if (c.mc.samples < 1) throw ConfigError("mc.samples must be positive");
  if (c.lambda.points < 1 || !(c.lambda.max > c.lambda.min) || !(c.lambda.min > 0.0))
    throw ConfigError("lambda_grid needs 0 < min < max and points >= 1");
  if (c.quadrature.radial < 1 || c.quadrature.momentum < 1 || c.quadrature.angular < 1)
    throw ConfigError("quadrature sizes must be positive");
  if (!(c.tolerances.coefficient_rel > 0.0) || !(c.tolerances.exponent_abs > 0.0))
    throw ConfigError("tolerances must be positive");
  if (c.spectrum.source != "auto" && c.spectrum.source != "exact" && c.spectrum.source != "finite_difference")
    throw ConfigError("spectrum.source must be auto, exact or finite_difference");
  if (c.identities.samples < 1 || c.identities.pairs < 0 || c.identities.grid_points < 1)
    throw ConfigError("identities sizes must be positive");
  if (c.characters.empty()) throw ConfigError("characters must not be empty");
  auto one_of = [](const std::string& value, std::initializer_list<const char*> allowed, const char* what) {
    for (const char* a : allowed)
      if (value == a) return;
    throw ConfigError(std::string("unknown ") + what + " '" + value + "'");
  };
  one_of(c.group.kind, {"planar_so2", "standard_so3", "cyclic", "finite"}, "group kind");
  one_of(c.domain.kind, {"disk", "annulus", "ball", "box"}, "domain kind");
  one_of(c.op.symbol, {"euclidean_power", "invariant_quadratic", "position_weighted"}, "operator symbol");
  return c;
}

json to_json(const ExperimentConfig& c) {
  json g = {{"kind", c.group.kind}, {"n", c.group.n}, {"plane", {c.group.plane.first, c.group.plane.second}},
            {"order", c.group.order}};
  json elements = json::array();
  for (const auto& e : c.group.elements) elements.push_back(matrix_to(e));
  g["elements"] = elements;
  return {
      {"group", g},
      {"domain",
       {{"kind", c.domain.kind},
        {"radius", c.domain.radius},
        {"r_inner", c.domain.r_inner},
        {"r_outer", c.domain.r_outer},
        {"half_widths", c.domain.half_widths}}},
      {"operator",
       {{"symbol", c.op.symbol}, {"order", c.op.order}, {"matrix", c.op.matrix}, {"weights", c.op.weights}}},
      {"characters", c.characters},
      {"lambda_grid",
       {{"min", c.lambda.min},
        {"max", c.lambda.max},
        {"points", c.lambda.points},
        {"spacing", c.lambda.logarithmic ? "log" : "linear"}}},
      {"spectrum", {{"source", c.spectrum.source}, {"h", c.spectrum.h}}},
      {"mc", {{"samples", c.mc.samples}, {"seed", c.mc.seed}}},
      {"quadrature",
       {{"radial", c.quadrature.radial}, {"momentum", c.quadrature.momentum}, {"angular", c.quadrature.angular}}},
      {"tolerances",
       {{"coefficient_rel", c.tolerances.coefficient_rel}, {"exponent_abs", c.tolerances.exponent_abs}}},
      {"oscillatory",
       {{"mu", c.oscillatory.mu},
        {"points_per_wavelength", c.oscillatory.points_per_wavelength},
        {"x_radius", c.oscillatory.amplitude.x_radius},
        {"xi_inner", c.oscillatory.amplitude.xi_inner},
        {"xi_outer", c.oscillatory.amplitude.xi_outer},
        {"skew", c.oscillatory.amplitude.skew},
        {"character", c.oscillatory.character}}},
      {"identities",
       {{"samples", c.identities.samples},
        {"pairs", c.identities.pairs},
        {"grid_points", c.identities.grid_points}}},
      {"output", {{"dir", c.output.dir}, {"prefix", c.output.prefix}}},
  };
}

json meta(const ExperimentConfig& c, const char* command) {
  return {{"command", command},
          {"config_hash", config_hash(c)},
          {"seed", c.mc.seed},
          {"versions",
           {{"redweyl", version()},
            {"group_actions", version()},
            {"representations", version()},
            {"symbols", version()},
            {"reduced_volume", version()},
            {"spectra", version()},
            {"weyl", version()},
            {"oscillatory", version()},
            {"cli", version()}}}};
}

// CSV reports carry their provenance in a sidecar JSON file.
RunOutput csv_output(const ExperimentConfig& c, const char* command, std::string body) {
  RunOutput out{std::move(body), "csv", {}};
  out.files.emplace_back(c.output.prefix + "_" + command + ".meta.json", io::dump(meta(c, command)) + "\n");
  return out;
}

std::vector<IrrepLabel> labels(const ExperimentConfig& c, const GroupAction& action) {
  std::vector<IrrepLabel> out;
  for (int index : c.characters) {
    const IrrepLabel chi{action.kind(), index};
    if (action.is_finite() && (index < 0 || index >= action.character_table().num_classes()))
      throw ConfigError("character index " + std::to_string(index) + " is out of range for the group");
    if (action.kind() == GroupKind::StandardSO3 && index < 0) throw ConfigError("SO(3) characters need l >= 0");
    out.push_back(chi);
  }
  return out;
}

json label_json(const IrrepLabel& chi) { return to_string(chi); }

json estimate_json(const MCEstimate& e) {
  return {{"value", e.value},
          {"stderr", e.std_error},
          {"n_samples", e.n_samples},
          {"seed", e.seed},
          {"method", "monte_carlo"},
          {"low_confidence", e.low_confidence}};
}

struct SpectrumData {
  std::map<IrrepLabel, std::vector<SpectrumEntry>> entries;
  double lambda_ceiling = std::numeric_limits<double>::infinity();
  std::string source;
};

SpectrumData spectra_for(const ExperimentConfig& c, const GroupAction& action, const Domain& domain,
                         const std::vector<IrrepLabel>& chis, double lambda_max) {
  SpectrumData data;
  const bool fd = c.spectrum.source == "finite_difference" || (c.spectrum.source == "auto" && action.is_finite());
  if (fd) {
    if (!action.is_finite()) throw ConfigError("finite-difference spectra need a finite group");
    if (!(c.spectrum.h > 0.0)) throw ConfigError("spectrum.h must be positive for finite-difference spectra");
    if (c.op.symbol != "euclidean_power" || c.op.order != 2)
      throw ConfigError("finite-difference spectra are computed for the Dirichlet Laplacian only");
    data.source = to_string(SpectrumKind::FiniteDifference);
    for (const auto& chi : chis) {
      const FdSpectrum s = fd_spectrum(domain, action, chi, lambda_max, c.spectrum.h);
      data.entries[chi] = as_entries(s.eigenvalues);
      data.lambda_ceiling = s.lambda_ceiling;
    }
    return data;
  }
  if (c.op.symbol != "euclidean_power" || c.op.order != 2)
    throw ConfigError("exact spectra are available for the Dirichlet Laplacian only");
  SpectrumSource src;
  if (domain.kind() == DomainKind::Disk && action.ambient_dim() == 2)
    src = SpectrumSource::exact_disk(domain.radius());
  else if (domain.kind() == DomainKind::Annulus)
    src = SpectrumSource::exact_annulus(domain.inner_radius(), domain.radius());
  else if (domain.kind() == DomainKind::Ball && domain.dim() == 3)
    src = SpectrumSource::exact_ball3d(domain.radius());
  else
    throw ConfigError("no exact spectrum for " + domain.describe());
  data.source = to_string(src.kind);
  try {
    data.entries = model_spectra(src, action, chis, lambda_max);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return data;
}

std::vector<double> grid_within(const ExperimentConfig& c, double ceiling) {
  std::vector<double> out;
  for (double l : lambda_grid(c.lambda.min, c.lambda.max, c.lambda.points, c.lambda.logarithmic))
    if (l <= ceiling) out.push_back(l);
  return out;
}

std::string two_column(const std::vector<std::pair<double, double>>& rows) {
  std::string out;
  for (const auto& [a, b] : rows) out += io::format_double(a) + " " + io::format_double(b) + "\n";
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const ExperimentConfig& config) { return io::dump(to_json(config), -1); }

std::string config_hash(const ExperimentConfig& config) { return io::hex64(io::fnv1a(canonical_config(config))); }

GroupAction make_action(const ExperimentConfig& config) {
  const auto& g = config.group;
  try {
    if (g.kind == "planar_so2") return GroupAction::planar_so2(g.n, g.plane.first, g.plane.second);
    if (g.kind == "standard_so3") return GroupAction::standard_so3(g.n);
    if (g.kind == "cyclic") {
      if (g.n != 2) throw ConfigError("cyclic rotation groups act on R^2");
      return GroupAction::cyclic_rotations(g.order);
    }
    if (g.kind == "finite") {
      if (g.elements.empty()) throw ConfigError("finite group needs group.elements");
      return GroupAction::finite(g.elements);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid group: ") + e.what());
  }
  throw ConfigError("unknown group kind '" + g.kind + "'");
}

Domain make_domain(const ExperimentConfig& config) {
  const auto& d = config.domain;
  try {
    if (d.kind == "disk") return Domain::disk(d.radius);
    if (d.kind == "annulus") return Domain::annulus(d.r_inner, d.r_outer);
    if (d.kind == "ball") return Domain::ball(config.group.n, d.radius);
    if (d.kind == "box") {
      if (d.half_widths.empty()) throw ConfigError("box domain needs half_widths");
      return Domain::box(Eigen::Map<const Eigen::VectorXd>(d.half_widths.data(), d.half_widths.size()));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid domain: ") + e.what());
  }
  throw ConfigError("unknown domain kind '" + d.kind + "'");
}

Symbol make_symbol(const ExperimentConfig& config) {
  const auto& o = config.op;
  try {
    if (o.symbol == "euclidean_power") return Symbol::euclidean_power(o.order);
    if (o.symbol == "invariant_quadratic") {
      if (o.matrix.empty()) throw ConfigError("invariant_quadratic needs operator.matrix");
      json rows = o.matrix;
      return Symbol::invariant_quadratic(matrix_from(rows));
    }
    if (o.symbol == "position_weighted") return Symbol::position_weighted(o.weights, o.order);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid operator: ") + e.what());
  }
  throw ConfigError("unknown symbol '" + o.symbol + "'");
}

namespace {

struct Pipeline {
  GroupAction action;
  Domain domain;
  Symbol symbol;
  std::vector<IrrepLabel> chis;

  explicit Pipeline(const ExperimentConfig& c)
      : action(make_action(c)), domain(make_domain(c)), symbol(make_symbol(c)), chis(labels(c, action)) {
    if (domain.dim() != action.ambient_dim()) throw ConfigError("domain and group dimensions differ");
  }
};

}  // namespace

RunOutput run_volume(const ExperimentConfig& c) {
  const Pipeline p(c);
  const MCEstimate mc = reduced_volume_mc(p.action, p.symbol, p.domain, 1.0, c.mc.samples, c.mc.seed);
  const QuadratureEstimate q = reduced_volume_quadrature(p.action, p.symbol, p.domain, 1.0, c.quadrature);
  json report = meta(c, "volume");
  report["reduced_volume"] = estimate_json(mc);
  report["quadrature"] = {{"value", q.value},
                          {"coarse_value", q.coarse_value},
                          {"richardson_ratio", q.richardson_ratio},
                          {"too_coarse", q.too_coarse},
                          {"grid", {c.quadrature.radial, c.quadrature.momentum, c.quadrature.angular}}};
  return {io::dump(report) + "\n", "json", {}};
}

RunOutput run_predict(const ExperimentConfig& c) {
  const Pipeline p(c);
  check_assumptions(p.action, p.symbol, p.domain);
  const MCEstimate mc = reduced_volume_mc(p.action, p.symbol, p.domain, 1.0, c.mc.samples, c.mc.seed);
  json preds = json::array();
  for (const auto& chi : p.chis) {
    const WeylPrediction w = predict(p.action, chi, p.symbol, p.domain, mc);
    preds.push_back({{"character", label_json(chi)},
                     {"coefficient", w.coefficient},
                     {"exponent", w.exponent.str()},
                     {"exponent_value", w.exponent.value()},
                     {"remainder_exponent", w.remainder_exponent.str()},
                     {"d_chi", w.d_chi},
                     {"branching", w.branching},
                     {"n", w.n},
                     {"kappa", w.kappa},
                     {"order", w.order}});
  }
  json report = meta(c, "predict");
  report["predictions"] = preds;
  report["reduced_volume"] = estimate_json(mc);
  report["group"] = p.action.describe();
  report["domain"] = p.domain.describe();
  report["symbol"] = p.symbol.name();
  return {io::dump(report) + "\n", "json", {}};
}

RunOutput run_count(const ExperimentConfig& c) {
  const Pipeline p(c);
  const SpectrumData s = spectra_for(c, p.action, p.domain, p.chis, c.lambda.max);
  const auto grid = grid_within(c, s.lambda_ceiling);
  std::vector<std::vector<std::string>> rows;
  for (const auto& chi : p.chis)
    for (const auto& sample : counting_function(s.entries.at(chi), grid, chi))
      rows.push_back({to_string(chi), io::format_double(sample.lambda), std::to_string(sample.count)});
  return csv_output(c, "count", io::csv({"character", "lambda", "count"}, rows));
}

RunOutput run_spectrum(const ExperimentConfig& c) {
  const Pipeline p(c);
  const SpectrumData s = spectra_for(c, p.action, p.domain, p.chis, c.lambda.max);
  std::vector<std::vector<std::string>> rows;
  for (const auto& chi : p.chis) {
    long index = 0;
    for (const auto& e : s.entries.at(chi))
      if (e.value <= s.lambda_ceiling)
        rows.push_back({to_string(chi), std::to_string(index++), io::format_double(e.value),
                        std::to_string(e.multiplicity)});
  }
  return csv_output(c, "spectrum", io::csv({"character", "index", "eigenvalue", "multiplicity"}, rows));
}

RunOutput run_compare(const ExperimentConfig& c) {
  const Pipeline p(c);
  check_assumptions(p.action, p.symbol, p.domain);
  const MCEstimate mc = reduced_volume_mc(p.action, p.symbol, p.domain, 1.0, c.mc.samples, c.mc.seed);
  const SpectrumData s = spectra_for(c, p.action, p.domain, p.chis, c.lambda.max);
  const auto grid = grid_within(c, s.lambda_ceiling);

  RunOutput out;
  out.extension = "json";
  json comparisons = json::array();
  bool all_pass = true;
  for (const auto& chi : p.chis) {
    const WeylPrediction w = predict(p.action, chi, p.symbol, p.domain, mc);
    const auto samples = counting_function(s.entries.at(chi), grid, chi);
    const FitResult free_fit = fit(samples, FitMode::FreeExponent);
    const FitResult fixed_fit = fit(samples, FitMode::FixedExponent, w.exponent.value());
    const ComparisonReport r = compare(w, free_fit, fixed_fit, c.tolerances);
    all_pass &= r.pass();
    comparisons.push_back(
        {{"character", label_json(chi)},
         {"predicted", {{"coefficient", w.coefficient}, {"exponent", w.exponent.value()}}},
         {"fitted",
          {{"coefficient", fixed_fit.coefficient},
           {"exponent", free_fit.exponent},
           {"free_coefficient", free_fit.coefficient},
           {"window", {free_fit.lambda_lo, free_fit.lambda_hi}},
           {"n_points", free_fit.n_points},
           {"residual_rms", free_fit.residual_rms}}},
         {"rel_err",
          {{"coefficient", r.coefficient_rel_err},
           {"exponent", std::abs(free_fit.exponent / w.exponent.value() - 1.0)}}},
         {"abs_err", {{"exponent", r.exponent_abs_err}}},
         {"coefficient_pass", r.coefficient_pass},
         {"exponent_pass", r.exponent_pass},
         {"pass", r.pass()}});

    std::vector<std::pair<double, double>> counts, predicted;
    for (const auto& sample : samples) {
      counts.emplace_back(sample.lambda, static_cast<double>(sample.count));
      predicted.emplace_back(sample.lambda, w.evaluate(sample.lambda));
    }
    const std::string tag = c.output.prefix + "_" + std::to_string(chi.index);
    out.files.emplace_back(tag + "_counts.dat", two_column(counts));
    out.files.emplace_back(tag + "_prediction.dat", two_column(predicted));
  }
  json report = meta(c, "compare");
  report["comparisons"] = comparisons;
  report["pass"] = all_pass;
  report["reduced_volume"] = estimate_json(mc);
  report["spectrum_source"] = s.source;
  report["tolerances"] = {{"coefficient_rel", c.tolerances.coefficient_rel},
                          {"exponent_abs", c.tolerances.exponent_abs}};
  if (std::isfinite(s.lambda_ceiling)) report["lambda_ceiling"] = s.lambda_ceiling;
  out.report = io::dump(report) + "\n";
  return out;
}

RunOutput run_identities(const ExperimentConfig& c) {
  const Pipeline p(c);
  json report = meta(c, "identities");
  if (!p.action.is_finite()) {
    const auto samples =
        sample_regular_zero_level(p.action, p.domain, p.symbol, 1.0, c.identities.samples, c.mc.seed);
    double roch2 = 0.0, momentum = 0.0;
    for (const auto& s : samples) {
      roch2 = std::max(roch2, symmetry_identity_residual(p.action, s.point));
      momentum = std::max(momentum, momentum_map(p.action, s.point).cwiseAbs().maxCoeff());
    }
    double d_dev = 0.0, uv = 0.0, lambda_min = std::numeric_limits<double>::infinity();
    Stream rng(c.mc.seed, 0x1de7);
    const long pairs = std::min<long>(c.identities.pairs, static_cast<long>(samples.size()));
    for (long i = 0; i < pairs; ++i) {
      const Eigen::MatrixXd k = random_stabilizer_element(p.action, samples[i].point, rng);
      const HessianIdentity h = hessian_identity_check(p.action, samples[i].point, k);
      d_dev = std::max(d_dev, std::abs(h.d_det - 1.0));
      uv = std::max(uv, h.max_uv());
      lambda_min = std::min(lambda_min, std::abs(h.lambda_det));
    }
    report["zero_level"] = {{"samples", static_cast<long>(samples.size())},
                            {"roch2_max", roch2},
                            {"momentum_max", momentum}};
    report["hessian"] = {{"pairs", pairs},
                         {"d_det_max_deviation", d_dev},
                         {"uv_max", uv},
                         {"lambda_det_min_abs", pairs > 0 ? lambda_min : 0.0}};
  } else {
    const CenteredGrid grid{p.action.ambient_dim(), c.identities.grid_points, 1.0};
    const auto all = characters(p.action, 0);
    Stream rng(c.mc.seed, 0x9a1d);
    GridFunction f{grid, std::vector<cplx>(grid.size())};
    for (auto& v : f.values) v = cplx(rng.normal(), rng.normal());
    std::vector<GridFunction> proj;
    for (const auto& chi : all) proj.push_back(project_isotypic(p.action, chi, f));
    double idem = 0.0, orth = 0.0, comp = 0.0;
    std::vector<cplx> sum(f.values.size(), 0.0);
    for (std::size_t a = 0; a < all.size(); ++a) {
      const GridFunction twice = project_isotypic(p.action, all[a], proj[a]);
      for (std::size_t q = 0; q < f.values.size(); ++q) {
        idem = std::max(idem, std::abs(twice.values[q] - proj[a].values[q]));
        sum[q] += proj[a].values[q];
      }
      for (std::size_t b = 0; b < all.size(); ++b) {
        if (b == a) continue;
        const GridFunction cross = project_isotypic(p.action, all[b], proj[a]);
        for (const auto& v : cross.values) orth = std::max(orth, std::abs(v));
      }
    }
    for (std::size_t q = 0; q < f.values.size(); ++q) comp = std::max(comp, std::abs(sum[q] - f.values[q]));
    report["projector"] = {{"grid_points", c.identities.grid_points},
                           {"characters", static_cast<long>(all.size())},
                           {"idempotency", idem},
                           {"orthogonality", orth},
                           {"completeness", comp},
                           {"table_orthogonality", p.action.character_table().orthogonality_residual()}};
  }
  return {io::dump(report) + "\n", "json", {}};
}

RunOutput run_oscillatory(const ExperimentConfig& c) {
  const GroupAction action = make_action(c);
  if (action.kind() != GroupKind::PlanarSO2 || action.ambient_dim() != 2)
    throw ConfigError("the oscillatory experiment needs group planar_so2 with n = 2");
  const IrrepLabel chi{GroupKind::PlanarSO2, c.oscillatory.character};
  OscillatoryOptions opt;
  opt.points_per_wavelength = c.oscillatory.points_per_wavelength;
  std::vector<ConvergenceRow> rows;
  try {
    c.oscillatory.amplitude.validate();
    rows = convergence_report(action, chi, c.oscillatory.amplitude, c.oscillatory.mu, opt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid oscillatory section: ") + e.what());
  }
  std::vector<std::vector<std::string>> table;
  for (const auto& r : rows)
    table.push_back({io::format_double(r.mu), io::format_double(r.integral.real()),
                     io::format_double(r.integral.imag()), io::format_double(r.leading),
                     io::format_double(r.abs_error), io::format_double(r.empirical_order)});
  return csv_output(c, "oscillatory",
                    io::csv({"mu", "I_real", "I_imag", "leading", "abs_error", "empirical_order"}, table));
}

RunOutput run_characters(const ExperimentConfig& c) {
  const GroupAction action = make_action(c);
  if (action.is_finite()) return csv_output(c, "characters", action.character_table().to_csv());
  int max_index = 0;
  for (int i : c.characters) max_index = std::max(max_index, std::abs(i));
  std::vector<std::vector<std::string>> rows;
  for (const auto& chi : characters(action, max_index))
    rows.push_back({to_string(chi), std::to_string(irrep_dimension(action, chi)),
                    std::to_string(branching_multiplicity(action, chi))});
  return csv_output(c, "characters", io::csv({"character", "dimension", "branching"}, rows));
}

}  // namespace redweyl
