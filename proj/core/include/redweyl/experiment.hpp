#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "redweyl/oscillatory.hpp"
#include "redweyl/reduced_volume.hpp"
#include "redweyl/weyl.hpp"

namespace redweyl {

class Domain;
class Symbol;

// Parsed experiment configuration. The on-disk format is JSON with the
// sections below; every section except "group", "domain" and "operator" is
// optional and unknown keys anywhere are rejected with ConfigError.
struct ExperimentConfig {
  struct GroupSection {
    std::string kind = "planar_so2";  // planar_so2 | standard_so3 | cyclic | finite
    int n = 2;
    std::pair<int, int> plane{0, 1};
    int order = 4;                          // cyclic
    std::vector<Eigen::MatrixXd> elements;  // finite
  } group;
  struct DomainSection {
    std::string kind = "disk";  // disk | annulus | ball | box
    double radius = 1.0;
    double r_inner = 0.5;
    double r_outer = 1.0;
    std::vector<double> half_widths;
  } domain;
  struct OperatorSection {
    std::string symbol = "euclidean_power";  // euclidean_power | invariant_quadratic | position_weighted
    int order = 2;
    std::vector<std::vector<double>> matrix;
    std::vector<double> weights;
  } op;
  std::vector<int> characters{0};
  struct LambdaGrid {
    double min = 1e2;
    double max = 1e4;
    int points = 40;
    bool logarithmic = true;
  } lambda;
  struct SpectrumSection {
    std::string source = "auto";  // auto | exact | finite_difference
    double h = 0.0;
  } spectrum;
  struct McSection {
    long samples = 200000;
    std::uint64_t seed = 1;
  } mc;
  QuadratureGrid quadrature;
  Tolerances tolerances;
  struct OscillatorySection {
    std::vector<double> mu{0.2, 0.1, 0.05};
    double points_per_wavelength = 10.0;
    AmplitudeSpec amplitude;
    int character = 0;
  } oscillatory;
  struct IdentitiesSection {
    long samples = 10000;
    int pairs = 100;
    int grid_points = 9;
  } identities;
  struct OutputSection {
    std::string dir;
    std::string prefix = "redweyl";
  } output;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// FNV-1a of the canonical serialization, so formatting and key order in the
// file do not matter.
std::string config_hash(const ExperimentConfig& config);
std::string canonical_config(const ExperimentConfig& config);

GroupAction make_action(const ExperimentConfig& config);
Domain make_domain(const ExperimentConfig& config);
Symbol make_symbol(const ExperimentConfig& config);

struct RunOutput {
  std::string report;     // printed on stdout
  std::string extension;  // "json" or "csv"
  // Additional files (name, content), written next to the report.
  std::vector<std::pair<std::string, std::string>> files;
};

RunOutput run_predict(const ExperimentConfig& config);
RunOutput run_count(const ExperimentConfig& config);
RunOutput run_compare(const ExperimentConfig& config);
RunOutput run_volume(const ExperimentConfig& config);
RunOutput run_identities(const ExperimentConfig& config);
RunOutput run_oscillatory(const ExperimentConfig& config);
RunOutput run_characters(const ExperimentConfig& config);
RunOutput run_spectrum(const ExperimentConfig& config);

const char* version();

}  // namespace redweyl
