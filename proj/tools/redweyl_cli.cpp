// Command line front end: one subcommand per experiment, a JSON config as the
// single positional argument.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "redweyl/error.hpp"
#include "redweyl/experiment.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kAssumption = 3, kNumerical = 4 };

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw redweyl::ConfigError("cannot write " + path.string());
  out << content;
}

int execute(const std::string& command, const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir_flag) {
  using Runner = std::function<redweyl::RunOutput(const redweyl::ExperimentConfig&)>;
  static const std::map<std::string, Runner> runners = {
      {"predict", redweyl::run_predict},       {"count", redweyl::run_count},
      {"compare", redweyl::run_compare},       {"volume", redweyl::run_volume},
      {"identities", redweyl::run_identities}, {"oscillatory", redweyl::run_oscillatory},
      {"characters", redweyl::run_characters}, {"spectrum", redweyl::run_spectrum},
  };
  try {
    redweyl::ExperimentConfig config = redweyl::load_config(config_path);
    if (seed) config.mc.seed = *seed;
    const std::string out_dir = out_dir_flag.empty() ? config.output.dir : out_dir_flag;

    const redweyl::RunOutput out = runners.at(command)(config);
    std::cout << out.report << std::flush;
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path root(out_dir);
      write_file(root / (config.output.prefix + "_" + command + "." + out.extension), out.report);
      for (const auto& [name, content] : out.files) write_file(root / name, content);
    }
    return kOk;
  } catch (const redweyl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const redweyl::AssumptionViolation& e) {
    std::cerr << "assumption violated: " << e.what() << "\n";
    return kAssumption;
  } catch (const redweyl::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced Weyl law experiments for compact group actions"};
  app.set_version_flag("--version", std::string(redweyl::version()));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;

  const std::pair<const char*, const char*> commands[] = {
      {"predict", "Predicted Weyl coefficient and exponent per character (JSON)"},
      {"count", "Counting function N_chi on the lambda grid (CSV)"},
      {"compare", "Fit counts against the prediction (JSON plus plot data)"},
      {"volume", "Reduced volume by Monte Carlo and quadrature (JSON)"},
      {"identities", "Zero-level and projector identity residuals (JSON)"},
      {"oscillatory", "Stationary phase convergence table (CSV)"},
      {"characters", "Character table or character list (CSV)"},
      {"spectrum", "Eigenvalues per character up to lambda_grid.max (CSV)"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Override mc.seed");
    sub->add_option("--out-dir", out_dir, "Directory for report files");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfig;
  }
  return execute(app.get_subcommands().front()->get_name(), config_path, seed, out_dir);
}
