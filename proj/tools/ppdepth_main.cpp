#include <exception>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ppdepth/commands.hpp"
#include "ppdepth/depth.hpp"
#include "ppdepth/expression.hpp"
#include "ppdepth/io.hpp"
#include "ppdepth/simulation.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 data error, 3 numeric contract violation.
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::vector<std::size_t> parse_n_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    grid.push_back(std::stoul(item));
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Center-outward depth ranking for temporal point processes via the "
      "isometric log-ratio transform of inter-event times"};
  app.require_subcommand(1);

  ppdepth::SimulateOptions sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Generate seeded realizations of hpp/ipp/imi processes");
  simulate->add_option("--family", sim.family, "hpp, ipp or imi")->required();
  simulate->add_option("--lambda", sim.rate, "constant rate (hpp)");
  simulate->add_option("--intensity", sim.intensity,
                       "lambda(t) expression (ipp)");
  simulate->add_option("--intensity-t", sim.intensity_t,
                       "lambda1(t) expression (imi)");
  simulate->add_option("--intensity-gap", sim.intensity_gap,
                       "lambda2(tau) expression (imi)");
  simulate->add_option("--lambda-max", sim.rate_bound,
                       "dominating rate for thinning (default: grid scan)");
  simulate->add_option("--t1", sim.t1, "domain start")->capture_default_str();
  simulate->add_option("--t2", sim.t2, "domain end")->capture_default_str();
  simulate->add_option("--n", sim.n, "number of realizations")->required();
  simulate->add_option("--seed", sim.seed, "rng seed")->required();
  simulate->add_option("--k", sim.conditional_k,
                       "condition on this cardinality (hpp/ipp)");
  simulate->add_option("--out", sim.output, "output realization file")
      ->required();

  ppdepth::DepthOptions dep;
  auto* depth = app.add_subcommand(
      "depth", "Rank realizations by overall depth; writes a CSV report");
  depth->add_option("--input", dep.input, "realization file")->required();
  depth->add_option("--mode", dep.mode,
                    "hpp, simplified, ipp-histogram, imi or given-intensity")
      ->required();
  depth->add_option("--r", dep.r, "cardinality weight exponent")
      ->capture_default_str();
  depth->add_option("--bins", dep.bins,
                    "histogram bins (default ceil(n^(1/4)))");
  depth->add_option("--bins-t", dep.bins_t, "imi time bins");
  depth->add_option("--bins-tau", dep.bins_gap, "imi gap bins");
  depth->add_option("--intensity", dep.intensity,
                    "lambda(t) expression (given-intensity)");
  depth->add_option("--out", dep.output, "output CSV")->required();

  ppdepth::ContourOptions con;
  auto* contours = app.add_subcommand(
      "contours", "Evaluate the conditional depth on a k=2 ternary lattice");
  contours->add_option("--k", con.k, "cardinality (must be 2)")
      ->capture_default_str();
  contours->add_option("--mode", con.mode, "conditional depth mode")
      ->required();
  contours->add_option("--resolution", con.resolution, "lattice subdivisions")
      ->capture_default_str();
  contours->add_option("--input", con.input,
                       "realization file (estimated modes)");
  contours->add_option("--intensity", con.intensity,
                       "lambda(t) expression (given-intensity)");
  contours->add_option("--t1", con.t1, "domain start")->capture_default_str();
  contours->add_option("--t2", con.t2, "domain end")->capture_default_str();
  contours->add_option("--bins", con.bins, "histogram bins");
  contours->add_option("--bins-t", con.bins_t, "imi time bins");
  contours->add_option("--bins-tau", con.bins_gap, "imi gap bins");
  contours->add_option("--out", con.output, "output CSV")->required();

  ppdepth::ConvergenceOptions conv;
  std::string n_grid_text = "100,1000,10000,100000";
  auto* convergence = app.add_subcommand(
      "convergence",
      "Measure sup |estimated - true| cumulative intensity across sample "
      "sizes");
  convergence->add_option("--intensity", conv.intensity, "lambda(t)")
      ->required();
  convergence->add_option("--t1", conv.t1, "domain start")
      ->capture_default_str();
  convergence->add_option("--t2", conv.t2, "domain end")
      ->capture_default_str();
  convergence->add_option("--n-grid", n_grid_text,
                          "comma-separated sample sizes")
      ->capture_default_str();
  convergence->add_option("--m-rule", conv.bin_rule,
                          "fourth-root, sqrt or fixed:<m>")
      ->capture_default_str();
  convergence->add_option("--lambda-max", conv.rate_bound,
                          "dominating rate (default: grid scan)");
  convergence->add_option("--seed", conv.seed, "rng seed")->required();
  convergence->add_option("--out", conv.output, "output CSV")->required();

  ppdepth::IngestOptions ing;
  auto* ingest = app.add_subcommand(
      "ingest", "Group a timestamp CSV into per-period realizations");
  ingest->add_option("--input", ing.input, "timestamp CSV")->required();
  ingest->add_option("--time-col", ing.time_column,
                     "timestamp column (name or 0-based index)")
      ->capture_default_str();
  ingest->add_option("--period-col", ing.period_column,
                     "grouping column (required for decimal-hour input)");
  ingest->add_option("--split-by", ing.split_column,
                     "category column; one output file per category");
  ingest->add_flag("--keep-empty", ing.keep_empty,
                   "emit empty realizations for gap days");
  ingest->add_option("--t1", ing.t1, "domain start")->capture_default_str();
  ingest->add_option("--t2", ing.t2, "domain end")->capture_default_str();
  ingest->add_option("--out", ing.output, "output realization file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*simulate) ppdepth::cmd_simulate(sim);
    if (*depth) ppdepth::cmd_depth(dep);
    if (*contours) ppdepth::cmd_contours(con);
    if (*convergence) {
      conv.n_grid = parse_n_grid(n_grid_text);
      ppdepth::cmd_convergence(conv);
    }
    if (*ingest) ppdepth::cmd_ingest(ing);
  } catch (const ppdepth::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ppdepth::ExpressionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ppdepth::NumericContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ppdepth::InvalidIntensityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ppdepth::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
