#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// The CLI subcommands as plain functions over option structs. main() only
// parses flags and maps exceptions to exit codes; tests call these directly
// and compare the files they write.

namespace ppdepth {

// Semantic misuse of a command (unsupported mode, missing flag); exit 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimulateOptions {
  std::string family;            // hpp | ipp | imi
  double rate = 1.0;             // hpp
  std::string intensity;         // ipp: lambda(t) expression
  std::string intensity_t;       // imi: lambda1(t)
  std::string intensity_gap;     // imi: lambda2(tau)
  double rate_bound = 0.0;       // 0 = derive from a grid scan
  double t1 = 0.0;
  double t2 = 1.0;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  long conditional_k = -1;       // >= 0: condition on cardinality (hpp/ipp)
  std::string output;
};

struct DepthOptions {
  std::string input;
  std::string output;
  std::string mode;              // hpp | simplified | ipp-histogram | imi |
                                 // given-intensity
  double r = 1.0;
  int bins = 0;                  // 0 = ceil(n^(1/4))
  int bins_t = 0;
  int bins_gap = 0;
  std::string intensity;         // given-intensity expression
};

struct ContourOptions {
  int k = 2;                     // only 2 is supported (ternary export)
  std::string mode;
  int resolution = 60;
  std::string input;             // sample for the estimated modes
  std::string intensity;         // given-intensity expression
  double t1 = 0.0;
  double t2 = 1.0;               // domain when no input file is given
  int bins = 0;
  int bins_t = 0;
  int bins_gap = 0;
  std::string output;
};

struct ConvergenceOptions {
  std::string intensity;
  double t1 = 0.0;
  double t2 = 1.0;
  std::vector<std::size_t> n_grid;
  std::string bin_rule = "fourth-root";  // fourth-root | sqrt | fixed:<m>
  double rate_bound = 0.0;
  std::uint64_t seed = 0;
  std::string output;
};

struct IngestOptions {
  std::string input;
  std::string output;
  std::string time_column = "0";    // header name or 0-based index
  std::string period_column;        // required for decimal-hour timestamps
  std::string split_column;         // optional category column
  bool keep_empty = false;
  double t1 = 0.0;
  double t2 = 24.0;
};

void cmd_simulate(const SimulateOptions& opt);
void cmd_depth(const DepthOptions& opt);
void cmd_contours(const ContourOptions& opt);
void cmd_convergence(const ConvergenceOptions& opt);
void cmd_ingest(const IngestOptions& opt);

}  // namespace ppdepth
