#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppdepth/depth.hpp"
#include "ppdepth/geometry.hpp"

// File formats. Realizations travel as line-delimited JSON, one object per
// line with fields exactly {id, t1, t2, events}; every record in a file must
// share the same time domain and carry sorted in-domain events. Depth
// reports and contour grids are CSV with all numbers printed at 12
// significant digits.

namespace ppdepth {

// Malformed or inconsistent input data; maps to exit code 2 in the CLI.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RealizationSet {
  TimeDomain domain;
  std::vector<std::string> ids;
  std::vector<PointProcess> processes;

  std::size_t size() const { return processes.size(); }
};

RealizationSet read_realizations(std::istream& in);
RealizationSet read_realizations_file(const std::string& path);

void write_realizations(std::ostream& out, const RealizationSet& set);
void write_realizations_file(const std::string& path,
                             const RealizationSet& set);

// 12 significant digits, shortest form ("%.12g").
std::string format_number(double x);

// Header id,k,d1,w,d_cond,d_overall,rank; one row per report in rank order.
void write_depth_csv(std::ostream& out, const std::vector<DepthReport>& rows);

struct ContourRow {
  double u1 = 0.0, u2 = 0.0, u3 = 0.0;
  double ilr_x = 0.0, ilr_y = 0.0;
  double depth = 0.0;
};

// Header u1,u2,u3,ilr_x,ilr_y,depth.
void write_contour_csv(std::ostream& out, const std::vector<ContourRow>& rows);

struct ConvergenceRowOut {
  std::size_t n = 0;
  int bins = 0;
  double sup_error = 0.0;
};

// Header n,M,sup_error.
void write_convergence_csv(std::ostream& out,
                           const std::vector<ConvergenceRowOut>& rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ppdepth
