#include "ppdepth/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>

#include "ppdepth/density.hpp"
#include "ppdepth/depth.hpp"
#include "ppdepth/expression.hpp"
#include "ppdepth/intensity.hpp"
#include "ppdepth/io.hpp"
#include "ppdepth/simulation.hpp"

namespace ppdepth {

namespace {

int default_bins(std::size_t n) {
  return static_cast<int>(
      std::ceil(std::pow(static_cast<double>(n), 0.25)));
}

// Supremum of an expression over an even grid, inflated slightly so that
// thinning against the bound survives between-grid wiggle. The samplers
// still verify the bound pointwise and fail loudly if it is ever exceeded.
double scan_bound(const Expression& f, double lo, double hi) {
  constexpr int kScanPoints = 200001;
  double peak = 0.0;
  const double step = (hi - lo) / (kScanPoints - 1);
  for (int i = 0; i < kScanPoints; ++i) {
    peak = std::max(peak, f(lo + i * step));
  }
  if (!(peak > 0.0)) {
    throw UsageError("intensity expression is nowhere positive");
  }
  return peak * (1.0 + 1e-6);
}

double adaptive_simpson(const Expression& f, double a, double fa, double m,
                        double fm, double b, double fb, double whole,
                        double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * tol,
                          depth - 1) +
         adaptive_simpson(f, m, fm, rm, frm, b, fb, right, 0.5 * tol,
                          depth - 1);
}

double integrate(const Expression& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, m, fm, b, fb, whole, tol, 40);
}

ConditionalDepthFn make_conditional(const DepthOptions& opt,
                                    const RealizationSet& set,
                                    std::vector<std::string>& notes) {
  const std::size_t n = set.size();
  if (opt.mode == "hpp") {
    return [](const PointProcess& p) { return ilr_depth_hpp(p); };
  }
  if (opt.mode == "simplified") {
    return [](const PointProcess& p) { return simplified_ilr_depth(p); };
  }
  if (opt.mode == "ipp-histogram") {
    const int bins = opt.bins > 0 ? opt.bins : default_bins(n);
    notes.push_back("histogram bins: " + std::to_string(bins));
    auto big_lambda = std::make_shared<CumulativeIntensity>(
        cumulative(histogram_estimate(set.processes, bins)));
    return [big_lambda](const PointProcess& p) {
      return time_rescaled_depth(
          p, [&](double t) { return (*big_lambda)(t); });
    };
  }
  if (opt.mode == "imi") {
    const int bins_t = opt.bins_t > 0 ? opt.bins_t : default_bins(n);
    const int bins_gap = opt.bins_gap > 0 ? opt.bins_gap : default_bins(n);
    notes.push_back("imi bins: t=" + std::to_string(bins_t) +
                    " gap=" + std::to_string(bins_gap));
    auto model = std::make_shared<ImiIntensity>(
        imi_estimate(set.processes, bins_t, bins_gap));
    return [model](const PointProcess& p) {
      if (p.on_boundary()) return 0.0;
      return depth_from_rescaled_times(imi_cumulative(*model, p));
    };
  }
  if (opt.mode == "given-intensity") {
    if (opt.intensity.empty()) {
      throw UsageError("mode given-intensity needs --intensity");
    }
    auto expr = std::make_shared<Expression>(Expression::parse(opt.intensity));
    if (!expr->uses_time()) {
      // A constant intensity rescales every gap by the same factor, which
      // cancels in the depth; reduce to the homogeneous form exactly.
      return [](const PointProcess& p) { return ilr_depth_hpp(p); };
    }
    const double tol = 1e-11 * std::max(1.0, set.domain.width());
    return [expr, tol](const PointProcess& p) {
      if (p.on_boundary()) return 0.0;
      std::vector<double> knots;
      knots.reserve(p.size() + 2);
      knots.push_back(p.domain().t1());
      knots.insert(knots.end(), p.events().begin(), p.events().end());
      knots.push_back(p.domain().t2());
      std::vector<double> rescaled(knots.size(), 0.0);
      for (std::size_t i = 1; i < knots.size(); ++i) {
        rescaled[i] = rescaled[i - 1] +
                      integrate(*expr, knots[i - 1], knots[i], tol);
      }
      return depth_from_rescaled_times(rescaled);
    };
  }
  throw UsageError("unknown depth mode '" + opt.mode + "'");
}

std::string sanitize_token(const std::string& raw) {
  std::string token;
  for (char c : raw) {
    token += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
              c == '_')
                 ? c
                 : '_';
  }
  return token.empty() ? std::string("_") : token;
}

// --- ingest helpers -------------------------------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

struct ParsedStamp {
  std::string period;  // grouping key; "YYYY-MM-DD" for datetimes
  double hours = 0.0;  // event time within the period
  bool is_date = false;
};

bool parse_iso_datetime(const std::string& text, ParsedStamp& out) {
  // YYYY-MM-DD[T ]HH:MM[:SS[.frac]]
  if (text.size() < 16 || text[4] != '-' || text[7] != '-' ||
      (text[10] != 'T' && text[10] != ' ') || text[13] != ':') {
    return false;
  }
  const auto digits = [&](std::size_t pos, std::size_t len, long& value) {
    value = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        return false;
      value = value * 10 + (text[i] - '0');
    }
    return true;
  };
  long year = 0, month = 0, day = 0, hour = 0, minute = 0;
  if (!digits(0, 4, year) || !digits(5, 2, month) || !digits(8, 2, day) ||
      !digits(11, 2, hour) || !digits(14, 2, minute)) {
    return false;
  }
  double seconds = 0.0;
  if (text.size() > 16) {
    if (text[16] != ':') return false;
    const char* start = text.c_str() + 17;
    char* end = nullptr;
    seconds = std::strtod(start, &end);
    if (end == start) return false;
  }
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 ||
      minute > 59 || seconds < 0.0 || seconds >= 61.0) {
    return false;
  }
  out.period = text.substr(0, 10);
  out.hours = hour + minute / 60.0 + seconds / 3600.0;
  out.is_date = true;
  return true;
}

// Days since 1970-01-01 for a proleptic Gregorian date (Hinnant's algorithm).
long days_from_civil(long y, long m, long d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const long yoe = y - era * 400;
  const long doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const long doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

void civil_from_days(long z, long& y, long& m, long& d) {
  z += 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const long doe = z - era * 146097;
  const long yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = yoe + era * 400;
  const long doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const long mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

std::string format_date(long days) {
  long y = 0, m = 0, d = 0;
  civil_from_days(days, y, m, d);
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d", static_cast<int>(y),
                static_cast<int>(m), static_cast<int>(d));
  return buffer;
}

std::optional<long> date_to_days(const std::string& period) {
  if (period.size() != 10 || period[4] != '-' || period[7] != '-') {
    return std::nullopt;
  }
  long y = 0, m = 0, d = 0;
  if (std::sscanf(period.c_str(), "%ld-%ld-%ld", &y, &m, &d) != 3) {
    return std::nullopt;
  }
  return days_from_civil(y, m, d);
}

std::size_t resolve_column(const std::string& selector,
                           const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == selector) return i;
  }
  try {
    const std::size_t idx = std::stoul(selector);
    if (idx < header.size()) return idx;
  } catch (const std::exception&) {
  }
  throw UsageError("column '" + selector + "' not found in the CSV header");
}

}  // namespace

void cmd_simulate(const SimulateOptions& opt) {
  if (opt.output.empty()) throw UsageError("simulate needs --out");
  const TimeDomain domain(opt.t1, opt.t2);
  SeededRng rng(opt.seed);
  std::vector<PointProcess> processes;
  processes.reserve(opt.n);

  if (opt.family == "hpp") {
    if (!(opt.rate > 0.0)) throw UsageError("hpp needs --lambda > 0");
    for (std::size_t i = 0; i < opt.n; ++i) {
      processes.push_back(
          opt.conditional_k >= 0
              ? simulate_hpp_conditional(
                    static_cast<std::size_t>(opt.conditional_k), domain, rng)
              : simulate_hpp(opt.rate, domain, rng));
    }
  } else if (opt.family == "ipp") {
    if (opt.intensity.empty()) throw UsageError("ipp needs --intensity");
    const Expression rate = Expression::parse(opt.intensity);
    const double bound = opt.rate_bound > 0.0
                             ? opt.rate_bound
                             : scan_bound(rate, opt.t1, opt.t2);
    const auto rate_fn = [&rate](double t) { return rate(t); };
    for (std::size_t i = 0; i < opt.n; ++i) {
      processes.push_back(
          opt.conditional_k >= 0
              ? simulate_ipp_conditional(
                    static_cast<std::size_t>(opt.conditional_k), rate_fn,
                    bound, domain, rng)
              : simulate_ipp(rate_fn, bound, domain, rng));
    }
  } else if (opt.family == "imi") {
    if (opt.intensity_t.empty() || opt.intensity_gap.empty()) {
      throw UsageError("imi needs --intensity-t and --intensity-gap");
    }
    if (opt.conditional_k >= 0) {
      throw UsageError("conditional simulation is not defined for imi");
    }
    const Expression rate_t = Expression::parse(opt.intensity_t);
    const Expression rate_gap = Expression::parse(opt.intensity_gap);
    const double bound =
        opt.rate_bound > 0.0
            ? opt.rate_bound
            : scan_bound(rate_t, opt.t1, opt.t2) *
                  scan_bound(rate_gap, 0.0, opt.t2 - opt.t1);
    const auto t_fn = [&rate_t](double t) { return rate_t(t); };
    const auto gap_fn = [&rate_gap](double g) { return rate_gap(g); };
    for (std::size_t i = 0; i < opt.n; ++i) {
      processes.push_back(simulate_imi(t_fn, gap_fn, bound, domain, rng));
    }
  } else {
    throw UsageError("unknown family '" + opt.family + "'");
  }

  RealizationSet set{domain, {}, std::move(processes)};
  set.ids.reserve(opt.n);
  for (std::size_t i = 0; i < opt.n; ++i) {
    set.ids.push_back(std::to_string(i));
  }
  write_realizations_file(opt.output, set);
}

void cmd_depth(const DepthOptions& opt) {
  if (opt.input.empty() || opt.output.empty()) {
    throw UsageError("depth needs --input and --out");
  }
  if (!(opt.r > 0.0)) throw UsageError("--r must be positive");
  const RealizationSet set = read_realizations_file(opt.input);
  const CardinalityDistribution dist = empirical_cardinality(set.processes);
  std::vector<std::string> notes;
  const ConditionalDepthFn conditional = make_conditional(opt, set, notes);
  for (const std::string& note : notes) std::cerr << note << "\n";

  std::vector<DepthReport> reports;
  reports.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    reports.push_back(
        overall_depth(set.processes[i], dist, conditional, opt.r, set.ids[i]));
  }
  reports = rank_reports(std::move(reports));

  std::ofstream out(opt.output);
  if (!out) throw DataError("cannot write " + opt.output);
  write_depth_csv(out, reports);
}

void cmd_contours(const ContourOptions& opt) {
  if (opt.k != 2) {
    throw UsageError("contour export is defined for k = 2 only");
  }
  if (opt.resolution < 2) throw UsageError("--resolution must be >= 2");
  if (opt.output.empty()) throw UsageError("contours needs --out");

  std::optional<RealizationSet> set;
  if (!opt.input.empty()) set = read_realizations_file(opt.input);
  const TimeDomain domain =
      set ? set->domain : TimeDomain(opt.t1, opt.t2);

  DepthOptions depth_opt;
  depth_opt.mode = opt.mode;
  depth_opt.bins = opt.bins;
  depth_opt.bins_t = opt.bins_t;
  depth_opt.bins_gap = opt.bins_gap;
  depth_opt.intensity = opt.intensity;
  const bool needs_sample =
      opt.mode == "ipp-histogram" || opt.mode == "imi";
  if (needs_sample && !set) {
    throw UsageError("mode " + opt.mode + " needs --input");
  }
  RealizationSet lattice_domain_only{domain, {}, {}};
  std::vector<std::string> notes;
  const ConditionalDepthFn conditional =
      make_conditional(depth_opt, set ? *set : lattice_domain_only, notes);

  const ContrastMatrix psi = build_contrast_matrix(2);
  const int res = opt.resolution;
  const double total = domain.width();
  std::vector<ContourRow> rows;
  rows.reserve(static_cast<std::size_t>(res + 1) * (res + 2) / 2);
  for (int i = 0; i <= res; ++i) {
    for (int j = 0; j + i <= res; ++j) {
      const int l = res - i - j;
      ContourRow row;
      row.u1 = i * total / res;
      row.u2 = j * total / res;
      row.u3 = l * total / res;
      const double s1 = std::min(domain.t1() + row.u1, domain.t2());
      const double s2 = std::min(s1 + row.u2, domain.t2());
      const PointProcess p(domain, {s1, s2});
      row.depth = conditional(p);
      if (i > 0 && j > 0 && l > 0) {
        const IlrVector v =
            ilr(InterEventTimes(total, {row.u1, row.u2, row.u3}), psi);
        row.ilr_x = v.v[0];
        row.ilr_y = v.v[1];
      } else {
        row.ilr_x = std::numeric_limits<double>::quiet_NaN();
        row.ilr_y = std::numeric_limits<double>::quiet_NaN();
      }
      rows.push_back(row);
    }
  }
  std::ofstream out(opt.output);
  if (!out) throw DataError("cannot write " + opt.output);
  write_contour_csv(out, rows);
}

void cmd_convergence(const ConvergenceOptions& opt) {
  if (opt.intensity.empty()) throw UsageError("convergence needs --intensity");
  if (opt.n_grid.empty()) throw UsageError("convergence needs --n-grid");
  if (opt.output.empty()) throw UsageError("convergence needs --out");
  const Expression rate = Expression::parse(opt.intensity);
  const TimeDomain domain(opt.t1, opt.t2);
  const double bound = opt.rate_bound > 0.0
                           ? opt.rate_bound
                           : scan_bound(rate, opt.t1, opt.t2);

  std::function<int(std::size_t)> rule;
  if (opt.bin_rule == "fourth-root") {
    rule = [](std::size_t n) { return default_bins(n); };
  } else if (opt.bin_rule == "sqrt") {
    rule = [](std::size_t n) {
      return static_cast<int>(
          std::ceil(std::sqrt(static_cast<double>(n))));
    };
  } else if (opt.bin_rule.rfind("fixed:", 0) == 0) {
    const int fixed = std::stoi(opt.bin_rule.substr(6));
    if (fixed < 1) throw UsageError("fixed bin count must be >= 1");
    rule = [fixed](std::size_t) { return fixed; };
  } else {
    throw UsageError("unknown bin rule '" + opt.bin_rule + "'");
  }

  const auto table = convergence_experiment(
      [&rate](double t) { return rate(t); }, bound, domain, opt.n_grid, rule,
      opt.seed);
  std::vector<ConvergenceRowOut> rows;
  rows.reserve(table.size());
  for (const auto& row : table) {
    rows.push_back({row.n, row.bins, row.sup_error});
  }
  std::ofstream out(opt.output);
  if (!out) throw DataError("cannot write " + opt.output);
  write_convergence_csv(out, rows);
}

void cmd_ingest(const IngestOptions& opt) {
  if (opt.input.empty() || opt.output.empty()) {
    throw UsageError("ingest needs --input and --out");
  }
  std::ifstream in(opt.input);
  if (!in) throw DataError("cannot open " + opt.input);
  const TimeDomain domain(opt.t1, opt.t2);

  std::string line;
  if (!std::getline(in, line)) throw DataError("empty input file");
  const std::vector<std::string> header = split_csv_line(line);
  const std::size_t time_col = resolve_column(opt.time_column, header);
  const std::size_t split_col =
      opt.split_column.empty() ? header.size()
                               : resolve_column(opt.split_column, header);
  const std::size_t period_col =
      opt.period_column.empty() ? header.size()
                                : resolve_column(opt.period_column, header);

  // category -> period -> event hours
  std::map<std::string, std::map<std::string, std::vector<double>>> groups;
  std::size_t rows = 0;
  std::size_t bad = 0;
  std::size_t line_no = 1;
  bool all_periods_are_dates = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++rows;
    const std::vector<std::string> fields = split_csv_line(line);
    const auto complain = [&](const std::string& what) {
      ++bad;
      if (bad <= 50) {
        std::cerr << opt.input << ":" << line_no << ": " << what << "\n";
      }
    };
    if (time_col >= fields.size() ||
        (split_col < header.size() && split_col >= fields.size()) ||
        (period_col < header.size() && period_col >= fields.size())) {
      complain("too few columns");
      continue;
    }
    ParsedStamp stamp;
    const std::string& raw = fields[time_col];
    if (!parse_iso_datetime(raw, stamp)) {
      // Fall back to decimal hours; the grouping key must then come from
      // a dedicated period column.
      char* end = nullptr;
      const double hours = std::strtod(raw.c_str(), &end);
      if (end == raw.c_str() || *end != '\0') {
        complain("unparseable timestamp '" + raw + "'");
        continue;
      }
      if (period_col >= header.size()) {
        complain("decimal-hour timestamps need --period-col");
        continue;
      }
      stamp.hours = hours;
      stamp.period = fields[period_col];
      stamp.is_date = date_to_days(stamp.period).has_value();
    }
    if (!(stamp.hours >= domain.t1() && stamp.hours <= domain.t2())) {
      complain("event time outside the domain");
      continue;
    }
    if (!stamp.is_date) all_periods_are_dates = false;
    const std::string category =
        split_col < header.size() ? fields[split_col] : std::string();
    groups[category][stamp.period].push_back(stamp.hours);
  }
  if (rows == 0) throw DataError("no data rows in input");
  if (bad * 100 > rows) {
    throw DataError("more than 1% of rows failed to parse (" +
                    std::to_string(bad) + " of " + std::to_string(rows) +
                    ")");
  }

  for (auto& [category, periods] : groups) {
    if (opt.keep_empty && all_periods_are_dates && !periods.empty()) {
      const long first = *date_to_days(periods.begin()->first);
      const long last = *date_to_days(periods.rbegin()->first);
      for (long day = first; day <= last; ++day) {
        periods.try_emplace(format_date(day));
      }
    }
    RealizationSet set{domain, {}, {}};
    for (auto& [period, hours] : periods) {
      if (hours.empty() && !opt.keep_empty) continue;
      std::sort(hours.begin(), hours.end());
      set.ids.push_back(period);
      set.processes.emplace_back(domain, std::move(hours));
    }
    std::string path = opt.output;
    if (!opt.split_column.empty()) {
      const std::string token = sanitize_token(category);
      const std::size_t dot = path.find_last_of('.');
      if (dot == std::string::npos || path.find('/', dot) != std::string::npos) {
        path += "." + token;
      } else {
        path.insert(dot, "." + token);
      }
    }
    write_realizations_file(path, set);
  }
}

}  // namespace ppdepth
