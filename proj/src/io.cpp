#include "ppdepth/io.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace ppdepth {

namespace {

using nlohmann::json;

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw DataError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

RealizationSet read_realizations(std::istream& in) {
  std::optional<TimeDomain> domain;
  std::vector<std::string> ids;
  std::vector<PointProcess> processes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      fail_line(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object() || !record.contains("id") ||
        !record.contains("t1") || !record.contains("t2") ||
        !record.contains("events")) {
      fail_line(line_no, "record must have fields {id, t1, t2, events}");
    }
    if (!record["id"].is_string() || !record["t1"].is_number() ||
        !record["t2"].is_number() || !record["events"].is_array()) {
      fail_line(line_no, "record field has the wrong type");
    }
    const double t1 = record["t1"].get<double>();
    const double t2 = record["t2"].get<double>();
    std::vector<double> events;
    events.reserve(record["events"].size());
    for (const auto& e : record["events"]) {
      if (!e.is_number()) fail_line(line_no, "events must be numbers");
      events.push_back(e.get<double>());
    }
    try {
      TimeDomain record_domain(t1, t2);
      if (!domain) {
        domain = record_domain;
      } else if (!(*domain == record_domain)) {
        fail_line(line_no, "all records must share one (t1, t2) domain");
      }
      processes.emplace_back(record_domain, std::move(events));
    } catch (const std::invalid_argument& e) {
      fail_line(line_no, e.what());
    }
    ids.push_back(record["id"].get<std::string>());
  }
  if (!domain) {
    throw DataError("no realizations in input");
  }
  return RealizationSet{*domain, std::move(ids), std::move(processes)};
}

RealizationSet read_realizations_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_realizations(in);
}

void write_realizations(std::ostream& out, const RealizationSet& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    json record;
    record["id"] = set.ids[i];
    record["t1"] = set.domain.t1();
    record["t2"] = set.domain.t2();
    record["events"] = set.processes[i].events();
    out << record.dump() << '\n';
  }
}

void write_realizations_file(const std::string& path,
                             const RealizationSet& set) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  write_realizations(out, set);
}

std::string format_number(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  return buffer;
}

void write_depth_csv(std::ostream& out, const std::vector<DepthReport>& rows) {
  out << "id,k,d1,w,d_cond,d_overall,rank\n";
  for (const DepthReport& r : rows) {
    out << r.id << ',' << r.k << ',' << format_number(r.d1) << ','
        << format_number(r.w) << ',' << format_number(r.d_cond) << ','
        << format_number(r.d_overall) << ',' << r.rank << '\n';
  }
}

void write_contour_csv(std::ostream& out,
                       const std::vector<ContourRow>& rows) {
  out << "u1,u2,u3,ilr_x,ilr_y,depth\n";
  for (const ContourRow& r : rows) {
    out << format_number(r.u1) << ',' << format_number(r.u2) << ','
        << format_number(r.u3) << ',' << format_number(r.ilr_x) << ','
        << format_number(r.ilr_y) << ',' << format_number(r.depth) << '\n';
  }
}

void write_convergence_csv(std::ostream& out,
                           const std::vector<ConvergenceRowOut>& rows) {
  out << "n,M,sup_error\n";
  for (const ConvergenceRowOut& r : rows) {
    out << r.n << ',' << r.bins << ',' << format_number(r.sup_error) << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

}  // namespace ppdepth
