#ifndef SEBOOST_TRACE_IO_HPP
#define SEBOOST_TRACE_IO_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seboost/boosting.hpp"
#include "seboost/data.hpp"

namespace seboost {

inline constexpr const char* kTraceCsvHeader =
    "outer_step,baseline_steps,wall_ms,train_loss,test_loss,boost_applied,"
    "phi0,phi_star,evals_used";

namespace detail {

/// Shortest decimal form that restores the exact double (%.17g round-trips).
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string format_trace_csv(
    const std::vector<TraceRecord<double>>& trace) {
  std::string out = kTraceCsvHeader;
  out += '\n';
  for (const auto& r : trace) {
    out += std::to_string(r.outer_step);
    out += ',';
    out += std::to_string(r.baseline_steps_done);
    out += ',';
    out += detail::format_double(r.wall_clock_ms);
    out += ',';
    out += detail::format_double(r.train_loss);
    out += ',';
    out += detail::format_double(r.test_loss);
    out += ',';
    out += r.boost_applied ? '1' : '0';
    out += ',';
    out += detail::format_double(r.phi0);
    out += ',';
    out += detail::format_double(r.phi_star);
    out += ',';
    out += std::to_string(r.evals_used);
    out += '\n';
  }
  return out;
}

inline std::vector<TraceRecord<double>> parse_trace_csv(
    const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTraceCsvHeader) {
    throw IoError("trace csv header mismatch");
  }
  std::vector<TraceRecord<double>> trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 9) {
      throw IoError("trace csv line " + std::to_string(line_no) +
                               " has " + std::to_string(fields.size()) +
                               " fields, expected 9");
    }
    const auto as_double = [&](const std::string& s) {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end != s.c_str() + s.size()) {
        throw IoError("trace csv line " + std::to_string(line_no) +
                                 ": bad number \"" + s + "\"");
      }
      return v;
    };
    TraceRecord<double> r;
    r.outer_step = static_cast<Index>(as_double(fields[0]));
    r.baseline_steps_done = static_cast<Index>(as_double(fields[1]));
    r.wall_clock_ms = as_double(fields[2]);
    r.train_loss = as_double(fields[3]);
    r.test_loss = as_double(fields[4]);
    if (fields[5] != "0" && fields[5] != "1") {
      throw IoError("trace csv line " + std::to_string(line_no) +
                               ": boost_applied must be 0 or 1");
    }
    r.boost_applied = fields[5] == "1";
    r.phi0 = as_double(fields[6]);
    r.phi_star = as_double(fields[7]);
    r.evals_used = static_cast<int>(as_double(fields[8]));
    trace.push_back(r);
  }
  return trace;
}

inline void write_trace_csv(const std::vector<TraceRecord<double>>& trace,
                            const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << format_trace_csv(trace);
  if (!out) throw IoError("write failed on " + path);
}

inline std::vector<TraceRecord<double>> read_trace_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_trace_csv(buf.str());
}

}  // namespace seboost

#endif  // SEBOOST_TRACE_IO_HPP
