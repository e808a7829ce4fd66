#include "acgd/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "acgd/errors.hpp"

namespace acgd {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("format_double: buffer too small");
  return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.iter << ',' << r.evals << ',' << format_double(r.f_avg) << ','
        << format_double(r.f_last) << ',' << format_double(r.eta) << ',' << format_double(r.S)
        << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class T>
T parse_cell(const std::string& s, std::size_t line, const char* column) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(std::string("bad value '") + s + "' in column " + column, line);
  }
  return v;
}

}  // namespace

Trace read_trace_csv(std::istream& in) {
  static const std::vector<std::string> expected = split(kTraceHeader);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trace file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  for (std::size_t c = 0; c < std::max(header.size(), expected.size()); ++c) {
    if (c >= header.size()) throw ParseError("missing column '" + expected[c] + "'", 1);
    if (c >= expected.size()) throw ParseError("unexpected column '" + header[c] + "'", 1);
    if (header[c] != expected[c]) {
      throw ParseError("column " + std::to_string(c + 1) + " is '" + header[c] +
                           "', expected '" + expected[c] + "'",
                       1);
    }
  }
  Trace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != expected.size()) {
      throw ParseError("expected " + std::to_string(expected.size()) + " cells", line_no);
    }
    TraceRecord r;
    r.iter = parse_cell<std::size_t>(cells[0], line_no, "iter");
    r.evals = parse_cell<std::size_t>(cells[1], line_no, "evals");
    r.f_avg = parse_cell<double>(cells[2], line_no, "f_avg");
    r.f_last = parse_cell<double>(cells[3], line_no, "f_last");
    r.eta = parse_cell<double>(cells[4], line_no, "eta");
    r.S = parse_cell<double>(cells[5], line_no, "S");
    if (!trace.records.empty()) {
      if (r.iter <= trace.records.back().iter) throw ParseError("iter not increasing", line_no);
      if (r.evals < trace.records.back().evals) throw ParseError("evals decreasing", line_no);
    }
    trace.records.push_back(r);
  }
  return trace;
}

void write_comparison_csv(std::ostream& out, std::span<const NamedTrace> series) {
  // evals -> per series (f_avg, f_last); a series recording the same evals
  // twice keeps its last record.
  std::map<std::size_t, std::vector<const TraceRecord*>> rows;
  for (std::size_t s = 0; s < series.size(); ++s) {
    for (const auto& r : series[s].trace.records) {
      auto& slot = rows[r.evals];
      slot.resize(series.size(), nullptr);
      slot[s] = &r;
    }
  }
  out << "evals";
  for (const auto& s : series) out << ',' << s.name << ".f_avg," << s.name << ".f_last";
  out << '\n';
  for (const auto& [evals, recs] : rows) {
    out << evals;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const TraceRecord* r = s < recs.size() ? recs[s] : nullptr;
      if (r) {
        out << ',' << format_double(r->f_avg) << ',' << format_double(r->f_last);
      } else {
        out << ",,";
      }
    }
    out << '\n';
  }
}

}  // namespace acgd
