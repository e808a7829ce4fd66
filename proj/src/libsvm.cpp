#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>

#include "acgd/problems.hpp"

namespace acgd {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  auto tok = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return tok;
}

double parse_double(std::string_view s, std::size_t line, const char* what) {
  // from_chars rejects a leading '+', which libsvm files use for labels.
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'", line);
  }
  return v;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, std::optional<std::size_t> dim_override) {
  Dataset ds;
  std::size_t max_dim = 0;
  std::string buf;
  std::size_t line_no = 0;
  std::vector<SparseVector::Entry> entries;
  while (std::getline(in, buf)) {
    ++line_no;
    std::string_view rest(buf);
    if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    auto label_tok = next_token(rest);
    if (label_tok.empty()) continue;

    const double raw = parse_double(label_tok, line_no, "label");
    double label;
    if (raw == 1.0) {
      label = 1.0;
    } else if (raw == -1.0 || raw == 0.0) {
      label = -1.0;
    } else {
      throw ParseError("label '" + std::string(label_tok) + "' is not binary", line_no);
    }

    entries.clear();
    for (auto tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
      if (tok.starts_with("qid:")) continue;
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size()) {
        throw ParseError("expected <index>:<value>, got '" + std::string(tok) + "'", line_no);
      }
      std::size_t idx = 0;
      auto idx_str = tok.substr(0, colon);
      auto [ptr, ec] = std::from_chars(idx_str.data(), idx_str.data() + idx_str.size(), idx);
      if (ec != std::errc{} || ptr != idx_str.data() + idx_str.size() || idx == 0) {
        throw ParseError("bad feature index '" + std::string(idx_str) + "'", line_no);
      }
      const double val = parse_double(tok.substr(colon + 1), line_no, "feature value");
      if (!entries.empty() && idx - 1 <= entries.back().index) {
        throw ParseError("feature indices must be strictly increasing", line_no);
      }
      entries.push_back({idx - 1, val});
    }
    const std::size_t row_dim = entries.empty() ? 0 : entries.back().index + 1;
    max_dim = std::max(max_dim, row_dim);
    ds.rows.emplace_back(std::max<std::size_t>(row_dim, 1), entries);
    ds.labels.push_back(label);
  }
  if (in.bad()) throw IoError("read failure while parsing libsvm data");

  std::size_t dim = max_dim;
  if (dim_override) {
    if (*dim_override < max_dim) {
      throw ParseError("dimension override " + std::to_string(*dim_override) +
                       " is smaller than max index + 1 = " + std::to_string(max_dim));
    }
    dim = *dim_override;
  }
  ds.dim = std::max<std::size_t>(dim, 1);
  for (auto& row : ds.rows) row.set_dim(ds.dim);
  return ds;
}

Dataset load_libsvm(const std::filesystem::path& path, std::optional<std::size_t> dim_override) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_libsvm(in, dim_override);
}

}  // namespace acgd
