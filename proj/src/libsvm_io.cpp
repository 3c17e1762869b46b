#include "smoothsvm/libsvm_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "smoothsvm/errors.hpp"

namespace smoothsvm {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::string_view next_token(std::string_view line, std::size_t& pos) {
  while (pos < line.size() && is_blank(line[pos])) ++pos;
  const std::size_t start = pos;
  while (pos < line.size() && !is_blank(line[pos])) ++pos;
  return line.substr(start, pos - start);
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty() || s.front() == '+') return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

int parse_label(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  if (!parse_double(token, value)) {
    throw ParseError(line_no, "malformed label '" + std::string(token) + "'");
  }
  if (value == 1.0) return 1;
  if (value == -1.0 || value == 0.0) return -1;
  throw ParseError(line_no, "label '" + std::string(token) + "' is not one of -1, 0, +1");
}

struct Builder {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> values;
  std::vector<int> labels;
  std::size_t max_index = 0;
  std::size_t dropped = 0;
};

void parse_line(std::string_view line, std::size_t line_no, const LibsvmOptions& options, Builder& b) {
  std::size_t pos = 0;
  const std::string_view label_token = next_token(line, pos);
  if (label_token.empty()) return;
  const int label = parse_label(label_token, line_no);

  std::uint64_t previous = 0;
  for (std::string_view token = next_token(line, pos); !token.empty(); token = next_token(line, pos)) {
    const std::size_t colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, "malformed feature '" + std::string(token) + "'");
    }
    const std::string_view idx_text = token.substr(0, colon);
    std::uint64_t index = 0;
    const auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), index);
    if (idx_text.empty() || ec != std::errc() || ptr != idx_text.data() + idx_text.size()) {
      throw ParseError(line_no, "malformed feature index '" + std::string(idx_text) + "'");
    }
    if (index == 0) throw ParseError(line_no, "feature indices are 1-based");
    if (index <= previous) {
      throw ParseError(line_no, "feature index " + std::to_string(index) + " does not increase");
    }
    if (index > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
      throw ParseError(line_no, "feature index " + std::to_string(index) + " is too large");
    }
    previous = index;
    double value = 0.0;
    if (!parse_double(token.substr(colon + 1), value) || !std::isfinite(value)) {
      throw ParseError(line_no, "malformed feature value '" + std::string(token.substr(colon + 1)) + "'");
    }
    if (options.dimension && index > *options.dimension) {
      ++b.dropped;
      continue;
    }
    b.cols.push_back(static_cast<std::uint32_t>(index - 1));
    b.values.push_back(value);
    if (index > b.max_index) b.max_index = index;
  }
  b.labels.push_back(label);
  b.offsets.push_back(b.cols.size());
}

}  // namespace

Dataset parse_libsvm(std::istream& in, const LibsvmOptions& options, LibsvmStats* stats) {
  Builder b;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    parse_line(view, line_no, options, b);
  }
  if (in.bad()) throw Error("read error");
  if (b.labels.empty()) throw ParseError(0, "no instances");

  const std::size_t dim = options.dimension ? *options.dimension : b.max_index;
  if (dim == 0) throw ParseError(0, "no features");
  if (stats) {
    stats->instances = b.labels.size();
    stats->dropped_features = b.dropped;
  }
  const std::size_t rows = b.labels.size();
  return Dataset(CsrMatrix(rows, dim, std::move(b.offsets), std::move(b.cols), std::move(b.values)),
                 std::move(b.labels));
}

Dataset parse_libsvm(std::string_view text, const LibsvmOptions& options, LibsvmStats* stats) {
  std::istringstream in{std::string(text)};
  return parse_libsvm(in, options, stats);
}

Dataset read_libsvm_file(const std::filesystem::path& path, const LibsvmOptions& options, LibsvmStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return parse_libsvm(in, options, stats);
}

void write_libsvm(const Dataset& data, std::ostream& out) {
  const CsrMatrix& x = data.features();
  std::string line;
  char buf[64];
  for (std::size_t i = 0; i < data.size(); ++i) {
    line = data.labels()[i] > 0 ? "+1" : "-1";
    const auto row = x.row(i);
    for (std::size_t k = 0; k < row.cols.size(); ++k) {
      line += ' ';
      line += std::to_string(row.cols[k] + 1);
      line += ':';
      const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, row.values[k]);
      line.append(buf, end);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error("write error");
}

void write_libsvm_file(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_libsvm(data, out);
}

}  // namespace smoothsvm
