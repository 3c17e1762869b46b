#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "smoothsvm/dataset.hpp"

namespace smoothsvm {

struct LibsvmOptions {
  /// Fixed feature dimension. Indices beyond it are dropped and counted, which
  /// aligns a test file with the dimension of a trained model.
  std::optional<std::size_t> dimension;
};

struct LibsvmStats {
  std::size_t instances = 0;
  std::size_t dropped_features = 0;
};

/// Reads `<label> <idx>:<val> ...` lines. Labels in {-1, +1} pass through and
/// {0, 1} map to {-1, +1}. Blank lines are skipped; "\r\n" is accepted.
/// Throws ParseError carrying the 1-based line number.
Dataset parse_libsvm(std::istream& in, const LibsvmOptions& options = {}, LibsvmStats* stats = nullptr);
Dataset parse_libsvm(std::string_view text, const LibsvmOptions& options = {}, LibsvmStats* stats = nullptr);

/// Throws Error when the file cannot be opened.
Dataset read_libsvm_file(const std::filesystem::path& path, const LibsvmOptions& options = {},
                         LibsvmStats* stats = nullptr);

/// Writes "+1"/"-1" labels and shortest round-trip values, one line per
/// instance, "\n" terminated.
void write_libsvm(const Dataset& data, std::ostream& out);
void write_libsvm_file(const Dataset& data, const std::filesystem::path& path);

}  // namespace smoothsvm
