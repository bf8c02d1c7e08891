#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ifsot/ifs.hpp"

namespace ifsot {

/// Parse failure with a 1-based position.
class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// One system with one or two weight vectors.
struct SystemSpec {
  IFSystem system;
  std::vector<WeightVector> weights;
};

/// Text format, one directive per line, '#' starts a comment:
///
///   affine <slope> <intercept>
///   qsine  <scale> <offset>
///   weights <w1> <w2> ...        (once or twice, after the maps)
///
/// Numbers are integers, decimals or quotients such as 1/3 or 1.1/2.1.
SystemSpec parse_system_spec(std::string_view text);

/// Reads and parses a file. Throws std::ios_base::failure when it cannot be
/// read.
SystemSpec load_system_spec(const std::filesystem::path& path);

}  // namespace ifsot
