#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ifsot/ifs.hpp"

namespace ifsot {

/// std::mt19937_64 with uniforms (x >> 11) * 2^-53.
inline constexpr const char* kGeneratorId = "mt19937_64/u53";
inline constexpr unsigned kBatchCount = 16;

struct SampleSet {
  std::vector<double> points;          // sorted
  std::vector<double> batch_sorted;    // time order cut into kBatchCount batches, each sorted
  std::size_t batch_size = 0;          // count / kBatchCount; the remainder is not batched
  std::uint64_t seed = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t count = 0;
  std::string generator = kGeneratorId;
};

/// Random iteration x <- f_I(x), I ~ p, started at 1/2. Throws
/// std::invalid_argument unless count >= 1 and burn_in >= 32.
SampleSet chaos_game(const IFSystem& system, const WeightVector& weights, std::uint64_t count,
                     std::uint64_t burn_in, std::uint64_t seed);

struct EmpiricalW1 {
  double estimate = 0.0;
  /// Batch-means standard error; infinite when fewer than kBatchCount points.
  double std_error = 0.0;
};

/// Mean of |x_(i) - y_(i)| over order statistics. Throws std::invalid_argument
/// when counts differ.
EmpiricalW1 w1_empirical(const SampleSet& a, const SampleSet& b);

/// "# seed=", "# burn_in=" comment lines, header "x", one point per row.
void write_samples_csv(std::ostream& out, const SampleSet& samples);

}  // namespace ifsot
