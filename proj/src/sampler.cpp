#include "ifsot/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

namespace ifsot {

SampleSet chaos_game(const IFSystem& system, const WeightVector& weights, std::uint64_t count,
                     std::uint64_t burn_in, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample count must be positive");
  if (burn_in < 32) throw std::invalid_argument("burn-in must be at least 32");
  if (weights.size() != system.size()) throw std::invalid_argument("weight count differs from map count");

  std::vector<double> cumulative;
  double acc = 0.0;
  for (double w : weights.values()) cumulative.push_back(acc += w);

  std::mt19937_64 rng(seed);
  auto draw = [&]() -> const ContractionMap& {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end() - 1, u);
    return system[static_cast<std::size_t>(it - cumulative.begin())];
  };

  double x = 0.5;
  for (std::uint64_t i = 0; i < burn_in; ++i) x = draw().apply(x);

  SampleSet out;
  out.seed = seed;
  out.burn_in = burn_in;
  out.count = count;
  out.points.resize(count);
  for (auto& v : out.points) v = x = draw().apply(x);

  out.batch_size = count / kBatchCount;
  out.batch_sorted = out.points;
  for (unsigned b = 0; b < kBatchCount && out.batch_size > 0; ++b) {
    const auto first = out.batch_sorted.begin() + static_cast<std::ptrdiff_t>(b * out.batch_size);
    std::sort(first, first + static_cast<std::ptrdiff_t>(out.batch_size));
  }
  out.batch_sorted.resize(out.batch_size * kBatchCount);
  std::sort(out.points.begin(), out.points.end());
  return out;
}

EmpiricalW1 w1_empirical(const SampleSet& a, const SampleSet& b) {
  if (a.count != b.count || a.points.size() != b.points.size()) {
    throw std::invalid_argument("empirical W1 needs equal sample counts");
  }
  EmpiricalW1 result;
  double total = 0.0;
  for (std::size_t i = 0; i < a.points.size(); ++i) total += std::abs(a.points[i] - b.points[i]);
  result.estimate = total / static_cast<double>(a.points.size());

  const std::size_t m = a.batch_size;
  if (m == 0) {
    result.std_error = std::numeric_limits<double>::infinity();
    return result;
  }
  std::vector<double> means(kBatchCount);
  for (unsigned k = 0; k < kBatchCount; ++k) {
    double s = 0.0;
    for (std::size_t i = k * m; i < (k + 1) * m; ++i) s += std::abs(a.batch_sorted[i] - b.batch_sorted[i]);
    means[k] = s / static_cast<double>(m);
  }
  double mean = 0.0;
  for (double v : means) mean += v;
  mean /= kBatchCount;
  double var = 0.0;
  for (double v : means) var += (v - mean) * (v - mean);
  var /= kBatchCount - 1;
  result.std_error = std::sqrt(var / kBatchCount);
  return result;
}

void write_samples_csv(std::ostream& out, const SampleSet& samples) {
  out << "# seed=" << samples.seed << '\n';
  out << "# burn_in=" << samples.burn_in << '\n';
  out << "# generator=" << samples.generator << '\n';
  out << "x\n";
  char buf[40];
  for (double v : samples.points) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
}

}  // namespace ifsot
