#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ifsot {

/// The preconditions a closed-form distance formula can fail on.
enum class Condition {
  map_count,            // the formula is stated for a fixed number of maps
  ordering,             // images not ordered left to right
  disjoint_images,      // open images of two maps intersect
  positivity,           // some map is decreasing
  weight_dominance,     // partial sums of p - q change sign
  non_affine,           // exact formula needs affine maps
  anchored_maps,        // g_i(0) != f_i(0)
  pointwise_domination, // g_i(x) <= f_i(x) fails somewhere
  first_weight_order,   // p_1 <= q_1 fails
  weight_family,        // weights outside the (1/(2k+1), 2k/(2k+1)) family
  contraction_ratio,    // r too small for the weights
  system_shape,         // not the reflected / translated two-map system
  system_mismatch,      // the two systems use different ratios
  weight_mismatch,      // the two measures use different weights
};

std::string_view to_string(Condition condition);

/// Raised when a closed form is requested outside its hypotheses.
class HypothesisViolation : public std::runtime_error {
 public:
  HypothesisViolation(Condition condition, const std::string& detail)
      : std::runtime_error(std::string(to_string(condition)) + ": " + detail), condition_(condition) {}

  Condition condition() const noexcept { return condition_; }

 private:
  Condition condition_;
};

/// Raised when an adaptive computation would exceed its configured cap.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ifsot
