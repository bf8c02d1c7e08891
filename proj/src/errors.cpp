#include "ifsot/errors.hpp"

namespace ifsot {

std::string_view to_string(Condition condition) {
  switch (condition) {
    case Condition::map_count: return "map_count";
    case Condition::ordering: return "ordering";
    case Condition::disjoint_images: return "disjoint_images";
    case Condition::positivity: return "positivity";
    case Condition::weight_dominance: return "weight_dominance";
    case Condition::non_affine: return "non_affine";
    case Condition::anchored_maps: return "anchored_maps";
    case Condition::pointwise_domination: return "pointwise_domination";
    case Condition::first_weight_order: return "first_weight_order";
    case Condition::weight_family: return "weight_family";
    case Condition::contraction_ratio: return "contraction_ratio";
    case Condition::system_shape: return "system_shape";
    case Condition::system_mismatch: return "system_mismatch";
    case Condition::weight_mismatch: return "weight_mismatch";
  }
  return "unknown";
}

}  // namespace ifsot
