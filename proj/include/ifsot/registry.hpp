#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifsot/errors.hpp"
#include "ifsot/interval.hpp"
#include "ifsot/specfile.hpp"
#include "ifsot/staircase.hpp"

namespace ifsot {

enum class ExpectationKind { applies, does_not_apply, bounds_figure };

struct Expectation {
  ExpectationKind kind = ExpectationKind::applies;
  std::string closed_form;             // empty for bounds figures
  std::optional<Condition> condition;  // set for does_not_apply
};

std::string describe(const Expectation& expectation);

/// One worked example: a system with weights p (and q), optionally a second
/// system for q, and what should happen.
struct ExampleSpec {
  std::string id;
  std::string description;
  std::string first;   // spec text: first system with p, and q when second is empty
  std::string second;  // spec text: second system with q, or empty
  Expectation expectation;
};

struct ExamplePair {
  IFSystem f;
  WeightVector p;
  IFSystem g;
  WeightVector q;
};

/// Parsed systems of a two-measure example. Throws std::logic_error for bounds
/// figures, which have one measure.
ExamplePair load_pair(const ExampleSpec& example);

/// The sixteen examples, ordered eg1..eg16.
const std::vector<ExampleSpec>& example_registry();
/// nullptr when the id is unknown.
const ExampleSpec* find_example(std::string_view id);

struct ExampleResult {
  std::string id;
  bool passed = false;
  std::string detail;
  std::optional<ValueInterval> numeric;       // W1 enclosure for two-measure examples
  std::optional<ValueInterval> closed_value;  // when the named closed form applies
  std::optional<bool> agrees;                 // closed form meets the enclosure (widened 1e-9)
  std::vector<std::filesystem::path> artifacts;
};

inline constexpr double kFigureResolution = 1e-3;

/// Runs the example at `resolution` and checks its expectation. When out_dir
/// is given, also writes staircase CSVs built at `figure_resolution` (and the
/// envelope CSV for bounds figures).
ExampleResult run_example(const ExampleSpec& example, double resolution = 1e-5,
                          const std::optional<std::filesystem::path>& out_dir = std::nullopt,
                          double figure_resolution = kFigureResolution);

}  // namespace ifsot
