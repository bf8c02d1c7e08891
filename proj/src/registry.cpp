#include "ifsot/registry.hpp"

#include <fstream>
#include <ios>
#include <stdexcept>

#include "ifsot/transport.hpp"

namespace ifsot {

namespace {

Expectation applies(const char* name) { return {ExpectationKind::applies, name, std::nullopt}; }
Expectation fails(const char* name, Condition c) { return {ExpectationKind::does_not_apply, name, c}; }
Expectation bounds() { return {ExpectationKind::bounds_figure, "", std::nullopt}; }

constexpr const char* kThreeAffine = R"(affine 1/5 0
affine 1/5 2/5
affine 1/5 4/5
)";

constexpr const char* kSineSystem = R"(qsine 1/6 0
affine 1/6 1/3
qsine 1/3 2/3
)";

constexpr const char* kLargeAffine = R"(affine 1/3 0
affine 1/3 2/3
)";

constexpr const char* kSmallAffine = R"(affine 1/6 0
affine 1/6 2/3
)";

std::string flip(const char* r) {
  return std::string("affine 1/") + r + " 0\naffine -1/" + r + " 1\n";
}

// offset is (r-1)/r, written out.
std::string translated(const char* r, const char* offset) {
  return std::string("affine 1/") + r + " 0\naffine 1/" + r + " " + offset + "\n";
}

std::string with_weights(const std::string& maps, const char* p, const char* q = nullptr) {
  std::string out = maps + "weights " + p + "\n";
  if (q) out += std::string("weights ") + q + "\n";
  return out;
}

std::vector<ExampleSpec> build_registry() {
  using namespace closed_form;
  std::vector<ExampleSpec> r;
  r.push_back({"eg1", "three affine maps of ratio 1/5, dominated weights", with_weights(kThreeAffine, "1/2 1/4 1/4", "1/4 1/4 1/2"), "",
               applies(same_ifs)});
  r.push_back({"eg2", "affine maps with a wide middle map; weight dominance is re-checked",
               with_weights("affine 1/5 0\naffine 3/5 1/5\naffine 1/5 4/5\n", "1/4 1/3 5/12", "1/6 1/4 7/12"), "",
               applies(same_ifs)});
  r.push_back({"eg3", "quarter-sine outer maps", with_weights(kSineSystem, "0.1 0.3 0.6", "0.2 0.5 0.3"), "", applies(same_ifs)});
  r.push_back({"eg4", "as eg3 with weights whose partial sums change sign",
               with_weights(kSineSystem, "0.3 0.1 0.6", "0.2 0.5 0.3"), "", fails(same_ifs, Condition::weight_dominance)});
  r.push_back({"eg5", "decreasing middle map",
               with_weights("qsine 1/6 0\naffine -1/6 1/2\nqsine 1/3 2/3\n", "0.1 0.3 0.6", "0.2 0.5 0.3"), "",
               fails(same_ifs, Condition::positivity)});
  r.push_back({"eg6", "two systems with common anchors, g below f, p1 <= q1", with_weights(kLargeAffine, "0.4 0.6"),
               with_weights(kSmallAffine, "0.5 0.5"), applies(dominated_pair)});
  r.push_back({"eg7", "as eg6 with p1 > q1", with_weights(kLargeAffine, "0.5 0.5"), with_weights(kSmallAffine, "0.4 0.6"),
               fails(dominated_pair, Condition::first_weight_order)});
  r.push_back({"eg8", "as eg6 with p1 > q1", with_weights(kLargeAffine, "0.5 0.5"), with_weights(kSmallAffine, "0.25 0.75"),
               fails(dominated_pair, Condition::first_weight_order)});
  r.push_back({"eg9", "reflected system r = 3, k = 1", with_weights(flip("3"), "1/3 2/3", "2/3 1/3"), "",
               applies(flip_signed_cost)});
  r.push_back({"eg10", "reflected system r = 7, k = 2", with_weights(flip("7"), "1/5 4/5", "4/5 1/5"), "",
               applies(flip_signed_cost)});
  r.push_back({"eg11",
               "reflected system r = 3 with weights outside the odd family",
               with_weights(flip("3"), "0.1 0.9", "0.3 0.7"), "", fails(flip_signed_cost, Condition::weight_family)});
  r.push_back({"eg12", "power-law bounds, r = 2.1", with_weights(flip("2.1"), "1/2.1 1.1/2.1"), "", bounds()});
  r.push_back({"eg13", "power-law bounds, r = 3", with_weights(flip("3"), "2/3 1/3"), "", bounds()});
  r.push_back({"eg14",
               "reflected against translated system, r = 2.5, equal weights",
               with_weights(flip("2.5"), "1/4 3/4"), with_weights(translated("2.5", "1.5/2.5"), "1/4 3/4"), applies(flip_vs_translated)});
  r.push_back({"eg15", "reflected r = 2.5 against translated r = 3", with_weights(flip("2.5"), "0.25 0.75"),
               with_weights(translated("3", "2/3"), "0.25 0.75"), fails(flip_vs_translated, Condition::system_mismatch)});
  r.push_back({"eg16", "reflected against translated, r = 3, different weights", with_weights(flip("3"), "0.25 0.75"),
               with_weights(translated("3", "2/3"), "1/3 2/3"), fails(flip_vs_translated, Condition::weight_mismatch)});
  return r;
}

void write_csv(const std::filesystem::path& path, const StaircaseApprox& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  write_staircase_csv(out, s);
  if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

}  // namespace

std::string describe(const Expectation& e) {
  switch (e.kind) {
    case ExpectationKind::applies: return "applies(" + e.closed_form + ")";
    case ExpectationKind::does_not_apply:
      return "does_not_apply(" + e.closed_form + ", " + std::string(to_string(*e.condition)) + ")";
    case ExpectationKind::bounds_figure: return "bounds_figure";
  }
  return "unknown";
}

ExamplePair load_pair(const ExampleSpec& example) {
  if (example.expectation.kind == ExpectationKind::bounds_figure) {
    throw std::logic_error(example.id + " has a single measure");
  }
  SystemSpec first = parse_system_spec(example.first);
  if (example.second.empty()) {
    if (first.weights.size() != 2) throw std::logic_error(example.id + " needs two weight lines");
    return {first.system, first.weights[0], first.system, first.weights[1]};
  }
  SystemSpec second = parse_system_spec(example.second);
  return {first.system, first.weights.front(), second.system, second.weights.front()};
}

const std::vector<ExampleSpec>& example_registry() {
  static const std::vector<ExampleSpec> registry = build_registry();
  return registry;
}

const ExampleSpec* find_example(std::string_view id) {
  for (const auto& e : example_registry()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

ExampleResult run_example(const ExampleSpec& example, double resolution,
                          const std::optional<std::filesystem::path>& out_dir, double figure_resolution) {
  ExampleResult result;
  result.id = example.id;
  const Expectation& expect = example.expectation;

  if (expect.kind == ExpectationKind::bounds_figure) {
    const SystemSpec spec = parse_system_spec(example.first);
    const double r = 1.0 / spec.system[0].coefficient().to_double();
    const double p = spec.weights.front()[0];
    const StaircaseApprox staircase = build_staircase(spec.system, spec.weights.front(), resolution);
    const EnvelopeCheck check = check_envelope(staircase, r, p);
    result.passed = check.violations == 0 && check.gaps_checked > 0;
    result.detail = std::to_string(check.gaps_checked) + " gaps, " + std::to_string(check.violations) + " outside bounds";
    if (out_dir) {
      const auto path = *out_dir / (example.id + "_p.csv");
      write_csv(path, build_staircase(spec.system, spec.weights.front(), figure_resolution));
      result.artifacts.push_back(path);
      const auto env = *out_dir / (example.id + "_envelope.csv");
      std::ofstream out(env, std::ios::binary);
      if (!out) throw std::ios_base::failure("cannot write " + env.string());
      write_envelope_csv(out, r, p, 1000);
      result.artifacts.push_back(env);
    }
    return result;
  }

  const ExamplePair pair = load_pair(example);
  const StaircaseApprox a = build_staircase(pair.f, pair.p, resolution);
  const StaircaseApprox b = build_staircase(pair.g, pair.q, resolution);
  result.numeric = w1_numeric(a, b);

  const ClosedFormOutcome outcome = try_closed_form(expect.closed_form, pair.f, pair.p, pair.g, pair.q, resolution);
  if (expect.kind == ExpectationKind::applies) {
    result.passed = outcome.hypotheses_held;
    if (outcome.value) {
      result.closed_value = outcome.value->value;
      result.agrees = outcome.value->value.intersects(result.numeric->widened(kClosedFormSlack));
    }
    result.detail = outcome.hypotheses_held ? "hypotheses hold" : "unexpected violation: " + outcome.detail;
  } else {
    result.passed = outcome.violated == expect.condition;
    result.detail = outcome.violated ? outcome.detail : "hypotheses unexpectedly hold";
  }

  if (out_dir) {
    const auto pa = *out_dir / (example.id + "_p.csv");
    const auto pb = *out_dir / (example.id + "_q.csv");
    write_csv(pa, build_staircase(pair.f, pair.p, figure_resolution));
    write_csv(pb, build_staircase(pair.g, pair.q, figure_resolution));
    result.artifacts.push_back(pa);
    result.artifacts.push_back(pb);
  }
  return result;
}

}  // namespace ifsot
