// ifsot: command-line front end for the library.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ifsot/registry.hpp"
#include "ifsot/sampler.hpp"
#include "ifsot/specfile.hpp"
#include "ifsot/staircase.hpp"
#include "ifsot/symbolic.hpp"
#include "ifsot/transport.hpp"

namespace fs = std::filesystem;
using namespace ifsot;

namespace {

constexpr int kExitInconsistent = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Thrown for bad arguments that CLI11 cannot catch by itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to the file if a path is given, otherwise to stdout.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  fn(out);
  out.flush();
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

// ---- validate

int run_validate(const std::string& path) {
  const SystemSpec spec = load_system_spec(path);
  const ValidationReport& v = spec.system.validation();
  std::cout << "maps=" << spec.system.size() << '\n';
  for (std::size_t i = 0; i < spec.system.size(); ++i) {
    const auto& m = spec.system[i];
    std::cout << "map" << i + 1 << ": " << m.str() << " image=" << m.image() << " sign=" << m.sign()
              << " lipschitz=" << fmt(m.lipschitz()) << '\n';
  }
  std::cout << "ordering_ok=" << yes_no(v.ordering_ok) << '\n'
            << "disjoint_open_images=" << yes_no(v.disjoint_open_images) << '\n'
            << "disjoint_closed_images=" << yes_no(v.disjoint_closed_images) << '\n'
            << "all_positive=" << yes_no(v.all_positive) << '\n';
  for (std::size_t i = 0; i < spec.weights.size(); ++i) std::cout << "weights" << i + 1 << '=' << spec.weights[i].str() << '\n';
  if (spec.weights.size() == 2) {
    std::cout << "weight_dominance=" << to_string(check_weight_dominance(spec.weights[0], spec.weights[1])) << '\n';
  }
  return 0;
}

// ---- staircase

struct StaircaseArgs {
  std::string spec;
  std::string example;
  std::string side = "p";
  double resolution = kDefaultResolution;
  std::string out;
  std::string envelope;
};

int run_staircase(const StaircaseArgs& args) {
  std::optional<IFSystem> system;
  std::optional<WeightVector> weights;
  bool bounds_figure = false;
  if (!args.example.empty()) {
    const ExampleSpec* e = find_example(args.example);
    if (!e) throw UsageError("unknown example '" + args.example + "'");
    bounds_figure = e->expectation.kind == ExpectationKind::bounds_figure;
    if (bounds_figure) {
      if (args.side != "p") throw UsageError(args.example + " has a single measure");
      const SystemSpec s = parse_system_spec(e->first);
      system = s.system;
      weights = s.weights.front();
    } else {
      const ExamplePair pair = load_pair(*e);
      system = args.side == "p" ? pair.f : pair.g;
      weights = args.side == "p" ? pair.p : pair.q;
    }
  } else if (!args.spec.empty()) {
    const SystemSpec s = load_system_spec(args.spec);
    const std::size_t index = args.side == "p" ? 0 : 1;
    if (index >= s.weights.size()) throw UsageError("spec has no second weight line");
    system = s.system;
    weights = s.weights[index];
  } else {
    throw UsageError("give a spec file or --example");
  }

  const StaircaseApprox staircase = build_staircase(*system, *weights, args.resolution);
  emit(args.out, [&](std::ostream& os) { write_staircase_csv(os, staircase); });

  std::string envelope = args.envelope;
  if (envelope.empty() && bounds_figure && !args.out.empty() && args.out != "-") {
    const fs::path out(args.out);
    envelope = (out.parent_path() / (out.stem().string() + "_envelope.csv")).string();
  }
  if (!envelope.empty()) {
    const double r = 1.0 / (*system)[0].coefficient().to_double();
    emit(envelope, [&](std::ostream& os) { write_envelope_csv(os, r, (*weights)[0], 1000); });
  }
  return 0;
}

// ---- w1

struct W1Args {
  std::vector<std::string> specs;
  std::string example;
  double resolution = kDefaultResolution;
  std::uint64_t mc = 0;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
};

void write_report_csv(std::ostream& os, const W1Report& r) {
  os << "quantity,lo,hi,status\n";
  os << "numeric," << fmt(r.numeric.lo) << ',' << fmt(r.numeric.hi) << ",\n";
  for (const auto& c : r.closed_forms) {
    if (c.value) {
      os << c.name << ',' << fmt(c.value->value.lo) << ',' << fmt(c.value->value.hi) << ','
         << (c.consistent ? "consistent" : "inconsistent") << '\n';
    } else {
      os << c.name << ",,," << "not_applicable:" << to_string(*c.violated) << '\n';
    }
  }
  if (r.monte_carlo) {
    const auto& mc = *r.monte_carlo;
    os << "monte_carlo," << fmt(mc.estimate - 4 * mc.std_error) << ',' << fmt(mc.estimate + 4 * mc.std_error)
       << ",estimate=" << fmt(mc.estimate) << '\n';
  }
  os << "consistent,,," << yes_no(r.consistent) << '\n';
}

int run_w1(const W1Args& args) {
  if (args.format != "json" && args.format != "csv") throw UsageError("--format must be json or csv");
  std::optional<ExamplePair> pair;
  if (!args.example.empty()) {
    const ExampleSpec* e = find_example(args.example);
    if (!e) throw UsageError("unknown example '" + args.example + "'");
    pair = load_pair(*e);
  } else if (args.specs.size() == 1) {
    const SystemSpec s = load_system_spec(args.specs[0]);
    if (s.weights.size() != 2) throw UsageError("a single spec needs two weight lines");
    pair = ExamplePair{s.system, s.weights[0], s.system, s.weights[1]};
  } else if (args.specs.size() == 2) {
    const SystemSpec a = load_system_spec(args.specs[0]);
    const SystemSpec b = load_system_spec(args.specs[1]);
    pair = ExamplePair{a.system, a.weights.front(), b.system, b.weights.front()};
  } else {
    throw UsageError("give one or two spec files or --example");
  }

  W1Options options;
  options.resolution = args.resolution;
  options.mc_count = args.mc;
  options.seed = args.seed;
  const W1Report report = w1_report(pair->f, pair->p, pair->g, pair->q, options);
  emit(args.out, [&](std::ostream& os) {
    if (args.format == "json") {
      os << to_json(report) << '\n';
    } else {
      write_report_csv(os, report);
    }
  });
  return report.consistent ? 0 : kExitInconsistent;
}

// ---- examples

int run_examples(bool all, const std::vector<std::string>& ids, const std::string& out_dir, double resolution,
                 double figure_resolution) {
  std::vector<const ExampleSpec*> selected;
  if (all) {
    for (const auto& e : example_registry()) selected.push_back(&e);
  }
  for (const auto& id : ids) {
    const ExampleSpec* e = find_example(id);
    if (!e) throw UsageError("unknown example '" + id + "'");
    selected.push_back(e);
  }
  if (selected.empty()) throw UsageError("give --all or --id");
  std::optional<fs::path> dir;
  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::ios_base::failure("cannot create " + out_dir + ": " + ec.message());
    dir = fs::path(out_dir);
  }

  std::size_t passed = 0;
  std::vector<std::string> failures;
  std::cout << std::left << std::setw(6) << "id" << std::setw(56) << "expectation" << std::setw(6) << "ok"
            << std::setw(26) << "numeric W1" << std::setw(26) << "closed form" << "agrees\n";
  for (const ExampleSpec* e : selected) {
    const ExampleResult r = run_example(*e, resolution, dir, figure_resolution);
    auto show = [](const std::optional<ValueInterval>& v) {
      if (!v) return std::string("-");
      std::ostringstream s;
      s << std::setprecision(10) << v->mid() << " +- " << std::setprecision(2) << v->width() / 2;
      return s.str();
    };
    std::cout << std::left << std::setw(6) << r.id << std::setw(56) << describe(e->expectation) << std::setw(6)
              << (r.passed ? "yes" : "NO") << std::setw(26) << show(r.numeric) << std::setw(26)
              << show(r.closed_value) << (r.agrees ? (*r.agrees ? "yes" : "no") : "-") << '\n';
    if (r.passed) {
      ++passed;
    } else {
      failures.push_back(r.id + ": " + r.detail);
    }
  }
  std::cout << passed << '/' << selected.size() << " expectations met\n";
  for (const auto& f : failures) std::cout << "FAILED " << f << '\n';
  return failures.empty() ? 0 : kExitInconsistent;
}

// ---- symbolic

struct SymbolicArgs {
  unsigned level = 0;
  std::string p;
  std::vector<unsigned> search;
  std::vector<std::string> plateaus;
  bool conjecture = false;
};

int run_symbolic(const SymbolicArgs& args) {
  const int modes = (args.level > 0) + !args.search.empty() + !args.plateaus.empty();
  if (modes != 1) throw UsageError("give exactly one of --level, --search, --plateaus");

  if (args.level > 0) {
    const OrderedLevel level = build_level(args.level);
    if (args.p.empty()) {
      for (std::size_t i = 0; i < level.size(); ++i) std::cout << (i ? " " : "") << level.word(i).str();
      std::cout << '\n';
      return 0;
    }
    const Rational p = Rational::parse(args.p);
    const auto sums = prefix_sums(level, p);
    std::cout << "i,word,weight,prefix_sum\n";
    for (std::size_t i = 0; i < level.size(); ++i) {
      const Word w = level.word(i);
      std::cout << i + 1 << ',' << w.str() << ',' << word_weight(p, w).str() << ',' << sums[i].str() << '\n';
    }
    return 0;
  }

  if (!args.search.empty()) {
    const unsigned k = args.search[0];
    const unsigned n_max = args.search[1];
    std::cout << "# p=1/" << 2 * k + 1 << ", i=2^n excluded; early_range means i <= 2^n-2^(n-2)-1\n";
    std::cout << "n,i,value,early_range\n";
    for (const auto& m : crossing_equation_search(k, n_max)) {
      const std::uint64_t bound = m.n >= 2 ? (std::uint64_t{1} << m.n) - (std::uint64_t{1} << (m.n - 2)) - 1 : 0;
      std::cout << m.n << ',' << m.i << ',' << m.value.str() << ',' << yes_no(m.i <= bound) << '\n';
    }
    return 0;
  }

  const Rational r = Rational::parse(args.plateaus[0]);
  const long m = std::stol(args.plateaus[1]);
  const long k_max = std::stol(args.plateaus[2]);
  if (m < 1 || k_max < 0) throw UsageError("plateaus need m >= 1 and k_max >= 0");
  const Rational p = args.p.empty() ? Rational(1) / Rational(2 * m + 1) : Rational::parse(args.p);
  const PlateauTable table = plateau_intervals(r, p, static_cast<unsigned>(k_max), args.conjecture);
  std::cout << "# r=" << r.str() << " p=" << p.str() << " limit=" << table.limit.str()
            << (table.verified ? "" : " UNVERIFIED (conjecture mode)") << '\n';
  std::cout << "k,a,b,value\n";
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& row = table.rows[k];
    std::cout << k << ',' << row.a.str() << ',' << row.b.str() << ',' << row.value.str() << '\n';
  }
  return 0;
}

// ---- sample

struct SampleArgs {
  std::string spec;
  std::string side = "p";
  std::uint64_t count = 100000;
  std::uint64_t burn_in = 64;
  std::uint64_t seed = 1;
  std::string out;
};

int run_sample(const SampleArgs& args) {
  const SystemSpec s = load_system_spec(args.spec);
  const std::size_t index = args.side == "p" ? 0 : 1;
  if (index >= s.weights.size()) throw UsageError("spec has no second weight line");
  const SampleSet samples = chaos_game(s.system, s.weights[index], args.count, args.burn_in, args.seed);
  emit(args.out, [&](std::ostream& os) { write_samples_csv(os, samples); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein-1 distances between stationary measures of interval IFS"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check the hypotheses of a system spec file");
  validate->add_option("spec", validate_path, "system spec file")->required();

  StaircaseArgs st;
  auto* staircase = app.add_subcommand("staircase", "write the CDF staircase as CSV");
  staircase->add_option("spec", st.spec, "system spec file");
  staircase->add_option("--example", st.example, "registry id (eg1..eg16) instead of a file");
  staircase->add_option("--side", st.side, "p (first weights) or q (second)")->check(CLI::IsMember({"p", "q"}));
  staircase->add_option("--resolution", st.resolution, "largest cell mass")->check(CLI::Range(1e-12, 1.0));
  staircase->add_option("--out", st.out, "output CSV (default stdout)");
  staircase->add_option("--envelope", st.envelope, "also write x,lower,upper power-law bounds here");

  W1Args w1;
  auto* w1cmd = app.add_subcommand("w1", "W1 report: numeric enclosure, closed forms, optional Monte Carlo");
  w1cmd->add_option("specs", w1.specs, "one spec with two weight lines, or two specs")->expected(0, 2);
  w1cmd->add_option("--example", w1.example, "registry id instead of files");
  w1cmd->add_option("--resolution", w1.resolution, "largest cell mass")->check(CLI::Range(1e-12, 1.0));
  w1cmd->add_option("--mc", w1.mc, "chaos-game sample count (0 = off)");
  w1cmd->add_option("--seed", w1.seed, "sampler seed");
  w1cmd->add_option("--format", w1.format, "json or csv");
  w1cmd->add_option("--out", w1.out, "output path (default stdout)");

  bool all = false;
  std::vector<std::string> ids;
  std::string out_dir;
  double ex_resolution = 1e-5;
  auto* examples = app.add_subcommand("examples", "run the registered examples and check their expectations");
  examples->add_flag("--all", all, "run every example");
  examples->add_option("--id", ids, "example id (repeatable)");
  examples->add_option("--out-dir", out_dir, "write staircase CSVs here");
  examples->add_option("--resolution", ex_resolution, "largest cell mass for the checks")->check(CLI::Range(1e-12, 1.0));
  double figure_resolution = kFigureResolution;
  examples->add_option("--csv-resolution", figure_resolution, "largest cell mass for the written CSVs")
      ->check(CLI::Range(1e-12, 1.0));

  SymbolicArgs sym;
  auto* symbolic = app.add_subcommand("symbolic", "ordered levels, crossing search, plateau tables");
  symbolic->add_option("--level", sym.level, "print K_n")->check(CLI::Range(1u, OrderedLevel::kMaxLength));
  symbolic->add_option("--p", sym.p, "weight p as a rational: prefix sums with --level, plateaus with --conjecture");
  symbolic->add_option("--search", sym.search, "k n_max: exact crossing search for p = 1/(2k+1)")->expected(2);
  symbolic->add_option("--plateaus", sym.plateaus, "r m k_max: plateau table for p = 1/(2m+1)")->expected(3);
  symbolic->add_flag("--conjecture", sym.conjecture, "allow p outside 1/(2m+1); output is marked unverified");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "chaos-game samples as CSV");
  sample->add_option("spec", sa.spec, "system spec file")->required();
  sample->add_option("--side", sa.side, "p or q")->check(CLI::IsMember({"p", "q"}));
  sample->add_option("--count", sa.count, "number of points")->check(CLI::PositiveNumber);
  sample->add_option("--burn-in", sa.burn_in, "discarded iterations (>= 32)");
  sample->add_option("--seed", sa.seed, "seed");
  sample->add_option("--out", sa.out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*validate) return run_validate(validate_path);
    if (*staircase) return run_staircase(st);
    if (*w1cmd) return run_w1(w1);
    if (*examples) return run_examples(all, ids, out_dir, ex_resolution, figure_resolution);
    if (*symbolic) return run_symbolic(sym);
    if (*sample) return run_sample(sa);
  } catch (const SpecParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violated: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInconsistent;
  }
  return 0;
}
