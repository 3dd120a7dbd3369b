// Command-line front end: controllability, geodesic, bracket-motion, symmetry-check.
//
// Exit codes: 0 all checks passed, 1 a check failed or an internal error
// occurred, 2 invalid input or violated precondition.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "trident/errors.hpp"
#include "trident/io.hpp"
#include "trident/mechanism.hpp"
#include "trident/nilpotent.hpp"
#include "trident/pmp.hpp"
#include "trident/symmetry.hpp"

namespace {

using namespace trident;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct RunSpec
{
  std::vector<double> point;
  std::string chart = "original";
  std::string constants;
  int example = 0;
  std::string out;
  double dt = 1e-3;
  double T = 2.0 * M_PI;
  double amplitude = 0.4;
  double omega = 2.0 * M_PI / 50.0;
  int partner = 2;
  int cycles = 1;
  std::uint64_t seed = 0;
  double tol_rank = 1e-9;
  int sweep = 0;
  bool amplitude_sweep = false;
  bool normalize = false;
  double perturb = 0.0;
};

Chart parse_chart(const std::string& name)
{
  if (name == "original") return Chart::original;
  if (name == "adapted") return Chart::adapted;
  throw InvalidArgument("--chart must be 'original' or 'adapted'");
}

Configuration point_or(const RunSpec& spec, const Configuration& fallback)
{
  const Chart chart = parse_chart(spec.chart);
  if (spec.point.empty()) return fallback;
  if (spec.point.size() != 7) throw InvalidArgument("--point needs exactly 7 comma-separated numbers");
  Vector7 v;
  for (int i = 0; i < 7; ++i) v(i) = spec.point[static_cast<std::size_t>(i)];
  return {chart, v};
}

Configuration original_point(const RunSpec& spec)
{
  const Configuration q = point_or(spec, reference_configuration());
  return q.chart() == Chart::original ? q : from_adapted(AdaptedPoint{q.coords()});
}

void emit(const RunSpec& spec, const json& report)
{
  if (spec.out.empty()) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::ofstream file(spec.out);
  if (!file) throw InvalidArgument("cannot write '" + spec.out + "'");
  file << report.dump(2) << '\n';
}

std::ofstream open_output(const std::filesystem::path& path)
{
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path);
  if (!file) throw InvalidArgument("cannot write '" + path.string() + "'");
  return file;
}

// Uniform draw from the valid configuration box used by the random sweeps.
Configuration random_configuration(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> joint(-0.3, 0.3);
  std::uniform_real_distribution<double> leg(0.5, 2.0);
  const double x = unit(rng);
  const double y = unit(rng);
  const double theta = angle(rng);
  const double phi = joint(rng);
  const double l1 = leg(rng);
  const double l2 = leg(rng);
  const double l3 = leg(rng);
  return Configuration::original(x, y, theta, phi, l1, l2, l3);
}

json analyse_point(const Configuration& q, const AnalysisOptions& options, bool& passed)
{
  const ControllabilityResult ctrl = controllability(q, options);
  json report = to_json(ctrl);
  report["point"] = to_json(q);
  passed = ctrl.d1 == 4 && ctrl.d2 == 7;
  if (passed) {
    report["signature"] = to_json(pfaffian_signature(q, options))["signature"];
  } else {
    report["signature"] = nullptr;
  }
  json pairs = json::array();
  for (double f : {1.0, 2.0, -0.5}) {
    json entry = to_json(check_dynamic_pair(q, f, options));
    entry["f"] = f;
    pairs.push_back(entry);
  }
  report["dynamic_pair"] = pairs;
  return report;
}

int cmd_controllability(const RunSpec& spec)
{
  AnalysisOptions options;
  options.rank_tolerance = spec.tol_rank;
  bool passed = false;
  json report = analyse_point(original_point(spec), options, passed);

  if (spec.sweep > 0) {
    int full_rank = 0;
    std::vector<int> failures;
    for (int s = 0; s < spec.sweep; ++s) {
      std::mt19937_64 rng(spec.seed + static_cast<std::uint64_t>(s));
      const Configuration q = random_configuration(rng);
      const ControllabilityResult r = controllability(q, options);
      if (r.d1 == 4 && r.d2 == 7 && r.det_nonzero) {
        ++full_rank;
      } else {
        failures.push_back(s);
      }
    }
    report["sweep"] = {{"samples", spec.sweep}, {"seed", spec.seed}, {"growth_4_7", full_rank},
                       {"failed_substreams", failures}};
    passed = passed && failures.empty();
  }
  emit(spec, report);
  return passed ? kExitPass : kExitFail;
}

SolutionConstants load_constants(const RunSpec& spec)
{
  if (spec.example != 0 && !spec.constants.empty())
    throw InvalidArgument("use either --constants or --example, not both");
  if (spec.example != 0) return example_constants(spec.example);
  if (spec.constants.empty()) throw InvalidArgument("geodesic needs --constants <fixture.json> or --example <n>");
  std::ifstream in(spec.constants);
  if (!in) throw InvalidArgument("cannot read '" + spec.constants + "'");
  json fixture;
  try {
    fixture = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed constants fixture: ") + e.what());
  }
  return solution_constants_from_json(fixture.contains("constants") ? fixture.at("constants") : fixture);
}

int cmd_geodesic(const RunSpec& spec)
{
  if (!(spec.dt > 0.0) || !(spec.T > 0.0)) throw InvalidArgument("--dt and --T must be positive");
  const SolutionConstants constants = load_constants(spec);
  FibreState h0 = closed_form_fibre(constants, 0.0);
  const FibreState unit = normalize_arclength(h0);
  if (spec.normalize) h0 = unit;

  const Configuration start = point_or(spec, Configuration(Chart::adapted, Vector7::Zero()));
  const AdaptedPoint q0 = start.chart() == Chart::adapted ? AdaptedPoint{start.coords()} : to_adapted(start);
  const ExtremalResult result = integrate_extremal(h0, q0, spec.T, spec.dt);

  json sidecar;
  sidecar["constants"] = to_json(constants);
  sidecar["K"] = constants.K();
  sidecar["initial_momenta"] = std::vector<double>(h0.data(), h0.data() + 7);
  sidecar["start"] = to_json(q0);
  sidecar["diagnostics"] = to_json(result.diagnostics);

  // The closed form is only a solution when C5 C13 + C6 C14 + C7 C15 = 0.
  const SolutionConstants used = spec.normalize ? SolutionConstants::from_initial_momenta(h0) : constants;
  const bool closed_form_applies = std::abs(used.compatibility_residual()) < 1e-12;
  sidecar["closed_form_applies"] = closed_form_applies;
  if (closed_form_applies) {
    const Trajectory closed = closed_form_trajectory(used, q0, spec.T, spec.dt);
    double deviation = 0.0;
    for (std::size_t i = 0; i < closed.size(); ++i)
      deviation = std::max(deviation, (closed.q[i] - result.trajectory.q[i]).lpNorm<Eigen::Infinity>());
    sidecar["closed_form_max_deviation"] = deviation;
  }

  const std::filesystem::path csv = spec.out.empty() ? std::filesystem::path("geodesic.csv") : std::filesystem::path(spec.out);
  {
    std::ofstream file = open_output(csv);
    write_trajectory_csv(file, result.trajectory);
  }
  std::ofstream side = open_output(std::filesystem::path(csv.string() + ".json"));
  side << sidecar.dump(2) << '\n';
  std::cout << sidecar.dump(2) << '\n';
  return kExitPass;
}

json displacement_json(const Vector7& d)
{
  json j;
  for (int i = 0; i < 7; ++i) j[std::string(kAdaptedNames[static_cast<std::size_t>(i)])] = d(i);
  return j;
}

int cmd_bracket_motion(const RunSpec& spec)
{
  BracketMotionParams params;
  params.amplitude = spec.amplitude;
  params.omega = spec.omega;
  params.partner = spec.partner;
  params.cycles = spec.cycles;

  const Configuration start = original_point(spec);
  const BracketMotionResult nil = bracket_motion(params, MotionSystem::nilpotent, start);
  const BracketMotionResult orig = bracket_motion(params, MotionSystem::original, start);

  const std::filesystem::path dir = spec.out.empty() ? std::filesystem::path("bracket_motion") : std::filesystem::path(spec.out);
  {
    std::ofstream f = open_output(dir / "nilpotent.csv");
    write_trajectory_csv(f, nil.trajectory);
  }
  {
    std::ofstream f = open_output(dir / "original.csv");
    write_trajectory_csv(f, orig.trajectory);
  }
  {
    std::ofstream f = open_output(dir / "nilpotent_mechanism.csv");
    write_mechanism_trace_csv(f, nil);
  }
  {
    std::ofstream f = open_output(dir / "original_mechanism.csv");
    write_mechanism_trace_csv(f, orig);
  }

  const double cycles = static_cast<double>(params.cycles);
  json report;
  report["params"] = {{"A", params.amplitude}, {"omega", params.omega}, {"partner", params.partner},
                      {"cycles", params.cycles}, {"dt", params.period() / params.steps_per_period}};
  report["start"] = to_json(start);
  report["nilpotent"] = {{"displacement", displacement_json(nil.adapted_displacement)},
                         {"displacement_per_cycle", displacement_json(nil.adapted_displacement / cycles)}};
  report["original"] = {{"displacement", displacement_json(orig.adapted_displacement)},
                        {"displacement_per_cycle", displacement_json(orig.adapted_displacement / cycles)}};
  const double area = M_PI * params.amplitude * params.amplitude;
  report["area_oracle"] = area;
  report["difference_norm"] = (orig.adapted_displacement - nil.adapted_displacement).norm();

  bool passed = true;
  if (params.partner == 2) {
    const double err = std::abs(nil.adapted_displacement(4) / cycles - area);
    report["area_error"] = err;
    passed = err < 1e-6;
  }
  if (spec.amplitude_sweep) {
    const AmplitudeSweep sweep = bracket_motion_sweep({0.4, 0.2, 0.1, 0.05}, params, start);
    report["amplitude_sweep"] = {
        {"amplitudes", sweep.amplitudes}, {"differences", sweep.differences}, {"orders", sweep.orders}};
    passed = passed && sweep.min_order() >= 2.0;
  }
  report["passed"] = passed;
  std::ofstream f = open_output(dir / "report.json");
  f << report.dump(2) << '\n';
  std::cout << report.dump(2) << '\n';
  return passed ? kExitPass : kExitFail;
}

int cmd_symmetry_check(const RunSpec& spec)
{
  json report;
  bool passed = true;

  const So3Table table = so3_structure();
  report["so3_closes"] = table.closes;
  passed = passed && table.closes;

  auto generators = so3_generators();
  if (spec.perturb != 0.0) {
    // Scale the l3 d/dl2 coefficient of v1 by (1 + perturb).
    std::array<Expr, 7> extra{};
    extra[2] = Expr(ExactConstant(Rational(-std::llround(spec.perturb * 1e6), 1000000))) * Expr::variable(3);
    generators[0] = simplify(generators[0] + VectorField(Chart::adapted, extra)).named("v1 (perturbed)");
  }
  json symmetries = json::array();
  for (const auto& v : generators) {
    const SymmetryReport r = inspect_symmetry(v, spec.seed);
    symmetries.push_back(to_json(r));
    passed = passed && r.passed();
  }
  report["symmetries"] = symmetries;

  const TransitiveAlgebraReport transitive = check_transitive_algebra(100, spec.seed);
  report["transitive_algebra"] = to_json(transitive);
  passed = passed && transitive.passed();

  json invariance = json::object();
  for (const auto& f : nilpotent_algebra_fields()) {
    const InvarianceReport r = check_left_invariance(f, 1000, spec.seed);
    invariance[f.name()] = to_json(r);
    passed = passed && r.passed;
  }
  report["left_invariance"] = invariance;

  json fixed = json::array();
  const Eigen::Vector3d a(1.0, 1.0, 1.0);
  const VectorField v = so3_combination(1, 1, 1);
  for (double k : {0.0, 1.0, 2.0}) {
    for (double x : {-1.0, 0.0, 0.5, 2.0}) {
      const AdaptedPoint p = fixed_point_set(a, x, k);
      const double residual = eval_field(v, p.coords).norm();
      fixed.push_back({{"k", k}, {"x", x}, {"point", to_json(p)}, {"residual", residual}});
      passed = passed && residual < 1e-12;
    }
  }
  report["fixed_points"] = fixed;
  report["passed"] = passed;
  emit(spec, report);
  return passed ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Geometric control toolkit for the trident snake mechanism"};
  app.require_subcommand(1);
  RunSpec spec;

  const auto add_point = [&spec](CLI::App* cmd) {
    cmd->add_option("--point", spec.point, "Configuration as 7 comma-separated numbers")->delimiter(',');
    cmd->add_option("--chart", spec.chart, "Chart of --point: original or adapted")->capture_default_str();
  };
  const auto add_common = [&spec](CLI::App* cmd) {
    cmd->add_option("--out", spec.out, "Output path");
    cmd->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
  };

  CLI::App* ctrl = app.add_subcommand("controllability", "Growth vector, det G, Pfaffian signature, dynamic pair");
  add_point(ctrl);
  add_common(ctrl);
  ctrl->add_option("--tol-rank", spec.tol_rank, "Relative singular value cutoff")->capture_default_str();
  ctrl->add_option("--sweep", spec.sweep, "Number of random configurations to test as well");

  CLI::App* geo = app.add_subcommand("geodesic", "Integrate a normal extremal and write a trajectory CSV");
  add_point(geo);
  add_common(geo);
  geo->add_option("--constants", spec.constants, "SolutionConstants JSON fixture");
  geo->add_option("--example", spec.example, "Use the constants of reference example 1, 2 or 3");
  geo->add_option("--dt", spec.dt, "Integrator step")->capture_default_str();
  geo->add_option("--T", spec.T, "Final time")->capture_default_str();
  geo->add_flag("--normalize", spec.normalize, "Rescale the horizontal momenta to unit length");

  CLI::App* motion = app.add_subcommand("bracket-motion", "Periodic inputs on (N1, N_i) for both systems");
  add_point(motion);
  add_common(motion);
  motion->add_option("--A", spec.amplitude, "Amplitude")->capture_default_str();
  motion->add_option("--omega", spec.omega, "Angular speed")->capture_default_str();
  motion->add_option("--partner", spec.partner, "Partner field index (2, 3 or 4)")->capture_default_str();
  motion->add_option("--cycles", spec.cycles, "Number of periods")->capture_default_str();
  motion->add_flag("--sweep", spec.amplitude_sweep, "Also run the amplitude sweep 0.4, 0.2, 0.1, 0.05");

  CLI::App* sym = app.add_subcommand("symmetry-check", "so(3) and transitive symmetry algebra checks");
  add_common(sym);
  sym->add_option("--perturb", spec.perturb, "Relative perturbation of one coefficient of v1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  try {
    if (*ctrl) return cmd_controllability(spec);
    if (*geo) return cmd_geodesic(spec);
    if (*motion) return cmd_bracket_motion(spec);
    if (*sym) return cmd_symmetry_check(spec);
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const SingularConfiguration& e) {
    std::cerr << "singular configuration: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ChartMismatch& e) {
    std::cerr << "chart mismatch: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ZeroHorizontalMomentum& e) {
    std::cerr << "zero horizontal momentum: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ZeroCombination& e) {
    std::cerr << "zero combination: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitFail;
}
