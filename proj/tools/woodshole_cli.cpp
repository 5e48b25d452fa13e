#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "woodshole/error.hpp"
#include "woodshole/generate.hpp"
#include "woodshole/io.hpp"
#include "woodshole/random.hpp"
#include "woodshole/suites.hpp"

using namespace woodshole;
using nlohmann::json;

namespace {

struct CommonFlags {
  double tol = kDefaultTolerance;
  std::uint64_t seed = PathTrackerConfig{}.seed;
  bool json_out = false;
  bool timing = false;
  std::string invariant_file;
  std::string g_spec;
  std::size_t max_paths = PathTrackerConfig{}.max_paths;
};

PathTrackerConfig tracker_from(const CommonFlags& flags) {
  PathTrackerConfig cfg;
  cfg.seed = flags.seed;
  cfg.max_paths = flags.max_paths;
  cfg.validate();
  return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot write " + out_path);
  out << text;
}

int run_fixed_points(const std::string& file, const CommonFlags& flags) {
  const ProjEndo f = io::endo_from_json(io::read_json_file(file));
  const auto start = std::chrono::steady_clock::now();
  const FixedPointSummary s = summarize_fixed_points(f, tracker_from(flags));
  if (flags.json_out) {
    json j = fixed_points_to_json(s, flags.seed);
    j["input"] = file;
    if (flags.timing) {
      j["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fixed_points_to_text(s);
  }
  if (!s.all_transversal) {
    std::cerr << "error: map is not transversal (a fixed point has |det(I - J)| <= 1e-8)\n";
    return static_cast<int>(ExitCode::kNumericalFailure);
  }
  return static_cast<int>(s.census_pass ? ExitCode::kPass : ExitCode::kRelationFailure);
}

int run_verify(const std::string& target_name_arg, const std::string& file, const CommonFlags& flags) {
  const auto target = parse_target(target_name_arg);
  if (!target) throw InputError("unknown verify target \"" + target_name_arg + "\"");
  SuiteOptions opts;
  opts.tol = flags.tol;
  opts.tracker = tracker_from(flags);
  if (!flags.invariant_file.empty()) {
    opts.invariants.push_back(io::invariant_from_json(io::read_json_file(flags.invariant_file)));
  }
  if (!flags.g_spec.empty() && flags.g_spec != "random") {
    opts.radial = io::poly_from_json(io::read_json_file(flags.g_spec), 3);
  }

  const json input = io::read_json_file(file);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report = target_takes_endomorphism(*target)
                                  ? verify_endomorphism(*target, io::endo_from_json(input), opts)
                                  : verify_vector_field(*target, io::vf_from_json(input), opts);
  report.input = file;
  if (flags.timing) report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (flags.json_out ? io::report_to_json(report).dump(2) + "\n" : io::report_to_text(report));
  return static_cast<int>(report.all_pass() ? ExitCode::kPass : ExitCode::kRelationFailure);
}

int run_random(const std::string& kind, int n, int d, const CommonFlags& flags, const std::string& out_path) {
  json j;
  if (kind == "endo") {
    j = io::endo_to_json(random_endomorphism(n, d, flags.seed));
  } else if (kind == "vf") {
    if (n != 2) throw InputError("vector fields live on C^2; use --n 2");
    const RandomField r = random_vector_field(d, flags.seed, tracker_from(flags));
    j = io::vf_to_json(r.field);
    j["generator"] = json{{"seed", flags.seed}, {"rejections", r.rejections}};
  } else {
    throw InputError("random kind must be endo or vf");
  }
  emit(j.dump(2) + "\n", out_path);
  return static_cast<int>(ExitCode::kPass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of holomorphic fixed-point and index relations"};
  app.require_subcommand(1);
  CommonFlags flags;
  auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("--tol", flags.tol, "Tolerance relative to max(1, |rhs|)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", flags.seed, "Seed for start systems and random draws");
    sub->add_flag("--json", flags.json_out, "Machine-readable output");
    sub->add_option("--max-paths", flags.max_paths, "Refuse systems with more homotopy paths")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--timing", flags.timing, "Include wall time in the report");
  };

  std::string endo_file;
  auto* fp = app.add_subcommand("fixed-points", "List fixed points of an endomorphism of P^n");
  fp->add_option("file", endo_file, "Endomorphism file")->required();
  add_common(fp);

  std::string target, input_file;
  auto* verify = app.add_subcommand("verify", "Check index relations");
  verify->add_option("target", target, "lefschetz|guillot|ej|baum-bott|camacho-sad|cs-woodshole|all")->required();
  verify->add_option("file", input_file, "Endomorphism or vector-field file")->required();
  verify->add_option("--invariant", flags.invariant_file, "Invariant polynomial spec for guillot");
  verify->add_option("--g", flags.g_spec, "Radial factor: polynomial file or \"random\"");
  add_common(verify);

  std::string kind, out_path;
  int n = 2, d = 2;
  auto* rnd = app.add_subcommand("random", "Write a random endomorphism or vector field");
  rnd->add_option("kind", kind, "endo|vf")->required();
  rnd->add_option("--n", n, "Projective dimension (endo) or 2 (vf)");
  rnd->add_option("--d", d, "Degree");
  rnd->add_option("-o,--output", out_path, "Output file (default stdout)");
  add_common(rnd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kInputError);
  }

  try {
    if (*fp) return run_fixed_points(endo_file, flags);
    if (*verify) return run_verify(target, input_file, flags);
    return run_random(kind, n, d, flags, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInputError);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kNumericalFailure);
  }
}
