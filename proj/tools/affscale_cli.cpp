// affscale command-line frontend.

#include <cmath>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "affscale/diagnostics.hpp"
#include "affscale/driver.hpp"
#include "affscale/io.hpp"

namespace {

using namespace affscale;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitNotInSwath = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitParse = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotInSwath: return kExitNotInSwath;
    case ErrorKind::NumericalFailure:
    case ErrorKind::NotInterior:
    case ErrorKind::NonRealEigenvalues:
    case ErrorKind::ConvexityViolation:
    case ErrorKind::StepBoundViolation:
      return kExitNumerical;
    case ErrorKind::ParseError:
    case ErrorKind::InvariantViolation:
    case ErrorKind::DimensionMismatch:
      return kExitParse;
    default:
      return kExitFailure;
  }
}

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return kExitOk;
    case SolveStatus::NotInSwath: return kExitNotInSwath;
    case SolveStatus::NumericalFailure: return kExitNumerical;
    case SolveStatus::MaxIters: return kExitFailure;
  }
  return kExitFailure;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Problem {
  std::unique_ptr<BarrierOracle> oracle;
  std::optional<SdpInstance> sdp;
  Mat a;
  Vec b, c, e0;
  std::string backend;
};

Problem load(const std::string& path, const std::string& start_path) {
  Problem p;
  const std::string text = io::read_file(path);
  if (ends_with(path, ".json")) {
    const io::HpDocument doc = io::parse_hp_json(text);
    p.oracle = hp_barrier_oracle(doc.instance.family);
    p.a = doc.instance.constraints;
    p.b = doc.instance.rhs;
    p.c = doc.instance.objective;
    p.e0 = doc.instance.start;
    p.backend = "hp:" + doc.instance.family.name();
    return p;
  }
  p.sdp = io::parse_sdpa(text);
  const Mat e0 = io::parse_start_json(io::read_file(start_path.empty() ? path + ".e0.json" : start_path));
  require_dim(e0.rows(), p.sdp->order(), "start order");
  p.oracle = std::make_unique<DetBarrierOracle>(p.sdp->order());
  p.a = p.sdp->constraint_matrix();
  p.b = p.sdp->rhs;
  p.c = p.sdp->objective_vector();
  p.e0 = svec(e0);
  p.backend = "sdp";
  return p;
}

void print_report(const CheckReport& r) {
  std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "  samples=" << r.samples
            << " max_rel_err=" << r.max_rel_err << " failures=" << r.failures << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine-scaling interior-point solver for semidefinite and hyperbolic programs"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run the affine-scaling iteration");
  std::string solve_file, solve_start, trace_path, trace_format = "json", step = "qtilde";
  SolverConfig cfg;
  solve->add_option("file", solve_file, "Instance (.dat-s or .json)")->required();
  solve->add_option("--start", solve_start, "Start point for SDPA files (default FILE.e0.json)");
  solve->add_option("--alpha", cfg.alpha, "Cone parameter in (0,1)");
  solve->add_option("--tol", cfg.gap_tol, "Gap tolerance relative to the initial gap");
  solve->add_option("--max-iters", cfg.max_iters, "Iteration limit");
  solve->add_option("--step", step, "Step rule")->check(CLI::IsMember({"qtilde", "fixed"}));
  solve->add_option("--trace", trace_path, "Write the iteration trace here");
  solve->add_option("--format", trace_format, "Trace format")->check(CLI::IsMember({"csv", "json"}));

  // generate
  auto* generate = app.add_subcommand("generate", "Write a central-path instance and start point");
  std::string gen_kind, gen_family = "product", gen_out;
  int gen_n = 0, gen_m = 0, gen_k = 2;
  double gen_mu = 1.0, gen_radius = 0.5;
  std::uint64_t gen_seed = 0;
  generate->add_option("kind", gen_kind, "sdp or hp")->required()->check(CLI::IsMember({"sdp", "hp"}));
  generate->add_option("--n", gen_n, "Matrix order (sdp, determinant) or ambient dimension (hp)")->required();
  generate->add_option("--m", gen_m, "Number of constraints")->required();
  generate->add_option("--family", gen_family, "HP family")
      ->check(CLI::IsMember({"product", "second_order", "determinant", "elementary_symmetric"}));
  generate->add_option("--k", gen_k, "Degree of the elementary symmetric family");
  generate->add_option("--mu", gen_mu, "Central-path parameter");
  generate->add_option("--radius", gen_radius, "HP start perturbation in the local norm");
  generate->add_option("--seed", gen_seed, "Random seed")->required();
  generate->add_option("--out", gen_out, "Output path")->required();

  // reduce-alpha
  auto* reduce = app.add_subcommand("reduce-alpha", "Run the shrinking-alpha schedule");
  std::string red_file, red_start;
  double alpha0 = 0.9, target = 0.3;
  reduce->add_option("file", red_file, "Instance (.dat-s or .json)")->required();
  reduce->add_option("--start", red_start, "Start point for SDPA files");
  reduce->add_option("--alpha0", alpha0, "Initial alpha")->required();
  reduce->add_option("--target", target, "Target alpha")->required();

  // validate
  auto* validate = app.add_subcommand("validate", "Run diagnostics at the start point");
  std::string val_file, val_start, checks = "all";
  double val_alpha = 0.5;
  validate->add_option("file", val_file, "Instance (.dat-s or .json)")->required();
  validate->add_option("--start", val_start, "Start point for SDPA files");
  validate->add_option("--alpha", val_alpha, "Cone parameter");
  validate->add_option("--checks", checks, "Which checks")
      ->check(CLI::IsMember({"all", "fd", "qscale", "equiv", "bound"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      cfg.step_mode = step == "fixed" ? StepMode::FixedHalfAlpha : StepMode::QTildeMinimizer;
      Problem p = load(solve_file, solve_start);
      const SolveResult r = run(*p.oracle, p.a, p.b, p.c, p.e0, cfg);
      std::cout << "status      " << to_string(r.status) << "\n"
                << "iterations  " << r.trace.size() << "\n"
                << "gap0        " << r.initial_gap << "\n"
                << "final gap   " << r.final_gap << "\n"
                << "objective   " << (r.final_e.size() ? p.c.dot(r.final_e) : NAN) << "\n"
                << "violations  " << r.violations.total() << "\n";
      if (!r.message.empty()) std::cout << "message     " << r.message << "\n";
      if (!trace_path.empty()) {
        const auto header = io::make_trace_header(solve_file, p.backend, p.oracle->degree(),
                                                  static_cast<int>(p.a.rows()), cfg);
        io::write_file(trace_path, io::export_trace(r, header,
                                                    trace_format == "csv" ? io::TraceFormat::Csv
                                                                          : io::TraceFormat::Json));
      }
      return exit_code(r.status);
    }

    if (*generate) {
      if (gen_kind == "sdp") {
        const io::SdpGenerated g = io::gen_central_path_sdp(gen_n, gen_m, gen_mu, gen_seed);
        io::write_file(gen_out, io::write_sdpa(g.instance));
        io::write_file(gen_out + ".e0.json", io::write_start_json(g.start));
        std::cout << "wrote " << gen_out << " and " << gen_out << ".e0.json\n";
      } else {
        const HpFamily family = gen_family == "determinant" ? HpFamily::determinant(gen_n)
                                                            : HpFamily::from_name(gen_family, gen_n, gen_k);
        io::HpDocument doc;
        doc.instance = io::gen_hp_instance(family, gen_m, gen_mu, gen_seed, gen_radius);
        doc.metadata = {{"seed", gen_seed}, {"mu", gen_mu}, {"radius", gen_radius}};
        io::write_file(gen_out, io::write_hp_json(doc));
        std::cout << "wrote " << gen_out << "\n";
      }
      return kExitOk;
    }

    if (*reduce) {
      Problem p = load(red_file, red_start);
      const AlphaReductionResult r = alpha_reduction_run(*p.oracle, p.a, p.b, p.c, p.e0, alpha0, target);
      const bool ok = in_swath(*p.oracle, p.a, p.b, p.c, r.e, target);
      std::cout << "iterations  " << r.iterations << "\n"
                << "bound       " << r.bound << "\n"
                << "final alpha " << r.final_alpha << "\n"
                << "in swath    " << (ok ? "yes" : "no") << "\n";
      return ok && r.iterations <= r.bound ? kExitOk : kExitFailure;
    }

    if (*validate) {
      Problem p = load(val_file, val_start);
      bool all_pass = true;
      auto want = [&](const char* name) { return checks == "all" || checks == name; };
      auto report = [&](const CheckReport& r) {
        print_report(r);
        all_pass = all_pass && r.pass;
      };
      if (want("fd")) report(fd_check(*p.oracle, p.e0));
      if (p.sdp) {
        const Mat e = smat(p.e0);
        const ScheduleConstants k = schedule_constants(val_alpha, p.sdp->order());
        if (want("qscale")) report(q_scaling_check(*p.sdp, e, val_alpha, 11));
        if (want("equiv") || want("bound")) {
          const SubproblemSolution sol = solve_qcp(*p.oracle, p.a, p.b, p.c, p.e0, val_alpha);
          if (!sol.solved()) throw Error(ErrorKind::NotInSwath, sol.detail);
          const PowerSums ps = power_sums_from_eigs(p.oracle->direction_eigs(p.e0, sol.x));
          const StepPoly q = step_poly_coeffs(ps, val_alpha, p.sdp->order());
          const double t_e = -q.b / (2.0 * q.a);
          const double delta = t_e - 0.5 * val_alpha / sol.x_norm_e;
          if (want("equiv")) {
            report(membership_equiv_check(*p.sdp, e, val_alpha, k.beta,
                                          {0.0, t_e - delta, t_e, t_e + delta, 2.0 * t_e, 10.0 * t_e}));
          }
          if (want("bound")) {
            std::vector<double> grid;
            const double t_max = val_alpha / sol.x_norm_e;
            for (int i = 1; i <= 20; ++i) grid.push_back(t_max * i / 20.0);
            report(decrease_bound_check(e, smat(sol.x), val_alpha, grid));
          }
        }
      } else if (checks != "all" && checks != "fd") {
        std::cout << "SKIP " << checks << " (semidefinite instances only)\n";
      }
      return all_pass ? kExitOk : kExitFailure;
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_code(err.kind());
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
