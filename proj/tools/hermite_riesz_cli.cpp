// Command-line front end for the verification suites.
//
// Exit status: 0 when every check passes, 1 when at least one check fails
// (the failing claims are listed on stderr), 2 on a usage error.

#include <CLI11.hpp>
#include <hermite_riesz/hermite_riesz.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace hr = hermite_riesz;

namespace {

hr::OperatorKind op_from_name(const std::string& name) {
  if (name == "S") return hr::OperatorKind::S;
  if (name == "R") return hr::OperatorKind::R;
  if (name == "R_prime") return hr::OperatorKind::R_prime;
  if (name == "R_tilde") return hr::OperatorKind::R_tilde;
  if (name == "R_star") return hr::OperatorKind::R_star;
  if (name == "U_a") return hr::OperatorKind::U_a;
  throw std::invalid_argument("unknown operator: " + name);
}

std::string summarize(const std::vector<hr::Report>& reports) {
  std::size_t failed = 0;
  for (const auto& r : reports) failed += r.pass ? 0 : 1;
  std::ostringstream os;
  os << (reports.size() - failed) << "/" << reports.size() << " checks passed";
  if (failed > 0) os << ", " << failed << " FAILED";
  return os.str();
}

void list_failures(const std::vector<hr::Report>& reports) {
  for (const auto& r : reports) {
    if (r.pass) continue;
    std::ostringstream os;
    os << "FAIL " << r.claim << " [";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
      if (i > 0) os << ";";
      os << r.params[i].first << "=" << r.params[i].second;
    }
    os << "] computed=" << hr::fmt_full(r.computed)
       << " bound=" << hr::fmt_full(r.bound);
    std::cerr << os.str() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hermite-riesz: numerical verification of Hermite-spectral operator "
      "identities and norm bounds.\n"
      "Reports are emitted in a canonical order, so identical configurations "
      "and seeds reproduce byte-identical output.\n"
      "The environment variable HERMITE_RIESZ_THREADS (a positive integer) "
      "caps the worker pool used by the norm sweeps."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read defaults from a flat key=value file ('#' starts a "
                 "comment); command-line flags override the file");

  hr::RunConfig cfg;
  std::string output;
  std::string format = "json";
  std::string op = "all";

  app.add_option("--dims", cfg.dims, "Dimensions to exercise (comma separated)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  app.add_option("--p", cfg.exponents,
                 "Lebesgue exponents for the norm checks (comma separated, each >= 1)")
      ->delimiter(',')
      ->check(CLI::Range(1.0, 1e6));
  app.add_option("--degree", cfg.degree, "Maximum Hermite degree |n|")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--samples", cfg.samples, "Random functions per sweep cell")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Base seed for all random draws");
  app.add_option("--rel-tol", cfg.rel_tol,
                 "Relative tolerance for quadrature self-checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", output, "Write the report to this path instead of stdout");
  app.add_option("--format", format, "Report serialization")
      ->check(CLI::IsMember({"json", "csv"}));

  app.add_subcommand("verify-algebra",
                     "Ladder identities, factorizations, eigenvalues, adjoints");
  app.add_subcommand("verify-kernels",
                     "Mehler kernel identities and the pointwise kernel bounds");
  app.add_subcommand("verify-bellman",
                     "Bellman function: growth, gradient, Hessian, key inequality");
  app.add_subcommand("verify-lemma3",
                     "Semigroup integral representation of the adjoint Riesz transform");
  CLI::App* sweep = app.add_subcommand(
      "norm-sweep", "Empirical L^p operator-norm ratios against the proved bounds");
  sweep->add_option("--op", op, "Restrict the sweep to one operator")
      ->check(CLI::IsMember({"S", "R", "R_prime", "R_tilde", "R_star", "U_a", "all"}));
  app.add_subcommand("bilinear-check",
                     "Bilinear embedding bound and the Theorem 2 pairing chain");
  app.add_subcommand("all", "Run every suite");
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean, everything else is usage
  }

  const std::string name = app.get_subcommands().front()->get_name();
  std::vector<hr::Report> reports;
  try {
    if (name == "verify-algebra") {
      reports = hr::suite_algebra(cfg);
    } else if (name == "verify-kernels") {
      reports = hr::suite_kernels(cfg);
    } else if (name == "verify-bellman") {
      reports = hr::suite_bellman(cfg);
    } else if (name == "verify-lemma3") {
      reports = hr::suite_lemma3(cfg);
    } else if (name == "norm-sweep") {
      reports = op == "all" ? hr::suite_norm_sweep(cfg)
                            : hr::suite_norm_sweep(cfg, {op_from_name(op)});
    } else if (name == "bilinear-check") {
      reports = hr::suite_bilinear(cfg);
    } else {
      reports = hr::run_all(cfg);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }

  const hr::ReportFormat fmt =
      format == "csv" ? hr::ReportFormat::csv : hr::ReportFormat::json;
  try {
    if (!output.empty()) {
      hr::write_report(reports, fmt, output);
      std::cout << summarize(reports) << " -> " << output << "\n";
    } else {
      std::cout << hr::serialize_reports(reports, fmt);
      std::cerr << summarize(reports) << "\n";
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }

  list_failures(reports);
  return hr::all_pass(reports) ? 0 : 1;
}
