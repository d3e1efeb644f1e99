// Command-line driver: enumerate, rank and explain carton folding sequences.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cartonfold/app.h"
#include "cartonfold/errors.h"

int main(int argc, char** argv) {
  using cartonfold::OutputFormat;
  using cartonfold::SearchMode;

  CLI::App app{"Enumerate collision-free carton folding sequences and rank them"};
  cartonfold::RunConfig config;

  std::string spec;
  std::string format = "table";
  std::string top = "20";
  std::string mode = "memoized";
  std::string dump;
  std::string explain;
  double tolerance_angle = 0;
  double penetration = 0;
  double support = 0;
  int subset_cap = 0;
  bool no_fallback = false;

  app.add_option("--spec", spec, "Carton spec file (YAML)")->required();
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"table", "csv", "structured"}));
  app.add_option("--top", top, "Rows to report: a positive count or 'all'");
  app.add_option("--mode", mode, "Search mode")
      ->check(CLI::IsMember({"naive", "memoized"}));
  auto* angle_opt = app.add_option("--tolerance-angle-deg", tolerance_angle,
                                   "Sweep sampling step, degrees");
  auto* pen_opt = app.add_option("--penetration-mm", penetration,
                                 "Tolerated interpenetration, mm");
  auto* support_opt = app.add_option("--support-mm", support,
                                     "Height above the table that counts as "
                                     "resting on it, mm");
  auto* cap_opt = app.add_option("--subset-cap", subset_cap,
                                 "Max foldable joints for memoized search");
  app.add_flag("--no-fallback", no_fallback,
               "Fail (exit 4) instead of searching naively past the cap");
  auto* dump_opt = app.add_option("--dump-states", dump,
                                  "Directory for per-step pose dumps");
  auto* explain_opt = app.add_option("--explain", explain,
                                     "Trace one sequence, e.g. \"2,1,7,4\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cartonfold::exit_code::kUsage;
  }

  config.spec_path = spec;
  config.format = format == "csv"          ? OutputFormat::kCsv
                  : format == "structured" ? OutputFormat::kStructured
                                           : OutputFormat::kTable;
  config.mode = mode == "naive" ? SearchMode::kNaive : SearchMode::kMemoized;
  if (top == "all") {
    config.top_n.reset();
  } else {
    try {
      const long n = std::stol(top);
      if (n <= 0) throw std::invalid_argument("non-positive");
      config.top_n = static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      std::cerr << "error: --top expects a positive integer or 'all'\n";
      return cartonfold::exit_code::kUsage;
    }
  }
  if (*angle_opt) config.tolerance_angle_deg = tolerance_angle;
  if (*pen_opt) config.penetration_mm = penetration;
  if (*support_opt) config.support_mm = support;
  if (*cap_opt) config.subset_cap = subset_cap;
  config.allow_naive_fallback = !no_fallback;
  if (*dump_opt) config.dump_states = dump;
  if (*explain_opt) {
    try {
      config.explain = cartonfold::ParseSequenceList(explain);
    } catch (const cartonfold::ValidationError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cartonfold::exit_code::kUsage;
    }
  }

  try {
    return cartonfold::Run(config, std::cout, std::cerr,
                           cartonfold::LogLevelFromEnv());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
