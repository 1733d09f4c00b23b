// Batch experiment runner: constants table, Dirichlet solver checks and the
// inequality-verification suites, with CSV/JSON report output.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ballpot/report.hpp"
#include "ballpot/suites.hpp"

namespace {

void add_common(CLI::App* cmd, ballpot::RunConfig* cfg) {
  cmd->add_option("--dim", cfg->n, "source dimension n")->check(CLI::Range(3, 6));
  cmd->add_option("--level", cfg->level, "quadrature level");
  cmd->add_option("--seed", cfg->seed, "random seed");
  cmd->add_option("--jobs", cfg->jobs, "parallel workers")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", cfg->tol, "tolerance override (negative: per-operation defaults)");
  cmd->add_option("--out", cfg->out, "output prefix (<prefix>.csv and <prefix>.json)");
  cmd->add_option("--instances", cfg->instances, "instance count per suite");
  cmd->add_option("--cache", cfg->cache_dir, "rule cache directory");
}

int emit(const std::vector<ballpot::EstimateReport>& rows, const ballpot::RunConfig& cfg) {
  const std::string csv = ballpot::reports_to_csv(rows);
  const std::string summary = ballpot::reports_summary_json(rows);
  if (!cfg.out.empty()) {
    std::ofstream(cfg.out + ".csv") << csv;
    std::ofstream(cfg.out + ".json") << summary;
    std::cout << summary;
  } else {
    std::cout << csv << summary;
  }
  return ballpot::all_pass(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"potential-theory toolkit for the unit ball"};
  app.require_subcommand(1);
  app.set_config("--config");

  ballpot::RunConfig cfg;
  if (const char* env = std::getenv("BALLPOT_RULE_CACHE")) cfg.cache_dir = env;

  CLI::App* constants = app.add_subcommand("constants", "dimension constants table");
  int const_n = 0;
  constants->add_option("--dim", const_n, "print a single dimension");
  std::string const_out;
  constants->add_option("--out", const_out, "write the table to a file");

  CLI::App* solve = app.add_subcommand("solve", "Dirichlet solver oracle checks");
  cfg.level = 8;
  add_common(solve, &cfg);

  ballpot::RunConfig vcfg;
  if (const char* env = std::getenv("BALLPOT_RULE_CACHE")) vcfg.cache_dir = env;
  CLI::App* verify = app.add_subcommand("verify", "inequality verification suites");
  vcfg.level = 4;
  add_common(verify, &vcfg);
  verify->add_option("--suite", vcfg.suite,
                     "energy | gradient | mainlemma | lemma9 | lemma15 | geometry | qc")
      ->required();
  verify->add_option("--domain", vcfg.domain, "target domain, e.g. ball:1 or ellipsoid:2,1,1");
  verify->add_option("--a-frac", vcfg.a_frac, "fraction of C_n used by the mainlemma sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    if (constants->parsed()) {
      const std::string table = const_n > 0 ? ballpot::constants_table(const_n, const_n)
                                            : ballpot::constants_table(3, 8);
      if (!const_out.empty()) std::ofstream(const_out) << table;
      std::cout << table;
      return 0;
    }
    if (solve->parsed()) return emit(ballpot::run_solve(cfg), cfg);
    if (verify->parsed()) return emit(ballpot::run_verify(vcfg), vcfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
