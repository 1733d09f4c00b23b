#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ballpot/report.hpp"

namespace ballpot {

/// Batch-run configuration; a fixed seed (plus level and jobs-independent
/// assembly) makes reports byte-identical across runs.
struct RunConfig {
  int n = 3;
  int level = 4;
  uint64_t seed = 12345;
  int jobs = 1;
  double tol = -1.0;  // < 0: per-operation defaults
  std::string out;
  std::string domain;
  std::string suite = "qc";
  double a_frac = 1.0;
  int instances = 100;
  std::string cache_dir;
};

/// Table of omega_{n-1}, c_n, gamma_n, C_n for n in [lo, hi].
std::string constants_table(int lo, int hi);

/// Solver oracle rows (quadratic/harmonic reproductions, finite-difference
/// Laplacian residual).
std::vector<EstimateReport> run_solve(const RunConfig& cfg);

/// Suite dispatch: energy | gradient | mainlemma | lemma9 | lemma15 |
/// geometry | qc.  Unknown suite names raise std::invalid_argument.
std::vector<EstimateReport> run_verify(const RunConfig& cfg);

}  // namespace ballpot
