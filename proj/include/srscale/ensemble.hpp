#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "srscale/dense.hpp"
#include "srscale/structure.hpp"

namespace srscale {

/// Independent 64-bit stream for (seed, index): the pair is mixed through
/// splitmix64, so trial k draws the same numbers no matter which trials run.
std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t index);

/// Gaussian 2m x 2n matrix with rows and columns scaled log-uniformly over
/// `decades` orders of magnitude (0 gives a plain Gaussian matrix).
DenseMatrix random_matrix(std::mt19937_64& rng, Index rows, Index cols, double decades = 0.0);

/// c_j log-uniform on [1e-3, 1e3] with random sign, f_j standard normal.
BlockDiagScaling random_scaling(std::mt19937_64& rng, Index blocks);

/// Upper-triangular 2n x 2n matrix with diagonal magnitudes spread over
/// `decades` orders of magnitude.
DenseMatrix random_upper_triangular(std::mt19937_64& rng, Index n_pairs, double decades = 0.0);

struct EnsembleConfig {
  Index n_pairs = 3;
  Index row_pairs = 0;  // m; 0 means m = n_pairs
  Index trials = 100;
  Index samples = 100;  // random scalings per trial and side
  std::uint64_t seed = 0;
  double decades = 0.0;
};

struct RatioSummary {
  Index count = 0;
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double p90 = 0.0;
};

/// Per sample: kappa2(equal-norm scaled) / (bound * kappa2(randomly scaled)).
/// The near-optimality bound promises every ratio is at most 1.
struct EnsembleSummary {
  EnsembleConfig config;
  Index factorized = 0;
  Index breakdowns = 0;
  Index skipped_samples = 0;  // randomly scaled factor numerically singular
  RatioSummary row;
  RatioSummary col;
  double max_ratio = 0.0;
  Index violations = 0;
};

/// Throws DomainError for trials == 0 or n_pairs == 0.
EnsembleSummary run_ensemble(const EnsembleConfig& config);

}  // namespace srscale
