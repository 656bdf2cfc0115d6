#include "srscale/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "srscale/errors.hpp"
#include "srscale/factorize.hpp"
#include "srscale/scaling.hpp"

namespace srscale {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// The standard distributions are implementation-defined, so the draws are
// built directly from the engine output to keep results portable.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal(std::mt19937_64& rng) {
  double u = 0.0;
  while (u == 0.0) u = uniform01(rng);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * 3.141592653589793 * v);
}

double log_uniform(std::mt19937_64& rng, double decades) {
  return std::pow(10.0, decades * (uniform01(rng) - 0.5));
}

RatioSummary summarize(std::vector<double> values) {
  RatioSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.max = values.back();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  const auto at = [&](double q) {
    return values[static_cast<Index>(q * static_cast<double>(values.size() - 1))];
  };
  s.median = at(0.5);
  s.p90 = at(0.9);
  return s;
}

}  // namespace

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

DenseMatrix random_matrix(std::mt19937_64& rng, Index rows, Index cols, double decades) {
  DenseMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  }
  if (decades > 0.0) {
    for (Index i = 0; i < rows; ++i) {
      const double s = log_uniform(rng, decades);
      for (Index j = 0; j < cols; ++j) m(i, j) *= s;
    }
    for (Index j = 0; j < cols; ++j) {
      const double s = log_uniform(rng, decades);
      for (Index i = 0; i < rows; ++i) m(i, j) *= s;
    }
  }
  return m;
}

BlockDiagScaling random_scaling(std::mt19937_64& rng, Index blocks) {
  std::vector<ScalerBlock> b(blocks);
  for (auto& blk : b) {
    blk.c = log_uniform(rng, 6.0);
    if (uniform01(rng) < 0.5) blk.c = -blk.c;
    blk.f = normal(rng);
  }
  return BlockDiagScaling(std::move(b));
}

DenseMatrix random_upper_triangular(std::mt19937_64& rng, Index n_pairs, double decades) {
  const Index dim = 2 * n_pairs;
  DenseMatrix r(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i + 1; j < dim; ++j) r(i, j) = normal(rng);
    double d = 0.5 + uniform01(rng);
    if (uniform01(rng) < 0.5) d = -d;
    r(i, i) = d * (decades > 0.0 ? log_uniform(rng, decades) : 1.0);
  }
  return r;
}

EnsembleSummary run_ensemble(const EnsembleConfig& config) {
  if (config.trials == 0) throw DomainError("trials must be at least 1");
  if (config.n_pairs == 0) throw DomainError("n_pairs must be at least 1");
  const Index m = config.row_pairs == 0 ? config.n_pairs : config.row_pairs;
  if (m < config.n_pairs) throw DomainError("row pairs must be at least n_pairs");

  EnsembleSummary out;
  out.config = config;
  std::vector<double> row_ratios, col_ratios;

  for (Index t = 0; t < config.trials; ++t) {
    auto rng = trial_stream(config.seed, t);
    const DenseMatrix g = random_matrix(rng, 2 * m, 2 * config.n_pairs, config.decades);
    SrFactors f{DenseMatrix(1, 1), DenseMatrix(1, 1), {}};
    try {
      f = symplectic_qr(g);
    } catch (const BreakdownError&) {
      ++out.breakdowns;
      continue;
    }
    ScalingReport row, col;
    try {
      row = row_scaling_report(f.r);
      col = col_scaling_report(f.s);
    } catch (const RankError&) {
      ++out.breakdowns;
      continue;
    }
    if (!row.kappa2_after || !col.kappa2_after) {
      ++out.breakdowns;
      continue;
    }
    ++out.factorized;
    for (Index k = 0; k < config.samples; ++k) {
      const BlockDiagScaling d = random_scaling(rng, config.n_pairs);
      const auto kr = try_spectral_condition(d.apply_left(f.r));
      const auto kc = try_spectral_condition(d.apply_right_inverse(f.s));
      if (kr) {
        row_ratios.push_back(*row.kappa2_after / (row.bound * *kr));
      } else {
        ++out.skipped_samples;
      }
      if (kc) {
        col_ratios.push_back(*col.kappa2_after / (col.bound * *kc));
      } else {
        ++out.skipped_samples;
      }
    }
  }
  for (double r : row_ratios) out.violations += r > 1.0;
  for (double r : col_ratios) out.violations += r > 1.0;
  out.row = summarize(std::move(row_ratios));
  out.col = summarize(std::move(col_ratios));
  out.max_ratio = std::max(out.row.max, out.col.max);
  return out;
}

}  // namespace srscale
