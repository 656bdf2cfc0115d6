#include "srscale/factorize.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "srscale/errors.hpp"

namespace srscale {

DenseMatrix SrFactors::permuted(const DenseMatrix& g) const {
  if (g.cols() != col_perm.size()) throw DimensionError("permutation size does not match G");
  DenseMatrix out(g.rows(), g.cols());
  for (Index k = 0; k < col_perm.size(); ++k) out.set_column(k, g.column(col_perm[k]));
  return out;
}

DenseMatrix SrFactors::q_factor() const {
  return PerfectShuffle(s.rows() / 2).apply_rows(s);
}

namespace {

using Column = std::vector<double>;

// Makes w J-orthogonal to the pair (s, t) (s^T J t = 1) and returns the
// coefficients (on s, on t) that rebuild the removed component.
std::pair<double, double> j_orthogonalize(Column& w, const Column& s, const Column& t) {
  const double along_s = -j_inner(t, w);
  const double along_t = j_inner(s, w);
  for (Index i = 0; i < w.size(); ++i) w[i] -= along_s * s[i] + along_t * t[i];
  return {along_s, along_t};
}

struct PairChoice {
  Index first = 0;
  Index second = 0;
  double pivot = 0.0;
};

}  // namespace

SrFactors symplectic_qr(const DenseMatrix& g) {
  if (g.rows() % 2 != 0 || g.cols() % 2 != 0) {
    throw DimensionError("symplectic QR needs even dimensions");
  }
  if (g.rows() < g.cols()) throw DimensionError("symplectic QR needs rows >= cols");
  const Index n = g.cols() / 2;
  const Index dim = g.cols();
  const double gnorm = frobenius_norm(g);
  const double threshold = kZeroTolerance * gnorm * gnorm;

  std::vector<Column> work(dim);
  for (Index k = 0; k < dim; ++k) work[k] = g.column(k);

  // coef(row, original column) accumulates R before columns get positions.
  DenseMatrix coef(dim, dim);
  std::vector<Column> accepted;  // s_0, t_0, s_1, t_1, ...
  std::vector<std::pair<Index, Index>> pairs;
  for (Index j = 0; j < n; ++j) pairs.emplace_back(j, n + j);
  std::vector<Index> perm;
  perm.reserve(dim);

  for (Index step = 0; step < n; ++step) {
    // Natural pairs first; a later pair must beat the current best by more
    // than rounding to displace it.
    PairChoice best;
    Index best_pair = 0;
    for (Index p = 0; p < pairs.size(); ++p) {
      const double piv = std::abs(j_inner(work[pairs[p].first], work[pairs[p].second]));
      if (piv > best.pivot * (1.0 + 1e-12)) {
        best = {pairs[p].first, pairs[p].second, piv};
        best_pair = p;
      }
    }
    if (best.pivot <= threshold) {
      // Every natural pair is degenerate: search all remaining columns and
      // re-pair the two orphaned partners.
      std::vector<Index> remaining;
      for (const auto& [a, b] : pairs) {
        remaining.push_back(a);
        remaining.push_back(b);
      }
      for (Index u = 0; u < remaining.size(); ++u) {
        for (Index v = u + 1; v < remaining.size(); ++v) {
          const double piv = std::abs(j_inner(work[remaining[u]], work[remaining[v]]));
          if (piv > best.pivot * (1.0 + 1e-12)) best = {remaining[u], remaining[v], piv};
        }
      }
      if (best.pivot <= threshold) {
        throw BreakdownError("symplectic QR breakdown at pair " + std::to_string(step) +
                                 ": no column pair has a nonzero J-pivot",
                             step);
      }
      Index partner_u = dim, partner_v = dim;
      std::vector<std::pair<Index, Index>> kept;
      for (const auto& [a, b] : pairs) {
        const bool has_u = a == best.first || b == best.first;
        const bool has_v = a == best.second || b == best.second;
        if (has_u && !has_v) partner_u = (a == best.first) ? b : a;
        if (has_v && !has_u) partner_v = (a == best.second) ? b : a;
        if (!has_u && !has_v) kept.emplace_back(a, b);
      }
      if (partner_u != dim && partner_v != dim) kept.emplace_back(partner_u, partner_v);
      pairs = std::move(kept);
    } else {
      pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best_pair));
    }

    Column& x = work[best.first];
    Column& y = work[best.second];
    // Second J-orthogonalization pass against all accepted pairs.
    for (Index i = 0; i < step; ++i) {
      for (Index col : {best.first, best.second}) {
        const auto [cs, ct] = j_orthogonalize(work[col], accepted[2 * i], accepted[2 * i + 1]);
        coef(2 * i, col) += cs;
        coef(2 * i + 1, col) += ct;
      }
    }

    const double r11 = norm2(x);
    if (r11 == 0.0) {
      throw BreakdownError("symplectic QR breakdown at pair " + std::to_string(step) +
                               ": pivot column vanished",
                           step);
    }
    Column s(x.size());
    for (Index i = 0; i < x.size(); ++i) s[i] = x[i] / r11;
    const double r12 = dot(s, y);
    const double r22 = j_inner(s, y);
    if (std::abs(r11 * r22) <= threshold) {
      throw BreakdownError("symplectic QR breakdown at pair " + std::to_string(step) +
                               ": J-pivot vanished after reorthogonalization",
                           step);
    }
    Column t(y.size());
    for (Index i = 0; i < y.size(); ++i) t[i] = (y[i] - r12 * s[i]) / r22;

    coef(2 * step, best.first) = r11;
    coef(2 * step, best.second) = r12;
    coef(2 * step + 1, best.second) = r22;
    perm.push_back(best.first);
    perm.push_back(best.second);

    for (const auto& [a, b] : pairs) {
      for (Index col : {a, b}) {
        const auto [cs, ct] = j_orthogonalize(work[col], s, t);
        coef(2 * step, col) += cs;
        coef(2 * step + 1, col) += ct;
      }
    }
    accepted.push_back(std::move(s));
    accepted.push_back(std::move(t));
  }

  DenseMatrix r(dim, dim);
  for (Index pos = 0; pos < dim; ++pos) {
    for (Index row = 0; row < dim; ++row) r(row, pos) = coef(row, perm[pos]);
  }
  return SrFactors{DenseMatrix::from_columns(accepted), std::move(r), std::move(perm)};
}

DenseMatrix skew_gram(const DenseMatrix& g) {
  if (g.rows() % 2 != 0 || g.cols() % 2 != 0) throw DimensionError("skew_gram needs even dimensions");
  DenseMatrix a = g.transpose() * apply_j(g);
  for (Index i = 0; i < a.rows(); ++i) {
    a(i, i) = 0.0;
    for (Index j = i + 1; j < a.cols(); ++j) {
      const double v = 0.5 * (a(i, j) - a(j, i));
      a(i, j) = v;
      a(j, i) = -v;
    }
  }
  return a;
}

SkewCholFactors skew_cholesky(const DenseMatrix& a) {
  if (!a.square() || a.rows() % 2 != 0) {
    throw DimensionError("skew Cholesky needs a square matrix of even order");
  }
  const double anorm = frobenius_norm(a);
  if (frobenius_norm(a + a.transpose()) > 1e-10 * anorm) {
    throw StructureError("skew Cholesky input is not skew-symmetric");
  }
  const Index dim = a.rows();
  const Index n = dim / 2;
  DenseMatrix w = a;
  DenseMatrix l(dim, dim);
  std::vector<int> signs(n);

  for (Index k = 0; k < n; ++k) {
    const Index p = 2 * k, q = 2 * k + 1;
    const double pivot = 0.5 * (w(p, q) - w(q, p));
    if (std::abs(pivot) <= kZeroTolerance * anorm) {
      throw BreakdownError("leading " + std::to_string(2 * k + 2) + "x" + std::to_string(2 * k + 2) +
                               " minor is singular (block " + std::to_string(k) + ")",
                           k);
    }
    const double ell = std::sqrt(std::abs(pivot));
    const int sign = pivot > 0.0 ? 1 : -1;
    signs[k] = sign;
    l(p, p) = ell;
    l(q, q) = sign * ell;
    for (Index c = q + 1; c < dim; ++c) {
      l(p, c) = -w(q, c) / (sign * ell);
      l(q, c) = w(p, c) / ell;
    }
    for (Index i = q + 1; i < dim; ++i) {
      for (Index j = q + 1; j < dim; ++j) {
        w(i, j) -= l(p, i) * l(q, j) - l(q, i) * l(p, j);
      }
    }
  }
  return SkewCholFactors{std::move(l), std::move(signs)};
}

}  // namespace srscale
