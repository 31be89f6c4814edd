// Copyright 2026 The steercert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "steercert/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "steercert/errors.hpp"

namespace steercert {

namespace {

// 2x2 Hermitian M = (t I + x X + y Y + z Z) / 2 as (t, x, y, z). PSD iff
// t >= |(x, y, z)|, so each PSD block is a second-order cone.
using Bloch = std::array<double, 4>;

Bloch to_bloch(const CMatrix& m) {
  return {(m(0, 0) + m(1, 1)).real(), 2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
          (m(0, 0) - m(1, 1)).real()};
}

CMatrix from_bloch(const double* b) {
  return CMatrix{{0.5 * (b[0] + b[3]), 0.5 * cplx(b[1], -b[2])},
                 {0.5 * cplx(b[1], b[2]), 0.5 * (b[0] - b[3])}};
}

void project_soc(double* v) {
  const double n = std::sqrt(v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  if (n <= v[0]) return;
  if (n <= -v[0]) {
    v[0] = v[1] = v[2] = v[3] = 0.0;
    return;
  }
  const double a = 0.5 * (v[0] + n);
  const double s = a / n;
  v[0] = a;
  v[1] *= s;
  v[2] *= s;
  v[3] *= s;
}

// Smallest cone margin t - |r| over all blocks.
double min_cone_margin(const std::vector<double>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 3 < v.size(); k += 4) {
    m = std::min(m, v[k] - std::sqrt(v[k + 1] * v[k + 1] + v[k + 2] * v[k + 2] +
                                     v[k + 3] * v[k + 3]));
  }
  return m;
}

// Dense row-major real matrix, only what the projector needs.
struct RealMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Inverse of a symmetric positive definite matrix via Cholesky.
RealMatrix spd_inverse(const RealMatrix& g) {
  const std::size_t n = g.rows;
  RealMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = g(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0.0) throw Error("constraint matrix is rank deficient");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  RealMatrix inv(n, n);
  std::vector<double> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(col.begin(), col.end(), 0.0);
    col[c] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = col[i];
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * col[k];
      col[i] = s / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = col[i];
      for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * col[k];
      col[i] = s / l(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  return inv;
}

// Alternating projections between {y : M y = c} and a product of
// 4-dimensional second-order cones. `trace_bound` bounds the sum of the
// cone "t" coordinates over every point of the affine set, which turns an
// approximate dual ray into a rigorous infeasibility certificate.
class ConeFeasibility {
 public:
  ConeFeasibility(RealMatrix m, std::vector<double> c, double trace_bound)
      : m_(std::move(m)), c_(std::move(c)), gram_inv_(m_.rows, m_.rows), trace_bound_(trace_bound) {
    RealMatrix g(m_.rows, m_.rows);
    for (std::size_t i = 0; i < m_.rows; ++i)
      for (std::size_t j = 0; j < m_.rows; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m_.cols; ++k) s += m_(i, k) * m_(j, k);
        g(i, j) = s;
      }
    gram_inv_ = spd_inverse(g);
  }

  struct Result {
    SdpStatus status = SdpStatus::max_iterations;
    std::vector<double> point;  // in the cone
    double residual = 0.0;
    int iterations = 0;
  };

  Result solve(std::vector<double> y, double tol, int max_iterations) const {
    const std::size_t n = m_.cols;
    std::vector<double> ya(n), d(n), r(m_.rows), u(m_.rows), g(n);
    Result out;
    for (int it = 1; it <= max_iterations; ++it) {
      // ya = y - M^T (M M^T)^{-1} (M y - c)
      apply(y, r);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c_[i];
      multiply_gram_inv(r, u);
      ya = y;
      apply_transpose_sub(u, ya);
      y = ya;
      for (std::size_t k = 0; k < n; k += 4) project_soc(&y[k]);

      apply(y, r);
      double res = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) res = std::max(res, std::abs(r[i] - c_[i]));
      out.iterations = it;
      out.residual = res;
      if (res <= tol) {
        out.status = SdpStatus::optimal;
        out.point = std::move(y);
        return out;
      }
      if (it % 10 == 0 && certifies_infeasible(ya, y, d, r, u, g)) {
        out.status = SdpStatus::infeasible;
        out.point = std::move(y);
        return out;
      }
    }
    out.point = std::move(y);
    return out;
  }

 private:
  void apply(const std::vector<double>& y, std::vector<double>& out) const {
    for (std::size_t i = 0; i < m_.rows; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < m_.cols; ++k) s += m_(i, k) * y[k];
      out[i] = s;
    }
  }
  void multiply_gram_inv(const std::vector<double>& r, std::vector<double>& out) const {
    for (std::size_t i = 0; i < m_.rows; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m_.rows; ++j) s += gram_inv_(i, j) * r[j];
      out[i] = s;
    }
  }
  void apply_transpose_sub(const std::vector<double>& u, std::vector<double>& y) const {
    for (std::size_t i = 0; i < m_.rows; ++i)
      for (std::size_t k = 0; k < m_.cols; ++k) y[k] -= m_(i, k) * u[i];
  }

  // The gap vector d = yk - ya between the cone point and the affine point
  // approximates a dual ray. Project it onto range(M^T): g = M^T u. For
  // every y in the affine set, <g, y> = <u, c>; for every y in the cones,
  // <g, y> >= min(0, min_block(g_t - |g_r|)) * sum t. A strict violation
  // proves the intersection empty.
  bool certifies_infeasible(const std::vector<double>& ya, const std::vector<double>& yk,
                            std::vector<double>& d, std::vector<double>& r,
                            std::vector<double>& u, std::vector<double>& g) const {
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = yk[k] - ya[k];
    apply(d, r);
    multiply_gram_inv(r, u);
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t i = 0; i < m_.rows; ++i)
      for (std::size_t k = 0; k < m_.cols; ++k) g[k] += m_(i, k) * u[i];
    double uc = 0.0, unorm = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      uc += u[i] * c_[i];
      unorm += u[i] * u[i];
    }
    if (unorm == 0.0) return false;
    const double slack = std::max(0.0, -min_cone_margin(g)) * trace_bound_;
    return uc + slack < -1e-12 * std::sqrt(unorm);
  }

  RealMatrix m_;
  std::vector<double> c_;
  RealMatrix gram_inv_;
  double trace_bound_;
};

std::array<Bloch, 4> assemblage_bloch(const Assemblage& asmb) {
  std::array<Bloch, 4> out;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) out[Assemblage::index(a, x)] = to_bloch(asmb.element(a, x));
  return out;
}

std::array<CMatrix, 4> hidden_from_point(const std::vector<double>& y) {
  std::array<CMatrix, 4> out;
  for (std::size_t l = 0; l < 4; ++l) out[l] = from_bloch(&y[4 * l]);
  return out;
}

double total_trace(const std::vector<double>& y) {
  return y[0] + y[4] + y[8] + y[12];
}

// Solves H d = rhs for symmetric positive definite H by Cholesky. Returns
// false if H is not numerically positive definite.
bool cholesky_solve(RealMatrix h, std::vector<double>& rhs) {
  const std::size_t n = h.rows;
  for (std::size_t j = 0; j < n; ++j) {
    double d = h(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= h(j, k) * h(j, k);
    if (!(d > 0.0)) return false;
    h(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = h(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= h(i, k) * h(j, k);
      h(i, j) = s / h(j, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= h(i, k) * rhs[k];
    rhs[i] = s / h(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= h(k, i) * rhs[k];
    rhs[i] = s / h(i, i);
  }
  return true;
}

struct ConicResult {
  bool converged = false;
  int iterations = 0;
  std::array<CMatrix, 4> hidden_states;
};

// Per-block Nesterov-Todd scaling V = beta (2 v v^T - J) with
// V s = V^{-1} x = lambda.
struct NtBlock {
  double beta = 1.0;
  std::array<double, 4> v{};
  std::array<double, 4> lambda{};
};

double jnorm(const double* u) {
  return std::sqrt(std::max(0.0, u[0] * u[0] - u[1] * u[1] - u[2] * u[2] - u[3] * u[3]));
}

NtBlock nt_scaling(const double* x, const double* s) {
  NtBlock nt;
  const double a = jnorm(x), b = jnorm(s);
  double xs = 0.0;
  for (int p = 0; p < 4; ++p) xs += x[p] * s[p];
  const double c = std::sqrt((xs / (a * b) + 1.0) / 2.0);
  std::array<double, 4> vk{};
  vk[0] = (x[0] / a + s[0] / b) / (2.0 * c);
  for (int p = 1; p < 4; ++p) vk[p] = (x[p] / a - s[p] / b) / (2.0 * c);
  const double norm = std::sqrt(2.0 * (vk[0] + 1.0));
  nt.v = {(vk[0] + 1.0) / norm, vk[1] / norm, vk[2] / norm, vk[3] / norm};
  nt.beta = std::sqrt(a / b);
  // lambda = V s.
  double vs = 0.0;
  for (int p = 0; p < 4; ++p) vs += nt.v[p] * s[p];
  for (int p = 0; p < 4; ++p) {
    const double js = p == 0 ? s[0] : -s[p];
    nt.lambda[p] = nt.beta * (2.0 * nt.v[p] * vs - js);
  }
  return nt;
}

// out = V u (inverse: out = V^{-1} u = (1/beta)(2 J v v^T J - J) u).
void nt_apply(const NtBlock& nt, const double* u, double* out, bool inverse) {
  std::array<double, 4> jv{nt.v[0], -nt.v[1], -nt.v[2], -nt.v[3]};
  const auto& w = inverse ? jv : nt.v;
  double d = 0.0;
  for (int p = 0; p < 4; ++p) d += w[p] * u[p];
  const double scale = inverse ? 1.0 / nt.beta : nt.beta;
  for (int p = 0; p < 4; ++p) out[p] = scale * (2.0 * w[p] * d - (p == 0 ? u[0] : -u[p]));
}

// Solves arrow(lambda) h = r.
void arrow_solve(const std::array<double, 4>& l, const double* r, double* h) {
  const double det = l[0] * l[0] - l[1] * l[1] - l[2] * l[2] - l[3] * l[3];
  h[0] = (l[0] * r[0] - l[1] * r[1] - l[2] * r[2] - l[3] * r[3]) / det;
  for (int p = 1; p < 4; ++p) h[p] = (r[p] - h[0] * l[p]) / l[0];
}

// Jordan product u o w = (u^T w, u0 w1 + w0 u1).
void jordan(const double* u, const double* w, double* out) {
  out[0] = u[0] * w[0] + u[1] * w[1] + u[2] * w[2] + u[3] * w[3];
  for (int p = 1; p < 4; ++p) out[p] = u[0] * w[p] + w[0] * u[p];
}

// Largest alpha with u + alpha d in the cone, capped at `cap`.
double max_step(const std::vector<double>& u, const std::vector<double>& d, double cap) {
  double alpha = cap;
  for (std::size_t k = 0; k < u.size(); k += 4) {
    const double* uk = &u[k];
    const double* dk = &d[k];
    const double qa = dk[0] * dk[0] - dk[1] * dk[1] - dk[2] * dk[2] - dk[3] * dk[3];
    const double qb = uk[0] * dk[0] - uk[1] * dk[1] - uk[2] * dk[2] - uk[3] * dk[3];
    const double qc = uk[0] * uk[0] - uk[1] * uk[1] - uk[2] * uk[2] - uk[3] * uk[3];
    // q(alpha) = qa alpha^2 + 2 qb alpha + qc, q(0) > 0.
    double root = std::numeric_limits<double>::infinity();
    if (std::abs(qa) < 1e-300) {
      if (qb < 0.0) root = -qc / (2.0 * qb);
    } else {
      const double disc = qb * qb - qa * qc;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        for (double r : {(-qb - sq) / qa, (-qb + sq) / qa})
          if (r > 0.0) root = std::min(root, r);
      }
    }
    if (dk[0] < 0.0) root = std::min(root, -uk[0] / dk[0]);
    alpha = std::min(alpha, root);
  }
  return alpha;
}

// Steerable weight as the conic program
//   min -sum_lambda t(sigma_lambda)
//   s.t. S_{a|x} + sum_lambda D(a|x) sigma_lambda = sigma_{a|x},
//        sigma_lambda, S_{a|x} in the Bloch cone,
// solved by an infeasible-start primal-dual interior point method with
// Nesterov-Todd scaling and Mehrotra correction. Primal iterates stay
// strictly inside the cones, so hidden states are always PSD.
ConicResult solve_steerable_weight(const Assemblage& assemblage, const SdpOptions& options) {
  constexpr std::size_t kRows = 16, kCols = 32, kBlocks = 8;
  const auto strategies = DeterministicStrategy::all();
  const auto target = assemblage_bloch(assemblage);
  RealMatrix a(kRows, kCols);
  std::vector<double> b(kRows), c(kCols, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int o = 0; o < 2; ++o) {
      const std::size_t e = Assemblage::index(o, x);
      for (std::size_t comp = 0; comp < 4; ++comp) {
        const std::size_t row = 4 * e + comp;
        a(row, 16 + 4 * e + comp) = 1.0;
        for (std::size_t l = 0; l < 4; ++l) a(row, 4 * l + comp) = strategies[l].weight(o, x);
        b[row] = target[e][comp];
      }
    }
  for (std::size_t l = 0; l < 4; ++l) c[4 * l] = -1.0;

  std::vector<double> x(kCols, 0.0), s(kCols, 0.0), y(kRows, 0.0);
  for (std::size_t k = 0; k < kBlocks; ++k) x[4 * k] = s[4 * k] = 1.0;

  const double feas_target = 1e-3 * options.tol;
  const double gap_target = 1e-3 * options.tol;
  const int max_iterations = std::min(options.max_iterations, 200);
  std::vector<double> rp(kRows), rd(kCols), rc(kCols), h(kCols), vh(kCols), tmp(kCols);
  std::vector<double> dx(kCols), ds(kCols), dy(kRows), dxa(kCols), dsa(kCols), rhs(kRows);
  std::array<NtBlock, kBlocks> nt;
  ConicResult out;

  double rp_max = 0.0, rd_max = 0.0, gap = 0.0;
  auto measure = [&] {
    rp_max = rd_max = gap = 0.0;
    for (std::size_t i = 0; i < kRows; ++i) {
      double v = b[i];
      for (std::size_t k = 0; k < kCols; ++k) v -= a(i, k) * x[k];
      rp[i] = v;
      rp_max = std::max(rp_max, std::abs(v));
    }
    for (std::size_t k = 0; k < kCols; ++k) {
      double v = c[k] - s[k];
      for (std::size_t i = 0; i < kRows; ++i) v -= a(i, k) * y[i];
      rd[k] = v;
      rd_max = std::max(rd_max, std::abs(v));
      gap += x[k] * s[k];
    }
  };
  for (int it = 0; it < max_iterations; ++it) {
    measure();
    out.iterations = it;
    if (rp_max <= feas_target && rd_max <= feas_target && gap <= gap_target) break;
    const double mu = gap / kBlocks;

    for (std::size_t k = 0; k < kBlocks; ++k) nt[k] = nt_scaling(&x[4 * k], &s[4 * k]);
    // M = A V^2 A^T, block by block.
    RealMatrix m(kRows, kRows);
    for (std::size_t k = 0; k < kBlocks; ++k) {
      double v2[4][4];
      for (int r = 0; r < 4; ++r) {
        double unit[4] = {0, 0, 0, 0}, col[4];
        unit[r] = 1.0;
        nt_apply(nt[k], unit, col, false);
        nt_apply(nt[k], col, unit, false);
        for (int p = 0; p < 4; ++p) v2[p][r] = unit[p];
      }
      for (std::size_t i = 0; i < kRows; ++i)
        for (int p = 0; p < 4; ++p) {
          const double aip = a(i, 4 * k + p);
          if (aip == 0.0) continue;
          for (std::size_t j = 0; j < kRows; ++j)
            for (int r = 0; r < 4; ++r) {
              const double ajr = a(j, 4 * k + r);
              if (ajr != 0.0) m(i, j) += aip * v2[p][r] * ajr;
            }
        }
    }

    // Direction for complementarity target rc:
    //   V ds + V^{-1} dx = h = arrow(lambda)^{-1} rc,  ds = rd - A^T dy,
    //   dx = V h - V^2 ds,  A V^2 A^T dy = rp - A V h + A V^2 rd.
    auto direction = [&](std::vector<double>& out_dx, std::vector<double>& out_ds) {
      for (std::size_t k = 0; k < kBlocks; ++k) {
        arrow_solve(nt[k].lambda, &rc[4 * k], &h[4 * k]);
        nt_apply(nt[k], &h[4 * k], &vh[4 * k], false);
        nt_apply(nt[k], &rd[4 * k], &tmp[4 * k], false);
        nt_apply(nt[k], &tmp[4 * k], &tmp[4 * k], false);
      }
      for (std::size_t i = 0; i < kRows; ++i) {
        double v = rp[i];
        for (std::size_t k = 0; k < kCols; ++k) v += a(i, k) * (tmp[k] - vh[k]);
        rhs[i] = v;
      }
      // Near the optimum V^2 spans many orders of magnitude; a tiny
      // diagonal shift keeps the factorization defined.
      double shift = 0.0, diag = 0.0;
      for (std::size_t i = 0; i < kRows; ++i) diag = std::max(diag, m(i, i));
      for (int attempt = 0; attempt < 6; ++attempt) {
        RealMatrix mm = m;
        for (std::size_t i = 0; i < kRows; ++i) mm(i, i) += shift;
        dy = rhs;
        if (cholesky_solve(std::move(mm), dy)) break;
        if (attempt == 5) return false;
        shift = shift == 0.0 ? 1e-14 * diag : 100.0 * shift;
      }
      for (std::size_t k = 0; k < kCols; ++k) {
        double v = rd[k];
        for (std::size_t i = 0; i < kRows; ++i) v -= a(i, k) * dy[i];
        out_ds[k] = v;
      }
      for (std::size_t k = 0; k < kBlocks; ++k) {
        nt_apply(nt[k], &out_ds[4 * k], &tmp[4 * k], false);
        nt_apply(nt[k], &tmp[4 * k], &tmp[4 * k], false);
        for (int p = 0; p < 4; ++p) out_dx[4 * k + p] = vh[4 * k + p] - tmp[4 * k + p];
      }
      return true;
    };

    // Predictor.
    for (std::size_t k = 0; k < kBlocks; ++k) {
      jordan(nt[k].lambda.data(), nt[k].lambda.data(), &rc[4 * k]);
      for (int p = 0; p < 4; ++p) rc[4 * k + p] = -rc[4 * k + p];
    }
    if (!direction(dxa, dsa)) break;
    const double alpha_aff = std::min(max_step(x, dxa, 1.0), max_step(s, dsa, 1.0));
    double gap_aff = 0.0;
    for (std::size_t k = 0; k < kCols; ++k) gap_aff += (x[k] + alpha_aff * dxa[k]) * (s[k] + alpha_aff * dsa[k]);
    const double sigma = std::pow(std::clamp(gap_aff / gap, 0.0, 1.0), 3);

    // Corrector: rc = -lambda o lambda - (V^{-1} dxa) o (V dsa) + sigma mu e.
    for (std::size_t k = 0; k < kBlocks; ++k) {
      double l2[4], sx[4], ss[4], corr[4];
      jordan(nt[k].lambda.data(), nt[k].lambda.data(), l2);
      nt_apply(nt[k], &dxa[4 * k], sx, true);
      nt_apply(nt[k], &dsa[4 * k], ss, false);
      jordan(sx, ss, corr);
      for (int p = 0; p < 4; ++p) rc[4 * k + p] = -l2[p] - corr[p] + (p == 0 ? sigma * mu : 0.0);
    }
    if (!direction(dx, ds)) break;
    const double alpha = std::min(1.0, 0.99 * std::min(max_step(x, dx, 1e300), max_step(s, ds, 1e300)));
    for (std::size_t k = 0; k < kCols; ++k) {
      x[k] += alpha * dx[k];
      s[k] += alpha * ds[k];
    }
    for (std::size_t i = 0; i < kRows; ++i) y[i] += alpha * dy[i];
  }
  measure();
  out.converged = rp_max <= options.tol && rd_max <= options.tol && gap <= options.tol;
  out.hidden_states = hidden_from_point(x);
  return out;
}
}  // namespace

std::array<DeterministicStrategy, 4> DeterministicStrategy::all() {
  return {DeterministicStrategy{{0, 0}}, DeterministicStrategy{{0, 1}},
          DeterministicStrategy{{1, 0}}, DeterministicStrategy{{1, 1}}};
}

const char* to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::optimal:
      return "optimal";
    case SdpStatus::infeasible:
      return "infeasible";
    case SdpStatus::max_iterations:
      return "max-iterations";
  }
  return "unknown";
}

SdpSolution lhs_feasibility(const Assemblage& assemblage, const SdpOptions& options) {
  // Variables: sigma_lambda, 4 Bloch coordinates each. Equations for
  // (a, x) in {(0,0), (1,0), (0,1)}; (1,1) follows from no-signalling.
  const auto strategies = DeterministicStrategy::all();
  const auto target = assemblage_bloch(assemblage);
  constexpr std::array<std::array<int, 2>, 3> kRows{{{0, 0}, {1, 0}, {0, 1}}};
  RealMatrix m(12, 16);
  std::vector<double> c(12);
  for (std::size_t e = 0; e < kRows.size(); ++e) {
    const auto [a, x] = kRows[e];
    for (std::size_t comp = 0; comp < 4; ++comp) {
      const std::size_t row = 4 * e + comp;
      for (std::size_t l = 0; l < 4; ++l) m(row, 4 * l + comp) = strategies[l].weight(a, x);
      c[row] = target[Assemblage::index(a, x)][comp];
    }
  }
  // sum_lambda Tr sigma_lambda = Tr rho_B = 1 on the affine set.
  const ConeFeasibility problem(std::move(m), std::move(c), 1.0);
  // The implicit (1,1) equation accumulates the error of the other three:
  // a Bloch residual of tol/4 keeps every matrix entry within tol.
  auto r = problem.solve(std::vector<double>(16, 0.0), 0.25 * options.tol, options.max_iterations);

  SdpSolution sol;
  sol.status = r.status;
  sol.iterations = r.iterations;
  sol.hidden_states = hidden_from_point(r.point);
  sol.objective = total_trace(r.point);
  // Include the (1,1) equation that the solve left implicit.
  auto model_residual = [&](const std::array<CMatrix, 4>& hidden) {
    double residual = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a) {
        CMatrix model(2, 2);
        for (std::size_t l = 0; l < 4; ++l)
          if (strategies[l].response(x) == a) model += hidden[l];
        residual = std::max(residual, max_abs_diff(model, assemblage.element(a, x)));
      }
    return residual;
  };
  sol.residual = model_residual(sol.hidden_states);
  if (sol.status != SdpStatus::max_iterations) return sol;

  // Boundary cases where projections stall: decide from the conic solve.
  const auto sw = solve_steerable_weight(assemblage, options);
  if (!sw.converged) return sol;
  double kept = 0.0;
  for (const auto& h : sw.hidden_states) kept += h.trace().real();
  const double weight = 1.0 - kept;
  if (weight > options.tol) {
    sol.status = SdpStatus::infeasible;
    return sol;
  }
  if (model_residual(sw.hidden_states) <= options.tol) {
    sol.status = SdpStatus::optimal;
    sol.hidden_states = sw.hidden_states;
    sol.objective = kept;
    sol.residual = model_residual(sw.hidden_states);
  }
  return sol;
}

SdpSolution steerable_weight(const Assemblage& assemblage, const SdpOptions& options) {
  const auto sw = solve_steerable_weight(assemblage, options);
  SdpSolution sol;
  sol.status = sw.converged ? SdpStatus::optimal : SdpStatus::max_iterations;
  sol.iterations = sw.iterations;
  sol.hidden_states = sw.hidden_states;
  double kept = 0.0;
  for (const auto& h : sw.hidden_states) kept += h.trace().real();
  sol.objective = std::clamp(1.0 - kept, 0.0, 1.0);
  // Slack residual: most negative eigenvalue of sigma_{a|x} - model.
  const auto strategies = DeterministicStrategy::all();
  double residual = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      CMatrix slack = assemblage.element(a, x);
      for (std::size_t l = 0; l < 4; ++l)
        if (strategies[l].response(x) == a) slack -= sol.hidden_states[l];
      residual = std::max(residual, -min_eigenvalue(slack));
    }
  sol.residual = residual;
  return sol;
}

namespace {

// Lawson-Hanson nonnegative least squares, columns stored as vectors.
struct NnlsResult {
  std::vector<double> x;
  double residual_norm = 0.0;
};

// Least squares on the selected columns by Householder QR.
std::vector<double> least_squares(const std::vector<std::vector<double>>& cols,
                                  const std::vector<std::size_t>& sel,
                                  const std::vector<double>& b) {
  const std::size_t m = b.size(), k = sel.size();
  std::vector<std::vector<double>> a(k);
  for (std::size_t j = 0; j < k; ++j) a[j] = cols[sel[j]];
  std::vector<double> rhs = b;
  for (std::size_t j = 0; j < k && j < m; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < m; ++i) norm += a[j][i] * a[j][i];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = a[j][j] > 0 ? -norm : norm;
    std::vector<double> v(m, 0.0);
    for (std::size_t i = j; i < m; ++i) v[i] = a[j][i];
    v[j] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = j; i < m; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    auto reflect = [&](std::vector<double>& col) {
      double dot = 0.0;
      for (std::size_t i = j; i < m; ++i) dot += v[i] * col[i];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = j; i < m; ++i) col[i] -= f * v[i];
    };
    for (std::size_t jj = j; jj < k; ++jj) reflect(a[jj]);
    reflect(rhs);
  }
  std::vector<double> z(k, 0.0);
  for (std::size_t j = std::min(k, m); j-- > 0;) {
    double s = rhs[j];
    for (std::size_t jj = j + 1; jj < k; ++jj) s -= a[jj][j] * z[jj];
    z[j] = std::abs(a[j][j]) > 1e-14 ? s / a[j][j] : 0.0;
  }
  return z;
}

NnlsResult nnls(const std::vector<std::vector<double>>& cols, const std::vector<double>& b) {
  const std::size_t n = cols.size(), m = b.size();
  std::vector<double> x(n, 0.0), resid = b, w(n);
  std::vector<bool> passive(n, false);
  auto update_residual = [&] {
    resid = b;
    for (std::size_t j = 0; j < n; ++j)
      if (x[j] != 0.0)
        for (std::size_t i = 0; i < m; ++i) resid[i] -= cols[j][i] * x[j];
  };
  for (int outer = 0; outer < 3 * static_cast<int>(n); ++outer) {
    std::size_t best = n;
    double best_w = 1e-12;
    for (std::size_t j = 0; j < n; ++j) {
      if (passive[j]) continue;
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += cols[j][i] * resid[i];
      w[j] = s;
      if (s > best_w) {
        best_w = s;
        best = j;
      }
    }
    if (best == n) break;
    passive[best] = true;
    for (int inner = 0; inner < 3 * static_cast<int>(n); ++inner) {
      std::vector<std::size_t> sel;
      for (std::size_t j = 0; j < n; ++j)
        if (passive[j]) sel.push_back(j);
      const auto z = least_squares(cols, sel, b);
      bool all_positive = true;
      for (double v : z) all_positive = all_positive && v > 0.0;
      if (all_positive) {
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t k = 0; k < sel.size(); ++k) x[sel[k]] = z[k];
        break;
      }
      double alpha = 1.0;
      for (std::size_t k = 0; k < sel.size(); ++k)
        if (z[k] <= 0.0) alpha = std::min(alpha, x[sel[k]] / (x[sel[k]] - z[k]));
      for (std::size_t k = 0; k < sel.size(); ++k) {
        x[sel[k]] += alpha * (z[k] - x[sel[k]]);
        if (x[sel[k]] <= 1e-15) {
          x[sel[k]] = 0.0;
          passive[sel[k]] = false;
        }
      }
    }
    update_residual();
  }
  update_residual();
  double r = 0.0;
  for (double v : resid) r += v * v;
  return {x, std::sqrt(r)};
}

}  // namespace

bool brute_force_lhs_oracle(const Assemblage& assemblage, int bloch_grid) {
  if (bloch_grid < 50) throw InvalidArgument("bloch_grid must be >= 50");
  const auto strategies = DeterministicStrategy::all();
  const auto target = assemblage_bloch(assemblage);

  // Fibonacci lattice of pure states on the Bloch sphere.
  std::vector<Bloch> grid;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < bloch_grid; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / bloch_grid;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * k;
    grid.push_back({1.0, rho * std::cos(phi), rho * std::sin(phi), z});
  }

  std::vector<double> b(16);
  for (std::size_t e = 0; e < 4; ++e)
    for (std::size_t comp = 0; comp < 4; ++comp) b[4 * e + comp] = target[e][comp];

  std::vector<std::vector<double>> cols;
  for (const auto& s : strategies)
    for (const auto& h : grid) {
      std::vector<double> col(16, 0.0);
      for (int x = 0; x < 2; ++x) {
        const std::size_t e = Assemblage::index(s.response(x), x);
        for (std::size_t comp = 0; comp < 4; ++comp) col[4 * e + comp] = h[comp];
      }
      cols.push_back(std::move(col));
    }

  const auto fit = nnls(cols, b);
  double worst = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const std::size_t e = Assemblage::index(a, x);
      Bloch model{};
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t comp = 0; comp < 4; ++comp) model[comp] += cols[j][4 * e + comp] * fit.x[j];
      worst = std::max(worst, max_abs_diff(from_bloch(model.data()), assemblage.element(a, x)));
    }
  return worst <= 1e-3;
}

Assemblage xz_assemblage_from_correlations(const CorrelationTable& table) {
  std::array<CMatrix, 4> out;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const double t = 0.5 * (table.alice_marginal(a, x, 0) + table.alice_marginal(a, x, 1));
      const double z = table.p(a, 0, x, 0) - table.p(a, 1, x, 0);
      const double xx = table.p(a, 0, x, 1) - table.p(a, 1, x, 1);
      const Bloch b{t, xx, 0.0, z};
      out[Assemblage::index(a, x)] = from_bloch(b.data());
    }
  return Assemblage(std::move(out));
}

Assemblage correlator_assemblage(const CorrelationTable& table) {
  std::array<CMatrix, 4> out;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const double sign = a == 0 ? 0.5 : -0.5;
      const Bloch b{0.5, sign * correlator(table, x, 1), 0.0, sign * correlator(table, x, 0)};
      out[Assemblage::index(a, x)] = from_bloch(b.data());
    }
  return Assemblage(std::move(out));
}

}  // namespace steercert
