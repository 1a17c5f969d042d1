// Copyright 2026 The tcur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tcur/admm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "tcur/evaluation.hpp"

namespace tcur {

void AdmmParams::validate(int n1, int n2, int n3) const {
  if (lambda1 < 0.0 || lambda2 < 0.0) {
    throw std::invalid_argument("lambda1/lambda2 must be nonnegative");
  }
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  if (tau <= 0.0) throw std::invalid_argument("tau must be positive");
  if (p < 1 || p > 4) throw std::invalid_argument("p must be 1, 2, 3 or 4");
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (s_r < 0 || s_r > n1) throw std::invalid_argument("s_r must be in [0, n1]");
  if (s_c < 0 || s_c > n2) throw std::invalid_argument("s_c must be in [0, n2]");
  if (k < 1 || k > n3) throw std::invalid_argument("k must be in [1, n3]");
}

AdmmParams AdmmParams::resolved(int n1, int n2) const {
  AdmmParams r = *this;
  if (r.s_r == 0) r.s_r = n1;
  if (r.s_c == 0) r.s_c = n2;
  return r;
}

double objective(const Tensor3& b, const Tensor3& s, const Tensor3& y,
                 const AdmmParams& params) {
  if (!b.same_shape(y) || !s.same_shape(y)) {
    throw ShapeError("objective: shape mismatch");
  }
  const Tensor3 resid = b + s - y;
  const double fro = fro_norm(resid);
  return 0.5 * fro * fro + params.lambda1 * l1_norm(s) +
         params.lambda2 * g3dtv(b, params.p);
}

Tensor3 grad_f(const AdmmState& state, const Tensor3& y,
               const AdmmParams& params) {
  Tensor3 g = state.b + state.s - y;
  g += params.beta * div(grad(state.b, 1) - state.x.g1 + state.x_dual.g1, 1);
  g += params.beta * div(grad(state.b, 2) - state.x.g2 + state.x_dual.g2, 2);
  g += params.beta * div(grad(state.b, 3) - state.x.g3 + state.x_dual.g3, 3);
  return g;
}

AdmmState init_state(const Tensor3& y, const AdmmParams& params) {
  const AdmmParams rp = params.resolved(y.n1(), y.n2());
  AdmmState st;
  RandomEngine engine(rp.seed);
  st.b_factors.row_idx = sample_indices(y.n1(), rp.s_r, engine);
  st.b_factors.col_idx = sample_indices(y.n2(), rp.s_c, engine);
  st.b_factors.c = Tensor3(y.n1(), rp.s_c, y.n3());
  st.b_factors.u = Tensor3(rp.s_r, rp.s_c, y.n3());
  st.b_factors.r = Tensor3(rp.s_r, y.n2(), y.n3());
  st.b = Tensor3(y.n1(), y.n2(), y.n3());
  st.s = Tensor3(y.n1(), y.n2(), y.n3());
  st.x = {st.b, st.b, st.b};
  st.x_dual = {st.b, st.b, st.b};
  st.residual = std::numeric_limits<double>::infinity();
  return st;
}

void update_b(AdmmState& state, const Tensor3& y, const AdmmParams& params) {
  const Tensor3 g = grad_f(state, y, params);
  state.b_factors.c -= params.tau * slice_cols(g, state.b_factors.col_idx);
  state.b_factors.r -= params.tau * slice_rows(g, state.b_factors.row_idx);
  state.b_factors.u =
      0.5 * (slice_rows(state.b_factors.c, state.b_factors.row_idx) +
             slice_cols(state.b_factors.r, state.b_factors.col_idx));
  state.b = tcur_reconstruct(state.b_factors);
}

Tensor3 update_s(const Tensor3& b_new, const Tensor3& y,
                 const AdmmParams& params) {
  return prox_l1(y - b_new, params.lambda1 / params.beta);
}

GradStack update_x(const Tensor3& b_new, const GradStack& x_dual,
                   const AdmmParams& params) {
  const double t = params.lambda2 / params.beta;
  return {prox_l1p(grad(b_new, 1) + x_dual.g1, t, params.p),
          prox_l1p(grad(b_new, 2) + x_dual.g2, t, params.p),
          prox_l1p(grad(b_new, 3) + x_dual.g3, t, params.p)};
}

GradStack update_dual(const GradStack& x_dual, const Tensor3& b_new,
                      const GradStack& x_new) {
  return {x_dual.g1 + grad(b_new, 1) - x_new.g1,
          x_dual.g2 + grad(b_new, 2) - x_new.g2,
          x_dual.g3 + grad(b_new, 3) - x_new.g3};
}

SolveResult run_admm(const Tensor3& y, const AdmmParams& params) {
  const AdmmParams rp = params.resolved(y.n1(), y.n2());
  rp.validate(y.n1(), y.n2(), y.n3());

  AdmmState state = init_state(y, rp);
  SolveResult out;
  out.trace.reserve(static_cast<std::size_t>(rp.max_iter));
  for (int j = 1; j <= rp.max_iter; ++j) {
    const Tensor3 b_prev = state.b;
    update_b(state, y, rp);
    if (!std::isfinite(linf_norm(state.b))) {
      throw NumericalError(
          "run_admm: iterate diverged at iteration " + std::to_string(j) +
          "; try a smaller tau or larger s_r/s_c");
    }
    state.s = update_s(state.b, y, rp);
    state.x = update_x(state.b, state.x_dual, rp);
    state.x_dual = update_dual(state.x_dual, state.b, state.x);
    state.iter = j;
    state.residual = linf_norm(state.b - b_prev);
    state.objective = objective(state.b, state.s, y, rp);
    out.trace.push_back({j, state.residual, state.objective});
    if (state.residual < rp.epsilon) {
      out.converged = true;
      break;
    }
  }
  out.b_smooth = std::move(state.b);
  return out;
}

IndexSet select_bands(const Tensor3& b_smooth, int k, std::uint64_t seed) {
  const int n3 = b_smooth.n3();
  if (k < 1 || k > n3) {
    throw std::invalid_argument("select_bands: k out of range");
  }
  const std::size_t dim = static_cast<std::size_t>(b_smooth.n1()) *
                          static_cast<std::size_t>(b_smooth.n2());
  std::vector<std::vector<double>> points(static_cast<std::size_t>(n3));
  for (int b = 0; b < n3; ++b) {
    const double* begin = b_smooth.values().data() + dim * static_cast<std::size_t>(b);
    points[static_cast<std::size_t>(b)].assign(begin, begin + dim);
  }
  const KmeansResult km = kmeans(points, k, seed);

  IndexSet q;
  q.reserve(static_cast<std::size_t>(k));
  std::unordered_set<int> taken;
  for (int c = 0; c < k; ++c) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int b = 0; b < n3; ++b) {
      if (taken.contains(b)) continue;
      double d = 0.0;
      const auto& pt = points[static_cast<std::size_t>(b)];
      const auto& ct = km.centroids[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < dim; ++i) {
        const double diff = pt[i] - ct[i];
        d += diff * diff;
      }
      if (d < best_d) {
        best_d = d;
        best = b;
      }
    }
    taken.insert(best);
    q.push_back(best);
  }
  std::sort(q.begin(), q.end());
  return q;
}

BandSelectionResult band_select(const Tensor3& y, const AdmmParams& params) {
  SolveResult solve = run_admm(y, params);
  BandSelectionResult out;
  out.band_idx = select_bands(solve.b_smooth, params.k, params.seed);
  out.b_smooth = std::move(solve.b_smooth);
  out.trace = std::move(solve.trace);
  out.converged = solve.converged;
  return out;
}

}  // namespace tcur
