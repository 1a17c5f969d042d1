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

#ifndef TCUR_ADMM_HPP
#define TCUR_ADMM_HPP

#include <cstdint>
#include <vector>

#include "tcur/factorizations.hpp"
#include "tcur/regularizers.hpp"
#include "tcur/tensor.hpp"

namespace tcur {

// Hyperparameters of the band selection solver.
//
// The data tensor y (n1 x n2 x n3) is split as y ~ b + s with b low tubal
// rank and spatially/spectrally smooth and s sparse:
//
//   min 1/2 ||b + s - y||_F^2 + lambda1 ||s||_1 + lambda2 ||b||_G3DTV
//
// with the low-rankness of b maintained through a t-CUR factorization on
// s_r sampled rows and s_c sampled columns.
struct AdmmParams {
  double lambda1 = 1e-3;  // sparsity weight
  double lambda2 = 1e-3;  // G3DTV weight
  double beta = 1.0;      // ADMM penalty
  double tau = 1.0;       // gradient step size for the b update
  int p = 2;              // G3DTV exponent
  int s_r = 0;            // sampled row count; 0 = all rows
  int s_c = 0;            // sampled column count; 0 = all columns
  int k = 5;              // number of bands to select
  double epsilon = 1e-4;  // stop when ||b_new - b_old||_inf < epsilon
  int max_iter = 500;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument on violations.  lambda1/lambda2 may be
  // zero (switching a term off); beta, tau and epsilon must be positive.
  void validate(int n1, int n2, int n3) const;

  // Copy with s_r/s_c of 0 replaced by the full dimension.  Subsampling
  // cuts the per-iteration cost but can destabilize the factored gradient
  // step when sampled faces are ill-conditioned, so it stays opt-in.
  AdmmParams resolved(int n1, int n2) const;
};

// Per-iteration solver variables.  b is the dense materialization of the
// factored iterate; x holds the axis-wise splitting variables and x_dual
// the scaled duals.
struct AdmmState {
  TCurFactors b_factors;
  Tensor3 b;
  Tensor3 s;
  GradStack x;
  GradStack x_dual;
  int iter = 0;
  double residual = 0.0;
  double objective = 0.0;
};

struct TraceRow {
  int iter;
  double residual;
  double objective;
};

struct SolveResult {
  Tensor3 b_smooth;
  std::vector<TraceRow> trace;
  bool converged = false;
};

struct BandSelectionResult {
  IndexSet band_idx;  // 0-based, sorted ascending, size k
  Tensor3 b_smooth;
  std::vector<TraceRow> trace;
  bool converged = false;
};

// 1/2 ||b + s - y||_F^2 + lambda1 ||s||_1 + lambda2 ||b||_G3DTV.
double objective(const Tensor3& b, const Tensor3& s, const Tensor3& y,
                 const AdmmParams& params);

// Gradient of the smooth part of the b subproblem at the current state:
//   b + s - y + beta * sum_i div(grad(b, i) - x_i + x_dual_i, i).
Tensor3 grad_f(const AdmmState& state, const Tensor3& y,
               const AdmmParams& params);

// Zero-initialized state with row/column index sets sampled once from
// params.seed; they stay fixed across iterations.
AdmmState init_state(const Tensor3& y, const AdmmParams& params);

// One t-CUR factored gradient step on b:
//   c <- c - tau*g(:,J,:),  r <- r - tau*g(I,:,:),
//   u <- (c(I,:,:) + r(:,J,:)) / 2,  b <- c * tpinv(u) * r,
// where g is grad_f at the incoming state.
void update_b(AdmmState& state, const Tensor3& y, const AdmmParams& params);

// Soft threshold of the data residual at level lambda1/beta.
Tensor3 update_s(const Tensor3& b_new, const Tensor3& y,
                 const AdmmParams& params);

// Axis-wise l1^p prox of grad(b_new, i) + dual_i at level lambda2/beta.
GradStack update_x(const Tensor3& b_new, const GradStack& x_dual,
                   const AdmmParams& params);

// Scaled dual ascent: dual_i + grad(b_new, i) - x_new_i.
GradStack update_dual(const GradStack& x_dual, const Tensor3& b_new,
                      const GradStack& x_new);

// Full ADMM loop: update_b, update_s, update_x, update_dual each
// iteration, stopping at the first ||b_new - b_old||_inf < epsilon or at
// max_iter with converged = false.
SolveResult run_admm(const Tensor3& y, const AdmmParams& params);

// Clusters the frontal slices of b_smooth with seeded k-means and returns
// for each cluster the band nearest its centroid (ties and collisions
// resolved toward the lowest band index), sorted ascending.
IndexSet select_bands(const Tensor3& b_smooth, int k, std::uint64_t seed);

// run_admm followed by select_bands with params.k and params.seed.
BandSelectionResult band_select(const Tensor3& y, const AdmmParams& params);

}  // namespace tcur

#endif  // TCUR_ADMM_HPP
