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

#ifndef TCUR_REGULARIZERS_HPP
#define TCUR_REGULARIZERS_HPP

#include "tcur/tensor.hpp"

namespace tcur {

// Axis-wise forward differences of one tensor, same shape each.
struct GradStack {
  Tensor3 g1, g2, g3;
};

// Periodic forward difference along axis (1, 2 or 3):
//   out[idx] = x[idx + e_axis] - x[idx], wrapping on the last index.
Tensor3 grad(const Tensor3& x, int axis);

// Exact adjoint of grad along the same axis:
//   out[idx] = x[idx - e_axis] - x[idx], wrapping on the first index,
// so that <grad(x, i), y> == <x, div(y, i)> for all x, y.
Tensor3 div(const Tensor3& x, int axis);

GradStack grad_stack(const Tensor3& x);

// Generalized 3D total variation: sum over axes of (l1 norm of the axis
// derivative) raised to the integer power p >= 1.
double g3dtv(const Tensor3& x, int p);

// Entrywise soft thresholding, t >= 0.
Tensor3 prox_l1(const Tensor3& z, double t);

// Proximal operator of t * (l1 norm)^p for p in {1, 2, 3, 4}:
//
//   argmin_x 1/2 ||x - z||_F^2 + t * ||x||_1^p.
//
// The penalty couples all entries through s = ||x||_1: the minimizer is a
// soft threshold x = sign(z) .* max(|z| - theta, 0) at the level
// theta = t * p * s^(p-1), where s solves the scalar consistency equation
// s = sum_i max(|z_i| - t*p*s^(p-1), 0).  Candidate active sets come from
// a descending magnitude sort; p = 2 has a closed form per active set,
// p = 3 and 4 use safeguarded Newton on the monotone scalar equation.
Tensor3 prox_l1p(const Tensor3& z, double t, int p);

}  // namespace tcur

#endif  // TCUR_REGULARIZERS_HPP
