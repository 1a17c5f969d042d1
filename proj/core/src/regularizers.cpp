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

#include "tcur/regularizers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace tcur {

namespace {

void check_axis(int axis) {
  if (axis < 1 || axis > 3) {
    throw std::invalid_argument("axis must be 1, 2 or 3");
  }
}

// Solves s + coef * s^(p-1) = target for s >= 0, where coef >= 0 and
// target > 0.  The left side is strictly increasing, so the root is unique.
double solve_active_set_equation(double target, double coef, int p) {
  if (coef == 0.0) return target;
  switch (p) {
    case 1:
      // theta does not depend on s; callers never reach here.
      return target - coef;
    case 2:
      return target / (1.0 + coef);
    case 3: {
      // coef*s^2 + s - target = 0, stable quadratic root.
      return 2.0 * target / (1.0 + std::sqrt(1.0 + 4.0 * coef * target));
    }
    default: {
      // Newton with a bisection bracket [0, target]; g is monotone.
      double lo = 0.0, hi = target;
      double s = std::min(target, std::pow(target / coef, 1.0 / (p - 1)));
      const double tol = 1e-12 * std::max(1.0, target);
      for (int it = 0; it < 200; ++it) {
        const double sp2 = std::pow(s, p - 2);
        const double g = s + coef * sp2 * s - target;
        if (std::abs(g) <= tol) return s;
        if (g > 0.0) hi = s; else lo = s;
        const double dg = 1.0 + coef * (p - 1) * sp2;
        double next = s - g / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - s) <= 1e-16 * std::max(1.0, s)) return next;
        s = next;
      }
      return s;
    }
  }
}

}  // namespace

Tensor3 grad(const Tensor3& x, int axis) {
  check_axis(axis);
  const int n1 = x.n1(), n2 = x.n2(), n3 = x.n3();
  Tensor3 out(n1, n2, n3);
  for (int k = 0; k < n3; ++k) {
    for (int j = 0; j < n2; ++j) {
      for (int i = 0; i < n1; ++i) {
        const int in = axis == 1 ? (i + 1 == n1 ? 0 : i + 1) : i;
        const int jn = axis == 2 ? (j + 1 == n2 ? 0 : j + 1) : j;
        const int kn = axis == 3 ? (k + 1 == n3 ? 0 : k + 1) : k;
        out(i, j, k) = x(in, jn, kn) - x(i, j, k);
      }
    }
  }
  return out;
}

Tensor3 div(const Tensor3& x, int axis) {
  check_axis(axis);
  const int n1 = x.n1(), n2 = x.n2(), n3 = x.n3();
  Tensor3 out(n1, n2, n3);
  for (int k = 0; k < n3; ++k) {
    for (int j = 0; j < n2; ++j) {
      for (int i = 0; i < n1; ++i) {
        const int ip = axis == 1 ? (i == 0 ? n1 - 1 : i - 1) : i;
        const int jp = axis == 2 ? (j == 0 ? n2 - 1 : j - 1) : j;
        const int kp = axis == 3 ? (k == 0 ? n3 - 1 : k - 1) : k;
        out(i, j, k) = x(ip, jp, kp) - x(i, j, k);
      }
    }
  }
  return out;
}

GradStack grad_stack(const Tensor3& x) {
  return {grad(x, 1), grad(x, 2), grad(x, 3)};
}

double g3dtv(const Tensor3& x, int p) {
  if (p < 1) throw std::invalid_argument("g3dtv: p must be a positive integer");
  double total = 0.0;
  for (int axis = 1; axis <= 3; ++axis) {
    total += std::pow(l1_norm(grad(x, axis)), p);
  }
  return total;
}

Tensor3 prox_l1(const Tensor3& z, double t) {
  if (t < 0.0) throw std::invalid_argument("prox_l1: t must be nonnegative");
  Tensor3 out(z.n1(), z.n2(), z.n3());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double v = z.values()[i];
    const double m = std::abs(v) - t;
    out.values()[i] = m > 0.0 ? (v > 0.0 ? m : -m) : 0.0;
  }
  return out;
}

Tensor3 prox_l1p(const Tensor3& z, double t, int p) {
  if (t < 0.0) throw std::invalid_argument("prox_l1p: t must be nonnegative");
  if (p < 1 || p > 4) {
    throw std::invalid_argument("prox_l1p: p must be 1, 2, 3 or 4");
  }
  if (p == 1) return prox_l1(z, t);
  if (t == 0.0) return z;

  const std::size_t n = z.size();
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(z.values()[i]);
  std::sort(mag.begin(), mag.end(), std::greater<double>());
  if (mag[0] == 0.0) return Tensor3(z.n1(), z.n2(), z.n3());

  // Prefix sums of sorted magnitudes and their squares, in extended
  // precision so candidate objectives compare reliably on large tensors.
  std::vector<long double> sum(n + 1, 0.0L), sumsq(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    sum[i + 1] = sum[i] + mag[i];
    sumsq[i + 1] = sumsq[i] + static_cast<long double>(mag[i]) * mag[i];
  }

  // Scan candidate active sets {entries with the m largest magnitudes}.
  // For each m, s solves s + m*t*p*s^(p-1) = sum of the m largest, and the
  // threshold theta = t*p*s^(p-1) must separate entry m-1 from entry m.
  const double bound_tol = 1e-12 * (1.0 + mag[0]);
  double best_obj = static_cast<double>(0.5L * sumsq[n]);  // x = 0
  double best_theta = mag[0] + 1.0;                        // thresholds all
  for (std::size_t m = 1; m <= n; ++m) {
    const double target = static_cast<double>(sum[m]);
    const double coef = static_cast<double>(m) * t * p;
    const double s = solve_active_set_equation(target, coef, p);
    if (!(s > 0.0)) continue;
    const double theta = t * p * std::pow(s, p - 1);
    const double lower = m < n ? mag[m] : 0.0;
    if (theta > mag[m - 1] + bound_tol || theta < lower - bound_tol) continue;
    const long double quad =
        0.5L * (static_cast<long double>(m) * theta * theta +
                (sumsq[n] - sumsq[m]));
    const double obj =
        static_cast<double>(quad) + t * std::pow(s, p);
    if (obj < best_obj) {
      best_obj = obj;
      best_theta = theta;
    }
  }

  Tensor3 out(z.n1(), z.n2(), z.n3());
  for (std::size_t i = 0; i < n; ++i) {
    const double v = z.values()[i];
    const double m = std::abs(v) - best_theta;
    out.values()[i] = m > 0.0 ? (v > 0.0 ? m : -m) : 0.0;
  }
  return out;
}

}  // namespace tcur
