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

#include "tcur/tensor.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>

#include <fftw3.h>

namespace tcur {

namespace {

void check_dims(int n1, int n2, int n3) {
  if (n1 <= 0 || n2 <= 0 || n3 <= 0) {
    throw ShapeError("Tensor3 dimensions must be positive");
  }
  const auto total = static_cast<std::uint64_t>(n1) *
                     static_cast<std::uint64_t>(n2) *
                     static_cast<std::uint64_t>(n3);
  if (total > (std::uint64_t{1} << 40)) {
    throw ShapeError("Tensor3 dimensions overflow the supported size");
  }
}

// The FFTW planner is not thread-safe; execution is.  Plans are created
// with FFTW_ESTIMATE so planning is deterministic and cheap.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place c2c transform along mode 3: n1*n2 contiguous tubes of length n3,
// each strided by n1*n2.
void dft_mode3_inplace(std::complex<double>* data, int n1, int n2, int n3,
                       int sign) {
  if (n3 == 1) return;
  const int tube_count = n1 * n2;
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_many_dft(1, &n3, tube_count, raw, nullptr, tube_count, 1,
                              raw, nullptr, tube_count, 1, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) {
    throw NumericalError("FFTW failed to create a mode-3 transform plan");
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

Tensor3::Tensor3(int n1, int n2, int n3) : n1_(n1), n2_(n2), n3_(n3) {
  check_dims(n1, n2, n3);
  v_.assign(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2) *
                static_cast<std::size_t>(n3),
            0.0);
}

Tensor3::Tensor3(int n1, int n2, int n3, std::vector<double> values)
    : n1_(n1), n2_(n2), n3_(n3), v_(std::move(values)) {
  check_dims(n1, n2, n3);
  const auto expected = static_cast<std::size_t>(n1) *
                        static_cast<std::size_t>(n2) *
                        static_cast<std::size_t>(n3);
  if (v_.size() != expected) {
    throw ShapeError("Tensor3 value count does not match dimensions");
  }
  for (const double x : v_) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("Tensor3 entries must be finite");
    }
  }
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  if (!same_shape(o)) throw ShapeError("tensor addition: shape mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o) {
  if (!same_shape(o)) throw ShapeError("tensor subtraction: shape mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Tensor3& Tensor3::operator*=(double c) {
  for (double& x : v_) x *= c;
  return *this;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(double c, Tensor3 a) { return a *= c; }

FourierTensor3::FourierTensor3(int n1, int n2, int n3)
    : n1_(n1), n2_(n2), n3_(n3) {
  check_dims(n1, n2, n3);
  v_.assign(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2) *
                static_cast<std::size_t>(n3),
            std::complex<double>(0.0, 0.0));
}

Eigen::MatrixXd unfold(const Tensor3& a) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(a.n1()) * a.n3(), a.n2());
  for (int k = 0; k < a.n3(); ++k) {
    m.middleRows(static_cast<Eigen::Index>(k) * a.n1(), a.n1()) = a.slice(k);
  }
  return m;
}

Tensor3 fold(const Eigen::MatrixXd& m, int n3) {
  if (n3 <= 0 || m.rows() % n3 != 0) {
    throw ShapeError("fold: row count not divisible by n3");
  }
  const int n1 = static_cast<int>(m.rows()) / n3;
  const int n2 = static_cast<int>(m.cols());
  Tensor3 a(n1, n2, n3);
  for (int k = 0; k < n3; ++k) {
    a.slice(k) = m.middleRows(static_cast<Eigen::Index>(k) * n1, n1);
  }
  return a;
}

Eigen::MatrixXd bcirc(const Tensor3& a) {
  const int n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n1) * n3,
                    static_cast<Eigen::Index>(n2) * n3);
  for (int r = 0; r < n3; ++r) {
    for (int c = 0; c < n3; ++c) {
      const int k = ((r - c) % n3 + n3) % n3;
      m.block(static_cast<Eigen::Index>(r) * n1,
              static_cast<Eigen::Index>(c) * n2, n1, n2) = a.slice(k);
    }
  }
  return m;
}

FourierTensor3 fft_mode3(const Tensor3& a) {
  FourierTensor3 f(a.n1(), a.n2(), a.n3());
  for (std::size_t i = 0; i < a.size(); ++i) {
    f.values()[i] = std::complex<double>(a.values()[i], 0.0);
  }
  dft_mode3_inplace(f.values().data(), a.n1(), a.n2(), a.n3(), FFTW_FORWARD);
  return f;
}

Tensor3 ifft_mode3(const FourierTensor3& f) {
  std::vector<std::complex<double>> buf = f.values();
  dft_mode3_inplace(buf.data(), f.n1(), f.n2(), f.n3(), FFTW_BACKWARD);
  Tensor3 a(f.n1(), f.n2(), f.n3());
  const double scale = 1.0 / static_cast<double>(f.n3());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    a.values()[i] = buf[i].real() * scale;
  }
  return a;
}

Tensor3 tprod(const Tensor3& a, const Tensor3& b) {
  if (a.n2() != b.n1() || a.n3() != b.n3()) {
    throw ShapeError("tprod: inner dimension or n3 mismatch");
  }
  const FourierTensor3 af = fft_mode3(a);
  const FourierTensor3 bf = fft_mode3(b);
  FourierTensor3 cf(a.n1(), b.n2(), a.n3());
  for (int k = 0; k < a.n3(); ++k) {
    cf.face(k).noalias() = af.face(k) * bf.face(k);
  }
  return ifft_mode3(cf);
}

Tensor3 ttranspose(const Tensor3& a) {
  Tensor3 t(a.n2(), a.n1(), a.n3());
  t.slice(0) = a.slice(0).transpose();
  for (int k = 1; k < a.n3(); ++k) {
    t.slice(k) = a.slice(a.n3() - k).transpose();
  }
  return t;
}

Tensor3 identity(int n, int n3) {
  Tensor3 j(n, n, n3);
  j.slice(0).setIdentity();
  return j;
}

double fro_norm(const Tensor3& a) {
  double s = 0.0;
  for (const double x : a.values()) s += x * x;
  return std::sqrt(s);
}

double linf_norm(const Tensor3& a) {
  double m = 0.0;
  for (const double x : a.values()) m = std::max(m, std::abs(x));
  return m;
}

double l1_norm(const Tensor3& a) {
  double s = 0.0;
  for (const double x : a.values()) s += std::abs(x);
  return s;
}

double dot(const Tensor3& a, const Tensor3& b) {
  if (!a.same_shape(b)) throw ShapeError("dot: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a.values()[i] * b.values()[i];
  }
  return s;
}

bool is_f_diagonal(const Tensor3& a, double tol) {
  double off = 0.0;
  for (int k = 0; k < a.n3(); ++k) {
    for (int j = 0; j < a.n2(); ++j) {
      for (int i = 0; i < a.n1(); ++i) {
        if (i != j) off += a(i, j, k) * a(i, j, k);
      }
    }
  }
  return std::sqrt(off) <= tol;
}

bool is_orthogonal(const Tensor3& a, double tol) {
  if (a.n1() != a.n2()) {
    throw ShapeError("is_orthogonal: tensor must be square in modes 1 and 2");
  }
  const Tensor3 gram = tprod(ttranspose(a), a);
  const Tensor3 j = identity(a.n1(), a.n3());
  return fro_norm(gram - j) <= tol;
}

}  // namespace tcur
