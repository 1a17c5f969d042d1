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

#ifndef TCUR_TENSOR_HPP
#define TCUR_TENSOR_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "tcur/errors.hpp"

namespace tcur {

// Dense real third-order tensor, n1 x n2 x n3.  Storage is column-major
// with mode-1 fastest: entry (i, j, k) lives at i + n1*j + n1*n2*k, so the
// k-th frontal slice is a contiguous n1 x n2 column-major matrix.
class Tensor3 {
 public:
  Tensor3() = default;

  // Zero tensor of the given shape.
  Tensor3(int n1, int n2, int n3);

  // Takes ownership of values; throws ShapeError if the length does not
  // match and IoError-free std::invalid_argument if any entry is NaN/Inf.
  Tensor3(int n1, int n2, int n3, std::vector<double> values);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  int n3() const noexcept { return n3_; }
  std::size_t size() const noexcept { return v_.size(); }

  double operator()(int i, int j, int k) const noexcept {
    return v_[idx(i, j, k)];
  }
  double& operator()(int i, int j, int k) noexcept { return v_[idx(i, j, k)]; }

  const std::vector<double>& values() const noexcept { return v_; }
  std::vector<double>& values() noexcept { return v_; }

  // Contiguous view of frontal slice k as an n1 x n2 matrix.
  Eigen::Map<const Eigen::MatrixXd> slice(int k) const {
    return {v_.data() + static_cast<std::size_t>(k) * slice_stride(), n1_, n2_};
  }
  Eigen::Map<Eigen::MatrixXd> slice(int k) {
    return {v_.data() + static_cast<std::size_t>(k) * slice_stride(), n1_, n2_};
  }

  bool same_shape(const Tensor3& o) const noexcept {
    return n1_ == o.n1_ && n2_ == o.n2_ && n3_ == o.n3_;
  }

  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator-=(const Tensor3& o);
  Tensor3& operator*=(double c);

 private:
  std::size_t idx(int i, int j, int k) const noexcept {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(n1_) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(n2_) * static_cast<std::size_t>(k));
  }
  std::size_t slice_stride() const noexcept {
    return static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_);
  }

  int n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<double> v_;
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator*(double c, Tensor3 a);

// Mode-3 discrete Fourier transform of a Tensor3; slice k holds the k-th
// Fourier-domain face.  Same layout as Tensor3 with complex entries.
class FourierTensor3 {
 public:
  FourierTensor3() = default;
  FourierTensor3(int n1, int n2, int n3);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  int n3() const noexcept { return n3_; }
  std::size_t size() const noexcept { return v_.size(); }

  const std::vector<std::complex<double>>& values() const noexcept { return v_; }
  std::vector<std::complex<double>>& values() noexcept { return v_; }

  Eigen::Map<const Eigen::MatrixXcd> face(int k) const {
    return {v_.data() + static_cast<std::size_t>(k) * face_stride(), n1_, n2_};
  }
  Eigen::Map<Eigen::MatrixXcd> face(int k) {
    return {v_.data() + static_cast<std::size_t>(k) * face_stride(), n1_, n2_};
  }

 private:
  std::size_t face_stride() const noexcept {
    return static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_);
  }

  int n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<std::complex<double>> v_;
};

// --- conversions between tensors and matrices -------------------------------

// Stacks the frontal slices vertically into an (n1*n3) x n2 matrix.
Eigen::MatrixXd unfold(const Tensor3& a);

// Inverse of unfold; the row count must be divisible by n3.
Tensor3 fold(const Eigen::MatrixXd& m, int n3);

// Block circulant matrix of the frontal slices, (n1*n3) x (n2*n3).
Eigen::MatrixXd bcirc(const Tensor3& a);

// --- the t-product algebra --------------------------------------------------

// Unnormalized forward DFT along mode 3.
FourierTensor3 fft_mode3(const Tensor3& a);

// Inverse DFT along mode 3 with 1/n3 scaling; imaginary residue is dropped.
Tensor3 ifft_mode3(const FourierTensor3& f);

// t-product, computed facewise in the Fourier domain.
Tensor3 tprod(const Tensor3& a, const Tensor3& b);

// Conjugate transpose under the t-product: each frontal slice transposed,
// slices 2..n3 reversed.  Satisfies bcirc(ttranspose(a)) == bcirc(a)^T.
Tensor3 ttranspose(const Tensor3& a);

// Identity tensor: first frontal slice I_n, all other slices zero.
Tensor3 identity(int n, int n3);

double fro_norm(const Tensor3& a);
double linf_norm(const Tensor3& a);
double l1_norm(const Tensor3& a);
double dot(const Tensor3& a, const Tensor3& b);

// True iff the Frobenius mass of the off-diagonal entries of every frontal
// slice is at most tol.
bool is_f_diagonal(const Tensor3& a, double tol);

// True iff ||ttranspose(a) * a - identity||_F <= tol.  Requires n1 == n2.
bool is_orthogonal(const Tensor3& a, double tol);

}  // namespace tcur

#endif  // TCUR_TENSOR_HPP
