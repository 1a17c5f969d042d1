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

#include "tcur/factorizations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace tcur {

namespace {

// For real input the mode-3 spectrum is conjugate symmetric, so only faces
// 0..floor(n3/2) are decomposed; the rest are mirrored.  Faces 0 and n3/2
// (even n3) are real, and a real decomposition keeps the mirrored spectrum
// exactly symmetric so the inverse transform is real to rounding error.
bool face_is_real(int k, int n3) { return k == 0 || 2 * k == n3; }

struct FaceSvd {
  Eigen::MatrixXcd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXcd v;
};

// BDCSVD falls back to Jacobi below its internal size threshold, so it is
// the right pick across face sizes.
FaceSvd svd_face(const Eigen::MatrixXcd& face, bool real_face, int face_index) {
  FaceSvd out;
  if (real_face) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(face.real(), Eigen::ComputeFullU |
                                                        Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) {
      throw NumericalError("facewise SVD failed on Fourier face " +
                           std::to_string(face_index));
    }
    out.u = svd.matrixU().cast<std::complex<double>>();
    out.sigma = svd.singularValues();
    out.v = svd.matrixV().cast<std::complex<double>>();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(face, Eigen::ComputeFullU |
                                                   Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) {
      throw NumericalError("facewise SVD failed on Fourier face " +
                           std::to_string(face_index));
    }
    out.u = svd.matrixU();
    out.sigma = svd.singularValues();
    out.v = svd.matrixV();
  }
  return out;
}

void validate_index_set(const IndexSet& idx, int bound, const char* what) {
  if (idx.empty()) {
    throw std::invalid_argument(std::string(what) + ": index set is empty");
  }
  std::unordered_set<int> seen;
  for (const int i : idx) {
    if (i < 0 || i >= bound) {
      throw std::out_of_range(std::string(what) + ": index out of range");
    }
    if (!seen.insert(i).second) {
      throw std::invalid_argument(std::string(what) + ": duplicate index");
    }
  }
}

}  // namespace

TSvdFactors tsvd(const Tensor3& a) {
  const int n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
  const FourierTensor3 af = fft_mode3(a);

  FourierTensor3 uf(n1, n1, n3), sf(n1, n2, n3), vf(n2, n2, n3);
  const int half = n3 / 2;
  for (int k = 0; k <= half; ++k) {
    const FaceSvd f = svd_face(af.face(k), face_is_real(k, n3), k);
    uf.face(k) = f.u;
    sf.face(k).setZero();
    for (int i = 0; i < f.sigma.size(); ++i) {
      sf.face(k)(i, i) = std::complex<double>(f.sigma(i), 0.0);
    }
    vf.face(k) = f.v;
    if (k > 0 && 2 * k != n3) {
      uf.face(n3 - k) = f.u.conjugate();
      sf.face(n3 - k) = sf.face(k);
      vf.face(n3 - k) = f.v.conjugate();
    }
  }

  TSvdFactors out;
  out.u = ifft_mode3(uf);
  out.s = ifft_mode3(sf);
  out.v = ifft_mode3(vf);
  return out;
}

int tsvd_rank(const Tensor3& a, double tol) {
  const TSvdFactors f = tsvd(a);
  const int d = std::min(a.n1(), a.n2());
  int rank = 0;
  for (int i = 0; i < d; ++i) {
    if (std::abs(f.s(i, i, 0)) > tol) ++rank;
  }
  return rank;
}

int tsvd_rank(const Tensor3& a) { return tsvd_rank(a, 1e-10 * fro_norm(a)); }

Tensor3 tpinv(const Tensor3& a) {
  const int n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
  const FourierTensor3 af = fft_mode3(a);
  FourierTensor3 pf(n2, n1, n3);

  const double eps = std::numeric_limits<double>::epsilon();
  const int half = n3 / 2;
  const int rank_max = std::min(n1, n2);
  for (int k = 0; k <= half; ++k) {
    const FaceSvd f = svd_face(af.face(k), face_is_real(k, n3), k);
    const double smax = f.sigma.size() > 0 ? f.sigma(0) : 0.0;
    const double cutoff = std::max(n1, n2) * eps * smax;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(rank_max);
    for (int i = 0; i < f.sigma.size(); ++i) {
      if (f.sigma(i) > cutoff && f.sigma(i) > 0.0) inv(i) = 1.0 / f.sigma(i);
    }
    // pinv(face) = V Sigma^+ U^H via the thin factors.
    pf.face(k).noalias() = f.v.leftCols(rank_max) *
                           inv.cast<std::complex<double>>().asDiagonal() *
                           f.u.leftCols(rank_max).adjoint();
    if (k > 0 && 2 * k != n3) {
      pf.face(n3 - k) = pf.face(k).conjugate();
    }
  }
  return ifft_mode3(pf);
}

IndexSet sample_indices(int n, int count, RandomEngine& engine) {
  if (n <= 0 || count < 1 || count > n) {
    throw std::invalid_argument("sample_indices: count out of range");
  }
  std::vector<int> perm = engine.permutation(n);
  perm.resize(static_cast<std::size_t>(count));
  return perm;
}

IndexSet sample_indices(int n, int count, std::uint64_t seed) {
  RandomEngine engine(seed);
  return sample_indices(n, count, engine);
}

Tensor3 slice_rows(const Tensor3& a, const IndexSet& rows) {
  validate_index_set(rows, a.n1(), "slice_rows");
  Tensor3 out(static_cast<int>(rows.size()), a.n2(), a.n3());
  for (int k = 0; k < a.n3(); ++k) {
    auto dst = out.slice(k);
    const auto src = a.slice(k);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      dst.row(static_cast<Eigen::Index>(r)) = src.row(rows[r]);
    }
  }
  return out;
}

Tensor3 slice_cols(const Tensor3& a, const IndexSet& cols) {
  validate_index_set(cols, a.n2(), "slice_cols");
  Tensor3 out(a.n1(), static_cast<int>(cols.size()), a.n3());
  for (int k = 0; k < a.n3(); ++k) {
    auto dst = out.slice(k);
    const auto src = a.slice(k);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      dst.col(static_cast<Eigen::Index>(c)) = src.col(cols[c]);
    }
  }
  return out;
}

TCurFactors tcur_sample(const Tensor3& y, IndexSet rows, IndexSet cols) {
  validate_index_set(rows, y.n1(), "tcur_sample rows");
  validate_index_set(cols, y.n2(), "tcur_sample cols");
  TCurFactors f;
  f.c = slice_cols(y, cols);
  f.r = slice_rows(y, rows);
  f.u = slice_rows(f.c, rows);
  f.row_idx = std::move(rows);
  f.col_idx = std::move(cols);
  return f;
}

Tensor3 tcur_reconstruct(const TCurFactors& f) {
  return tprod(tprod(f.c, tpinv(f.u)), f.r);
}

}  // namespace tcur
