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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "tcur/factorizations.hpp"
#include "test_util.hpp"

using namespace tcur;
using testutil::random_tensor;
using testutil::rel_error;

namespace {

Tensor3 reconstruct(const TSvdFactors& f) {
  return tprod(tprod(f.u, f.s), ttranspose(f.v));
}

// Planted tubal-rank-r tensor: random t-SVD with all but the first r
// diagonal tubes of the core zeroed.
Tensor3 planted_rank(int n1, int n2, int n3, int r, std::uint64_t seed) {
  const TSvdFactors f = tsvd(random_tensor(n1, n2, n3, seed));
  Tensor3 s = f.s;
  for (int k = 0; k < n3; ++k) {
    for (int j = 0; j < n2; ++j) {
      for (int i = 0; i < n1; ++i) {
        if (i >= r || j >= r) s(i, j, k) = 0.0;
      }
    }
  }
  return tprod(tprod(f.u, s), ttranspose(f.v));
}

// Smallest singular value ratio over the Fourier faces of u.
double worst_face_conditioning(const Tensor3& u) {
  const FourierTensor3 uf = fft_mode3(u);
  double worst = 1.0;
  for (int k = 0; k < u.n3(); ++k) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(uf.face(k));
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) return 0.0;
    worst = std::min(worst, sv(sv.size() - 1) / sv(0));
  }
  return worst;
}

}  // namespace

TEST_CASE("tsvd of the identity tensor") {
  const Tensor3 j = identity(3, 4);
  const TSvdFactors f = tsvd(j);
  CHECK(rel_error(reconstruct(f), j) < 1e-12);
  CHECK(is_f_diagonal(f.s, 1e-12));
  CHECK(is_orthogonal(f.u, 1e-10));
  CHECK(is_orthogonal(f.v, 1e-10));
}

TEST_CASE("tsvd of the zero tensor has a zero core") {
  const TSvdFactors f = tsvd(Tensor3(3, 4, 2));
  CHECK(fro_norm(f.s) == 0.0);
}

TEST_CASE("tsvd reconstructs random tensors with orthogonal factors") {
  for (int trial = 0; trial < 6; ++trial) {
    const Tensor3 a = random_tensor(6, 4, 5, 900 + trial);
    const TSvdFactors f = tsvd(a);
    CHECK(rel_error(reconstruct(f), a) < 1e-10);
    CHECK(is_orthogonal(f.u, 1e-10));
    CHECK(is_orthogonal(f.v, 1e-10));
    CHECK(is_f_diagonal(f.s, 1e-10));

    // First Fourier face of the core has a nonincreasing diagonal.
    const FourierTensor3 sf = fft_mode3(f.s);
    for (int i = 1; i < 4; ++i) {
      CHECK(std::abs(sf.face(0)(i, i)) <=
            std::abs(sf.face(0)(i - 1, i - 1)) + 1e-10);
    }
  }
}

TEST_CASE("tsvd_rank") {
  CHECK(tsvd_rank(Tensor3(3, 3, 4), 1e-10) == 0);
  CHECK(tsvd_rank(identity(3, 4)) == 3);

  SUBCASE("all slices equal to one rank-2 matrix") {
    RandomEngine engine(7);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
    Eigen::VectorXd u1(5), v1(5), u2(5), v2(5);
    for (int i = 0; i < 5; ++i) {
      u1(i) = engine.gaussian();
      v1(i) = engine.gaussian();
      u2(i) = engine.gaussian();
      v2(i) = engine.gaussian();
    }
    m = u1 * v1.transpose() + u2 * v2.transpose();
    Tensor3 a(5, 5, 3);
    for (int k = 0; k < 3; ++k) a.slice(k) = m;
    CHECK(tsvd_rank(a) == 2);
  }

  SUBCASE("planted rank matches") {
    for (int r = 1; r <= 3; ++r) {
      const Tensor3 a = planted_rank(6, 5, 4, r, 40 + static_cast<std::uint64_t>(r));
      CHECK(tsvd_rank(a) == r);
    }
  }
}

TEST_CASE("tpinv") {
  SUBCASE("inverse of well-conditioned square tensors") {
    const Tensor3 a = random_tensor(4, 4, 3, 50) + 3.0 * identity(4, 3);
    const Tensor3 p = tpinv(a);
    CHECK(rel_error(tprod(p, a), identity(4, 3)) < 1e-8);
    CHECK(rel_error(tprod(a, p), identity(4, 3)) < 1e-8);
  }
  SUBCASE("zero maps to zero and identity to identity") {
    CHECK(fro_norm(tpinv(Tensor3(3, 2, 4))) == 0.0);
    CHECK(rel_error(tpinv(identity(3, 4)), identity(3, 4)) < 1e-12);
  }
}

TEST_CASE("Moore-Penrose identities hold facewise, including rank-deficient") {
  for (int trial = 0; trial < 8; ++trial) {
    Tensor3 a;
    if (trial % 2 == 0) {
      a = random_tensor(5, 4, 3, 60 + trial);
    } else {
      // rank-deficient: outer t-product of thin factors
      a = tprod(random_tensor(5, 2, 3, 70 + trial),
                random_tensor(2, 4, 3, 80 + trial));
    }
    const Tensor3 p = tpinv(a);
    const Tensor3 apa = tprod(tprod(a, p), a);
    const Tensor3 pap = tprod(tprod(p, a), p);
    CHECK(rel_error(apa, a) < 1e-8);
    CHECK(rel_error(pap, p) < 1e-8);

    const Tensor3 ap = tprod(a, p);
    const Tensor3 pa = tprod(p, a);
    CHECK(fro_norm(ttranspose(ap) - ap) < 1e-8 * (1.0 + fro_norm(ap)));
    CHECK(fro_norm(ttranspose(pa) - pa) < 1e-8 * (1.0 + fro_norm(pa)));
  }
}

TEST_CASE("sample_indices") {
  SUBCASE("count = n yields a full permutation") {
    const IndexSet s = sample_indices(10, 10, 1);
    IndexSet sorted = s;
    std::sort(sorted.begin(), sorted.end());
    IndexSet expect(10);
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(sorted == expect);
  }
  SUBCASE("deterministic per seed") {
    CHECK(sample_indices(50, 12, 3) == sample_indices(50, 12, 3));
  }
  SUBCASE("different seeds differ") {
    CHECK(sample_indices(200, 20, 1) != sample_indices(200, 20, 2));
  }
  SUBCASE("count out of range") {
    CHECK_THROWS_AS(sample_indices(5, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_indices(5, 6, 1), std::invalid_argument);
  }
}

TEST_CASE("tcur_sample") {
  const Tensor3 y = random_tensor(3, 3, 2, 90);
  SUBCASE("full sampling copies the tensor") {
    IndexSet all = {0, 1, 2};
    const TCurFactors f = tcur_sample(y, all, all);
    CHECK(rel_error(f.c, y) == 0.0);
    CHECK(rel_error(f.r, y) == 0.0);
    CHECK(rel_error(f.u, y) == 0.0);
  }
  SUBCASE("singleton index sets pick one tube") {
    const TCurFactors f = tcur_sample(y, {1}, {2});
    REQUIRE(f.u.n1() == 1);
    REQUIRE(f.u.n2() == 1);
    REQUIRE(f.u.n3() == 2);
    CHECK(f.u(0, 0, 0) == y(1, 2, 0));
    CHECK(f.u(0, 0, 1) == y(1, 2, 1));
  }
  SUBCASE("invalid index sets") {
    CHECK_THROWS_AS(tcur_sample(y, {}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(tcur_sample(y, {0}, {3}), std::out_of_range);
    CHECK_THROWS_AS(tcur_sample(y, {0, 0}, {1}), std::invalid_argument);
  }
}

TEST_CASE("tcur_reconstruct") {
  SUBCASE("full sampling reconstructs exactly") {
    const Tensor3 y = random_tensor(4, 5, 3, 91);
    IndexSet rows = {0, 1, 2, 3}, cols = {0, 1, 2, 3, 4};
    CHECK(rel_error(tcur_reconstruct(tcur_sample(y, rows, cols)), y) < 1e-8);
  }
  SUBCASE("tubal-rank-1 tensor from a single pivot") {
    RandomEngine engine(92);
    Eigen::VectorXd u(3), v(4);
    for (int i = 0; i < 3; ++i) u(i) = engine.gaussian() + 2.0;
    for (int j = 0; j < 4; ++j) v(j) = engine.gaussian() + 2.0;
    Tensor3 y(3, 4, 2);
    for (int k = 0; k < 2; ++k) y.slice(k) = u * v.transpose();
    const TCurFactors f = tcur_sample(y, {1}, {2});
    REQUIRE(std::abs(y(1, 2, 0)) > 1e-6);
    CHECK(rel_error(tcur_reconstruct(f), y) < 1e-10);
  }
  SUBCASE("zero tensor") {
    const Tensor3 y(3, 4, 2);
    CHECK(fro_norm(tcur_reconstruct(tcur_sample(y, {0}, {0}))) == 0.0);
  }
}

TEST_CASE("exact t-CUR recovery of planted tubal-rank-r tensors") {
  RandomEngine picker(314);
  for (int r = 1; r <= 3; ++r) {
    const Tensor3 y = planted_rank(12, 10, 6, r, 150 + static_cast<std::uint64_t>(r));
    // Resample index sets until every Fourier face of u is full rank.
    TCurFactors f;
    for (int attempt = 0; attempt < 50; ++attempt) {
      const IndexSet rows = sample_indices(12, r, picker);
      const IndexSet cols = sample_indices(10, r, picker);
      f = tcur_sample(y, rows, cols);
      if (worst_face_conditioning(f.u) > 1e-6) break;
    }
    REQUIRE(worst_face_conditioning(f.u) > 1e-6);
    CHECK(rel_error(tcur_reconstruct(f), y) <= 1e-8);

    // Rank of the reconstruction stays bounded by the sample counts.
    CHECK(tsvd_rank(tcur_reconstruct(f), 1e-6 * fro_norm(y)) <= r);
  }
}

TEST_CASE("tsvd factor u is orthogonal at tolerance 1e-10") {
  const Tensor3 a = random_tensor(5, 3, 4, 160);
  const TSvdFactors f = tsvd(a);
  CHECK(is_orthogonal(f.u, 1e-10));
}
