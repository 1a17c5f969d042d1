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

#ifndef TCUR_FACTORIZATIONS_HPP
#define TCUR_FACTORIZATIONS_HPP

#include <cstdint>
#include <vector>

#include "tcur/rng.hpp"
#include "tcur/tensor.hpp"

namespace tcur {

// Index sets are 0-based inside the library; file formats and CLI output
// use 1-based band/row/column indices.
using IndexSet = std::vector<int>;

// t-SVD factors: a = u * s * ttranspose(v) with u, v orthogonal and s
// f-diagonal.
struct TSvdFactors {
  Tensor3 u;  // n1 x n1 x n3
  Tensor3 s;  // n1 x n2 x n3, f-diagonal
  Tensor3 v;  // n2 x n2 x n3
};

// Sampled t-CUR factors of a source tensor y:
//   c = y(:, J, :),  r = y(I, :, :),  u = y(I, J, :).
struct TCurFactors {
  Tensor3 c;
  Tensor3 u;
  Tensor3 r;
  IndexSet row_idx;  // I
  IndexSet col_idx;  // J
};

// Facewise SVD in the Fourier domain.  Throws NumericalError with the face
// index if a face decomposition fails.
TSvdFactors tsvd(const Tensor3& a);

// Number of diagonal entries of the core's first frontal slice larger than
// tol in magnitude.
int tsvd_rank(const Tensor3& a, double tol);

// Default tolerance 1e-10 * fro_norm(a).
int tsvd_rank(const Tensor3& a);

// Facewise Moore-Penrose pseudoinverse in the Fourier domain.  Singular
// values below max(face dims) * eps * sigma_max of that face are dropped.
Tensor3 tpinv(const Tensor3& a);

// First `count` entries of a seeded pseudorandom permutation of {0..n-1}.
IndexSet sample_indices(int n, int count, std::uint64_t seed);

// Same, drawing from a live engine so successive calls consume one stream.
IndexSet sample_indices(int n, int count, RandomEngine& engine);

// Slices the factors out of y.  Index sets must be non-empty,
// duplicate-free and in range.
TCurFactors tcur_sample(const Tensor3& y, IndexSet rows, IndexSet cols);

// c * tpinv(u) * r.
Tensor3 tcur_reconstruct(const TCurFactors& f);

// Row and column subtensors used both by tcur_sample and by the solver's
// factor updates.
Tensor3 slice_rows(const Tensor3& a, const IndexSet& rows);
Tensor3 slice_cols(const Tensor3& a, const IndexSet& cols);

}  // namespace tcur

#endif  // TCUR_FACTORIZATIONS_HPP
