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

#ifndef TCUR_EVALUATION_HPP
#define TCUR_EVALUATION_HPP

#include <cstdint>
#include <vector>

#include "tcur/tensor.hpp"

namespace tcur {

// Per-pixel class ids over the n1 x n2 spatial grid; 0 means unlabeled.
// Same mode-1-fastest layout as a tensor slice.
struct LabelMap {
  int n1 = 0, n2 = 0;
  std::vector<std::uint16_t> v;

  std::uint16_t at(int i, int j) const {
    return v[static_cast<std::size_t>(i) +
             static_cast<std::size_t>(n1) * static_cast<std::size_t>(j)];
  }
};

struct LabeledDataset {
  Tensor3 tensor;
  LabelMap labels;
};

// Synthetic cube: n_clusters latent spatial patterns (random low-rank,
// locally smoothed), each band a perturbed copy of its cluster's pattern,
// plus optional sparse outliers and Gaussian noise.
struct SynthSpec {
  int n1 = 24, n2 = 24, n3 = 40;
  int n_clusters = 5;
  int tubal_rank = 2;
  double sparse_frac = 0.02;
  double sparse_mag = 2.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
};

// Ground truth of a synthetic instance.
struct Planted {
  std::vector<int> band_cluster_of;        // size n3, values 0..n_clusters-1
  std::vector<std::size_t> sparse_support; // sorted linear indices
};

struct SynthResult {
  LabeledDataset data;
  Planted planted;
};

struct KmeansResult {
  std::vector<int> assignments;
  std::vector<std::vector<double>> centroids;
  std::vector<double> wcss_history;  // within-cluster SSQ per Lloyd pass
};

// Seeded k-means++ followed by Lloyd iterations (at most 300, stopping
// when the relative centroid shift drops below 1e-6).  Empty clusters are
// reseeded to the point farthest from its assigned centroid.  Assignment
// ties break toward the lowest centroid index, so runs are deterministic.
// The whole procedure restarts n_init times on one seeded stream and the
// run with the lowest within-cluster sum of squares wins.
KmeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                    std::uint64_t seed, int n_init = 10);

// Brute-force Euclidean KNN with majority vote; vote ties break toward the
// smallest label, distance ties toward the smallest training index.
std::vector<int> knn_classify(const std::vector<std::vector<double>>& train_x,
                              const std::vector<int>& train_y,
                              const std::vector<std::vector<double>>& test_x,
                              int n_neighbors);

// Fraction of exact matches over entries with truth != 0.
double overall_accuracy(const std::vector<int>& pred,
                        const std::vector<int>& truth);

struct SplitResult {
  std::vector<int> train_idx;  // linear pixel indices, i + n1*j
  std::vector<int> test_idx;
};

// Stratified split: per class, ceil(train_frac * count) seeded-random
// pixels go to train and the rest to test; unlabeled pixels are excluded.
SplitResult train_test_split(const LabelMap& labels, double train_frac,
                             std::uint64_t seed);

SynthResult synth(const SynthSpec& spec);

// x + sigma * seeded standard normal draws; sigma = 0 returns x unchanged.
Tensor3 add_noise(const Tensor3& x, double sigma, std::uint64_t seed);

struct BandScore {
  double mean_oa = 0.0;
  double std_oa = 0.0;
  std::vector<double> oa;  // one entry per repeat
};

// Repeated stratified split + KNN classification restricted to the given
// bands; repeat r uses split seed `seed + r`.
BandScore score_band_subset(const LabeledDataset& ds,
                            const std::vector<int>& bands, int repeats,
                            double train_frac, std::uint64_t seed,
                            int n_neighbors = 3);

}  // namespace tcur

#endif  // TCUR_EVALUATION_HPP
