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

#include "tcur/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/Core>

#include "tcur/rng.hpp"

namespace tcur {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

// 3x3 periodic box filter, used to make the synthetic latent patterns
// spatially smooth.
Eigen::MatrixXd box_smooth(const Eigen::MatrixXd& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      double acc = 0.0;
      for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const Eigen::Index ii = (i + di + rows) % rows;
          const Eigen::Index jj = (j + dj + cols) % cols;
          acc += m(ii, jj);
        }
      }
      out(i, j) = acc / 9.0;
    }
  }
  return out;
}

}  // namespace

namespace {

KmeansResult kmeans_single(const std::vector<std::vector<double>>& points,
                           int k, RandomEngine& engine) {
  const auto n = points.size();
  const std::size_t dim = points[0].size();
  KmeansResult res;
  res.centroids.reserve(static_cast<std::size_t>(k));

  // k-means++ seeding: subsequent centers drawn proportional to the
  // squared distance to the nearest chosen center.
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(n, false);
  std::size_t first = engine.uniform_below(static_cast<std::uint32_t>(n));
  res.centroids.push_back(points[first]);
  chosen[first] = true;
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sq_dist(points[i], res.centroids.back()));
      total += d2[i];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      const double x = engine.uniform01() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (x < acc) {
          pick = i;
          break;
        }
      }
      if (pick == n) {  // guard against rounding at the very end
        for (std::size_t i = n; i-- > 0;) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    }
    if (pick == n) {  // all remaining distances zero: take first unchosen
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) {
          pick = i;
          break;
        }
      }
    }
    res.centroids.push_back(points[pick]);
    chosen[pick] = true;
  }

  res.assignments.assign(n, 0);
  constexpr int kMaxLloyd = 300;
  for (int pass = 0; pass < kMaxLloyd; ++pass) {
    // Assignment step; ties go to the lowest centroid index.
    double wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = sq_dist(points[i], res.centroids[0]);
      for (int c = 1; c < k; ++c) {
        const double d = sq_dist(points[i], res.centroids[static_cast<std::size_t>(c)]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      res.assignments[i] = best;
      wcss += best_d;
    }
    res.wcss_history.push_back(wcss);

    // Update step.
    std::vector<std::vector<double>> next(
        static_cast<std::size_t>(k), std::vector<double>(dim, 0.0));
    std::vector<std::size_t> count(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(res.assignments[i]);
      ++count[c];
      for (std::size_t d = 0; d < dim; ++d) next[c][d] += points[i][d];
    }
    for (int c = 0; c < k; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      if (count[cc] == 0) {
        // Reseed an empty cluster to the point farthest from its centroid.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = sq_dist(
              points[i],
              res.centroids[static_cast<std::size_t>(res.assignments[i])]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        next[cc] = points[far];
        count[cc] = 1;
        res.assignments[far] = c;
      } else {
        for (std::size_t d = 0; d < dim; ++d) {
          next[cc][d] /= static_cast<double>(count[cc]);
        }
      }
    }

    double shift = 0.0;
    for (int c = 0; c < k; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      const double moved = std::sqrt(sq_dist(next[cc], res.centroids[cc]));
      const double base =
          1.0 + std::sqrt(std::inner_product(res.centroids[cc].begin(),
                                             res.centroids[cc].end(),
                                             res.centroids[cc].begin(), 0.0));
      shift = std::max(shift, moved / base);
    }
    res.centroids = std::move(next);
    if (shift < 1e-6) break;
  }

  // Final assignment against the settled centroids.
  double final_wcss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    double best_d = sq_dist(points[i], res.centroids[0]);
    for (int c = 1; c < k; ++c) {
      const double d = sq_dist(points[i], res.centroids[static_cast<std::size_t>(c)]);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    res.assignments[i] = best;
    final_wcss += best_d;
  }
  res.wcss_history.push_back(final_wcss);
  return res;
}

}  // namespace

KmeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                    std::uint64_t seed, int n_init) {
  const auto n = points.size();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("kmeans: k must be in [1, #points]");
  }
  if (n_init < 1) throw std::invalid_argument("kmeans: n_init must be >= 1");
  const std::size_t dim = points[0].size();
  for (const auto& p : points) {
    if (p.size() != dim) {
      throw std::invalid_argument("kmeans: inconsistent point dimensions");
    }
  }

  RandomEngine engine(seed);
  KmeansResult best;
  double best_wcss = std::numeric_limits<double>::infinity();
  for (int run = 0; run < n_init; ++run) {
    KmeansResult res = kmeans_single(points, k, engine);
    const double wcss = res.wcss_history.back();
    if (wcss < best_wcss) {
      best_wcss = wcss;
      best = std::move(res);
    }
  }
  return best;
}

std::vector<int> knn_classify(const std::vector<std::vector<double>>& train_x,
                              const std::vector<int>& train_y,
                              const std::vector<std::vector<double>>& test_x,
                              int n_neighbors) {
  if (train_x.empty()) {
    throw std::invalid_argument("knn_classify: empty training set");
  }
  if (train_x.size() != train_y.size()) {
    throw std::invalid_argument("knn_classify: train size mismatch");
  }
  const int kk = std::min<int>(n_neighbors, static_cast<int>(train_x.size()));
  if (kk < 1) throw std::invalid_argument("knn_classify: n_neighbors < 1");

  std::vector<int> pred;
  pred.reserve(test_x.size());
  std::vector<std::pair<double, std::size_t>> dist(train_x.size());
  for (const auto& q : test_x) {
    for (std::size_t i = 0; i < train_x.size(); ++i) {
      dist[i] = {sq_dist(q, train_x[i]), i};
    }
    std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
    std::map<int, int> votes;
    for (int i = 0; i < kk; ++i) ++votes[train_y[dist[static_cast<std::size_t>(i)].second]];
    int label = 0, best = -1;
    for (const auto& [lab, cnt] : votes) {
      if (cnt > best) {  // map iterates labels ascending: ties keep smallest
        best = cnt;
        label = lab;
      }
    }
    pred.push_back(label);
  }
  return pred;
}

double overall_accuracy(const std::vector<int>& pred,
                        const std::vector<int>& truth) {
  if (pred.size() != truth.size()) {
    throw std::invalid_argument("overall_accuracy: length mismatch");
  }
  std::size_t labeled = 0, hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 0) continue;
    ++labeled;
    if (pred[i] == truth[i]) ++hit;
  }
  return labeled == 0 ? 0.0
                      : static_cast<double>(hit) / static_cast<double>(labeled);
}

SplitResult train_test_split(const LabelMap& labels, double train_frac,
                             std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw std::invalid_argument("train_test_split: train_frac must be in (0,1)");
  }
  // Pixels per class, classes visited in ascending id order so one engine
  // yields a reproducible split.
  std::map<std::uint16_t, std::vector<int>> by_class;
  for (std::size_t idx = 0; idx < labels.v.size(); ++idx) {
    if (labels.v[idx] != 0) {
      by_class[labels.v[idx]].push_back(static_cast<int>(idx));
    }
  }
  RandomEngine engine(seed);
  SplitResult out;
  for (auto& [cls, pixels] : by_class) {
    if (pixels.size() < 2) {
      std::cerr << "warning: class " << cls
                << " has fewer than 2 labeled pixels; all assigned to train\n";
    }
    const std::vector<int> order =
        engine.permutation(static_cast<int>(pixels.size()));
    const auto n_train = static_cast<std::size_t>(
        std::ceil(train_frac * static_cast<double>(pixels.size())));
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      const int pix = pixels[static_cast<std::size_t>(order[i])];
      if (i < n_train) {
        out.train_idx.push_back(pix);
      } else {
        out.test_idx.push_back(pix);
      }
    }
  }
  return out;
}

SynthResult synth(const SynthSpec& spec) {
  if (spec.n_clusters < 1 || spec.n_clusters > spec.n3) {
    throw std::invalid_argument("synth: n_clusters must be in [1, n3]");
  }
  if (spec.tubal_rank < 1 ||
      spec.tubal_rank > std::min(spec.n1, spec.n2)) {
    throw std::invalid_argument("synth: tubal_rank must be in [1, min(n1,n2)]");
  }
  if (spec.sparse_frac < 0.0 || spec.sparse_frac >= 1.0) {
    throw std::invalid_argument("synth: sparse_frac must be in [0, 1)");
  }
  if (spec.noise_sigma < 0.0) {
    throw std::invalid_argument("synth: noise_sigma must be nonnegative");
  }

  RandomEngine engine(spec.seed);
  const int n1 = spec.n1, n2 = spec.n2, n3 = spec.n3, kc = spec.n_clusters;

  // Latent spatial patterns: random low-rank, box-smoothed twice, scaled
  // to unit RMS so per-cluster contrasts are comparable.
  std::vector<Eigen::MatrixXd> patterns;
  patterns.reserve(static_cast<std::size_t>(kc));
  for (int c = 0; c < kc; ++c) {
    Eigen::MatrixXd left(n1, spec.tubal_rank), right(n2, spec.tubal_rank);
    for (Eigen::Index j = 0; j < left.cols(); ++j) {
      for (Eigen::Index i = 0; i < left.rows(); ++i) left(i, j) = engine.gaussian();
    }
    for (Eigen::Index j = 0; j < right.cols(); ++j) {
      for (Eigen::Index i = 0; i < right.rows(); ++i) right(i, j) = engine.gaussian();
    }
    Eigen::MatrixXd pat = left * right.transpose();
    pat = box_smooth(box_smooth(pat));
    const double rms = std::sqrt(pat.squaredNorm() /
                                 static_cast<double>(pat.size()));
    if (rms > 0.0) pat /= rms;
    patterns.push_back(std::move(pat));
  }

  // Contiguous band blocks per cluster, slightly rescaled per band.  The
  // scalar stays near 1 so bands of one cluster remain close in R^{n1*n2}.
  SynthResult out;
  out.planted.band_cluster_of.resize(static_cast<std::size_t>(n3));
  Tensor3 clean(n1, n2, n3);
  for (int b = 0; b < n3; ++b) {
    const int c = std::min(kc - 1, b * kc / n3);
    out.planted.band_cluster_of[static_cast<std::size_t>(b)] = c;
    const double scale = 1.0 + 0.05 * (2.0 * engine.uniform01() - 1.0);
    clean.slice(b) = scale * patterns[static_cast<std::size_t>(c)];
  }

  // Labels from the dominant latent pattern per pixel; any class that ends
  // up unrepresented claims its own strongest pixel.
  out.data.labels.n1 = n1;
  out.data.labels.n2 = n2;
  out.data.labels.v.assign(static_cast<std::size_t>(n1) * n2, 0);
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      int best = 0;
      double best_v = patterns[0](i, j);
      for (int c = 1; c < kc; ++c) {
        if (patterns[static_cast<std::size_t>(c)](i, j) > best_v) {
          best_v = patterns[static_cast<std::size_t>(c)](i, j);
          best = c;
        }
      }
      out.data.labels.v[static_cast<std::size_t>(i) +
                        static_cast<std::size_t>(n1) * j] =
          static_cast<std::uint16_t>(best + 1);
    }
  }
  for (int c = 0; c < kc; ++c) {
    const auto cls = static_cast<std::uint16_t>(c + 1);
    if (std::find(out.data.labels.v.begin(), out.data.labels.v.end(), cls) ==
        out.data.labels.v.end()) {
      Eigen::Index mi = 0, mj = 0;
      patterns[static_cast<std::size_t>(c)].maxCoeff(&mi, &mj);
      out.data.labels.v[static_cast<std::size_t>(mi) +
                        static_cast<std::size_t>(n1) *
                            static_cast<std::size_t>(mj)] = cls;
    }
  }

  // Sparse outliers on a uniform support, then Gaussian noise.
  Tensor3 noisy = clean;
  const auto total = noisy.size();
  const auto nnz = static_cast<std::size_t>(
      spec.sparse_frac * static_cast<double>(total));
  if (nnz > 0) {
    std::vector<int> perm = engine.permutation(static_cast<int>(total));
    out.planted.sparse_support.reserve(nnz);
    for (std::size_t i = 0; i < nnz; ++i) {
      out.planted.sparse_support.push_back(static_cast<std::size_t>(perm[i]));
    }
    std::sort(out.planted.sparse_support.begin(),
              out.planted.sparse_support.end());
    for (const std::size_t idx : out.planted.sparse_support) {
      const double sign = engine.uniform01() < 0.5 ? -1.0 : 1.0;
      noisy.values()[idx] += sign * spec.sparse_mag;
    }
  }
  if (spec.noise_sigma > 0.0) {
    for (double& x : noisy.values()) x += spec.noise_sigma * engine.gaussian();
  }
  out.data.tensor = std::move(noisy);
  return out;
}

Tensor3 add_noise(const Tensor3& x, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
  if (sigma == 0.0) return x;
  RandomEngine engine(seed);
  Tensor3 out = x;
  for (double& v : out.values()) v += sigma * engine.gaussian();
  return out;
}

BandScore score_band_subset(const LabeledDataset& ds,
                            const std::vector<int>& bands, int repeats,
                            double train_frac, std::uint64_t seed,
                            int n_neighbors) {
  if (bands.empty()) {
    throw std::invalid_argument("score_band_subset: empty band set");
  }
  for (const int b : bands) {
    if (b < 0 || b >= ds.tensor.n3()) {
      throw std::out_of_range("score_band_subset: band index out of range");
    }
  }
  if (repeats < 1) {
    throw std::invalid_argument("score_band_subset: repeats must be >= 1");
  }
  if (ds.labels.n1 != ds.tensor.n1() || ds.labels.n2 != ds.tensor.n2()) {
    throw ShapeError("score_band_subset: label map does not match tensor");
  }

  const int n1 = ds.tensor.n1();
  auto features = [&](int pixel) {
    const int i = pixel % n1;
    const int j = pixel / n1;
    std::vector<double> f;
    f.reserve(bands.size());
    for (const int b : bands) f.push_back(ds.tensor(i, j, b));
    return f;
  };

  BandScore score;
  score.oa.reserve(static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    const SplitResult split =
        train_test_split(ds.labels, train_frac, seed + static_cast<std::uint64_t>(r));
    std::vector<std::vector<double>> train_x, test_x;
    std::vector<int> train_y, test_y;
    train_x.reserve(split.train_idx.size());
    train_y.reserve(split.train_idx.size());
    for (const int pix : split.train_idx) {
      train_x.push_back(features(pix));
      train_y.push_back(ds.labels.v[static_cast<std::size_t>(pix)]);
    }
    test_x.reserve(split.test_idx.size());
    test_y.reserve(split.test_idx.size());
    for (const int pix : split.test_idx) {
      test_x.push_back(features(pix));
      test_y.push_back(ds.labels.v[static_cast<std::size_t>(pix)]);
    }
    if (test_x.empty()) {
      score.oa.push_back(0.0);
      continue;
    }
    const std::vector<int> pred =
        knn_classify(train_x, train_y, test_x, n_neighbors);
    score.oa.push_back(overall_accuracy(pred, test_y));
  }

  double mean = 0.0;
  for (const double v : score.oa) mean += v;
  mean /= static_cast<double>(score.oa.size());
  double var = 0.0;
  if (score.oa.size() > 1) {
    for (const double v : score.oa) var += (v - mean) * (v - mean);
    var /= static_cast<double>(score.oa.size() - 1);
  }
  score.mean_oa = mean;
  score.std_oa = std::sqrt(var);
  return score;
}

}  // namespace tcur
