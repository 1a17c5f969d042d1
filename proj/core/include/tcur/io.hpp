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

#ifndef TCUR_IO_HPP
#define TCUR_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "tcur/admm.hpp"
#include "tcur/evaluation.hpp"
#include "tcur/tensor.hpp"

namespace tcur {

// Tensor container (.t3df): magic "T3DF", u16 version = 1, three u32 dims
// (n1, n2, n3), then n1*n2*n3 IEEE-754 f64 values, mode-1 fastest.  All
// integers and floats are little-endian on disk regardless of host.
//
// Label map (.l2df): magic "L2DF", u16 version = 1, two u32 dims (n1, n2),
// then n1*n2 u16 class ids with 0 = unlabeled.

Tensor3 read_tensor(const std::string& path);
void write_tensor(const std::string& path, const Tensor3& t);

LabelMap read_labels(const std::string& path);
void write_labels(const std::string& path, const LabelMap& labels);

// Plain-text run configuration: one `key = value` per line, `#` comments,
// unknown keys rejected.  Covers the solver parameters plus harness
// settings (dataset paths, noise sigma, band sweep, repeats, output dir).
struct RunConfig {
  AdmmParams params;
  std::string tensor_path;
  std::string labels_path;
  std::string bands_path;
  std::string out_dir = ".";
  std::string preset;
  double sigma = 0.0;
  std::vector<int> sweep = {3, 6, 9, 12, 15, 18, 21, 24, 27, 30};
  int repeats = 50;
  double train_frac = 0.9;
  int n_neighbors = 3;
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

// Serializes a config so the emitted manifest can be fed back in as-is.
void write_config(std::ostream& out, const RunConfig& config);

// Named parameter presets.  "salinas-a" is the default preset; the
// "indian-pines-noisy-sigma{1,3,5}" presets carry the recommended settings
// for Gaussian noise of that standard deviation.
void apply_preset(AdmmParams& params, const std::string& name);
std::vector<std::string> preset_names();

// Doubles rendered with 17 significant digits (lossless round trip).
std::string format_double(double v);

}  // namespace tcur

#endif  // TCUR_IO_HPP
