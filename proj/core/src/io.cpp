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

#include "tcur/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tcur {

namespace {

constexpr char kTensorMagic[4] = {'T', '3', 'D', 'F'};
constexpr char kLabelMagic[4] = {'L', '2', 'D', 'F'};
constexpr std::uint16_t kFormatVersion = 1;

// Explicit little-endian packing keeps files byte-identical across hosts.
void put_u16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xFF),
                     static_cast<char>((v >> 8) & 0xFF)};
  out.write(b, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  out.write(b, 8);
}

bool get_bytes(std::istream& in, char* buf, std::size_t n) {
  in.read(buf, static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount()) == n;
}

std::uint16_t decode_u16(const char* b) {
  return static_cast<std::uint16_t>(
      (static_cast<std::uint8_t>(b[0])) |
      (static_cast<std::uint16_t>(static_cast<std::uint8_t>(b[1])) << 8));
}

std::uint32_t decode_u32(const char* b) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) {
    v = (v << 8) | static_cast<std::uint8_t>(b[i]);
  }
  return v;
}

double decode_f64(const char* b) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | static_cast<std::uint8_t>(b[i]);
  }
  return std::bit_cast<double>(v);
}

void read_header(std::istream& in, const char* magic, const std::string& path) {
  char buf[4];
  if (!get_bytes(in, buf, 4)) {
    throw IoError(IoError::Kind::Truncated, path + ": truncated header");
  }
  if (std::memcmp(buf, magic, 4) != 0) {
    throw IoError(IoError::Kind::BadMagic, path + ": bad magic bytes");
  }
  char vb[2];
  if (!get_bytes(in, vb, 2)) {
    throw IoError(IoError::Kind::Truncated, path + ": truncated header");
  }
  if (decode_u16(vb) != kFormatVersion) {
    throw IoError(IoError::Kind::BadVersion, path + ": unsupported version");
  }
}

void expect_eof(std::istream& in, const std::string& path) {
  char extra;
  if (in.read(&extra, 1).gcount() != 0) {
    throw IoError(IoError::Kind::TrailingData,
                  path + ": trailing bytes after payload");
  }
}

std::uint32_t read_dim(std::istream& in, const std::string& path) {
  char b[4];
  if (!get_bytes(in, b, 4)) {
    throw IoError(IoError::Kind::Truncated, path + ": truncated dimensions");
  }
  return decode_u32(b);
}

}  // namespace

Tensor3 read_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoError::Kind::OpenFailed, path + ": cannot open");
  read_header(in, kTensorMagic, path);

  const std::uint32_t n1 = read_dim(in, path);
  const std::uint32_t n2 = read_dim(in, path);
  const std::uint32_t n3 = read_dim(in, path);
  if (n1 == 0 || n2 == 0 || n3 == 0) {
    throw IoError(IoError::Kind::BadDims, path + ": zero dimension");
  }
  const std::uint64_t total = static_cast<std::uint64_t>(n1) * n2 * n3;
  if (n1 > 0x7FFFFFFFu || n2 > 0x7FFFFFFFu || n3 > 0x7FFFFFFFu ||
      total > (std::uint64_t{1} << 40)) {
    throw IoError(IoError::Kind::BadDims, path + ": dimensions overflow");
  }

  std::vector<double> values(total);
  std::vector<char> buf(static_cast<std::size_t>(total) * 8);
  if (!get_bytes(in, buf.data(), buf.size())) {
    throw IoError(IoError::Kind::Truncated, path + ": truncated payload");
  }
  for (std::uint64_t i = 0; i < total; ++i) {
    values[i] = decode_f64(buf.data() + i * 8);
    if (!std::isfinite(values[i])) {
      throw IoError(IoError::Kind::NonFinite,
                    path + ": payload contains NaN or Inf");
    }
  }
  expect_eof(in, path);
  return Tensor3(static_cast<int>(n1), static_cast<int>(n2),
                 static_cast<int>(n3), std::move(values));
}

void write_tensor(const std::string& path, const Tensor3& t) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(IoError::Kind::OpenFailed, path + ": cannot open");
  out.write(kTensorMagic, 4);
  put_u16(out, kFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(t.n1()));
  put_u32(out, static_cast<std::uint32_t>(t.n2()));
  put_u32(out, static_cast<std::uint32_t>(t.n3()));
  for (const double v : t.values()) put_f64(out, v);
  if (!out) throw IoError(IoError::Kind::WriteFailed, path + ": write failed");
}

LabelMap read_labels(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoError::Kind::OpenFailed, path + ": cannot open");
  read_header(in, kLabelMagic, path);

  const std::uint32_t n1 = read_dim(in, path);
  const std::uint32_t n2 = read_dim(in, path);
  if (n1 == 0 || n2 == 0) {
    throw IoError(IoError::Kind::BadDims, path + ": zero dimension");
  }
  const std::uint64_t total = static_cast<std::uint64_t>(n1) * n2;
  if (total > (std::uint64_t{1} << 40)) {
    throw IoError(IoError::Kind::BadDims, path + ": dimensions overflow");
  }

  LabelMap labels;
  labels.n1 = static_cast<int>(n1);
  labels.n2 = static_cast<int>(n2);
  labels.v.resize(total);
  std::vector<char> buf(static_cast<std::size_t>(total) * 2);
  if (!get_bytes(in, buf.data(), buf.size())) {
    throw IoError(IoError::Kind::Truncated, path + ": truncated payload");
  }
  for (std::uint64_t i = 0; i < total; ++i) {
    labels.v[i] = decode_u16(buf.data() + i * 2);
  }
  expect_eof(in, path);
  return labels;
}

void write_labels(const std::string& path, const LabelMap& labels) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(IoError::Kind::OpenFailed, path + ": cannot open");
  out.write(kLabelMagic, 4);
  put_u16(out, kFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(labels.n1));
  put_u32(out, static_cast<std::uint32_t>(labels.n2));
  for (const std::uint16_t v : labels.v) put_u16(out, v);
  if (!out) throw IoError(IoError::Kind::WriteFailed, path + ": write failed");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void apply_preset(AdmmParams& params, const std::string& name) {
  if (name == "salinas-a") {
    params.lambda1 = 1e-3;
    params.lambda2 = 1e-3;
    params.beta = 1.0;
    params.tau = 1.0;
  } else if (name == "indian-pines-noisy-sigma1") {
    params.lambda1 = 1e-2;
    params.lambda2 = 0.1;
    params.beta = 1.0;
    params.tau = 1e-4;
  } else if (name == "indian-pines-noisy-sigma3") {
    params.lambda1 = 1e-3;
    params.lambda2 = 1.0;
    params.beta = 1.0;
    params.tau = 1e-4;
  } else if (name == "indian-pines-noisy-sigma5") {
    params.lambda1 = 1e-2;
    params.lambda2 = 0.1;
    params.beta = 1.0;
    params.tau = 1e-4;
  } else {
    throw IoError(IoError::Kind::BadConfig, "unknown preset: " + name);
  }
}

std::vector<std::string> preset_names() {
  return {"salinas-a", "indian-pines-noisy-sigma1", "indian-pines-noisy-sigma3",
          "indian-pines-noisy-sigma5"};
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw IoError(IoError::Kind::BadConfig, "bad numeric value for " + key);
  }
  if (pos != value.size()) {
    throw IoError(IoError::Kind::BadConfig, "bad numeric value for " + key);
  }
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw IoError(IoError::Kind::BadConfig, "bad integer value for " + key);
  }
  if (pos != value.size()) {
    throw IoError(IoError::Kind::BadConfig, "bad integer value for " + key);
  }
  return v;
}

std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // allow spaces around entries
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) {
      throw IoError(IoError::Kind::BadConfig, "empty entry in " + key);
    }
    out.push_back(static_cast<int>(parse_int(key, item.substr(b, e - b + 1))));
  }
  if (out.empty()) {
    throw IoError(IoError::Kind::BadConfig, "empty list for " + key);
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError(IoError::Kind::BadConfig,
                    "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw IoError(IoError::Kind::BadConfig,
                    "line " + std::to_string(lineno) + ": empty key or value");
    }

    if (key == "preset") {
      config.preset = value;
      apply_preset(config.params, value);
    } else if (key == "lambda1") {
      config.params.lambda1 = parse_double(key, value);
    } else if (key == "lambda2") {
      config.params.lambda2 = parse_double(key, value);
    } else if (key == "beta") {
      config.params.beta = parse_double(key, value);
    } else if (key == "tau") {
      config.params.tau = parse_double(key, value);
    } else if (key == "p") {
      config.params.p = static_cast<int>(parse_int(key, value));
    } else if (key == "sr") {
      config.params.s_r = static_cast<int>(parse_int(key, value));
    } else if (key == "sc") {
      config.params.s_c = static_cast<int>(parse_int(key, value));
    } else if (key == "k") {
      config.params.k = static_cast<int>(parse_int(key, value));
    } else if (key == "eps") {
      config.params.epsilon = parse_double(key, value);
    } else if (key == "max_iter") {
      config.params.max_iter = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      config.params.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "tensor") {
      config.tensor_path = value;
    } else if (key == "labels") {
      config.labels_path = value;
    } else if (key == "bands") {
      config.bands_path = value;
    } else if (key == "out") {
      config.out_dir = value;
    } else if (key == "sigma") {
      config.sigma = parse_double(key, value);
    } else if (key == "sweep") {
      config.sweep = parse_int_list(key, value);
    } else if (key == "repeats") {
      config.repeats = static_cast<int>(parse_int(key, value));
    } else if (key == "train_frac") {
      config.train_frac = parse_double(key, value);
    } else if (key == "knn") {
      config.n_neighbors = static_cast<int>(parse_int(key, value));
    } else {
      throw IoError(IoError::Kind::BadConfig,
                    "line " + std::to_string(lineno) + ": unknown key '" + key +
                        "'");
    }
  }

  // Range checks that do not need the tensor dimensions.
  const AdmmParams& p = config.params;
  if (p.lambda1 < 0 || p.lambda2 < 0 || p.beta <= 0 || p.tau <= 0 ||
      p.p < 1 || p.p > 4 || p.epsilon <= 0 || p.max_iter < 1 || p.k < 1 ||
      p.s_r < 0 || p.s_c < 0) {
    throw IoError(IoError::Kind::BadConfig, "parameter out of range");
  }
  if (config.repeats < 1 ||
      !(config.train_frac > 0.0 && config.train_frac < 1.0) ||
      config.n_neighbors < 1 || config.sigma < 0.0) {
    throw IoError(IoError::Kind::BadConfig, "harness setting out of range");
  }
  for (const int k : config.sweep) {
    if (k < 1) throw IoError(IoError::Kind::BadConfig, "sweep entries must be >= 1");
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(IoError::Kind::OpenFailed, path + ": cannot open");
  return parse_config(in);
}

void write_config(std::ostream& out, const RunConfig& config) {
  const AdmmParams& p = config.params;
  if (!config.preset.empty()) out << "preset = " << config.preset << "\n";
  out << "lambda1 = " << format_double(p.lambda1) << "\n";
  out << "lambda2 = " << format_double(p.lambda2) << "\n";
  out << "beta = " << format_double(p.beta) << "\n";
  out << "tau = " << format_double(p.tau) << "\n";
  out << "p = " << p.p << "\n";
  out << "sr = " << p.s_r << "\n";
  out << "sc = " << p.s_c << "\n";
  out << "k = " << p.k << "\n";
  out << "eps = " << format_double(p.epsilon) << "\n";
  out << "max_iter = " << p.max_iter << "\n";
  out << "seed = " << p.seed << "\n";
  if (!config.tensor_path.empty()) out << "tensor = " << config.tensor_path << "\n";
  if (!config.labels_path.empty()) out << "labels = " << config.labels_path << "\n";
  if (!config.bands_path.empty()) out << "bands = " << config.bands_path << "\n";
  out << "out = " << config.out_dir << "\n";
  out << "sigma = " << format_double(config.sigma) << "\n";
  out << "sweep = ";
  for (std::size_t i = 0; i < config.sweep.size(); ++i) {
    if (i) out << ",";
    out << config.sweep[i];
  }
  out << "\n";
  out << "repeats = " << config.repeats << "\n";
  out << "train_frac = " << format_double(config.train_frac) << "\n";
  out << "knn = " << config.n_neighbors << "\n";
}

}  // namespace tcur
