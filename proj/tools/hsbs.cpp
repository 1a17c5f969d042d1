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

// hsbs: hyperspectral band selection via tensor CUR + G3DTV ADMM.
//
// Subcommands:
//   bandselect  run the solver and write bands.csv / trace.csv / manifest
//   evaluate    KNN overall-accuracy harness (fixed band set or k sweep)
//   synth       generate a synthetic labeled cube
//   noise       add seeded Gaussian noise to a tensor file
//   decompose   standalone t-CUR of a tensor file
//
// Exit codes: 0 success, 1 usage, 2 data/config error, 3 numerical failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcur/admm.hpp"
#include "tcur/evaluation.hpp"
#include "tcur/factorizations.hpp"
#include "tcur/io.hpp"

namespace fs = std::filesystem;
using namespace tcur;

namespace {

struct CliError {
  int code;
  std::string message;
};

std::vector<int> parse_int_csv(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw IoError(IoError::Kind::BadConfig,
                    std::string("bad ") + what + " entry: '" + item + "'");
    }
  }
  if (out.empty()) {
    throw IoError(IoError::Kind::BadConfig, std::string("empty ") + what);
  }
  return out;
}

// Options shared by bandselect and evaluate.  Values are merged in the
// order: config file, then --preset, then explicit flags.
struct RunOptions {
  std::string config_path;
  std::string preset;
  std::string tensor, labels, bands, out;
  double lambda1 = 0, lambda2 = 0, beta = 0, tau = 0, eps = 0, sigma = 0,
         train_frac = 0;
  int p = 0, sr = 0, sc = 0, k = 0, max_iter = 0, repeats = 0, knn = 0;
  std::uint64_t seed = 0;
  std::string sweep;

  CLI::App* attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "Config file (key = value lines; flags override)");
    cmd->add_option("--preset", preset,
                    "Named parameter preset (salinas-a, "
                    "indian-pines-noisy-sigma{1,3,5})");
    cmd->add_option("--tensor", tensor, "Input tensor (.t3df)");
    cmd->add_option("--labels", labels, "Label map (.l2df)");
    cmd->add_option("--bands", bands, "Band list file (one 1-based index per line)");
    cmd->add_option("--out", out, "Output directory");
    cmd->add_option("--lambda1", lambda1, "Sparsity weight");
    cmd->add_option("--lambda2", lambda2, "G3DTV weight");
    cmd->add_option("--beta", beta, "ADMM penalty");
    cmd->add_option("--tau", tau, "Gradient step size");
    cmd->add_option("--p", p, "G3DTV exponent (1-4)");
    cmd->add_option("--sr", sr, "Sampled row count (0 = all)");
    cmd->add_option("--sc", sc, "Sampled column count (0 = all)");
    cmd->add_option("--k", k, "Number of bands to select");
    cmd->add_option("--eps", eps, "Convergence tolerance on ||dB||_inf");
    cmd->add_option("--max-iter", max_iter, "Iteration cap");
    cmd->add_option("--seed", seed, "Seed for sampling, k-means and splits");
    cmd->add_option("--sigma", sigma, "Gaussian noise added to the tensor");
    cmd->add_option("--sweep", sweep, "Band counts for evaluate (e.g. 3,6,9)");
    cmd->add_option("--repeats", repeats, "Classification repeats per entry");
    cmd->add_option("--train-frac", train_frac, "Training fraction per class");
    cmd->add_option("--knn", knn, "KNN neighbor count");
    return cmd;
  }

  RunConfig merge(const CLI::App* cmd) const {
    RunConfig cfg;
    if (cmd->count("--config") > 0) cfg = parse_config_file(config_path);
    if (cmd->count("--preset") > 0) {
      apply_preset(cfg.params, preset);
      cfg.preset = preset;
    }
    if (cmd->count("--tensor") > 0) cfg.tensor_path = tensor;
    if (cmd->count("--labels") > 0) cfg.labels_path = labels;
    if (cmd->count("--bands") > 0) cfg.bands_path = bands;
    if (cmd->count("--out") > 0) cfg.out_dir = out;
    if (cmd->count("--lambda1") > 0) cfg.params.lambda1 = lambda1;
    if (cmd->count("--lambda2") > 0) cfg.params.lambda2 = lambda2;
    if (cmd->count("--beta") > 0) cfg.params.beta = beta;
    if (cmd->count("--tau") > 0) cfg.params.tau = tau;
    if (cmd->count("--p") > 0) cfg.params.p = p;
    if (cmd->count("--sr") > 0) cfg.params.s_r = sr;
    if (cmd->count("--sc") > 0) cfg.params.s_c = sc;
    if (cmd->count("--k") > 0) cfg.params.k = k;
    if (cmd->count("--eps") > 0) cfg.params.epsilon = eps;
    if (cmd->count("--max-iter") > 0) cfg.params.max_iter = max_iter;
    if (cmd->count("--seed") > 0) cfg.params.seed = seed;
    if (cmd->count("--sigma") > 0) cfg.sigma = sigma;
    if (cmd->count("--sweep") > 0) cfg.sweep = parse_int_csv(sweep, "sweep");
    if (cmd->count("--repeats") > 0) cfg.repeats = repeats;
    if (cmd->count("--train-frac") > 0) cfg.train_frac = train_frac;
    if (cmd->count("--knn") > 0) cfg.n_neighbors = knn;
    return cfg;
  }
};

Tensor3 load_working_tensor(const RunConfig& cfg) {
  if (cfg.tensor_path.empty()) {
    throw CliError{1, "no input tensor given (use --tensor or tensor= in the config)"};
  }
  Tensor3 y = read_tensor(cfg.tensor_path);
  if (cfg.sigma > 0.0) y = add_noise(y, cfg.sigma, cfg.params.seed);
  return y;
}

void write_manifest(const fs::path& dir, const RunConfig& cfg, int n1, int n2) {
  RunConfig echo = cfg;
  const AdmmParams resolved = cfg.params.resolved(n1, n2);
  echo.params.s_r = resolved.s_r;
  echo.params.s_c = resolved.s_c;
  std::ofstream out(dir / "manifest.txt");
  if (!out) {
    throw IoError(IoError::Kind::WriteFailed,
                  (dir / "manifest.txt").string() + ": cannot open");
  }
  write_config(out, echo);
}

std::vector<int> read_bands_file(const std::string& path, int n3) {
  std::ifstream in(path);
  if (!in) throw IoError(IoError::Kind::OpenFailed, path + ": cannot open");
  std::vector<int> bands;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      std::size_t pos = 0;
      const int b = std::stoi(line, &pos);
      if (pos != line.size() || b < 1 || b > n3) throw std::invalid_argument(line);
      bands.push_back(b - 1);
    } catch (const std::exception&) {
      throw IoError(IoError::Kind::BadConfig,
                    path + ": bad band index on line " + std::to_string(lineno));
    }
  }
  if (bands.empty()) {
    throw IoError(IoError::Kind::BadConfig, path + ": no band indices");
  }
  return bands;
}

int cmd_bandselect(const RunConfig& cfg) {
  const Tensor3 y = load_working_tensor(cfg);
  cfg.params.resolved(y.n1(), y.n2()).validate(y.n1(), y.n2(), y.n3());

  const fs::path out_dir(cfg.out_dir);
  fs::create_directories(out_dir);
  write_manifest(out_dir, cfg, y.n1(), y.n2());

  const BandSelectionResult res = band_select(y, cfg.params);

  {
    std::ofstream bands(out_dir / "bands.csv");
    for (const int b : res.band_idx) bands << (b + 1) << "\n";
  }
  {
    std::ofstream trace(out_dir / "trace.csv");
    trace << "iter,residual,objective\n";
    for (const TraceRow& row : res.trace) {
      trace << row.iter << "," << format_double(row.residual) << ","
            << format_double(row.objective) << "\n";
    }
  }

  std::cout << "selected " << res.band_idx.size() << " bands:";
  for (const int b : res.band_idx) std::cout << " " << (b + 1);
  std::cout << "\niterations: " << res.trace.size()
            << (res.converged ? " (converged)" : " (hit max_iter)") << "\n"
            << "outputs: " << (out_dir / "bands.csv").string() << ", "
            << (out_dir / "trace.csv").string() << ", "
            << (out_dir / "manifest.txt").string() << "\n";
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  const Tensor3 y = load_working_tensor(cfg);
  if (cfg.labels_path.empty()) {
    throw IoError(IoError::Kind::BadConfig,
                  "evaluate requires a label map (--labels or labels= in the config)");
  }
  LabeledDataset ds;
  ds.labels = read_labels(cfg.labels_path);
  if (ds.labels.n1 != y.n1() || ds.labels.n2 != y.n2()) {
    throw IoError(IoError::Kind::BadDims,
                  "label map dimensions do not match the tensor's spatial dims");
  }
  ds.tensor = y;

  const fs::path out_dir(cfg.out_dir);
  fs::create_directories(out_dir);
  write_manifest(out_dir, cfg, y.n1(), y.n2());

  std::ofstream oa(out_dir / "oa.csv");
  oa << "n_bands,mean_oa,std_oa,runtime_seconds\n";

  using clock = std::chrono::steady_clock;
  if (!cfg.bands_path.empty()) {
    // Fixed-subset mode: score exactly the provided band set.
    const std::vector<int> bands = read_bands_file(cfg.bands_path, y.n3());
    const auto t0 = clock::now();
    const BandScore score = score_band_subset(
        ds, bands, cfg.repeats, cfg.train_frac, cfg.params.seed, cfg.n_neighbors);
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    oa << bands.size() << "," << format_double(score.mean_oa) << ","
       << format_double(score.std_oa) << "," << format_double(secs) << "\n";
    std::cout << "bands=" << bands.size() << " mean_oa=" << score.mean_oa
              << " std_oa=" << score.std_oa << "\n";
  } else {
    // Sweep mode: select k bands with the solver, then score, per entry.
    for (const int k : cfg.sweep) {
      if (k > y.n3()) {
        throw IoError(IoError::Kind::BadConfig,
                      "sweep entry " + std::to_string(k) + " exceeds n3");
      }
      AdmmParams params = cfg.params;
      params.k = k;
      params.resolved(y.n1(), y.n2()).validate(y.n1(), y.n2(), y.n3());
      const auto t0 = clock::now();
      const BandSelectionResult res = band_select(y, params);
      const BandScore score =
          score_band_subset(ds, res.band_idx, cfg.repeats, cfg.train_frac,
                            cfg.params.seed, cfg.n_neighbors);
      const double secs = std::chrono::duration<double>(clock::now() - t0).count();
      oa << k << "," << format_double(score.mean_oa) << ","
         << format_double(score.std_oa) << "," << format_double(secs) << "\n";
      std::cout << "k=" << k << " mean_oa=" << score.mean_oa
                << " std_oa=" << score.std_oa << " (" << secs << " s)\n";
    }
  }
  std::cout << "wrote " << (out_dir / "oa.csv").string() << "\n";
  return 0;
}

int cmd_synth(const std::string& dims_text, int clusters, int rank,
              double sparse_frac, double sparse_mag, double sigma,
              std::uint64_t seed, const std::string& out) {
  const std::vector<int> dims = parse_int_csv(dims_text, "dims");
  if (dims.size() != 3) {
    throw IoError(IoError::Kind::BadConfig, "--dims must be n1,n2,n3");
  }
  SynthSpec spec;
  spec.n1 = dims[0];
  spec.n2 = dims[1];
  spec.n3 = dims[2];
  spec.n_clusters = clusters;
  spec.tubal_rank = rank;
  spec.sparse_frac = sparse_frac;
  spec.sparse_mag = sparse_mag;
  spec.noise_sigma = sigma;
  spec.seed = seed;
  const SynthResult sr = synth(spec);

  const fs::path out_dir(out);
  fs::create_directories(out_dir);
  write_tensor((out_dir / "synthetic.t3df").string(), sr.data.tensor);
  write_labels((out_dir / "synthetic.l2df").string(), sr.data.labels);
  {
    std::ofstream planted(out_dir / "planted.csv");
    planted << "band,cluster\n";
    for (std::size_t b = 0; b < sr.planted.band_cluster_of.size(); ++b) {
      planted << (b + 1) << "," << (sr.planted.band_cluster_of[b] + 1) << "\n";
    }
  }
  std::cout << "wrote " << (out_dir / "synthetic.t3df").string() << ", "
            << (out_dir / "synthetic.l2df").string() << ", "
            << (out_dir / "planted.csv").string() << "\n";
  return 0;
}

int cmd_noise(const std::string& in, double sigma, std::uint64_t seed,
              const std::string& out) {
  const Tensor3 x = read_tensor(in);
  write_tensor(out, add_noise(x, sigma, seed));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_decompose(const std::string& in, int sr, int sc, std::uint64_t seed,
                  const std::string& out) {
  const Tensor3 y = read_tensor(in);
  if (sr < 1 || sr > y.n1() || sc < 1 || sc > y.n2()) {
    throw IoError(IoError::Kind::BadConfig, "--sr/--sc out of range for this tensor");
  }
  RandomEngine engine(seed);
  const IndexSet rows = sample_indices(y.n1(), sr, engine);
  const IndexSet cols = sample_indices(y.n2(), sc, engine);
  const TCurFactors f = tcur_sample(y, rows, cols);
  const Tensor3 approx = tcur_reconstruct(f);
  const double denom = fro_norm(y);
  const double rel = denom == 0.0 ? 0.0 : fro_norm(approx - y) / denom;

  const fs::path out_dir(out);
  fs::create_directories(out_dir);
  write_tensor((out_dir / "c.t3df").string(), f.c);
  write_tensor((out_dir / "u.t3df").string(), f.u);
  write_tensor((out_dir / "r.t3df").string(), f.r);
  {
    std::ofstream idx(out_dir / "indices.csv");
    idx << "kind,index\n";
    for (const int i : f.row_idx) idx << "row," << (i + 1) << "\n";
    for (const int j : f.col_idx) idx << "col," << (j + 1) << "\n";
  }
  std::cout << "relative reconstruction error: " << format_double(rel) << "\n"
            << "wrote factors under " << out_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperspectral band selection via tensor CUR + G3DTV ADMM"};
  app.require_subcommand(1);

  RunOptions select_opts, eval_opts;
  CLI::App* select_cmd = select_opts.attach(
      app.add_subcommand("bandselect", "Run the solver and emit the band set"));
  CLI::App* eval_cmd = eval_opts.attach(app.add_subcommand(
      "evaluate", "Score band subsets with repeated KNN classification"));

  std::string synth_dims = "24,24,40", synth_out = ".";
  int synth_clusters = 5, synth_rank = 2;
  double synth_sparse_frac = 0.02, synth_sparse_mag = 2.0, synth_sigma = 0.0;
  std::uint64_t synth_seed = 1;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic labeled cube");
  synth_cmd->add_option("--dims", synth_dims, "n1,n2,n3")->capture_default_str();
  synth_cmd->add_option("--clusters", synth_clusters, "Planted band groups")
      ->capture_default_str();
  synth_cmd->add_option("--rank", synth_rank, "Rank of each latent pattern")
      ->capture_default_str();
  synth_cmd->add_option("--sparse-frac", synth_sparse_frac, "Outlier fraction")
      ->capture_default_str();
  synth_cmd->add_option("--sparse-mag", synth_sparse_mag, "Outlier magnitude")
      ->capture_default_str();
  synth_cmd->add_option("--sigma", synth_sigma, "Gaussian noise level")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth_seed, "Seed")->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Output directory")
      ->capture_default_str();

  std::string noise_in, noise_out;
  double noise_sigma = 0.0;
  std::uint64_t noise_seed = 1;
  CLI::App* noise_cmd =
      app.add_subcommand("noise", "Add seeded Gaussian noise to a tensor file");
  noise_cmd->add_option("--in", noise_in, "Input tensor")->required();
  noise_cmd->add_option("--sigma", noise_sigma, "Noise standard deviation")
      ->required();
  noise_cmd->add_option("--seed", noise_seed, "Seed")->capture_default_str();
  noise_cmd->add_option("--out", noise_out, "Output tensor")->required();

  std::string dec_in, dec_out = ".";
  int dec_sr = 0, dec_sc = 0;
  std::uint64_t dec_seed = 1;
  CLI::App* dec_cmd = app.add_subcommand(
      "decompose", "Standalone t-CUR decomposition with an error report");
  dec_cmd->add_option("--in", dec_in, "Input tensor")->required();
  dec_cmd->add_option("--sr", dec_sr, "Sampled row count")->required();
  dec_cmd->add_option("--sc", dec_sc, "Sampled column count")->required();
  dec_cmd->add_option("--seed", dec_seed, "Seed")->capture_default_str();
  dec_cmd->add_option("--out", dec_out, "Output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (select_cmd->parsed()) return cmd_bandselect(select_opts.merge(select_cmd));
    if (eval_cmd->parsed()) return cmd_evaluate(eval_opts.merge(eval_cmd));
    if (synth_cmd->parsed()) {
      return cmd_synth(synth_dims, synth_clusters, synth_rank,
                       synth_sparse_frac, synth_sparse_mag, synth_sigma,
                       synth_seed, synth_out);
    }
    if (noise_cmd->parsed()) {
      return cmd_noise(noise_in, noise_sigma, noise_seed, noise_out);
    }
    if (dec_cmd->parsed()) {
      return cmd_decompose(dec_in, dec_sr, dec_sc, dec_seed, dec_out);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
