// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
//   vfp_acceptance VFP_BINARY DATA_DIR

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "support.hpp"
#include "vfp/conv_budget.hpp"
#include "vfp/correlation.hpp"
#include "vfp/emit.hpp"
#include "vfp/layout.hpp"
#include "vfp/tabular.hpp"
#include "vfp/tensor_file.hpp"

using namespace vfp;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_data;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    detail << why;
    pass = false;
  }
};

std::size_t min_dim(Strategy s) { return s == Strategy::None ? 3 : 2; }

// Runs the CLI and returns its exit status.
int run_cli(const std::string& args) {
  const std::string cmd = "VFP_LOG=quiet '" + g_cli + "' " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string convert_args(const std::string& csv, const std::string& label, const std::string& strategy,
                         const fs::path& out, const std::string& extra = "") {
  return "convert -i '" + (g_data / csv).string() + "' -l " + label + " -s " + strategy + " -o '" +
         out.string() + "' " + extra;
}

Outcome budget_sweep() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t cases = 0;
  for (Strategy s : kAllStrategies) {
    for (std::size_t m = min_dim(s); m <= 12; ++m) {
      for (std::size_t n = min_dim(s); n <= 12; ++n) {
        const auto cf = closed_form(s, {m, n});
        const auto bf = brute_force(s, {m, n});
        ++cases;
        if (cf.counts != bf.counts || cf.total != bf.total || !bf.unexpected.empty()) {
          o.fail(std::string(to_string(s)) + " " + std::to_string(m) + "x" + std::to_string(n));
        }
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 5.0) o.fail("sweep took " + std::to_string(secs) + " s");
  if (o.pass) o.detail << cases << " (strategy, m, n) cases agree exactly in " << secs << " s";
  return o;
}

Outcome twenty_five() {
  Outcome o;
  const auto z2 = closed_form(Strategy::Zpos2, {3, 3});
  const auto d = closed_form(Strategy::Distancing, {3, 3});
  const auto z2b = brute_force(Strategy::Zpos2, {3, 3});
  const auto db = brute_force(Strategy::Distancing, {3, 3});
  if (z2.total != 25 || z2b.total != 25) o.fail("zpos2 total " + std::to_string(z2.total));
  if (d.total != 25 || db.total != 25) o.fail("distancing total " + std::to_string(d.total));
  if (o.pass) o.detail << "zpos2 = distancing = 25 at m=n=3 (closed form and brute force)";
  return o;
}

Outcome all_cases_row() {
  Outcome o;
  std::size_t checked = 0;
  for (std::int64_t m = 2; m <= 12; ++m) {
    for (std::int64_t n = 2; n <= 12; ++n) {
      const GridDims d{static_cast<std::size_t>(m), static_cast<std::size_t>(n)};
      const std::pair<Strategy, std::int64_t> rows[] = {
          {Strategy::Zpos1, m * n},
          {Strategy::Zpos2, m * n + 2 * m + 2 * n + 4},
          {Strategy::Distancing, 4 * m * n - 2 * m - 2 * n + 1},
      };
      for (auto [s, expected] : rows) {
        ++checked;
        if (closed_form(s, d).total != expected || brute_force(s, d).total != expected) {
          o.fail(std::string(to_string(s)) + " " + std::to_string(m) + "x" + std::to_string(n));
        }
      }
    }
  }
  if (o.pass) o.detail << "mn, mn+2m+2n+4, 4mn-2m-2n+1 hold on " << checked << " cases";
  return o;
}

Outcome iris_five_by_five() {
  Outcome o;
  const auto dims = derive_dims(4);
  const auto size = image_size(Strategy::Distancing, dims);
  if (!(dims == GridDims{2, 2}) || size.height != 5 || size.width != 5) o.fail("size law");

  test::TempDir dir("accept");
  if (run_cli(convert_args("iris.csv", "species", "distancing", dir / "iris")) != 0) {
    o.fail("convert failed");
    return o;
  }
  const auto m = read_manifest(dir / "iris");
  if (m.header.image.height != 5 || m.header.image.width != 5) o.fail("manifest image size");
  std::size_t ok = 0;
  for (const auto& e : m.entries) {
    const auto t = read_tensor(dir / "iris" / e.tensor_path);
    if (t.channels == 3 && t.height == 5 && t.width == 5 &&
        fs::file_size(dir / "iris" / e.tensor_path) == 318) {
      ++ok;
    }
  }
  if (ok != 150 || m.entries.size() != 150) o.fail(std::to_string(ok) + "/150 tensors are 3x5x5");
  if (o.pass) o.detail << "150 tensors of 3x5x5 (318 bytes each)";
  return o;
}

Outcome correlation_oracle() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> N(0.0, 1.0);
  double worst = 0.0, max_abs_r = 0.0;
  for (int table = 0; table < 200; ++table) {
    TabularDataset ds;
    std::vector<std::vector<double>> cols(10, std::vector<double>(20));
    for (std::size_t c = 0; c < 10; ++c) {
      // Mix in shared structure so the tables are not all near-independent.
      for (std::size_t r = 0; r < 20; ++r) cols[c][r] = N(rng) + (c % 3) * 0.5 * r;
      ds.column_names.push_back("c" + std::to_string(c));
      ds.missing_mask.emplace_back(20, false);
    }
    ds.columns = cols;
    ds.labels.assign(20, "y");
    const auto got = correlation_scores(ds, 1 + table % 4);
    const auto want = test::scores_oracle(cols);
    for (std::size_t i = 0; i < 10; ++i) {
      worst = std::max(worst, std::fabs(got[i] - static_cast<double>(want[i])));
      if (pearson(cols[i], cols[i]) != 1.0) o.fail("r(x,x) != 1 in table " + std::to_string(table));
      for (std::size_t j = 0; j < 10; ++j) {
        max_abs_r = std::max(max_abs_r, std::fabs(pearson(cols[i], cols[j])));
      }
    }
  }
  if (worst > 1e-12) o.fail("max score error " + std::to_string(worst));
  if (max_abs_r > 1.0 + 1e-12) o.fail("|r| reached " + std::to_string(max_abs_r));
  if (o.pass) {
    o.detail << "200 tables of 20x10, max |c - oracle| = " << worst << ", max |r| = " << max_abs_r;
  }
  return o;
}

Outcome layout_properties() {
  Outcome o;
  for (std::size_t m = 1; m <= 12; ++m) {
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto cells = vortex_cells({m, n});
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& c : cells) {
        if (c.row < m && c.col < n) seen.insert({c.row, c.col});
      }
      if (cells.size() != m * n || seen.size() != m * n) {
        o.fail("not a bijection at " + std::to_string(m) + "x" + std::to_string(n));
      }
      const Cell center = spiral_center({m, n});
      for (std::size_t t = 1; t < cells.size(); ++t) {
        if (ring(cells[t - 1], center) > ring(cells[t], center)) {
          o.fail("ring order breaks at " + std::to_string(m) + "x" + std::to_string(n));
          break;
        }
      }
    }
  }

  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::size_t samples = 0;
  for (Strategy s : kAllStrategies) {
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t k = 1 + rng() % 144;
      std::vector<double> scores(k), sample(k);
      for (auto& v : scores) v = 1.0 + U(rng) * k;
      // Values in (0, 1] so every attribute shows up as a nonzero pixel.
      for (auto& v : sample) v = 1.0 - U(rng);
      const auto profile = make_profile(scores, trial % 2 ? Direction::Descending : Direction::Ascending);
      const auto img = embed(place(profile, sample, VortexLayout::for_attributes(k)), s);
      std::vector<double> nonzero;
      for (std::size_t r = 0; r < img.values.rows(); ++r)
        for (std::size_t c = 0; c < img.values.cols(); ++c)
          if (img.values(r, c) != 0.0) nonzero.push_back(img.values(r, c));
      std::sort(nonzero.begin(), nonzero.end());
      std::sort(sample.begin(), sample.end());
      if (nonzero != sample) {
        o.fail(std::string("conservation fails for ") + to_string(s) + " k=" + std::to_string(k));
        break;
      }
      ++samples;
    }
  }
  if (o.pass) o.detail << "144 grids bijective and ring-monotone; " << samples << " samples conserved";
  return o;
}

Outcome determinism() {
  Outcome o;
  test::TempDir dir("accept");
  std::size_t files = 0;
  for (const auto& [csv, label] : {std::pair{"iris.csv", "species"}, std::pair{"wine.csv", "class"}}) {
    const std::string base = fs::path(csv).stem().string();
    const auto a = dir / (base + "_a"), b = dir / (base + "_b");
    if (run_cli(convert_args(csv, label, "distancing", a, "--png -j 1")) != 0 ||
        run_cli(convert_args(csv, label, "distancing", b, "--png -j 4")) != 0) {
      o.fail(std::string("convert failed on ") + csv);
      continue;
    }
    const auto ha = test::tree_hashes(a), hb = test::tree_hashes(b);
    if (ha != hb) o.fail(std::string("trees differ for ") + csv);
    if (!ha.count("split.csv")) o.fail("no split.csv");
    files += ha.size();
  }
  if (o.pass) o.detail << files << " files byte-identical across paired runs, split.csv included";
  return o;
}

Outcome serialization() {
  Outcome o;
  test::TempDir dir("accept");
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<float> U(-1e3f, 1e3f);
  for (int i = 0; i < 1000; ++i) {
    Tensor t(1 + rng() % 4, 1 + rng() % 32, 1 + rng() % 32);
    for (auto& v : t.data) v = U(rng);
    const auto p = dir / ("t" + std::to_string(i) + ".vfpt");
    write_tensor(p, t);
    if (!(read_tensor(p) == t) || !(decode_tensor(encode_tensor(t)) == t)) {
      o.fail("round trip " + std::to_string(i));
      break;
    }
  }

  std::size_t checked = 0;
  const std::pair<const char*, const char*> inputs[] = {{"iris.csv", "species"}, {"wine.csv", "class"}};
  for (const auto& [csv, label] : inputs) {
    for (Strategy s : kAllStrategies) {
      const auto out = dir / (fs::path(csv).stem().string() + "_" + to_string(s));
      if (run_cli(convert_args(csv, label, to_string(s), out)) != 0) {
        o.fail(std::string("convert failed: ") + csv + " " + to_string(s));
        continue;
      }
      const auto check = verify_output(out / kManifestFile);
      checked += check.tensors_checked;
      if (!check.ok()) o.fail(check.problems.front());
    }
  }
  if (o.pass) o.detail << "1000 random tensors exact; " << checked << " emitted tensors have equal channels";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " VFP_BINARY DATA_DIR\n";
    return 2;
  }
  g_cli = argv[1];
  g_data = argv[2];

  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"closed-form budget equals brute force, 2..12 sweep", budget_sweep},
      {"m=n=3: zpos2 and distancing both total 25", twenty_five},
      {"all-cases totals mn, mn+2m+2n+4, 4mn-2m-2n+1", all_cases_row},
      {"iris (k=4) under distancing gives 5x5 images", iris_five_by_five},
      {"correlation scores match the direct oracle", correlation_oracle},
      {"spiral bijection, ring order, value conservation", layout_properties},
      {"convert is byte-for-byte deterministic", determinism},
      {"tensor round trip and channel equality", serialization},
  };

  int failures = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << index++ << "] " << name << ": " << o.detail.str()
              << '\n';
    failures += o.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
