// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails; SKIP does not fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"
#include "softspace/backbone.hpp"
#include "softspace/community.hpp"
#include "softspace/config.hpp"
#include "softspace/corpus.hpp"
#include "softspace/delimited.hpp"
#include "softspace/dynamics.hpp"
#include "softspace/pipeline.hpp"
#include "softspace/proximity.hpp"
#include "softspace/rng.hpp"
#include "softspace/scalefit.hpp"
#include "softspace/specialization.hpp"
#include "softspace/synthkit.hpp"

namespace fs = std::filesystem;
using namespace softspace;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {Verdict::Fail, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.verdict == Verdict::Pass && limit_seconds > 0 && secs > limit_seconds) {
    o.verdict = Verdict::Fail;
    o.detail += "; runtime over limit";
  }
  const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
  if (o.verdict == Verdict::Fail) ++failures;
  std::ostringstream line;
  line << tag << " [" << id << "] " << title << ": " << o.detail << " (" << io::format_fixed(secs, 2) << " s";
  if (limit_seconds > 0) line << ", limit " << limit_seconds << " s";
  line << ")";
  std::cout << line.str() << std::endl;
}

Outcome verdict(bool ok, const std::string& detail) { return {ok ? Verdict::Pass : Verdict::Fail, detail}; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- 1 ---------------------------------------------------------------------
Outcome rca_equivalence() {
  Rng rng(101);
  double worst = 0.0;
  int trials = 0, mismatched_masks = 0;
  while (trials < 1000) {
    const auto rows = 1 + rng.below(6), cols = 1 + rng.below(6);
    std::vector<std::vector<long long>> dense(rows, std::vector<long long>(cols));
    std::vector<std::int64_t> flat;
    long long total = 0;
    for (auto& row : dense)
      for (auto& v : row) {
        v = static_cast<long long>(rng.below(10));
        flat.push_back(v);
        total += v;
      }
    if (total == 0) continue;
    ++trials;
    std::vector<std::string> rn, cn;
    for (std::size_t r = 0; r < rows; ++r) rn.push_back("d" + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) cn.push_back("s" + std::to_string(c));
    const auto m = CountMatrix::from_dense(rn, cn, flat);
    const auto got = rca(m);
    const auto want = synth::oracle::rca(dense);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        if (got.is_masked(r, c) != !want[r][c].has_value()) {
          ++mismatched_masks;
          continue;
        }
        if (!want[r][c]) continue;
        const double w = *want[r][c], g = got.at(r, c);
        const double err = w == 0.0 ? std::abs(g) : std::abs(g - w) / std::abs(w);
        worst = std::max(worst, err);
      }
  }
  bool uniform_ok = true;
  for (int k = 1; k <= 9; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 6);
    std::vector<std::string> rn, cn;
    for (std::size_t i = 0; i < n; ++i) rn.push_back("d" + std::to_string(i)), cn.push_back("s" + std::to_string(i));
    const auto r = rca(CountMatrix::from_dense(rn, cn, std::vector<std::int64_t>(n * n, k)));
    for (double v : r.values) uniform_ok = uniform_ok && v == 1.0;
  }
  const bool ok = worst <= 1e-12 && mismatched_masks == 0 && uniform_ok;
  return verdict(ok, "1000 matrices, max rel err " + io::format_double(worst) + ", mask mismatches " +
                         std::to_string(mismatched_masks) + ", uniform all-ones " + (uniform_ok ? "yes" : "no"));
}

// --- 2 ---------------------------------------------------------------------
Outcome proximity_identity() {
  Rng rng(202);
  int bad_identity = 0, bad_symmetry = 0, bad_bounds = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n_disc = 5;
    const auto n_ent = 2 + rng.below(7);
    SpecializationSet spec;
    std::vector<std::string> entities;
    std::vector<std::set<int>> sets(n_ent);
    for (std::size_t e = 0; e < n_ent; ++e) entities.push_back("t" + std::to_string(e));
    for (int d = 0; d < n_disc; ++d) {
      const std::string dn = "d" + std::to_string(d);
      spec.disciplines.push_back(dn);
      auto& members = spec.members[dn];
      for (std::size_t e = 0; e < n_ent; ++e)
        if (rng.bernoulli(0.4)) {
          members.insert(entities[e]);
          sets[e].insert(d);
        }
    }
    const auto p = proximity(spec, entities);
    for (std::size_t i = 0; i < n_ent; ++i)
      for (std::size_t j = 0; j < n_ent; ++j) {
        const double v = p.at(i, j);
        if (v != p.at(j, i)) ++bad_symmetry;
        if (v < 0.0 || v > 1.0) ++bad_bounds;
        double want;
        if (i == j) want = sets[i].empty() ? 0.0 : 1.0;
        else want = synth::oracle::proximity(sets[i], sets[j]);
        if (v != want) ++bad_identity;
      }
  }
  return verdict(bad_identity + bad_symmetry + bad_bounds == 0,
                 "1000 sets, identity mismatches " + std::to_string(bad_identity) + ", asymmetric " +
                     std::to_string(bad_symmetry) + ", out of bounds " + std::to_string(bad_bounds));
}

// --- 3 ---------------------------------------------------------------------
Outcome disparity_correctness() {
  Rng rng(303);
  double worst = 0.0;
  int non_monotone = 0;
  const std::vector<double> alphas = {0.001, 0.01, 0.05, 0.1, 0.2, 0.5, 0.9};
  for (int t = 0; t < 500; ++t) {
    ProximityNetwork net;
    if (t % 2 == 0) {
      // weighted star
      const auto leaves = 1 + rng.below(12);
      std::vector<std::string> names{"hub"};
      std::vector<WeightedEdge> edges;
      for (std::size_t l = 0; l < leaves; ++l) {
        names.push_back("leaf" + std::to_string(l));
        edges.push_back({0, l + 1, 1.0 - 0.99 * rng.uniform()});
      }
      net = make_network(names, edges);
    } else {
      net = synth::random_weighted_graph(2 + static_cast<int>(rng.below(19)), 0.1 + 0.6 * rng.uniform(), false,
                                         rng.next());
      for (auto& e : net.edges) e.weight *= 1.0 - 0.95 * rng.uniform();
    }
    std::vector<double> strength(net.n_nodes(), 0.0);
    std::vector<int> degree(net.n_nodes(), 0);
    for (const auto& e : net.edges) {
      strength[e.i] += e.weight, strength[e.j] += e.weight;
      ++degree[e.i], ++degree[e.j];
    }
    const auto pv = disparity_pvalues(net);
    for (std::size_t k = 0; k < net.edges.size(); ++k) {
      const auto& e = net.edges[k];
      auto direct = [&](std::size_t node) {
        return degree[node] == 1 ? 1.0 : std::pow(1.0 - e.weight / strength[node], degree[node] - 1);
      };
      worst = std::max({worst, std::abs(pv[k].at_i - direct(e.i)), std::abs(pv[k].at_j - direct(e.j))});
    }
    std::set<std::pair<std::string, std::string>> prev;
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      std::set<std::pair<std::string, std::string>> kept;
      for (const auto& e : disparity_filter(net, alphas[a])) kept.insert({e.i, e.j});
      if (a > 0 && !std::includes(kept.begin(), kept.end(), prev.begin(), prev.end())) ++non_monotone;
      prev = std::move(kept);
    }
  }
  return verdict(worst <= 1e-12 && non_monotone == 0,
                 "500 graphs, max abs p-value err " + io::format_double(worst) + ", alpha-monotonicity violations " +
                     std::to_string(non_monotone));
}

// --- 4 ---------------------------------------------------------------------
Outcome mst_optimality() {
  Rng rng(404);
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const auto net = synth::random_weighted_graph(n, 0.2 + 0.7 * rng.uniform(), true, rng.next());
    double got = 0.0;
    const auto tree = max_spanning_tree(net);
    for (const auto& e : tree) got += e.weight;
    std::vector<std::tuple<int, int, double>> edges;
    for (const auto& e : net.edges) edges.emplace_back(static_cast<int>(e.i), static_cast<int>(e.j), e.weight);
    const double want = synth::oracle::mst_weight(n, edges);
    if (got != want || tree.size() != static_cast<std::size_t>(n - 1)) ++mismatches;
  }
  return verdict(mismatches == 0, "200 graphs, weight mismatches " + std::to_string(mismatches));
}

// --- 5 ---------------------------------------------------------------------
Outcome sbm_recovery() {
  int good = 0, non_monotone = 0;
  std::ostringstream nmis;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = synth::planted_partition(4, 25, 0.3, 0.02, seed);
    const auto fit = fit_sbm_detailed(g.network, seed);
    const double nmi = normalized_mutual_information(fit.assignment.labels, g.labels);
    if (nmi >= 0.9) ++good;
    nmis << (seed ? " " : "") << io::format_fixed(nmi, 2);
    double last = INFINITY;
    bool in_moves = false;
    for (const auto& s : fit.trace) {
      if (s.kind != SbmTraceStep::Kind::Move) {
        in_moves = false;
        continue;
      }
      if (s.after > s.before || (in_moves && s.before > last + 1e-9)) ++non_monotone;
      last = s.after;
      in_moves = true;
    }
  }
  return verdict(good >= 18 && non_monotone == 0, "NMI >= 0.9 in " + std::to_string(good) +
                                                      "/20 runs, non-monotone moves " + std::to_string(non_monotone) +
                                                      "; NMI [" + nmis.str() + "]");
}

// --- 6 ---------------------------------------------------------------------
Outcome hhi_jaccard_cases() {
  auto make = [](int n_tools, bool spread) {
    SpecializationSet spec;
    spec.disciplines = {"D"};
    CommunityAssignment a;
    for (int t = 0; t < n_tools; ++t) {
      const std::string name = "T" + std::to_string(t);
      spec.members["D"].insert(name);
      a.nodes.push_back(name);
      a.labels.push_back(spread ? t : 0);
    }
    a.num_blocks = spread ? n_tools : 1;
    return std::make_pair(spec, a);
  };
  const auto [s1, a1] = make(5, false);
  const auto [s8, a8] = make(8, true);
  const auto h1 = hhi(s1, a1, "D");
  const auto h8 = hhi(s8, a8, "D");
  const auto j = jaccard_stability({"A", "B", "C"}, {"B", "C", "D"});
  const auto w = make_windows(YearRange{2004, 2021}, 5, 1);
  const bool ok_h1 = h1 && *h1 == 1.0;
  const bool ok_h8 = h8 && std::abs(*h8 - 0.125) <= 1e-12;
  const bool ok_j = j && *j == 0.5;
  const bool ok_w = w.size() == 14 && w.front() == RollingWindow{2004, 2008} && w.back() == RollingWindow{2017, 2021};
  std::ostringstream d;
  d << "single-community HHI " << (h1 ? io::format_double(*h1) : "NA") << ", uniform-8 HHI "
    << (h8 ? io::format_double(*h8) : "NA") << ", Jaccard " << (j ? io::format_double(*j) : "NA") << ", windows "
    << w.size();
  if (!w.empty())
    d << " (" << w.front().start_year << "-" << w.front().end_year << " .. " << w.back().start_year << "-"
      << w.back().end_year << ")";
  return verdict(ok_h1 && ok_h8 && ok_j && ok_w, d.str());
}

// --- 7 ---------------------------------------------------------------------
Outcome power_law_recovery() {
  Rng rng(707);
  std::vector<std::int64_t> xs(20000);
  for (auto& x : xs) x = sample_power_law(rng, 2.0, 5);
  const auto fit = fit_power_law(xs, 5);
  const auto vc = ValueCounts::from(xs).tail(5);
  const double ll = power_law_log_likelihood(vc, fit.alpha, 5);
  const double h = 1e-3;
  const bool local_max = ll >= power_law_log_likelihood(vc, fit.alpha - h, 5) &&
                         ll >= power_law_log_likelihood(vc, fit.alpha + h, 5);
  const bool in_range = fit.alpha >= 1.95 && fit.alpha <= 2.05;
  return verdict(in_range && local_max, "alpha_hat " + io::format_fixed(fit.alpha, 4) + " at x_min 5 (n=20000), " +
                                            "local maximum " + (local_max ? "yes" : "no"));
}

// --- 8 ---------------------------------------------------------------------
int run_cli(const std::string& args) {
  const std::string cmd = std::string(SOFTSPACE_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name.rfind("manifest_", 0) == 0) continue;  // carries wall time and timestamp
    out[name] = sha256_file(e.path().string());
  }
  return out;
}

Outcome end_to_end() {
  const fs::path root = fs::temp_directory_path() / ("softspace_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path synth_dir = root / "synth", run_dir = root / "run";
  std::string detail;
  bool ok = true;

  if (run_cli("synth --seed 42 -o " + synth_dir.string()) != 0) return verdict(false, "synth failed");
  const std::string run_args = "all --seed 42 --percentile 0.5 -r " + (synth_dir / "corpus.csv").string() +
                               " --aliases " + (synth_dir / "aliases.csv").string() + " -o " + run_dir.string();
  if (run_cli(run_args) != 0) return verdict(false, "first `all` run failed");
  const auto first = snapshot(run_dir);
  fs::remove_all(run_dir);
  if (run_cli(run_args) != 0) return verdict(false, "second `all` run failed");
  const auto second = snapshot(run_dir);
  const bool identical = first == second && first.size() > 10;
  ok = ok && identical;
  detail += std::to_string(first.size()) + " artifacts " + (identical ? "byte-identical" : "DIFFER") + " across runs";

  const fs::path data = SOFTSPACE_TEST_DATA;
  const fs::path fixture_dir = root / "fixture";
  const std::string fixture_args = "all --config " + (data / "fixture.conf").string() + " -r " +
                                   (data / "fixture_200.csv").string() + " --aliases " +
                                   (data / "fixture_aliases.csv").string() + " -o " + fixture_dir.string();
  if (run_cli(fixture_args) != 0) return verdict(false, detail + "; fixture run failed");
  const auto manifest = nlohmann::json::parse(read_file(fixture_dir / "manifest_all.json"));
  const auto golden = nlohmann::json::parse(read_file(data / "golden_manifest.json"));
  const bool golden_ok = manifest.at("outputs") == golden.at("outputs") &&
                         manifest.at("config_digest") == golden.at("config_digest");
  std::size_t mismatched = 0;
  for (const auto& [k, v] : golden.at("outputs").items())
    if (!manifest.at("outputs").contains(k) || manifest.at("outputs").at(k) != v) ++mismatched;
  ok = ok && golden_ok;
  detail += "; golden manifest " + std::string(golden_ok ? "matches" : "differs") + " (" +
            std::to_string(golden.at("outputs").size()) + " outputs, " + std::to_string(mismatched) + " mismatched)";
  fs::remove_all(root);
  return verdict(ok, detail);
}

// --- 9 ---------------------------------------------------------------------
Outcome real_data() {
  const char* records = std::getenv("SOFTSPACE_REAL_RECORDS");
  if (!records || !*records) return {Verdict::Skip, "set SOFTSPACE_REAL_RECORDS (and optionally SOFTSPACE_REAL_ALIASES) to run"};
  PipelineConfig c;
  c.records = records;
  if (const char* a = std::getenv("SOFTSPACE_REAL_ALIASES")) c.aliases = a;
  if (const char* t = std::getenv("SOFTSPACE_REAL_TAXONOMY")) c.taxonomy = t;
  c.output_dir = (fs::temp_directory_path() / ("softspace_real_" + std::to_string(::getpid()))).string();
  Pipeline p(c);
  for (const char* s : {"ingest", "rca", "proximity", "powerlaw"}) p.run(s);
  const fs::path out = c.output_dir;
  const auto counts = nlohmann::json::parse(read_file(out / "counts.json"));
  const auto pl = nlohmann::json::parse(read_file(out / "powerlaw.json"));
  const auto retained = counts.at("tools_retained").get<std::size_t>();
  const auto threshold = counts.at("percentile_threshold").get<std::int64_t>();
  std::istringstream edges_in(read_file(out / "proximity_edges.csv"));
  const auto edges = io::read_table(edges_in, "edges").rows.size();

  std::map<std::string, std::int64_t> totals;
  {
    std::istringstream in(read_file(out / "software_totals.csv"));
    const auto t = io::read_table(in, "totals");
    for (const auto& row : t.rows) totals[row[t.column("software")]] = io::parse_int(row[t.column("papers")], "papers");
  }
  // Top of the paper's mention table.
  const std::vector<std::pair<std::string, std::int64_t>> table = {{"SPSS", 329080}, {"R", 186737}};
  int table_mismatch = 0;
  for (const auto& [name, n] : table)
    if (!totals.contains(name) || totals[name] != n) ++table_mismatch;
  const double alpha = pl.at("alpha").get<double>();
  const auto xmin = pl.at("x_min").get<std::int64_t>();
  const bool ok = retained == 520 && std::abs(static_cast<double>(threshold) - 990.0) <= 10.0 && edges == 10180 &&
                  table_mismatch == 0 && std::abs(alpha - 1.98) <= 0.05 && xmin == 503;
  fs::remove_all(out);
  return verdict(ok, "tools " + std::to_string(retained) + " at threshold " + std::to_string(threshold) + ", edges " +
                         std::to_string(edges) + ", table mismatches " + std::to_string(table_mismatch) + ", alpha " +
                         io::format_fixed(alpha, 3) + " at x_min " + std::to_string(xmin));
}

}  // namespace

int main() {
  criterion(1, "RCA matches scalar oracle", 5, rca_equivalence);
  criterion(2, "proximity dual-formulation identity", 5, proximity_identity);
  criterion(3, "disparity filter p-values and alpha monotonicity", 5, disparity_correctness);
  criterion(4, "maximum spanning tree optimality", 30, mst_optimality);
  criterion(5, "block model planted-partition recovery", 120, sbm_recovery);
  criterion(6, "HHI / Jaccard analytic cases and window count", 0, hhi_jaccard_cases);
  criterion(7, "discrete power-law recovery", 30, power_law_recovery);
  criterion(8, "end-to-end determinism and golden manifest", 0, end_to_end);
  criterion(9, "real-data headline numbers (optional)", 0, real_data);
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
