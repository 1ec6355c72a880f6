#include "softspace/synthkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "softspace/delimited.hpp"
#include "softspace/error.hpp"
#include "softspace/rng.hpp"
#include "softspace/scalefit.hpp"
#include "softspace/taxonomy.hpp"

namespace softspace::synth {

std::string tool_name(int t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "Tool%04d", t);
  return buf;
}

namespace {

std::string paper_id(int p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "P%07d", p);
  return buf;
}

void validate(const SynthConfig& c) {
  const auto n_div = static_cast<int>(DisciplineTaxonomy::anzsrc_default().divisions().size());
  if (c.n_disciplines < 1 || c.n_disciplines > n_div)
    throw ArgumentError("n_disciplines must lie in [1, " + std::to_string(n_div) + "]");
  if (c.n_tools < 1) throw ArgumentError("n_tools must be >= 1");
  if (c.n_papers < 0) throw ArgumentError("n_papers must be >= 0");
  if (c.planted_blocks && (*c.planted_blocks < 1 || *c.planted_blocks > c.n_tools))
    throw ArgumentError("planted_blocks must lie in [1, n_tools]");
  if (c.tail_exponent && !(*c.tail_exponent > 1.0)) throw ArgumentError("tail_exponent must be > 1");
  if (c.years.last < c.years.first) throw ArgumentError("empty year range");
}

// k distinct indices from [0, n), Floyd's algorithm, in draw order.
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t k) {
  std::set<std::size_t> chosen;
  std::vector<std::size_t> out;
  for (std::size_t j = n - k; j < n; ++j) {
    std::size_t t = rng.below(j + 1);
    if (chosen.contains(t)) t = j;
    chosen.insert(t);
    out.push_back(t);
  }
  return out;
}

}  // namespace

std::vector<MentionRecord> generate_corpus(const SynthConfig& c) {
  validate(c);
  std::vector<MentionRecord> out;
  if (c.n_papers == 0) return out;
  Rng rng(c.seed);
  const auto taxonomy = DisciplineTaxonomy::anzsrc_default();
  const auto& divisions = taxonomy.divisions();
  const int blocks = c.planted_blocks.value_or(1);

  struct Paper {
    int year;
    std::vector<int> disciplines;
    bool has_doi;
  };
  std::vector<Paper> papers(static_cast<std::size_t>(c.n_papers));
  std::vector<std::vector<std::size_t>> by_block(static_cast<std::size_t>(blocks));
  for (std::size_t p = 0; p < papers.size(); ++p) {
    auto& pp = papers[p];
    pp.year = c.years.first + static_cast<int>(rng.below(static_cast<std::uint64_t>(c.years.last - c.years.first + 1)));
    const int primary = static_cast<int>(rng.below(static_cast<std::uint64_t>(c.n_disciplines)));
    pp.disciplines.push_back(primary);
    if (c.n_disciplines > 1 && rng.bernoulli(0.2)) {
      int second = static_cast<int>(rng.below(static_cast<std::uint64_t>(c.n_disciplines - 1)));
      if (second >= primary) ++second;
      pp.disciplines.push_back(second);
    }
    pp.has_doi = !rng.bernoulli(c.noise * 0.2);
    by_block[static_cast<std::size_t>(primary % blocks)].push_back(p);
  }

  // paper -> mentioned tools
  std::vector<std::vector<int>> mentions(papers.size());
  const double mean_per_tool = std::max(1.0, 3.0 * c.n_papers / c.n_tools);
  for (int t = 0; t < c.n_tools; ++t) {
    std::int64_t target;
    if (c.tail_exponent) target = sample_power_law(rng, *c.tail_exponent, 1);
    else target = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2.0 * mean_per_tool - 1.0)));
    target = std::min<std::int64_t>(target, c.n_papers);

    std::set<std::size_t> chosen;
    const auto& home = by_block[static_cast<std::size_t>(t % blocks)];
    if (c.planted_blocks && !home.empty()) {
      auto k_home = std::min<std::size_t>(home.size(), static_cast<std::size_t>(std::llround(c.block_bias * target)));
      for (auto i : sample_distinct(rng, home.size(), k_home)) chosen.insert(home[i]);
    }
    const auto rest = static_cast<std::size_t>(target) - std::min<std::size_t>(chosen.size(), target);
    if (rest > 0) {
      // Draw from the remaining papers so the tool total is exactly `target`.
      std::vector<std::size_t> pool;
      pool.reserve(papers.size() - chosen.size());
      for (std::size_t p = 0; p < papers.size(); ++p)
        if (!chosen.contains(p)) pool.push_back(p);
      for (auto i : sample_distinct(rng, pool.size(), std::min(rest, pool.size()))) chosen.insert(pool[i]);
    }
    for (auto p : chosen) mentions[p].push_back(t);
  }

  auto make = [&](std::size_t p, std::string name, CurationLabel label) {
    const auto& pp = papers[p];
    MentionRecord r;
    r.paper_id = paper_id(static_cast<int>(p));
    r.raw_name = std::move(name);
    r.label = label;
    if (pp.has_doi) r.doi = "10.5555/synth." + r.paper_id;
    r.year = pp.year;
    for (int d : pp.disciplines) r.discipline_codes.push_back(divisions[static_cast<std::size_t>(d)].code);
    return r;
  };

  int noise_id = 0;
  for (std::size_t p = 0; p < papers.size(); ++p) {
    std::sort(mentions[p].begin(), mentions[p].end());
    for (int t : mentions[p]) {
      std::string name = tool_name(t);
      CurationLabel label = CurationLabel::Software;
      const double u = rng.uniform();
      if (u < c.noise * 0.3) {
        name = io::to_lower_ascii(name);
      } else if (u < c.noise * 0.5 && t % 5 == 0) {
        name += "-pkg";
      } else if (u < c.noise) {
        label = CurationLabel::NotCurated;
      }
      out.push_back(make(p, std::move(name), label));
      // Occasional repeated mention of the same tool in one paper.
      if (rng.bernoulli(0.1)) out.push_back(make(p, tool_name(t), CurationLabel::Software));
    }
    if (rng.bernoulli(c.noise)) {
      static constexpr CurationLabel kNoise[] = {CurationLabel::NotSoftware, CurationLabel::Unclear,
                                                 CurationLabel::NotCurated};
      out.push_back(make(p, "Noise" + std::to_string(noise_id++), kNoise[rng.below(3)]));
    }
  }
  return out;
}

std::map<std::string, std::string> generate_aliases(const SynthConfig& c) {
  std::map<std::string, std::string> out;
  for (int t = 0; t < c.n_tools; t += 5) out[tool_name(t) + "-pkg"] = tool_name(t);
  return out;
}

PlantedGraph planted_partition(int blocks, int block_size, double p_in, double p_out, std::uint64_t seed) {
  if (blocks < 1 || block_size < 1) throw ArgumentError("planted partition needs blocks, block_size >= 1");
  Rng rng(seed);
  const int n = blocks * block_size;
  PlantedGraph g;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    names.push_back("v" + std::to_string(i));
    g.labels.push_back(i / block_size);
  }
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(g.labels[i] == g.labels[j] ? p_in : p_out))
        edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), 1.0});
  g.network = make_network(std::move(names), std::move(edges));
  return g;
}

ProximityNetwork random_weighted_graph(int n, double edge_prob, bool connected, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("graph needs at least one node");
  Rng rng(seed);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
  std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
  std::vector<WeightedEdge> edges;
  auto weight = [&] { return static_cast<double>(1 + rng.below(32)) / 32.0; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(edge_prob)) {
        edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), weight()});
        has[i][j] = 1;
      }
  if (connected) {
    // Join components by linking each node to a random earlier node when
    // it is not yet reachable.
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (const auto& e : edges) comp[find(static_cast<int>(e.i))] = find(static_cast<int>(e.j));
    for (int i = 1; i < n; ++i) {
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
      if (find(i) != find(j)) {
        comp[find(i)] = find(j);
        edges.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(i), weight()});
      }
    }
  }
  return make_network(std::move(names), std::move(edges));
}

namespace oracle {

std::vector<std::vector<std::optional<double>>> rca(const std::vector<std::vector<long long>>& counts) {
  const std::size_t rows = counts.size();
  const std::size_t cols = rows ? counts[0].size() : 0;
  if (rows > kMaxMatrix || cols > kMaxMatrix) throw ArgumentError("oracle::rca limited to 8 x 8");
  std::vector<std::vector<std::optional<double>>> out(rows, std::vector<std::optional<double>>(cols));
  double grand = 0.0;
  for (const auto& row : counts)
    for (long long v : row) grand += static_cast<double>(v);
  for (std::size_t d = 0; d < rows; ++d) {
    for (std::size_t s = 0; s < cols; ++s) {
      double in_discipline = 0.0, of_software = 0.0;
      for (std::size_t k = 0; k < cols; ++k) in_discipline += static_cast<double>(counts[d][k]);
      for (std::size_t k = 0; k < rows; ++k) of_software += static_cast<double>(counts[k][s]);
      if (in_discipline == 0.0 || of_software == 0.0) continue;
      const double share_in_discipline = static_cast<double>(counts[d][s]) / in_discipline;
      const double share_overall = of_software / grand;
      out[d][s] = share_in_discipline / share_overall;
    }
  }
  return out;
}

double proximity(const std::set<int>& di, const std::set<int>& dj) {
  if (di.empty() || dj.empty()) return 0.0;
  double both = 0.0;
  for (int d : di)
    if (dj.count(d)) both += 1.0;
  const double p_i_given_j = both / static_cast<double>(dj.size());
  const double p_j_given_i = both / static_cast<double>(di.size());
  return std::min(p_i_given_j, p_j_given_i);
}

double mst_weight(int n, const std::vector<std::tuple<int, int, double>>& edges) {
  if (n < 1 || static_cast<std::size_t>(n) > kMaxTreeNodes) throw ArgumentError("oracle::mst_weight limited to 8 nodes");
  if (n == 1) return 0.0;
  double best = -1.0;
  std::vector<int> chosen;
  // Tree test: n-1 edges and no cycle, checked by naive label propagation.
  auto acyclic_with = [&](int a, int b) {
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);
    for (int k : chosen) {
      const int from = label[std::get<0>(edges[k])], to = label[std::get<1>(edges[k])];
      for (auto& l : label)
        if (l == from) l = to;
    }
    return label[a] != label[b];
  };
  std::function<void(std::size_t, double)> recurse = [&](std::size_t idx, double weight) {
    if (static_cast<int>(chosen.size()) == n - 1) {
      best = std::max(best, weight);
      return;
    }
    if (idx == edges.size()) return;
    if (edges.size() - idx < static_cast<std::size_t>(n - 1) - chosen.size()) return;
    const auto& [a, b, w] = edges[idx];
    if (acyclic_with(a, b)) {
      chosen.push_back(static_cast<int>(idx));
      recurse(idx + 1, weight + w);
      chosen.pop_back();
    }
    recurse(idx + 1, weight);
  };
  recurse(0, 0.0);
  if (best < 0.0) throw ArgumentError("oracle::mst_weight: graph is not connected");
  return best;
}

std::optional<double> hhi(const std::vector<int>& communities_of_tools) {
  if (communities_of_tools.empty()) return std::nullopt;
  std::map<int, int> tally;
  for (int c : communities_of_tools) tally[c] += 1;
  double sum = 0.0;
  for (const auto& [c, k] : tally) {
    const double share = static_cast<double>(k) / static_cast<double>(communities_of_tools.size());
    sum += share * share;
  }
  return sum;
}

}  // namespace oracle

}  // namespace softspace::synth
