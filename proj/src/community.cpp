#include "softspace/community.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "json.hpp"
#include "softspace/corpus.hpp"
#include "softspace/delimited.hpp"
#include "softspace/error.hpp"
#include "softspace/proximity.hpp"
#include "softspace/rng.hpp"
#include "softspace/specialization.hpp"

namespace softspace {

std::optional<int> CommunityAssignment::block_of(const std::string& node) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == node) return labels[i];
  return std::nullopt;
}

SbmGraph sbm_graph(const ProximityNetwork& net, int multiplicity_scale) {
  if (multiplicity_scale < 0) throw ArgumentError("multiplicity scale must be >= 0");
  SbmGraph g;
  g.n = net.n_nodes();
  g.edges.reserve(net.n_edges());
  for (const auto& e : net.edges) {
    if (!(e.weight > 0.0)) continue;
    int m = 1;
    if (multiplicity_scale > 0) m = std::max(1, static_cast<int>(std::ceil(e.weight * multiplicity_scale - 1e-12)));
    g.edges.push_back({e.i, e.j, m});
  }
  return g;
}

namespace {

constexpr double kLn2 = 0.69314718055994530942;

class LogFactorials {
 public:
  explicit LogFactorials(std::size_t n) : table_(n + 1) {
    for (std::size_t i = 0; i <= n; ++i) table_[i] = std::lgamma(static_cast<double>(i) + 1.0);
  }

  double f(std::int64_t x) const {
    return static_cast<std::size_t>(x) < table_.size() ? table_[x] : std::lgamma(static_cast<double>(x) + 1.0);
  }
  // ln(x!!) for even x.
  double df(std::int64_t x) const { return static_cast<double>(x / 2) * kLn2 + f(x / 2); }
  double choose(std::int64_t n, std::int64_t k) const {
    if (k < 0 || k > n) return 0.0;
    return f(n) - f(k) - f(n - k);
  }
  // Uniform prior over degree sequences of a block: multiset coefficient.
  double degree_prior(std::int64_t n_r, std::int64_t e_r) const {
    if (n_r <= 0) return 0.0;
    return choose(n_r + e_r - 1, e_r);
  }

 private:
  std::vector<double> table_;
};

double edge_count_prior(std::int64_t blocks, std::int64_t edges) {
  const double pairs = static_cast<double>(blocks) * static_cast<double>(blocks + 1) / 2.0;
  const double e = static_cast<double>(edges);
  return std::lgamma(pairs + e) - std::lgamma(e + 1.0) - std::lgamma(pairs);
}

struct Adjacency {
  std::vector<std::vector<std::pair<std::size_t, int>>> nbrs;
  std::vector<std::int64_t> degree;
  std::int64_t total_edges = 0;
  double multiplicity_term = 0.0;  // sum ln A_ij!
};

Adjacency build_adjacency(const SbmGraph& g) {
  Adjacency a;
  a.nbrs.resize(g.n);
  a.degree.assign(g.n, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> mult;
  for (const auto& e : g.edges) {
    if (e.u == e.v) throw ArgumentError("block model graph must not contain self-loops");
    if (e.u >= g.n || e.v >= g.n) throw ArgumentError("edge endpoint out of range");
    if (e.multiplicity <= 0) throw ArgumentError("edge multiplicity must be positive");
    mult[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.multiplicity;
  }
  for (const auto& [uv, m] : mult) {
    a.nbrs[uv.first].emplace_back(uv.second, static_cast<int>(m));
    a.nbrs[uv.second].emplace_back(uv.first, static_cast<int>(m));
    a.degree[uv.first] += m;
    a.degree[uv.second] += m;
    a.total_edges += m;
    a.multiplicity_term += std::lgamma(static_cast<double>(m) + 1.0);
  }
  return a;
}

// Incrementally maintained block model state over a dense block matrix.
class BlockState {
 public:
  explicit BlockState(const SbmGraph& g)
      : adj_(build_adjacency(g)),
        n_(static_cast<std::int64_t>(g.n)),
        lf_(static_cast<std::size_t>(n_ + 2 * adj_.total_edges + 2)),
        cap_(g.n),
        block_(g.n),
        size_(g.n, 1),
        er_(adj_.degree),
        ers_(g.n * g.n, 0),
        members_(g.n),
        counts_(g.n, 0) {
    for (std::size_t i = 0; i < g.n; ++i) {
      block_[i] = static_cast<int>(i);
      members_[i] = {i};
      for (const auto& [j, m] : adj_.nbrs[i]) ers_[i * cap_ + j] += m;
    }
    blocks_ = n_;
    for (std::int64_t k : adj_.degree) degree_term_ += lf_.f(k);
    dl_ = full();
  }

  double dl() const { return dl_; }
  std::int64_t blocks() const { return blocks_; }
  const std::vector<int>& labels() const { return block_; }

  std::vector<std::size_t> active() const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < cap_; ++r)
      if (size_[r] > 0) out.push_back(r);
    return out;
  }

  // Recomputes the description length from the block matrix.
  double full() const {
    const auto act = active();
    double s = adj_.multiplicity_term - degree_term_;
    double lk = 0.0, lb_sizes = 0.0;
    for (std::size_t a = 0; a < act.size(); ++a) {
      const std::size_t r = act[a];
      s += lf_.f(er_[r]) - lf_.df(e(r, r));
      for (std::size_t b = a + 1; b < act.size(); ++b) s -= lf_.f(e(r, act[b]));
      lk += lf_.degree_prior(size_[r], er_[r]);
      lb_sizes += lf_.f(size_[r]);
    }
    const double lb = std::log(static_cast<double>(n_)) + lf_.choose(n_ - 1, blocks_ - 1) + lf_.f(n_) - lb_sizes;
    return s + lb + edge_count_prior(blocks_, adj_.total_edges) + lk;
  }

  // Tallies edge endpoints from v into each block; returns the touched blocks.
  const std::vector<std::size_t>& tally(std::size_t v) {
    for (std::size_t t : touched_) counts_[t] = 0;
    touched_.clear();
    for (const auto& [u, m] : adj_.nbrs[v]) {
      const auto t = static_cast<std::size_t>(block_[u]);
      if (counts_[t] == 0) touched_.push_back(t);
      counts_[t] += m;
    }
    std::sort(touched_.begin(), touched_.end());
    return touched_;
  }

  // Change in DL from moving v (already tallied) into block s.
  double move_delta(std::size_t v, std::size_t s) const {
    const auto r = static_cast<std::size_t>(block_[v]);
    const std::int64_t k = adj_.degree[v];
    const std::int64_t cr = counts_[r], cs = counts_[s];
    double d = 0.0;
    for (std::size_t t : touched_) {
      if (t == r || t == s) continue;
      const std::int64_t c = counts_[t], rt = e(r, t), st = e(s, t);
      d -= lf_.f(rt - c) - lf_.f(rt) + lf_.f(st + c) - lf_.f(st);
    }
    const std::int64_t rs = e(r, s), rr = e(r, r), ss = e(s, s);
    d -= lf_.f(rs + cr - cs) - lf_.f(rs);
    d -= lf_.df(rr - 2 * cr) - lf_.df(rr);
    d -= lf_.df(ss + 2 * cs) - lf_.df(ss);
    d += lf_.f(er_[r] - k) - lf_.f(er_[r]) + lf_.f(er_[s] + k) - lf_.f(er_[s]);
    d += lf_.degree_prior(size_[r] - 1, er_[r] - k) - lf_.degree_prior(size_[r], er_[r]);
    d += lf_.degree_prior(size_[s] + 1, er_[s] + k) - lf_.degree_prior(size_[s], er_[s]);
    d += lf_.f(size_[r]) - lf_.f(size_[r] - 1) + lf_.f(size_[s]) - lf_.f(size_[s] + 1);
    return d;
  }

  void apply_move(std::size_t v, std::size_t s, double delta) {
    const auto r = static_cast<std::size_t>(block_[v]);
    const std::int64_t k = adj_.degree[v];
    const std::int64_t cr = counts_[r], cs = counts_[s];
    for (std::size_t t : touched_) {
      if (t == r || t == s) continue;
      add(r, t, -counts_[t]);
      add(s, t, counts_[t]);
    }
    add(r, s, cr - cs);
    ers_[r * cap_ + r] -= 2 * cr;
    ers_[s * cap_ + s] += 2 * cs;
    er_[r] -= k;
    er_[s] += k;
    --size_[r];
    ++size_[s];
    block_[v] = static_cast<int>(s);
    auto& mr = members_[r];
    mr.erase(std::find(mr.begin(), mr.end(), v));
    members_[s].push_back(v);
    dl_ += delta;
  }

  // Block-count dependent part of a merge delta; shared by every pair in a round.
  double merge_base() const {
    return lf_.choose(n_ - 1, blocks_ - 2) - lf_.choose(n_ - 1, blocks_ - 1) +
           edge_count_prior(blocks_ - 1, adj_.total_edges) - edge_count_prior(blocks_, adj_.total_edges);
  }

  double merge_delta(std::size_t r, std::size_t s, const std::vector<std::size_t>& act, double base) const {
    double d = base;
    const std::int64_t* row_r = &ers_[r * cap_];
    const std::int64_t* row_s = &ers_[s * cap_];
    for (std::size_t t : act) {
      const std::int64_t a = row_r[t];
      if (a == 0 || t == r || t == s) continue;
      const std::int64_t c = row_s[t];
      d -= lf_.f(a + c) - lf_.f(a) - lf_.f(c);
    }
    const std::int64_t rs = row_r[s], rr = row_r[r], ss = row_s[s];
    d += lf_.f(rs);
    d -= lf_.df(ss + rr + 2 * rs) - lf_.df(ss) - lf_.df(rr);
    d += lf_.f(er_[r] + er_[s]) - lf_.f(er_[r]) - lf_.f(er_[s]);
    d += lf_.degree_prior(size_[r] + size_[s], er_[r] + er_[s]) - lf_.degree_prior(size_[r], er_[r]) -
         lf_.degree_prior(size_[s], er_[s]);
    d += lf_.f(size_[r]) + lf_.f(size_[s]) - lf_.f(size_[r] + size_[s]);
    return d;
  }

  // Merges r into s.
  void apply_merge(std::size_t r, std::size_t s, double delta) {
    const std::int64_t new_ss = e(s, s) + e(r, r) + 2 * e(r, s);
    for (std::size_t t = 0; t < cap_; ++t) {
      if (t == r || t == s) continue;
      const std::int64_t a = e(r, t);
      if (a == 0) continue;
      add(s, t, a);
      add(r, t, -a);
    }
    ers_[s * cap_ + s] = new_ss;
    ers_[r * cap_ + r] = 0;
    ers_[r * cap_ + s] = 0;
    ers_[s * cap_ + r] = 0;
    er_[s] += er_[r];
    er_[r] = 0;
    size_[s] += size_[r];
    size_[r] = 0;
    for (std::size_t v : members_[r]) block_[v] = static_cast<int>(s);
    members_[s].insert(members_[s].end(), members_[r].begin(), members_[r].end());
    members_[r].clear();
    --blocks_;
    dl_ += delta;
  }

  std::int64_t block_size(std::size_t r) const { return size_[r]; }
  std::size_t n_nodes() const { return static_cast<std::size_t>(n_); }

 private:
  std::int64_t e(std::size_t r, std::size_t s) const { return ers_[r * cap_ + s]; }
  void add(std::size_t r, std::size_t s, std::int64_t d) {
    ers_[r * cap_ + s] += d;
    ers_[s * cap_ + r] += d;
  }

  Adjacency adj_;
  std::int64_t n_;
  LogFactorials lf_;
  std::size_t cap_;
  std::vector<int> block_;
  std::vector<std::int64_t> size_;
  std::vector<std::int64_t> er_;
  std::vector<std::int64_t> ers_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::int64_t> counts_;
  std::vector<std::size_t> touched_;
  std::int64_t blocks_ = 0;
  double degree_term_ = 0.0;
  double dl_ = 0.0;
};

constexpr double kAcceptTolerance = 1e-9;

std::vector<int> renumber(const std::vector<int>& labels) {
  std::map<int, int> remap;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = remap.try_emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

struct RunResult {
  std::vector<int> labels;
  double dl = 0.0;
  std::vector<SbmTraceStep> trace;
  std::vector<std::pair<int, double>> trajectory;
};

void sweep_moves(BlockState& st, Rng& rng, int max_sweeps, std::vector<SbmTraceStep>& trace) {
  std::vector<std::size_t> order(st.n_nodes());
  std::iota(order.begin(), order.end(), 0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    rng.shuffle(order);
    std::size_t accepted = 0;
    for (std::size_t v : order) {
      const auto r = static_cast<std::size_t>(st.labels()[v]);
      if (st.block_size(r) <= 1) continue;
      const auto& cands = st.tally(v);
      double best = -kAcceptTolerance;
      std::size_t best_s = r;
      for (std::size_t s : cands) {
        if (s == r) continue;
        const double d = st.move_delta(v, s);
        if (d < best) {
          best = d;
          best_s = s;
        }
      }
      if (best_s == r) continue;
      const double before = st.dl();
      st.apply_move(v, best_s, best);
      trace.push_back({SbmTraceStep::Kind::Move, static_cast<int>(st.blocks()), before, st.dl()});
      ++accepted;
    }
    if (accepted == 0) break;
  }
}

RunResult run_agglomeration(const SbmGraph& g, std::uint64_t seed, const SbmConfig& cfg) {
  BlockState st(g);
  Rng rng(seed);
  RunResult res;
  res.labels = st.labels();
  res.dl = st.dl();
  res.trajectory.emplace_back(static_cast<int>(st.blocks()), st.dl());

  struct Candidate {
    double delta;
    std::size_t r, s;
  };
  while (st.blocks() > 1) {
    const auto act = st.active();
    const double base = st.merge_base();
    std::vector<Candidate> cands;
    cands.reserve(act.size() * (act.size() - 1) / 2);
    for (std::size_t a = 0; a < act.size(); ++a)
      for (std::size_t b = a + 1; b < act.size(); ++b)
        cands.push_back({st.merge_delta(act[a], act[b], act, base), act[a], act[b]});
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
      return std::tie(x.delta, x.r, x.s) < std::tie(y.delta, y.r, y.s);
    });

    const auto quota = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(cfg.merge_fraction * static_cast<double>(act.size()))));
    std::vector<char> used(st.n_nodes(), 0);
    std::size_t merged = 0;
    for (const auto& c : cands) {
      if (merged == quota) break;
      if (used[c.r] || used[c.s]) continue;
      used[c.r] = used[c.s] = 1;
      // Earlier merges in this round may have changed the pair's delta.
      std::size_t from = c.r, into = c.s;
      if (st.block_size(from) > st.block_size(into)) std::swap(from, into);
      const auto now = st.active();
      const double d = st.merge_delta(from, into, now, st.merge_base());
      const double before = st.dl();
      st.apply_merge(from, into, d);
      res.trace.push_back({SbmTraceStep::Kind::Merge, static_cast<int>(st.blocks()), before, st.dl()});
      ++merged;
    }
    sweep_moves(st, rng, cfg.sweeps, res.trace);
    res.trajectory.emplace_back(static_cast<int>(st.blocks()), st.dl());
    if (st.dl() <= res.dl) {
      res.dl = st.dl();
      res.labels = st.labels();
    }
  }
  res.labels = renumber(res.labels);
  return res;
}

}  // namespace

double description_length(const SbmGraph& g, std::span<const int> labels) {
  if (labels.size() != g.n) throw ArgumentError("label vector does not match graph size");
  if (g.n == 0) throw ArgumentError("description length of an empty graph");
  const auto b = renumber(std::vector<int>(labels.begin(), labels.end()));
  const auto nb = static_cast<std::size_t>(*std::max_element(b.begin(), b.end()) + 1);
  const Adjacency adj = build_adjacency(g);
  const std::int64_t n = static_cast<std::int64_t>(g.n), e_total = adj.total_edges;
  const LogFactorials lf(static_cast<std::size_t>(n + 2 * e_total + 2));

  std::vector<std::int64_t> sizes(nb, 0), er(nb, 0), ers(nb * nb, 0);
  for (std::size_t i = 0; i < g.n; ++i) {
    ++sizes[b[i]];
    er[b[i]] += adj.degree[i];
  }
  for (std::size_t u = 0; u < g.n; ++u)
    for (const auto& [v, m] : adj.nbrs[u]) ers[b[u] * nb + b[v]] += m;  // both directions visited

  double s = adj.multiplicity_term;
  for (std::int64_t k : adj.degree) s -= lf.f(k);
  double lk = 0.0, lb = std::log(static_cast<double>(n)) + lf.choose(n - 1, static_cast<std::int64_t>(nb) - 1) + lf.f(n);
  for (std::size_t r = 0; r < nb; ++r) {
    s += lf.f(er[r]) - lf.df(ers[r * nb + r]);
    for (std::size_t t = r + 1; t < nb; ++t) s -= lf.f(ers[r * nb + t]);
    lk += lf.degree_prior(sizes[r], er[r]);
    lb -= lf.f(sizes[r]);
  }
  return s + lb + edge_count_prior(static_cast<std::int64_t>(nb), e_total) + lk;
}

SbmFit fit_sbm_graph(const SbmGraph& g, std::uint64_t seed, const SbmConfig& config) {
  if (g.n == 0) throw ArgumentError("cannot fit a block model to an empty network");
  if (config.restarts < 1) throw ArgumentError("restarts must be >= 1");
  if (config.sweeps < 0) throw ArgumentError("sweeps must be >= 0");
  if (!(config.merge_fraction > 0.0 && config.merge_fraction <= 0.5))
    throw ArgumentError("merge fraction must lie in (0, 0.5]");

  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < config.restarts; ++k) seeds.push_back(k == 0 ? seed : derive_seed(seed, "sbm-restart", k));
  std::vector<RunResult> runs;
  if (config.restarts == 1) {
    runs.push_back(run_agglomeration(g, seeds[0], config));
  } else {
    std::vector<std::future<RunResult>> jobs;
    for (auto s : seeds) jobs.push_back(std::async(std::launch::async, run_agglomeration, std::cref(g), s, config));
    for (auto& j : jobs) runs.push_back(j.get());
  }
  // Lowest DL wins; ties go to the earlier seed.
  std::size_t best = 0;
  for (std::size_t k = 1; k < runs.size(); ++k)
    if (runs[k].dl < runs[best].dl - kAcceptTolerance) best = k;

  SbmFit fit;
  auto& a = fit.assignment;
  a.labels = std::move(runs[best].labels);
  a.num_blocks = *std::max_element(a.labels.begin(), a.labels.end()) + 1;
  a.description_length = description_length(g, a.labels);
  a.seed = seeds[best];
  for (std::size_t i = 0; i < g.n; ++i) a.nodes.push_back(std::to_string(i));
  if (std::abs(a.description_length - runs[best].dl) > 1e-6 * std::max(1.0, std::abs(a.description_length))) {
    throw InvariantError("incremental description length drifted from the recomputed value");
  }
  fit.trace = std::move(runs[best].trace);
  fit.trajectory = std::move(runs[best].trajectory);
  return fit;
}

SbmFit fit_sbm_detailed(const ProximityNetwork& net, std::uint64_t seed, const SbmConfig& config) {
  if (net.n_nodes() == 0) throw ArgumentError("cannot fit a block model to an empty network");
  SbmFit fit = fit_sbm_graph(sbm_graph(net, config.multiplicity_scale), seed, config);
  fit.assignment.nodes = net.nodes;
  return fit;
}

CommunityAssignment fit_sbm(const ProximityNetwork& net, std::uint64_t seed, const SbmConfig& config) {
  return fit_sbm_detailed(net, seed, config).assignment;
}

double normalized_mutual_information(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size() || a.empty()) throw ArgumentError("partitions must be nonempty and of equal size");
  const double n = static_cast<double>(a.size());
  std::map<int, double> pa, pb;
  std::map<std::pair<int, int>, double> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa[a[i]] += 1.0;
    pb[b[i]] += 1.0;
    joint[{a[i], b[i]}] += 1.0;
  }
  auto entropy = [n](const std::map<int, double>& p) {
    double h = 0.0;
    for (const auto& [k, c] : p) h -= (c / n) * std::log(c / n);
    return h;
  };
  const double ha = entropy(pa), hb = entropy(pb);
  if (ha + hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [kk, c] : joint) mi += (c / n) * std::log((c * n) / (pa[kk.first] * pb[kk.second]));
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

std::vector<CommunitySummary> describe_communities(const CommunityAssignment& a, const CountMatrix& m) {
  std::vector<CommunitySummary> out(static_cast<std::size_t>(a.num_blocks));
  for (int b = 0; b < a.num_blocks; ++b) out[b].id = b;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    auto& s = out[static_cast<std::size_t>(a.labels[i])];
    ++s.size;
    const auto c = m.col_index(a.nodes[i]);
    s.top_members.emplace_back(a.nodes[i], c ? m.software_papers[*c] : 0);
  }
  for (auto& s : out) {
    std::sort(s.top_members.begin(), s.top_members.end(), [](const auto& x, const auto& y) {
      return x.second != y.second ? x.second > y.second : x.first < y.first;
    });
    if (s.top_members.size() > 10) s.top_members.resize(10);
  }
  if (m.total() > 0) {
    bool any_covered = false;
    for (const auto& node : a.nodes) any_covered = any_covered || m.col_index(node).has_value();
    if (any_covered) {
      const auto crca = community_rca(m, a).rca;
      for (std::size_t c = 0; c < crca.n_cols(); ++c) {
        auto& s = out[c];
        for (std::size_t r = 0; r < crca.n_rows(); ++r)
          if (!crca.is_masked(r, c) && crca.at(r, c) > 1.0) s.top_disciplines.emplace_back(crca.rows[r], crca.at(r, c));
        std::sort(s.top_disciplines.begin(), s.top_disciplines.end(), [](const auto& x, const auto& y) {
          return x.second != y.second ? x.second > y.second : x.first < y.first;
        });
        if (s.top_disciplines.size() > 10) s.top_disciplines.resize(10);
      }
    }
  }
  return out;
}

std::string communities_report_json(const CommunityAssignment& a, const std::vector<CommunitySummary>& summaries,
                                    const DisciplineTaxonomy& taxonomy) {
  nlohmann::ordered_json j;
  j["model"] = "flat degree-corrected stochastic block model (microcanonical, uniform priors)";
  j["num_blocks"] = a.num_blocks;
  j["description_length_nats"] = a.description_length;
  j["seed"] = a.seed;
  auto list = nlohmann::ordered_json::array();
  for (const auto& s : summaries) {
    nlohmann::ordered_json c;
    c["id"] = s.id;
    c["size"] = s.size;
    auto members = nlohmann::ordered_json::array();
    for (const auto& [name, n] : s.top_members) members.push_back({{"tool", name}, {"mentions", n}});
    c["top_members"] = std::move(members);
    auto divs = nlohmann::ordered_json::array();
    for (const auto& [code, v] : s.top_disciplines)
      divs.push_back({{"discipline", code}, {"label", taxonomy.label_of(code)}, {"rca", v}});
    c["top_disciplines"] = std::move(divs);
    list.push_back(std::move(c));
  }
  j["communities"] = std::move(list);
  return j.dump(1);
}

void write_assignment(std::ostream& out, const CommunityAssignment& a) {
  io::write_row(out, {"tool", "community"});
  for (std::size_t i = 0; i < a.nodes.size(); ++i) io::write_row(out, {a.nodes[i], std::to_string(a.labels[i])});
}

CommunityAssignment read_assignment(std::istream& in, const std::string& source_name) {
  io::Table t = io::read_table(in, source_name);
  const auto c_tool = t.column("tool"), c_comm = t.column("community");
  CommunityAssignment a;
  std::set<int> ids;
  for (const auto& row : t.rows) {
    a.nodes.push_back(row[c_tool]);
    const auto id = io::parse_int(row[c_comm], "community");
    if (id < 0) throw DataError(source_name + ": negative community id");
    a.labels.push_back(static_cast<int>(id));
    ids.insert(static_cast<int>(id));
  }
  a.num_blocks = static_cast<int>(ids.size());
  if (!ids.empty() && *ids.rbegin() != a.num_blocks - 1)
    throw DataError(source_name + ": community ids are not contiguous from 0");
  return a;
}

}  // namespace softspace
