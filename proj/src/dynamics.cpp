#include "softspace/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "softspace/delimited.hpp"
#include "softspace/error.hpp"

namespace softspace {

std::vector<RollingWindow> make_windows(YearRange years, int length, int step) {
  if (length < 1) throw ArgumentError("window length must be >= 1");
  if (step < 1) throw ArgumentError("window step must be >= 1");
  if (years.last < years.first) throw ArgumentError("empty year range");
  std::vector<RollingWindow> out;
  for (int start = years.first; start + length - 1 <= years.last; start += step)
    out.push_back({start, start + length - 1});
  return out;
}

WindowedSpecialization windowed_specialization(std::span<const MentionRecord> records, RollingWindow window,
                                               const DisciplineTaxonomy& taxonomy,
                                               std::span<const std::string> entities, Level level) {
  std::vector<MentionRecord> inside;
  for (const auto& r : records)
    if (window.contains(r.year)) inside.push_back(r);
  CountMatrix full = build_count_matrix(inside, taxonomy, level, {window.start_year, window.end_year});

  // Restrict to the entity universe; entities unseen in the window get zero columns.
  CountMatrix m;
  m.rows = full.rows;
  m.cols.assign(entities.begin(), entities.end());
  m.year_range = full.year_range;
  m.counts.assign(m.rows.size() * m.cols.size(), 0);
  m.software_papers.assign(m.cols.size(), 0);
  for (std::size_t j = 0; j < m.cols.size(); ++j) {
    if (auto c = full.col_index(m.cols[j])) {
      m.software_papers[j] = full.software_papers[*c];
      for (std::size_t r = 0; r < m.rows.size(); ++r) m.at(r, j) = full.at(r, *c);
    }
  }

  WindowedSpecialization out;
  std::set<std::string> papers;
  for (const auto& r : inside) papers.insert(r.paper_id);
  out.papers = papers.size();
  if (m.total() == 0) {
    out.empty = true;
    out.spec.disciplines = m.rows;
    for (const auto& d : m.rows) out.spec.members[d];
    return out;
  }
  out.spec = specialize(rca(m), 1.0, Comparison::Strict);
  return out;
}

std::optional<double> hhi(const SpecializationSet& spec, const CommunityAssignment& assignment,
                          const std::string& division, HhiDiagnostics* diag) {
  std::map<std::string, int> block_of;
  for (std::size_t i = 0; i < assignment.nodes.size(); ++i) block_of[assignment.nodes[i]] = assignment.labels[i];
  std::map<int, std::size_t> per_block;
  std::size_t total = 0, unassigned = 0;
  for (const auto& tool : spec.of(division)) {
    auto it = block_of.find(tool);
    if (it == block_of.end()) {
      ++unassigned;
      continue;
    }
    ++per_block[it->second];
    ++total;
  }
  if (diag) diag->unassigned_tools = unassigned;
  if (total == 0) return std::nullopt;
  double h = 0.0;
  for (const auto& [b, n] : per_block) {
    const double share = static_cast<double>(n) / static_cast<double>(total);
    h += share * share;
  }
  return h;
}

std::optional<double> jaccard_stability(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return std::nullopt;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<PortfolioSeries> portfolio_series(std::span<const MentionRecord> records,
                                              std::span<const RollingWindow> windows,
                                              const DisciplineTaxonomy& taxonomy,
                                              std::span<const std::string> entities,
                                              const CommunityAssignment& assignment,
                                              std::span<const std::string> divisions) {
  std::vector<PortfolioSeries> out(divisions.size());
  for (std::size_t d = 0; d < divisions.size(); ++d) {
    out[d].division = divisions[d];
    out[d].windows.assign(windows.begin(), windows.end());
  }
  for (const auto& w : windows) {
    const auto ws = windowed_specialization(records, w, taxonomy, entities, Level::Division);
    for (auto& s : out) {
      HhiDiagnostics diag;
      s.hhi.push_back(hhi(ws.spec, assignment, s.division, &diag));
      s.unassigned_tools.push_back(diag.unassigned_tools);
      s.specialized_sets.push_back(ws.spec.of(s.division));
    }
  }
  for (auto& s : out) {
    for (std::size_t t = 0; t + 1 < s.specialized_sets.size(); ++t) {
      const auto& a = s.specialized_sets[t];
      const auto& b = s.specialized_sets[t + 1];
      // Defined only when both windows have a specialized set.
      s.jaccard.push_back(a.empty() || b.empty() ? std::nullopt : jaccard_stability(a, b));
    }
  }
  return out;
}

double quantile_linear(std::vector<double> values, double p) {
  if (values.empty()) throw ArgumentError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("quantile probability outside [0,1]");
  std::sort(values.begin(), values.end());
  const double h = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<CategoryWindowStat> category_aggregate(std::span<const PortfolioSeries> series,
                                                   const DisciplineTaxonomy& taxonomy) {
  std::vector<CategoryWindowStat> out;
  if (series.empty()) return out;
  const auto& windows = series.front().windows;
  for (auto cat : {Category::NaturalHealth, Category::PhysicalTechnical, Category::SocialHumanities}) {
    for (std::size_t t = 0; t < windows.size(); ++t) {
      CategoryWindowStat st;
      st.category = cat;
      st.window = windows[t];
      std::vector<double> hv, jv;
      for (const auto& s : series) {
        if (taxonomy.category_of(s.division) != cat) continue;
        if (s.hhi[t]) hv.push_back(*s.hhi[t]);
        else ++st.hhi_missing;
        if (t > 0) {
          if (s.jaccard[t - 1]) jv.push_back(*s.jaccard[t - 1]);
          else ++st.jaccard_missing;
        }
      }
      st.hhi_reporting = hv.size();
      st.jaccard_reporting = jv.size();
      if (!hv.empty()) {
        st.hhi_median = quantile_linear(hv, 0.5);
        st.hhi_q1 = quantile_linear(hv, 0.25);
        st.hhi_q3 = quantile_linear(hv, 0.75);
      }
      if (!jv.empty()) {
        double sum = 0.0;
        for (double v : jv) sum += v;
        st.jaccard_mean = sum / static_cast<double>(jv.size());
      }
      out.push_back(st);
    }
  }
  return out;
}

namespace {

std::string na(const std::optional<double>& v) { return v ? io::format_double(*v) : "NA"; }

}  // namespace

void write_portfolio_series(std::ostream& out, std::span<const PortfolioSeries> series) {
  io::write_row(out, {"division", "window_start", "window_end", "hhi", "jaccard", "n_specialized"});
  for (const auto& s : series) {
    for (std::size_t t = 0; t < s.windows.size(); ++t) {
      io::write_row(out, {s.division, std::to_string(s.windows[t].start_year), std::to_string(s.windows[t].end_year),
                          na(s.hhi[t]), t == 0 ? "NA" : na(s.jaccard[t - 1]),
                          std::to_string(s.specialized_sets[t].size())});
    }
  }
}

void write_category_aggregate(std::ostream& out, std::span<const CategoryWindowStat> stats) {
  io::write_row(out, {"category", "window_start", "stat", "value"});
  for (const auto& s : stats) {
    const std::string cat(to_string(s.category));
    const std::string start = std::to_string(s.window.start_year);
    io::write_row(out, {cat, start, "hhi_median", na(s.hhi_median)});
    io::write_row(out, {cat, start, "hhi_q1", na(s.hhi_q1)});
    io::write_row(out, {cat, start, "hhi_q3", na(s.hhi_q3)});
    io::write_row(out, {cat, start, "hhi_reporting", std::to_string(s.hhi_reporting)});
    io::write_row(out, {cat, start, "hhi_missing", std::to_string(s.hhi_missing)});
    io::write_row(out, {cat, start, "jaccard_mean", na(s.jaccard_mean)});
    io::write_row(out, {cat, start, "jaccard_reporting", std::to_string(s.jaccard_reporting)});
    io::write_row(out, {cat, start, "jaccard_missing", std::to_string(s.jaccard_missing)});
  }
}

}  // namespace softspace
