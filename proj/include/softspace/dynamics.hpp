#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "softspace/community.hpp"
#include "softspace/corpus.hpp"
#include "softspace/specialization.hpp"
#include "softspace/taxonomy.hpp"

namespace softspace {

// Inclusive span of calendar years.
struct RollingWindow {
  int start_year = 0;
  int end_year = 0;
  int length() const { return end_year - start_year + 1; }
  bool contains(int y) const { return y >= start_year && y <= end_year; }
  bool operator==(const RollingWindow&) const = default;
};

// Windows of `length` years advancing by `step` and fully inside `years`.
std::vector<RollingWindow> make_windows(YearRange years, int length = 5, int step = 1);

struct WindowedSpecialization {
  SpecializationSet spec;
  std::size_t papers = 0;
  bool empty = false;  // no papers (or no mentions of the entities) in the window
};

// RCA over the papers dated inside the window only, restricted to `entities`,
// thresholded strictly at 1.
WindowedSpecialization windowed_specialization(std::span<const MentionRecord> records, RollingWindow window,
                                               const DisciplineTaxonomy& taxonomy,
                                               std::span<const std::string> entities,
                                               Level level = Level::Division);

struct HhiDiagnostics {
  std::size_t unassigned_tools = 0;
};

// Herfindahl-Hirschman index of a discipline's specialized tools over
// communities: sum_c (n_c / sum n)^2. nullopt when no assigned tool is
// specialized.
std::optional<double> hhi(const SpecializationSet& spec, const CommunityAssignment& assignment,
                          const std::string& division, HhiDiagnostics* diag = nullptr);

// |a & b| / |a | b|; nullopt when both sets are empty.
std::optional<double> jaccard_stability(const std::set<std::string>& a, const std::set<std::string>& b);

struct PortfolioSeries {
  std::string division;
  std::vector<RollingWindow> windows;
  std::vector<std::optional<double>> hhi;
  // jaccard[t] compares windows t and t+1; size windows - 1.
  std::vector<std::optional<double>> jaccard;
  std::vector<std::set<std::string>> specialized_sets;
  std::vector<std::size_t> unassigned_tools;
};

std::vector<PortfolioSeries> portfolio_series(std::span<const MentionRecord> records,
                                              std::span<const RollingWindow> windows,
                                              const DisciplineTaxonomy& taxonomy,
                                              std::span<const std::string> entities,
                                              const CommunityAssignment& assignment,
                                              std::span<const std::string> divisions);

// Linear-interpolation quantile (R type 7) of a nonempty sample.
double quantile_linear(std::vector<double> values, double p);

struct CategoryWindowStat {
  Category category = Category::NaturalHealth;
  RollingWindow window;
  std::optional<double> hhi_median;
  std::optional<double> hhi_q1;
  std::optional<double> hhi_q3;
  std::size_t hhi_reporting = 0;
  std::size_t hhi_missing = 0;
  // Mean Jaccard between this window and the previous one; absent for the first window.
  std::optional<double> jaccard_mean;
  std::size_t jaccard_reporting = 0;
  std::size_t jaccard_missing = 0;
};

std::vector<CategoryWindowStat> category_aggregate(std::span<const PortfolioSeries> series,
                                                   const DisciplineTaxonomy& taxonomy);

// division, window_start, window_end, hhi, jaccard, n_specialized. The
// jaccard on a row compares that window with the previous one.
void write_portfolio_series(std::ostream& out, std::span<const PortfolioSeries> series);
// category, window_start, stat, value.
void write_category_aggregate(std::ostream& out, std::span<const CategoryWindowStat> stats);

}  // namespace softspace
