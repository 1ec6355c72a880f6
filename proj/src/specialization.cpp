#include "softspace/specialization.hpp"

#include <map>
#include <ostream>

#include "json.hpp"

#include "softspace/delimited.hpp"
#include "softspace/error.hpp"

namespace softspace {

const std::set<std::string>& SpecializationSet::of(const std::string& discipline) const {
  static const std::set<std::string> empty;
  auto it = members.find(discipline);
  return it == members.end() ? empty : it->second;
}

RcaMatrix rca(const CountMatrix& m) {
  const auto total = m.total();
  if (total <= 0) throw ArgumentError("rca of an all-zero count matrix");
  const auto row_tot = m.row_totals();
  const auto col_tot = m.col_totals();
  RcaMatrix out;
  out.rows = m.rows;
  out.cols = m.cols;
  out.values.assign(m.n_rows() * m.n_cols(), 0.0);
  out.masked.assign(m.n_rows() * m.n_cols(), 0);
  const double grand = static_cast<double>(total);
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    for (std::size_t c = 0; c < m.n_cols(); ++c) {
      const std::size_t k = r * m.n_cols() + c;
      if (row_tot[r] == 0 || col_tot[c] == 0) {
        out.masked[k] = 1;
        continue;
      }
      // Same quotient as the textbook form, grouped to keep one rounding
      // step per product: (M * total) / (row * col).
      out.values[k] = (static_cast<double>(m.at(r, c)) * grand) /
                      (static_cast<double>(row_tot[r]) * static_cast<double>(col_tot[c]));
    }
  }
  return out;
}

SpecializationSet specialize(const RcaMatrix& r, double threshold, Comparison comparison) {
  if (!(threshold > 0.0)) throw ArgumentError("specialization threshold must be > 0");
  SpecializationSet s;
  s.threshold = threshold;
  s.comparison = comparison;
  s.disciplines = r.rows;
  for (std::size_t i = 0; i < r.n_rows(); ++i) {
    auto& set = s.members[r.rows[i]];
    for (std::size_t j = 0; j < r.n_cols(); ++j) {
      if (r.is_masked(i, j)) continue;
      const double v = r.at(i, j);
      if (comparison == Comparison::Strict ? v > threshold : v >= threshold) set.insert(r.cols[j]);
    }
  }
  return s;
}

CommunityRcaResult community_rca(const CountMatrix& m, const CommunityAssignment& assignment) {
  std::map<std::string, int> block_of;
  for (std::size_t i = 0; i < assignment.nodes.size(); ++i) block_of[assignment.nodes[i]] = assignment.labels[i];

  CommunityRcaResult res;
  const auto n_blocks = static_cast<std::size_t>(assignment.num_blocks);
  std::vector<std::string> cols;
  for (std::size_t b = 0; b < n_blocks; ++b) cols.push_back(std::to_string(b));
  std::vector<std::int64_t> counts(m.n_rows() * n_blocks, 0);
  std::vector<std::int64_t> papers(n_blocks, 0);
  std::size_t covered = 0;
  for (std::size_t c = 0; c < m.n_cols(); ++c) {
    auto it = block_of.find(m.cols[c]);
    if (it == block_of.end()) {
      ++res.unassigned_columns;
      continue;
    }
    ++covered;
    const auto b = static_cast<std::size_t>(it->second);
    papers[b] += m.software_papers[c];
    for (std::size_t r = 0; r < m.n_rows(); ++r) counts[r * n_blocks + b] += m.at(r, c);
  }
  if (covered == 0) throw ArgumentError("community assignment covers none of the matrix columns");
  res.counts = CountMatrix::from_dense(m.rows, std::move(cols), std::move(counts), m.year_range);
  res.counts.software_papers = std::move(papers);
  res.rca = rca(res.counts);
  return res;
}

void write_rca(std::ostream& out, const RcaMatrix& r) {
  io::write_row(out, {"discipline", "entity", "rca", "masked"});
  for (std::size_t i = 0; i < r.n_rows(); ++i) {
    for (std::size_t j = 0; j < r.n_cols(); ++j) {
      const bool m = r.is_masked(i, j);
      io::write_row(out, {r.rows[i], r.cols[j], m ? "NA" : io::format_double(r.at(i, j)), m ? "1" : "0"});
    }
  }
}

std::string rca_heatmap_json(const RcaMatrix& r, const std::vector<std::string>& row_labels) {
  nlohmann::ordered_json j;
  j["rows"] = r.rows;
  j["row_labels"] = row_labels;
  j["cols"] = r.cols;
  auto values = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.n_rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < r.n_cols(); ++k) {
      if (r.is_masked(i, k)) row.push_back(nullptr);
      else row.push_back(r.at(i, k));
    }
    values.push_back(std::move(row));
  }
  j["values"] = std::move(values);
  return j.dump(1);
}

}  // namespace softspace
