#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "softspace/community.hpp"
#include "softspace/corpus.hpp"

namespace softspace {

// Revealed comparative advantage of each (discipline, entity) pair:
//
//   rca(d,s) = (M(d,s) / sum_s M(d,s)) / (sum_d M(d,s) / sum_{d,s} M(d,s))
//
// Cells whose row or column total is zero are masked: the ratio is undefined
// there and masked cells never count as specializations.
struct RcaMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<double> values;
  std::vector<std::uint8_t> masked;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return cols.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * cols.size() + c]; }
  bool is_masked(std::size_t r, std::size_t c) const { return masked[r * cols.size() + c] != 0; }
};

enum class Comparison { Strict, Inclusive };

struct SpecializationSet {
  double threshold = 1.0;
  Comparison comparison = Comparison::Strict;
  std::vector<std::string> disciplines;
  std::map<std::string, std::set<std::string>> members;

  // Members of a discipline; empty when the discipline is unknown.
  const std::set<std::string>& of(const std::string& discipline) const;
};

RcaMatrix rca(const CountMatrix& m);

SpecializationSet specialize(const RcaMatrix& r, double threshold = 1.0, Comparison comparison = Comparison::Strict);

struct CommunityRcaResult {
  CountMatrix counts;  // discipline x community, columns named by community id
  RcaMatrix rca;
  std::size_t unassigned_columns = 0;
};

// Sums the columns of `m` by community and evaluates rca on the result.
CommunityRcaResult community_rca(const CountMatrix& m, const CommunityAssignment& assignment);

// Long format (discipline, entity, rca, masked); masked cells carry "NA".
void write_rca(std::ostream& out, const RcaMatrix& r);
// Plot-ready bundle: {"rows": [...], "cols": [...], "values": [[...]]} with null for masked cells.
std::string rca_heatmap_json(const RcaMatrix& r, const std::vector<std::string>& row_labels);

}  // namespace softspace
