#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "softspace/taxonomy.hpp"

namespace softspace {

enum class CurationLabel { Software, NotSoftware, Unclear, NotCurated };

std::string_view to_string(CurationLabel l);
std::optional<CurationLabel> parse_curation_label(std::string_view s);

struct MentionRecord {
  std::string paper_id;
  std::string raw_name;
  CurationLabel label = CurationLabel::Software;
  std::optional<std::string> doi;
  int year = 0;
  std::vector<std::string> discipline_codes;

  bool operator==(const MentionRecord&) const = default;
};

struct YearRange {
  int first = 2004;
  int last = 2021;

  bool contains(int y) const { return y >= first && y <= last; }
  bool operator==(const YearRange&) const = default;
};

// Variant -> canonical name mapping. Canonical names never appear as
// variant keys, so a single lookup always lands on a canonical name.
class AliasTable {
 public:
  AliasTable() = default;
  // Throws ConfigError when the mapping is not idempotent.
  static AliasTable from_entries(std::map<std::string, std::string> entries);
  // Two-column delimited file with header (variant, canonical).
  static AliasTable load(const std::string& path);

  const std::string& resolve(const std::string& name) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

// Discipline x software matrix of paper counts. Dense, row-major.
struct CountMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<std::int64_t> counts;
  // Distinct papers mentioning each software (a multi-discipline paper counts
  // once here, but once per discipline in `counts`).
  std::vector<std::int64_t> software_papers;
  YearRange year_range;

  // Builds from a dense row-major block; software_papers = column sums.
  static CountMatrix from_dense(std::vector<std::string> rows, std::vector<std::string> cols,
                                std::vector<std::int64_t> counts, YearRange years = {});

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return cols.size(); }
  std::int64_t at(std::size_t r, std::size_t c) const { return counts[r * cols.size() + c]; }
  std::int64_t& at(std::size_t r, std::size_t c) { return counts[r * cols.size() + c]; }

  std::vector<std::int64_t> row_totals() const;
  std::vector<std::int64_t> col_totals() const;
  std::int64_t total() const;

  std::optional<std::size_t> row_index(std::string_view name) const;
  std::optional<std::size_t> col_index(std::string_view name) const;

  // Throws InvariantError on negative counts, duplicate labels or shape mismatch.
  void check() const;

  bool operator==(const CountMatrix&) const = default;
};

struct CurationStats {
  std::size_t kept_software = 0;
  std::size_t recovered_not_curated = 0;
  std::size_t dropped_not_software = 0;
  std::size_t dropped_unclear = 0;
  std::size_t dropped_not_curated = 0;
};

struct PaperFilterStats {
  std::size_t papers_in = 0;
  std::size_t papers_missing_doi = 0;
  std::size_t papers_out_of_range = 0;
  std::size_t records_dropped = 0;
};

struct BuildDiagnostics {
  std::size_t papers = 0;
  std::size_t papers_without_discipline = 0;
  std::size_t records_without_discipline = 0;
  std::size_t unknown_codes = 0;
  std::size_t papers_with_conflicting_year = 0;
};

// Names carried by records labeled `software`.
std::set<std::string> known_software_names(std::span<const MentionRecord> records);

// Keeps `software` records and `not_curated` records whose raw name exactly
// matches a known name; everything else is dropped.
std::vector<MentionRecord> curate(std::span<const MentionRecord> records, const std::set<std::string>& known_names,
                                  CurationStats* stats = nullptr);

// Case-variant merging onto the most frequent surface form (ties: smallest
// byte sequence), then alias resolution. Repeated until no two output names
// differ only by ASCII case, which makes the operation idempotent.
std::vector<MentionRecord> disambiguate(std::span<const MentionRecord> records, const AliasTable& aliases);

// Drops whole papers lacking a DOI (when required) or dated outside `years`.
std::vector<MentionRecord> filter_papers(std::span<const MentionRecord> records, YearRange years, bool require_doi,
                                         PaperFilterStats* stats = nullptr);

// counts[d][s] = number of distinct papers with discipline d mentioning s.
// Rows sorted by code, columns by byte order of the name.
CountMatrix build_count_matrix(std::span<const MentionRecord> records, const DisciplineTaxonomy& taxonomy,
                               Level level, YearRange years = {}, BuildDiagnostics* diag = nullptr);

// Sum of two matrices built from disjoint sets of papers.
CountMatrix merge_counts(const CountMatrix& a, const CountMatrix& b);

struct PercentileFilterResult {
  CountMatrix matrix;
  std::int64_t threshold = 0;
  std::size_t retained = 0;
  std::size_t dropped = 0;
};

// Keeps columns whose distinct-paper total strictly exceeds the nearest-rank
// `pct` quantile of all column totals.
PercentileFilterResult percentile_filter(const CountMatrix& m, double pct);

// Nearest-rank quantile of an arbitrary sample.
std::int64_t nearest_rank_quantile(std::vector<std::int64_t> values, double pct);

// Subset of columns, in the given order.
CountMatrix select_columns(const CountMatrix& m, std::span<const std::string> names);

// --- delimited I/O --------------------------------------------------------

// Columns: paper_id, software, label, doi, year, discipline_codes (pipe-separated).
std::vector<MentionRecord> read_records(std::istream& in, const std::string& source_name);
std::vector<MentionRecord> read_records_file(const std::string& path);
void write_records(std::ostream& out, std::span<const MentionRecord> records, char delimiter = ',');

// Long format (discipline, software, count); zero cells omitted.
void write_count_matrix(std::ostream& out, const CountMatrix& m);
// Rebuilds a matrix from the long format plus explicit row/column order.
CountMatrix read_count_matrix(std::istream& in, const std::vector<std::string>& rows,
                              const std::vector<std::string>& cols, const std::string& source_name);

}  // namespace softspace
