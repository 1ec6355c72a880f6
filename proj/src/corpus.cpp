#include "softspace/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "softspace/delimited.hpp"
#include "softspace/error.hpp"

namespace softspace {

std::string_view to_string(CurationLabel l) {
  switch (l) {
    case CurationLabel::Software: return "software";
    case CurationLabel::NotSoftware: return "not_software";
    case CurationLabel::Unclear: return "unclear";
    case CurationLabel::NotCurated: return "not_curated";
  }
  return "?";
}

std::optional<CurationLabel> parse_curation_label(std::string_view s) {
  for (auto l : {CurationLabel::Software, CurationLabel::NotSoftware, CurationLabel::Unclear,
                 CurationLabel::NotCurated}) {
    if (s == to_string(l)) return l;
  }
  return std::nullopt;
}

// --- AliasTable -------------------------------------------------------------

AliasTable AliasTable::from_entries(std::map<std::string, std::string> entries) {
  for (const auto& [variant, canonical] : entries) {
    if (variant.empty() || canonical.empty()) throw ConfigError("alias table: empty name");
    if (entries.contains(canonical) && canonical != variant) {
      throw ConfigError("alias table is not idempotent: canonical name '" + canonical +
                        "' is also a variant key");
    }
  }
  // variant == canonical entries are harmless self-maps; drop them.
  std::erase_if(entries, [](const auto& kv) { return kv.first == kv.second; });
  AliasTable t;
  t.entries_ = std::move(entries);
  return t;
}

AliasTable AliasTable::load(const std::string& path) {
  io::Table table = [&] {
    try {
      return io::read_table_file(path);
    } catch (const DataError& e) {
      throw ConfigError(e.what());
    }
  }();
  if (table.header.size() != 2) throw ConfigError("alias table '" + path + "': expected two columns");
  std::map<std::string, std::string> entries;
  for (const auto& row : table.rows) {
    auto [it, inserted] = entries.emplace(io::trim(row[0]), io::trim(row[1]));
    if (!inserted && it->second != io::trim(row[1])) {
      throw ConfigError("alias table '" + path + "': conflicting entries for '" + it->first + "'");
    }
  }
  return from_entries(std::move(entries));
}

const std::string& AliasTable::resolve(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? name : it->second;
}

// --- CountMatrix ------------------------------------------------------------

CountMatrix CountMatrix::from_dense(std::vector<std::string> rows, std::vector<std::string> cols,
                                    std::vector<std::int64_t> counts, YearRange years) {
  CountMatrix m;
  m.rows = std::move(rows);
  m.cols = std::move(cols);
  m.counts = std::move(counts);
  m.year_range = years;
  if (m.counts.size() != m.rows.size() * m.cols.size()) throw ArgumentError("count matrix shape mismatch");
  m.software_papers = m.col_totals();
  m.check();
  return m;
}

std::vector<std::int64_t> CountMatrix::row_totals() const {
  std::vector<std::int64_t> out(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out[r] += at(r, c);
  return out;
}

std::vector<std::int64_t> CountMatrix::col_totals() const {
  std::vector<std::int64_t> out(cols.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out[c] += at(r, c);
  return out;
}

std::int64_t CountMatrix::total() const {
  std::int64_t t = 0;
  for (auto v : counts) t += v;
  return t;
}

std::optional<std::size_t> CountMatrix::row_index(std::string_view name) const {
  auto it = std::find(rows.begin(), rows.end(), name);
  if (it == rows.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rows.begin());
}

std::optional<std::size_t> CountMatrix::col_index(std::string_view name) const {
  auto it = std::find(cols.begin(), cols.end(), name);
  if (it == cols.end()) return std::nullopt;
  return static_cast<std::size_t>(it - cols.begin());
}

void CountMatrix::check() const {
  if (counts.size() != rows.size() * cols.size()) throw InvariantError("count matrix shape mismatch");
  if (software_papers.size() != cols.size()) throw InvariantError("software_papers size mismatch");
  if (std::any_of(counts.begin(), counts.end(), [](auto v) { return v < 0; }))
    throw InvariantError("negative count");
  auto unique = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!unique(rows)) throw InvariantError("duplicate row label");
  if (!unique(cols)) throw InvariantError("duplicate column label");
}

// --- curation and disambiguation --------------------------------------------

std::set<std::string> known_software_names(std::span<const MentionRecord> records) {
  std::set<std::string> out;
  for (const auto& r : records)
    if (r.label == CurationLabel::Software) out.insert(r.raw_name);
  return out;
}

std::vector<MentionRecord> curate(std::span<const MentionRecord> records, const std::set<std::string>& known_names,
                                  CurationStats* stats) {
  CurationStats s;
  std::vector<MentionRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    switch (r.label) {
      case CurationLabel::Software:
        ++s.kept_software;
        out.push_back(r);
        break;
      case CurationLabel::NotCurated:
        if (known_names.contains(r.raw_name)) {
          ++s.recovered_not_curated;
          out.push_back(r);
        } else {
          ++s.dropped_not_curated;
        }
        break;
      case CurationLabel::NotSoftware: ++s.dropped_not_software; break;
      case CurationLabel::Unclear: ++s.dropped_unclear; break;
    }
  }
  if (stats) *stats = s;
  return out;
}

namespace {

// One pass: case merge followed by alias resolution. Returns the old->new map.
std::map<std::string, std::string> disambiguation_pass(const std::map<std::string, std::size_t>& freq,
                                                       const AliasTable& aliases) {
  std::map<std::string, std::pair<std::string, std::size_t>> best;  // folded -> (form, count)
  for (const auto& [name, n] : freq) {
    auto key = io::to_lower_ascii(name);
    auto it = best.find(key);
    // freq is iterated in byte order, so on equal counts the first form seen wins.
    if (it == best.end() || n > it->second.second) best[key] = {name, n};
  }
  std::map<std::string, std::string> mapping;
  for (const auto& [name, n] : freq) {
    mapping[name] = aliases.resolve(best.at(io::to_lower_ascii(name)).first);
  }
  return mapping;
}

bool has_case_collisions(const std::map<std::string, std::size_t>& freq) {
  std::set<std::string> folded;
  for (const auto& [name, n] : freq) {
    if (!folded.insert(io::to_lower_ascii(name)).second) return true;
  }
  return false;
}

}  // namespace

std::vector<MentionRecord> disambiguate(std::span<const MentionRecord> records, const AliasTable& aliases) {
  std::vector<MentionRecord> out(records.begin(), records.end());
  auto frequencies = [&] {
    std::map<std::string, std::size_t> freq;
    for (const auto& r : out) ++freq[r.raw_name];
    return freq;
  };
  auto freq = frequencies();
  do {
    auto mapping = disambiguation_pass(freq, aliases);
    for (auto& r : out) r.raw_name = mapping.at(r.raw_name);
    freq = frequencies();
  } while (has_case_collisions(freq));
  return out;
}

std::vector<MentionRecord> filter_papers(std::span<const MentionRecord> records, YearRange years, bool require_doi,
                                         PaperFilterStats* stats) {
  // A paper is dropped as a whole if any of its records lacks a DOI or
  // falls outside the range, so decide per paper first.
  std::unordered_map<std::string, std::pair<bool, bool>> verdict;  // (missing doi, out of range)
  for (const auto& r : records) {
    auto& v = verdict[r.paper_id];
    if (require_doi && (!r.doi || r.doi->empty())) v.first = true;
    if (!years.contains(r.year)) v.second = true;
  }
  PaperFilterStats s;
  s.papers_in = verdict.size();
  for (const auto& [id, v] : verdict) {
    if (v.first) ++s.papers_missing_doi;
    else if (v.second) ++s.papers_out_of_range;
  }
  std::vector<MentionRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const auto& v = verdict.at(r.paper_id);
    if (v.first || v.second) {
      ++s.records_dropped;
    } else {
      out.push_back(r);
    }
  }
  if (stats) *stats = s;
  return out;
}

CountMatrix build_count_matrix(std::span<const MentionRecord> records, const DisciplineTaxonomy& taxonomy,
                               Level level, YearRange years, BuildDiagnostics* diag) {
  struct PaperState {
    int year = 0;
    bool year_conflict = false;
    std::set<std::string> disciplines;
    std::set<std::string> software;
    std::size_t records = 0;
  };
  BuildDiagnostics d;
  std::map<std::string, PaperState> papers;
  for (const auto& r : records) {
    if (r.paper_id.empty()) throw DataError("record with empty paper_id");
    auto [it, fresh] = papers.try_emplace(r.paper_id);
    PaperState& p = it->second;
    if (fresh) p.year = r.year;
    else if (p.year != r.year) p.year_conflict = true;
    ++p.records;
    for (const auto& code : r.discipline_codes) {
      if (auto row = taxonomy.resolve(code, level)) p.disciplines.insert(*row);
      else ++d.unknown_codes;
    }
    p.software.insert(r.raw_name);
  }

  std::set<std::string> row_set, col_set;
  for (const auto& [id, p] : papers) {
    if (p.year_conflict) ++d.papers_with_conflicting_year;
    if (p.disciplines.empty()) {
      ++d.papers_without_discipline;
      d.records_without_discipline += p.records;
      continue;
    }
    ++d.papers;
    row_set.insert(p.disciplines.begin(), p.disciplines.end());
    col_set.insert(p.software.begin(), p.software.end());
  }

  CountMatrix m;
  m.rows.assign(row_set.begin(), row_set.end());
  m.cols.assign(col_set.begin(), col_set.end());
  m.year_range = years;
  m.counts.assign(m.rows.size() * m.cols.size(), 0);
  m.software_papers.assign(m.cols.size(), 0);
  std::unordered_map<std::string, std::size_t> row_idx, col_idx;
  for (std::size_t i = 0; i < m.rows.size(); ++i) row_idx[m.rows[i]] = i;
  for (std::size_t i = 0; i < m.cols.size(); ++i) col_idx[m.cols[i]] = i;
  for (const auto& [id, p] : papers) {
    if (p.disciplines.empty()) continue;
    for (const auto& s : p.software) {
      std::size_t c = col_idx.at(s);
      ++m.software_papers[c];
      for (const auto& dsc : p.disciplines) ++m.at(row_idx.at(dsc), c);
    }
  }
  if (diag) *diag = d;
  return m;
}

CountMatrix merge_counts(const CountMatrix& a, const CountMatrix& b) {
  std::set<std::string> row_set(a.rows.begin(), a.rows.end());
  row_set.insert(b.rows.begin(), b.rows.end());
  std::set<std::string> col_set(a.cols.begin(), a.cols.end());
  col_set.insert(b.cols.begin(), b.cols.end());
  CountMatrix m;
  m.rows.assign(row_set.begin(), row_set.end());
  m.cols.assign(col_set.begin(), col_set.end());
  m.year_range = {std::min(a.year_range.first, b.year_range.first),
                  std::max(a.year_range.last, b.year_range.last)};
  m.counts.assign(m.rows.size() * m.cols.size(), 0);
  m.software_papers.assign(m.cols.size(), 0);
  for (const CountMatrix* src : {&a, &b}) {
    std::vector<std::size_t> rmap(src->rows.size()), cmap(src->cols.size());
    for (std::size_t r = 0; r < src->rows.size(); ++r) rmap[r] = *m.row_index(src->rows[r]);
    for (std::size_t c = 0; c < src->cols.size(); ++c) {
      cmap[c] = *m.col_index(src->cols[c]);
      m.software_papers[cmap[c]] += src->software_papers[c];
    }
    for (std::size_t r = 0; r < src->rows.size(); ++r)
      for (std::size_t c = 0; c < src->cols.size(); ++c) m.at(rmap[r], cmap[c]) += src->at(r, c);
  }
  return m;
}

std::int64_t nearest_rank_quantile(std::vector<std::int64_t> values, double pct) {
  if (!(pct > 0.0 && pct < 1.0)) throw ArgumentError("percentile must lie in (0,1)");
  if (values.empty()) throw ArgumentError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  // Rank ceil(p*n), 1-based. The small epsilon keeps p*n that is integral in
  // exact arithmetic (0.9*100) from rounding up to the next rank.
  double pos = pct * static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(pos - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

PercentileFilterResult percentile_filter(const CountMatrix& m, double pct) {
  if (!(pct > 0.0 && pct < 1.0)) throw ArgumentError("percentile must lie in (0,1)");
  if (m.cols.empty()) throw ArgumentError("percentile filter on an empty matrix");
  PercentileFilterResult res;
  res.threshold = nearest_rank_quantile(m.software_papers, pct);
  std::vector<std::string> keep;
  for (std::size_t c = 0; c < m.cols.size(); ++c)
    if (m.software_papers[c] > res.threshold) keep.push_back(m.cols[c]);
  res.matrix = select_columns(m, keep);
  res.retained = keep.size();
  res.dropped = m.cols.size() - keep.size();
  return res;
}

CountMatrix select_columns(const CountMatrix& m, std::span<const std::string> names) {
  CountMatrix out;
  out.rows = m.rows;
  out.cols.assign(names.begin(), names.end());
  out.year_range = m.year_range;
  out.counts.assign(out.rows.size() * out.cols.size(), 0);
  out.software_papers.assign(out.cols.size(), 0);
  for (std::size_t j = 0; j < out.cols.size(); ++j) {
    auto c = m.col_index(out.cols[j]);
    if (!c) throw ArgumentError("unknown column '" + out.cols[j] + "'");
    out.software_papers[j] = m.software_papers[*c];
    for (std::size_t r = 0; r < m.rows.size(); ++r) out.at(r, j) = m.at(r, *c);
  }
  return out;
}

// --- I/O -----------------------------------------------------------------------

std::vector<MentionRecord> read_records(std::istream& in, const std::string& source_name) {
  io::Table t = io::read_table(in, source_name);
  const auto c_paper = t.column("paper_id"), c_sw = t.column("software"), c_label = t.column("label"),
             c_doi = t.column("doi"), c_year = t.column("year"), c_codes = t.column("discipline_codes");
  std::vector<MentionRecord> out;
  out.reserve(t.rows.size());
  std::size_t line = 1;
  for (const auto& row : t.rows) {
    ++line;
    MentionRecord r;
    r.paper_id = io::trim(row[c_paper]);
    if (r.paper_id.empty()) throw DataError(source_name + ": record " + std::to_string(line) + ": empty paper_id");
    r.raw_name = io::trim(row[c_sw]);
    auto label = parse_curation_label(io::trim(row[c_label]));
    if (!label) throw DataError(source_name + ": record " + std::to_string(line) + ": unknown label '" + row[c_label] + "'");
    r.label = *label;
    auto doi = io::trim(row[c_doi]);
    if (!doi.empty()) r.doi = doi;
    r.year = static_cast<int>(io::parse_int(row[c_year], "year"));
    for (auto& code : io::split(row[c_codes], '|')) {
      auto c = io::trim(code);
      if (!c.empty()) r.discipline_codes.push_back(std::move(c));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<MentionRecord> read_records_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open records file '" + path + "'");
  return read_records(in, path);
}

void write_records(std::ostream& out, std::span<const MentionRecord> records, char delimiter) {
  io::write_row(out, {"paper_id", "software", "label", "doi", "year", "discipline_codes"}, delimiter);
  for (const auto& r : records) {
    std::string codes;
    for (std::size_t i = 0; i < r.discipline_codes.size(); ++i) {
      if (i) codes.push_back('|');
      codes += r.discipline_codes[i];
    }
    io::write_row(out,
                  {r.paper_id, r.raw_name, std::string(to_string(r.label)), r.doi.value_or(""),
                   std::to_string(r.year), codes},
                  delimiter);
  }
}

void write_count_matrix(std::ostream& out, const CountMatrix& m) {
  io::write_row(out, {"discipline", "software", "count"});
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (std::size_t c = 0; c < m.n_cols(); ++c)
      if (m.at(r, c) != 0) io::write_row(out, {m.rows[r], m.cols[c], std::to_string(m.at(r, c))});
}

CountMatrix read_count_matrix(std::istream& in, const std::vector<std::string>& rows,
                              const std::vector<std::string>& cols, const std::string& source_name) {
  io::Table t = io::read_table(in, source_name);
  const auto c_d = t.column("discipline"), c_s = t.column("software"), c_n = t.column("count");
  std::vector<std::int64_t> counts(rows.size() * cols.size(), 0);
  std::unordered_map<std::string, std::size_t> ri, ci;
  for (std::size_t i = 0; i < rows.size(); ++i) ri[rows[i]] = i;
  for (std::size_t i = 0; i < cols.size(); ++i) ci[cols[i]] = i;
  for (const auto& row : t.rows) {
    auto r = ri.find(row[c_d]);
    auto c = ci.find(row[c_s]);
    if (r == ri.end() || c == ci.end())
      throw DataError(source_name + ": cell (" + row[c_d] + ", " + row[c_s] + ") outside declared labels");
    counts[r->second * cols.size() + c->second] = io::parse_int(row[c_n], "count");
  }
  return CountMatrix::from_dense(rows, cols, std::move(counts));
}

}  // namespace softspace
