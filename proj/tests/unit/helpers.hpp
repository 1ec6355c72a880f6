#pragma once

#include <string>
#include <vector>

#include "softspace/corpus.hpp"

namespace softspace::fixtures {

inline MentionRecord rec(std::string paper, std::string name, std::vector<std::string> codes = {"31"},
                         int year = 2010, CurationLabel label = CurationLabel::Software,
                         std::optional<std::string> doi = std::string("10.1/x")) {
  MentionRecord r;
  r.paper_id = std::move(paper);
  r.raw_name = std::move(name);
  r.label = label;
  r.doi = std::move(doi);
  r.year = year;
  r.discipline_codes = std::move(codes);
  return r;
}

inline CountMatrix dense(std::vector<std::vector<std::int64_t>> rows) {
  std::vector<std::string> rn, cn;
  std::vector<std::int64_t> flat;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rn.push_back("d" + std::to_string(r));
    flat.insert(flat.end(), rows[r].begin(), rows[r].end());
  }
  for (std::size_t c = 0; c < (rows.empty() ? 0 : rows[0].size()); ++c) cn.push_back("s" + std::to_string(c));
  return CountMatrix::from_dense(rn, cn, flat);
}

}  // namespace softspace::fixtures
