#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "softspace/corpus.hpp"
#include "softspace/taxonomy.hpp"

namespace softspace {

// Everything a run depends on. Serialized as `key = value` lines; `#`
// starts a comment. Empty path values mean "not set".
struct PipelineConfig {
  // paths
  std::string records;
  std::string aliases;
  std::string taxonomy;
  std::string output_dir = "out";

  // corpus
  YearRange years;
  bool require_doi = true;
  double percentile = 0.9;

  // specialization
  double threshold = 1.0;
  bool inclusive = false;
  Level level = Level::Division;

  // backbone
  double alpha = 0.05;
  bool mst = true;

  // communities
  std::uint64_t seed = 42;
  int restarts = 1;
  int sweeps = 10;
  double merge_fraction = 0.05;
  int multiplicity = 0;

  // dynamics
  int window_length = 5;
  int window_step = 1;

  // power law; 0 selects x_min by KS minimization
  std::int64_t powerlaw_xmin = 0;
  int bootstrap = 0;

  bool graphml = false;

  // synthetic corpus
  int synth_disciplines = 8;
  int synth_tools = 60;
  int synth_papers = 200;
  int synth_blocks = 0;
  double synth_tail = 0.0;
  double synth_noise = 0.05;

  bool operator==(const PipelineConfig&) const = default;

  // Throws ArgumentError on out-of-range values.
  void validate() const;

  static PipelineConfig parse(std::istream& in, const std::string& source_name);
  static PipelineConfig load(const std::string& path);
  // Sets one key from its textual value; ConfigError on unknown key or bad value.
  void set(const std::string& key, const std::string& value);

  std::string save() const;
  // SHA-256 (hex) over the non-path parameters.
  std::string digest() const;
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

}  // namespace softspace
