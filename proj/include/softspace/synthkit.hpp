#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "softspace/corpus.hpp"
#include "softspace/proximity.hpp"

namespace softspace::synth {

struct SynthConfig {
  int n_disciplines = 8;  // drawn from the default 22-division taxonomy
  int n_tools = 60;
  int n_papers = 200;
  // Planted tool communities: tool t and discipline d belong to block
  // t % blocks and d % blocks; papers prefer tools of their block.
  std::optional<int> planted_blocks;
  // Per-tool paper counts follow a discrete power law with this exponent
  // (cutoff 1); otherwise they are uniform around 3 tools per paper.
  std::optional<double> tail_exponent;
  double block_bias = 0.85;
  // Share of extra records carrying curation noise (not_software, unclear,
  // unmatched not_curated) and of mentions written as variants.
  double noise = 0.05;
  YearRange years;
  std::uint64_t seed = 42;
};

std::string tool_name(int t);

// Mention records in the corpus input format; byte-identical for a fixed config.
std::vector<MentionRecord> generate_corpus(const SynthConfig& c);

// Alias entries matching the variant spellings generate_corpus emits.
std::map<std::string, std::string> generate_aliases(const SynthConfig& c);

struct PlantedGraph {
  ProximityNetwork network;
  std::vector<int> labels;
};

// G(n, p_in, p_out) with `blocks` equal groups of `block_size` nodes. Edge
// weights are 1.
PlantedGraph planted_partition(int blocks, int block_size, double p_in, double p_out, std::uint64_t seed);

// Random graph on n nodes with weights drawn uniformly from {1/32, 2/32, ..., 1}
// (exact in binary, so tree weights compare exactly),
// made connected by chaining components when `connected` is set.
ProximityNetwork random_weighted_graph(int n, double edge_prob, bool connected, std::uint64_t seed);

// Brute-force reference implementations used by property tests. They share
// no code with the library's main path and reject instances beyond their
// documented size limits with ArgumentError.
namespace oracle {

constexpr std::size_t kMaxMatrix = 8;
constexpr std::size_t kMaxTreeNodes = 8;

// Scalar revealed comparative advantage per cell; nullopt where undefined.
// counts: at most 8 x 8.
std::vector<std::vector<std::optional<double>>> rca(const std::vector<std::vector<long long>>& counts);

// Minimum of the two conditional co-specialization probabilities, from
// explicit discipline sets.
double proximity(const std::set<int>& di, const std::set<int>& dj);

// Maximum total weight over all spanning trees of a connected graph on at
// most 8 nodes, by recursive edge inclusion/exclusion.
double mst_weight(int n, const std::vector<std::tuple<int, int, double>>& edges);

// Concentration of a tool portfolio given each specialized tool's community.
std::optional<double> hhi(const std::vector<int>& communities_of_tools);

}  // namespace oracle

}  // namespace softspace::synth
