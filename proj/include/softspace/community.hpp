#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace softspace {

struct ProximityNetwork;
struct CountMatrix;
class DisciplineTaxonomy;

// Hard partition of network nodes into blocks 0..num_blocks-1.
struct CommunityAssignment {
  std::vector<std::string> nodes;
  std::vector<int> labels;
  int num_blocks = 0;
  double description_length = 0.0;  // nats
  std::uint64_t seed = 0;

  std::optional<int> block_of(const std::string& node) const;
};

// Undirected multigraph handed to the block model. No self-loops.
struct SbmGraph {
  std::size_t n = 0;
  struct Edge {
    std::size_t u, v;
    int multiplicity;
  };
  std::vector<Edge> edges;
};

// multiplicity_scale == 0 binarizes (every phi > 0 edge counts once);
// otherwise each edge enters with multiplicity ceil(phi * scale).
SbmGraph sbm_graph(const ProximityNetwork& net, int multiplicity_scale = 0);

// Description length, in nats, of the microcanonical degree-corrected SBM
// with uniform priors, for an undirected graph without self-loops:
//
//   DL = S + L_b + L_e + L_k
//   S   = sum_r ln e_r! - sum_{r<s} ln e_rs! - sum_r ln e_rr!! - sum_i ln k_i!
//         + sum_{i<j} ln A_ij!
//   L_b = ln N + ln C(N-1, B-1) + ln N! - sum_r ln n_r!
//   L_e = ln C(B(B+1)/2 + E - 1, E)
//   L_k = sum_r ln C(n_r + e_r - 1, e_r)
//
// where e_rs counts edges between blocks r != s, e_rr is twice the number of
// edges inside r, e_r = sum_s e_rs, k_i are node degrees, n_r block sizes,
// B the number of nonempty blocks and E the number of edges.
// Labels may be arbitrary nonnegative integers.
double description_length(const SbmGraph& g, std::span<const int> labels);

struct SbmConfig {
  int multiplicity_scale = 0;  // 0 = binarize
  int sweeps = 10;             // max node-move sweeps after each merge round
  double merge_fraction = 0.05;  // share of blocks merged per agglomeration round
  int restarts = 1;
};

struct SbmTraceStep {
  enum class Kind { Merge, Move };
  Kind kind;
  int blocks;  // nonempty blocks after the step
  double before;
  double after;
};

struct SbmFit {
  CommunityAssignment assignment;
  // Every applied merge and accepted node move of the winning restart.
  std::vector<SbmTraceStep> trace;
  // (B, DL) after each agglomeration round, starting at B = N.
  std::vector<std::pair<int, double>> trajectory;
};

// Agglomerative fit: starting from one block per node, repeatedly merges
// the best block pairs and refines with greedy node moves; the partition with
// the smallest description length along the way is returned. Ids are
// renumbered by first appearance in node order. Throws ArgumentError on an
// empty network.
SbmFit fit_sbm_detailed(const ProximityNetwork& net, std::uint64_t seed, const SbmConfig& config = {});
CommunityAssignment fit_sbm(const ProximityNetwork& net, std::uint64_t seed, const SbmConfig& config = {});

// Same, on a bare graph (node names "0".."n-1").
SbmFit fit_sbm_graph(const SbmGraph& g, std::uint64_t seed, const SbmConfig& config = {});

// Normalized mutual information, arithmetic-mean normalization.
// Two single-block partitions compare as 1.
double normalized_mutual_information(std::span<const int> a, std::span<const int> b);

struct CommunitySummary {
  int id = 0;
  std::size_t size = 0;
  std::vector<std::pair<std::string, std::int64_t>> top_members;     // by total mentions, up to 10
  std::vector<std::pair<std::string, double>> top_disciplines;        // community rca > 1, descending
};

std::vector<CommunitySummary> describe_communities(const CommunityAssignment& a, const CountMatrix& m);
std::string communities_report_json(const CommunityAssignment& a, const std::vector<CommunitySummary>& summaries,
                                    const DisciplineTaxonomy& taxonomy);

// (tool, community_id).
void write_assignment(std::ostream& out, const CommunityAssignment& a);
CommunityAssignment read_assignment(std::istream& in, const std::string& source_name);

}  // namespace softspace
