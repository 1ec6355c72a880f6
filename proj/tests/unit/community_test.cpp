#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <map>
#include <numeric>
#include <sstream>

#include "softspace/community.hpp"
#include "softspace/corpus.hpp"
#include "softspace/error.hpp"
#include "softspace/proximity.hpp"
#include "softspace/rng.hpp"
#include "softspace/synthkit.hpp"

using namespace softspace;

namespace {

ProximityNetwork two_cliques(int size) {
  std::vector<std::string> names;
  for (int i = 0; i < 2 * size; ++i) names.push_back("v" + std::to_string(i));
  std::vector<WeightedEdge> edges;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j)
        edges.push_back({static_cast<std::size_t>(c * size + i), static_cast<std::size_t>(c * size + j), 1.0});
  edges.push_back({0, static_cast<std::size_t>(size), 1.0});
  return make_network(names, edges);
}

ProximityNetwork complete(int n) {
  std::vector<std::string> names;
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), 1.0});
  return make_network(names, edges);
}

}  // namespace

TEST(DescriptionLength, SingleEdgeByHand) {
  const auto g = sbm_graph(make_network({"a", "b"}, {{0, 1, 1.0}}));
  EXPECT_NEAR(description_length(g, std::vector<int>{0, 0}), std::log(6.0), 1e-12);
  EXPECT_NEAR(description_length(g, std::vector<int>{0, 1}), std::log(12.0), 1e-12);
}

TEST(DescriptionLength, LabelPermutationInvariance) {
  Rng rng(3);
  const auto pg = synth::planted_partition(3, 8, 0.5, 0.1, 3);
  const auto g = sbm_graph(pg.network);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> labels(g.n);
    for (auto& l : labels) l = static_cast<int>(rng.below(5));
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    auto relabeled = labels;
    for (auto& l : relabeled) l = perm[static_cast<std::size_t>(l)];
    ASSERT_NEAR(description_length(g, labels), description_length(g, relabeled), 1e-9);
  }
}

TEST(FitSbm, TwoCliquesGiveTwoBlocks) {
  const auto net = two_cliques(10);
  const auto g = sbm_graph(net);
  std::vector<int> planted(20, 0);
  for (int i = 10; i < 20; ++i) planted[static_cast<std::size_t>(i)] = 1;
  const double dl_planted = description_length(g, planted);
  EXPECT_LT(dl_planted, description_length(g, std::vector<int>(20, 0)));
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> random(20);
    for (auto& l : random) l = static_cast<int>(rng.below(2));
    if (std::all_of(random.begin(), random.end(), [&](int l) { return l == random[0]; })) continue;
    if (normalized_mutual_information(random, planted) == 1.0) continue;
    EXPECT_LT(dl_planted, description_length(g, random));
  }
  const auto fit = fit_sbm(net, 1);
  EXPECT_EQ(fit.num_blocks, 2);
  EXPECT_EQ(normalized_mutual_information(fit.labels, planted), 1.0);
  EXPECT_NEAR(fit.description_length, dl_planted, 1e-9);
}

TEST(FitSbm, CompleteGraphIsOneBlock) {
  const auto net = complete(12);
  const auto fit = fit_sbm(net, 5);
  EXPECT_EQ(fit.num_blocks, 1);
  EXPECT_LE(description_length(sbm_graph(net), std::vector<int>(12, 0)), fit.description_length + 1e-12);
}

TEST(FitSbm, EmptyNetworkThrows) {
  EXPECT_THROW(fit_sbm(make_network({}, {}), 1), ArgumentError);
}

TEST(FitSbm, IsolatedNodesAndNoEdges) {
  const auto fit = fit_sbm(make_network({"a", "b", "c"}, {}), 1);
  EXPECT_EQ(fit.labels.size(), 3u);
  EXPECT_NEAR(fit.description_length, description_length(sbm_graph(make_network({"a", "b", "c"}, {})), fit.labels),
              1e-9);
}

TEST(FitSbm, ReportedLengthMatchesRecomputationAndTraceIsMonotone) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto pg = synth::planted_partition(3, 15, 0.35, 0.04, 100 + seed);
    const auto fit = fit_sbm_detailed(pg.network, seed);
    EXPECT_NEAR(fit.assignment.description_length,
                description_length(sbm_graph(pg.network), fit.assignment.labels), 1e-9);
    for (const auto& s : fit.trace)
      if (s.kind == SbmTraceStep::Kind::Move) EXPECT_LT(s.after, s.before);
    // ids contiguous from 0
    std::set<int> ids(fit.assignment.labels.begin(), fit.assignment.labels.end());
    EXPECT_EQ(static_cast<int>(ids.size()), fit.assignment.num_blocks);
    EXPECT_EQ(*ids.rbegin(), fit.assignment.num_blocks - 1);
    // best over the trajectory
    for (const auto& [b, dl] : fit.trajectory) EXPECT_GE(dl, fit.assignment.description_length - 1e-9);
  }
}

TEST(FitSbm, DeterministicAndRenamingInvariant) {
  const auto pg = synth::planted_partition(4, 12, 0.4, 0.03, 21);
  const auto a = fit_sbm(pg.network, 9);
  const auto b = fit_sbm(pg.network, 9);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.description_length, b.description_length);

  auto renamed = pg.network;
  for (auto& n : renamed.nodes) n = "tool_" + n + "_x";
  const auto c = fit_sbm(renamed, 9);
  EXPECT_EQ(c.labels, a.labels);
  EXPECT_EQ(c.num_blocks, a.num_blocks);
  EXPECT_EQ(c.description_length, a.description_length);
  EXPECT_EQ(c.nodes, renamed.nodes);
}

TEST(FitSbm, ReorderedNodesRecoverSamePartition) {
  const auto net = two_cliques(8);
  std::vector<std::size_t> order(net.n_nodes());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(4);
  rng.shuffle(order);
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  std::vector<std::string> names;
  for (auto o : order) names.push_back(net.nodes[o]);
  std::vector<WeightedEdge> edges;
  for (const auto& e : net.edges) edges.push_back({pos[e.i], pos[e.j], e.weight});
  const auto shuffled = make_network(names, edges);
  const auto a = fit_sbm(net, 2), b = fit_sbm(shuffled, 2);
  EXPECT_EQ(a.num_blocks, b.num_blocks);
  EXPECT_NEAR(a.description_length, b.description_length, 1e-9);
  for (std::size_t i = 0; i < net.n_nodes(); ++i)
    for (std::size_t j = 0; j < net.n_nodes(); ++j)
      ASSERT_EQ(a.labels[i] == a.labels[j], b.labels[pos[i]] == b.labels[pos[j]]);
}

TEST(FitSbm, RestartsPickLowestLength) {
  const auto pg = synth::planted_partition(3, 10, 0.4, 0.05, 5);
  SbmConfig one, many;
  many.restarts = 4;
  const auto single = fit_sbm(pg.network, 3, one);
  const auto best = fit_sbm(pg.network, 3, many);
  EXPECT_LE(best.description_length, single.description_length + 1e-9);
  EXPECT_EQ(best.description_length, fit_sbm(pg.network, 3, many).description_length);
}

TEST(SbmGraph, WeightedMultiplicity) {
  const auto net = make_network({"a", "b", "c"}, {{0, 1, 0.25}, {1, 2, 1.0}});
  const auto bin = sbm_graph(net);
  EXPECT_EQ(bin.edges[0].multiplicity, 1);
  const auto w = sbm_graph(net, 10);
  EXPECT_EQ(w.edges[0].multiplicity, 3);
  EXPECT_EQ(w.edges[1].multiplicity, 10);
  EXPECT_THROW(sbm_graph(net, -1), ArgumentError);
  SbmConfig cfg;
  cfg.multiplicity_scale = 10;
  const auto fit = fit_sbm(net, 1, cfg);
  EXPECT_NEAR(fit.description_length, description_length(w, fit.labels), 1e-9);
}

TEST(Nmi, BasicProperties) {
  const std::vector<int> a = {0, 0, 1, 1, 2, 2};
  const std::vector<int> relabeled = {2, 2, 0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(normalized_mutual_information(a, a), 1.0);
  EXPECT_DOUBLE_EQ(normalized_mutual_information(a, relabeled), 1.0);
  const std::vector<int> b = {0, 1, 0, 1, 0, 1};
  const double v = normalized_mutual_information(a, b);
  EXPECT_GE(v, 0.0);
  EXPECT_LE(v, 1.0);
  EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(normalized_mutual_information(a, b), normalized_mutual_information(b, a));
}

TEST(DescribeCommunities, SizesAndMembers) {
  CommunityAssignment a;
  a.nodes = {"A", "B", "C", "D"};
  a.labels = {0, 0, 0, 1};
  a.num_blocks = 2;
  const auto m = CountMatrix::from_dense({"31", "49"}, {"A", "B", "C", "D"}, {5, 1, 2, 0, 0, 0, 1, 9});
  const auto s = describe_communities(a, m);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].size, 3u);
  EXPECT_EQ(s[1].size, 1u);
  ASSERT_EQ(s[1].top_members.size(), 1u);
  EXPECT_EQ(s[1].top_members[0].first, "D");
  EXPECT_EQ(s[0].top_members[0].first, "A");
  ASSERT_FALSE(s[1].top_disciplines.empty());
  EXPECT_EQ(s[1].top_disciplines[0].first, "49");
}

TEST(AssignmentIo, RoundTripAndContiguity) {
  CommunityAssignment a;
  a.nodes = {"x", "y", "z"};
  a.labels = {1, 0, 1};
  a.num_blocks = 2;
  std::stringstream ss;
  write_assignment(ss, a);
  const auto back = read_assignment(ss, "mem");
  EXPECT_EQ(back.nodes, a.nodes);
  EXPECT_EQ(back.labels, a.labels);
  EXPECT_EQ(back.num_blocks, 2);
  std::istringstream gap("tool,community\nx,0\ny,2\n");
  EXPECT_THROW(read_assignment(gap, "mem"), DataError);
}
