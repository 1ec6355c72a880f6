#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "softspace/error.hpp"
#include "softspace/proximity.hpp"
#include "softspace/rng.hpp"
#include "softspace/specialization.hpp"
#include "softspace/synthkit.hpp"

using namespace softspace;

namespace {

// Builds a specialization set from per-entity discipline sets.
SpecializationSet spec_from(const std::vector<std::set<int>>& d_of, int n_disc,
                            std::vector<std::string>* entities = nullptr,
                            const std::vector<int>& discipline_perm = {}) {
  SpecializationSet s;
  for (int d = 0; d < n_disc; ++d) s.disciplines.push_back("d" + std::to_string(d));
  for (const auto& d : s.disciplines) s.members[d];
  std::vector<std::string> names;
  for (std::size_t e = 0; e < d_of.size(); ++e) names.push_back("t" + std::to_string(e));
  for (std::size_t e = 0; e < d_of.size(); ++e)
    for (int d : d_of[e]) {
      const int label = discipline_perm.empty() ? d : discipline_perm[static_cast<std::size_t>(d)];
      s.members["d" + std::to_string(label)].insert(names[e]);
    }
  if (entities) *entities = names;
  return s;
}

}  // namespace

TEST(Proximity, SpecExamples) {
  std::vector<std::string> ents;
  // a=0 b=1 c=2 d=3 e=4
  const auto s = spec_from({{0, 1, 2}, {1, 2, 3, 4}, {0, 1, 2}, {}, {5}}, 6, &ents);
  const auto p = proximity(s, ents);
  EXPECT_EQ(p.at(0, 1), 0.5);
  EXPECT_EQ(p.at(0, 2), 1.0);
  EXPECT_EQ(p.at(0, 4), 0.0);
  EXPECT_EQ(p.at(0, 0), 1.0);
  EXPECT_EQ(p.at(3, 3), 0.0);
  EXPECT_EQ(p.basis_count[1], 4);
  EXPECT_EQ(p.unsupported(), std::vector<std::string>{"t3"});
}

TEST(Proximity, GrowingIntersectionNeverDecreases) {
  Rng rng(9);
  for (int t = 0; t < 500; ++t) {
    std::set<int> a, b;
    for (int d = 0; d < 8; ++d) {
      if (rng.bernoulli(0.4)) a.insert(d);
      if (rng.bernoulli(0.4)) b.insert(d);
    }
    if (a.empty() || b.empty()) continue;
    std::vector<std::string> ents;
    const auto s0 = spec_from({a, b}, 9, &ents);
    const double before = proximity(s0, ents).at(0, 1);
    a.insert(8);
    b.insert(8);
    const auto s1 = spec_from({a, b}, 9, &ents);
    const double after = proximity(s1, ents).at(0, 1);
    ASSERT_GE(after, before);
    ASSERT_EQ(after, synth::oracle::proximity(a, b));
  }
}

TEST(Proximity, DisciplineRelabelingInvariance) {
  Rng rng(10);
  for (int t = 0; t < 100; ++t) {
    const int n_disc = 6;
    std::vector<std::set<int>> sets(5);
    for (auto& s : sets)
      for (int d = 0; d < n_disc; ++d)
        if (rng.bernoulli(0.5)) s.insert(d);
    std::vector<int> perm(n_disc);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<std::string> ents;
    const auto sa = spec_from(sets, n_disc, &ents);
    const auto sb = spec_from(sets, n_disc, &ents, perm);
    const auto a = proximity(sa, ents);
    const auto b = proximity(sb, ents);
    ASSERT_EQ(a.values, b.values);
  }
}

TEST(ToNetwork, EdgesOnlyForPositiveProximity) {
  std::vector<std::string> ents;
  const auto s2 = spec_from({{0}, {1}}, 2, &ents);
  auto p = proximity(s2, ents);
  auto net = to_network(p);
  EXPECT_EQ(net.n_nodes(), 2u);
  EXPECT_EQ(net.n_edges(), 0u);
  const auto s3 = spec_from({{0}, {0}, {0}}, 1, &ents);
  p = proximity(s3, ents);
  net = to_network(p, {{"t1", {12, std::nullopt}}});
  ASSERT_EQ(net.n_edges(), 3u);
  for (const auto& e : net.edges) {
    EXPECT_EQ(e.weight, 1.0);
    EXPECT_LT(e.i, e.j);
  }
  EXPECT_EQ(net.attrs[1].total_mentions, 12);
}

TEST(MakeNetwork, ValidatesEdges) {
  EXPECT_THROW(make_network({"a", "b"}, {{0, 0, 0.5}}), ArgumentError);
  EXPECT_THROW(make_network({"a", "b"}, {{0, 1, 0.5}, {1, 0, 0.4}}), ArgumentError);
  EXPECT_THROW(make_network({"a", "b"}, {{0, 1, 1.5}}), ArgumentError);
  EXPECT_THROW(make_network({"a", "b"}, {{0, 1, 0.0}}), ArgumentError);
  EXPECT_THROW(make_network({"a", "a"}, {}), ArgumentError);
  const auto net = make_network({"a", "b"}, {{1, 0, 0.5}});
  EXPECT_EQ(net.edges[0].i, 0u);
}

TEST(NetworkIo, RoundTripAndGraphml) {
  const auto g = synth::random_weighted_graph(12, 0.4, true, 3);
  std::stringstream nodes, edges;
  write_node_table(nodes, g);
  write_edge_list(edges, g);
  const auto back = read_network(nodes, edges, "mem");
  ASSERT_EQ(back.nodes, g.nodes);
  ASSERT_EQ(back.n_edges(), g.n_edges());
  for (std::size_t k = 0; k < g.n_edges(); ++k) {
    EXPECT_EQ(back.edges[k].i, g.edges[k].i);
    EXPECT_EQ(back.edges[k].weight, g.edges[k].weight);
  }
  std::ostringstream gm;
  write_graphml(gm, g);
  const auto text = gm.str();
  EXPECT_NE(text.find("<graphml"), std::string::npos);
  EXPECT_NE(text.find("edgedefault=\"undirected\""), std::string::npos);
  std::size_t count = 0;
  for (auto pos = text.find("<edge "); pos != std::string::npos; pos = text.find("<edge ", pos + 1)) ++count;
  EXPECT_EQ(count, g.n_edges());
}

TEST(NetworkIo, UnknownNodeIsDataError) {
  std::istringstream nodes("tool,total_mentions\na,1\n"), edges("tool_i,tool_j,phi\na,b,0.5\n");
  EXPECT_THROW(read_network(nodes, edges, "mem"), DataError);
}
