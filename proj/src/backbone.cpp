#include "softspace/backbone.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "softspace/delimited.hpp"
#include "softspace/error.hpp"
#include "softspace/graphml.hpp"

namespace softspace {

std::string_view to_string(EdgeOrigin o) {
  switch (o) {
    case EdgeOrigin::Filter: return "filter";
    case EdgeOrigin::Mst: return "mst";
    case EdgeOrigin::Both: return "both";
  }
  return "?";
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

BackboneEdge make_edge(const ProximityNetwork& net, const WeightedEdge& e, double significance, EdgeOrigin origin) {
  BackboneEdge b{net.nodes[e.i], net.nodes[e.j], e.weight, significance, origin};
  if (b.j < b.i) std::swap(b.i, b.j);
  return b;
}

bool name_order(const BackboneEdge& a, const BackboneEdge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); }

}  // namespace

std::vector<EdgePValues> disparity_pvalues(const ProximityNetwork& net) {
  std::vector<double> strength(net.n_nodes(), 0.0);
  std::vector<std::size_t> degree(net.n_nodes(), 0);
  for (const auto& e : net.edges) {
    strength[e.i] += e.weight;
    strength[e.j] += e.weight;
    ++degree[e.i];
    ++degree[e.j];
  }
  auto local = [&](std::size_t node, double w) {
    if (degree[node] < 2) return 1.0;
    const double x = std::max(0.0, 1.0 - w / strength[node]);
    return std::pow(x, static_cast<double>(degree[node] - 1));
  };
  std::vector<EdgePValues> out;
  out.reserve(net.n_edges());
  for (const auto& e : net.edges) out.push_back({local(e.i, e.weight), local(e.j, e.weight)});
  return out;
}

std::vector<BackboneEdge> disparity_filter(const ProximityNetwork& net, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0,1)");
  const auto pv = disparity_pvalues(net);
  std::vector<BackboneEdge> out;
  for (std::size_t k = 0; k < net.n_edges(); ++k) {
    const double sig = pv[k].significance();
    if (sig < alpha) out.push_back(make_edge(net, net.edges[k], sig, EdgeOrigin::Filter));
  }
  std::sort(out.begin(), out.end(), name_order);
  return out;
}

std::vector<BackboneEdge> max_spanning_tree(const ProximityNetwork& net) {
  const auto pv = disparity_pvalues(net);
  std::vector<BackboneEdge> candidates;
  candidates.reserve(net.n_edges());
  for (std::size_t k = 0; k < net.n_edges(); ++k) {
    candidates.push_back(make_edge(net, net.edges[k], pv[k].significance(), EdgeOrigin::Mst));
  }
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (candidates[a].weight != candidates[b].weight) return candidates[a].weight > candidates[b].weight;
    return name_order(candidates[a], candidates[b]);
  });
  DisjointSets sets(net.n_nodes());
  std::vector<BackboneEdge> tree;
  for (std::size_t k : order) {
    if (sets.unite(net.edges[k].i, net.edges[k].j)) tree.push_back(candidates[k]);
  }
  std::sort(tree.begin(), tree.end(), name_order);
  return tree;
}

std::vector<BackboneEdge> backbone(const ProximityNetwork& net, double alpha, bool with_mst) {
  auto filtered = disparity_filter(net, alpha);
  if (!with_mst) return filtered;
  std::map<std::pair<std::string, std::string>, BackboneEdge> merged;
  for (auto& e : filtered) merged.emplace(std::pair{e.i, e.j}, std::move(e));
  for (auto& e : max_spanning_tree(net)) {
    auto [it, inserted] = merged.emplace(std::pair{e.i, e.j}, e);
    if (!inserted) it->second.origin = EdgeOrigin::Both;
  }
  std::vector<BackboneEdge> out;
  out.reserve(merged.size());
  for (auto& [key, e] : merged) out.push_back(std::move(e));
  return out;
}

std::size_t count_components(std::size_t n_nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  DisjointSets sets(n_nodes);
  std::size_t components = n_nodes;
  for (const auto& [a, b] : edges)
    if (sets.unite(a, b)) --components;
  return components;
}

void write_backbone(std::ostream& out, const std::vector<BackboneEdge>& edges) {
  io::write_row(out, {"i", "j", "phi", "significance", "origin"});
  for (const auto& e : edges) {
    io::write_row(out, {e.i, e.j, io::format_double(e.weight), io::format_double(e.significance),
                        std::string(to_string(e.origin))});
  }
}

void write_backbone_graphml(std::ostream& out, const ProximityNetwork& net, const std::vector<BackboneEdge>& edges) {
  graphml::Writer w(out);
  w.key("label", graphml::Domain::Node, graphml::Type::String);
  w.key("total_mentions", graphml::Domain::Node, graphml::Type::Long);
  w.key("community", graphml::Domain::Node, graphml::Type::Int);
  w.key("weight", graphml::Domain::Edge, graphml::Type::Double);
  w.key("significance", graphml::Domain::Edge, graphml::Type::Double);
  w.key("origin", graphml::Domain::Edge, graphml::Type::String);
  w.begin_graph();
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < net.n_nodes(); ++i) {
    idx[net.nodes[i]] = i;
    graphml::Attributes a{{"label", net.nodes[i]}, {"total_mentions", std::to_string(net.attrs[i].total_mentions)}};
    if (net.attrs[i].community) a.emplace_back("community", std::to_string(*net.attrs[i].community));
    w.node("n" + std::to_string(i), a);
  }
  for (const auto& e : edges) {
    w.edge("n" + std::to_string(idx.at(e.i)), "n" + std::to_string(idx.at(e.j)),
           {{"weight", io::format_double(e.weight)},
            {"significance", io::format_double(e.significance)},
            {"origin", std::string(to_string(e.origin))}});
  }
  w.end_graph();
}

}  // namespace softspace
