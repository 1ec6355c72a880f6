#include "softspace/proximity.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>

#include "softspace/delimited.hpp"
#include "softspace/error.hpp"
#include "softspace/graphml.hpp"
#include "softspace/specialization.hpp"

namespace softspace {

std::vector<std::string> ProximityMatrix::unsupported() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < entities.size(); ++i)
    if (basis_count[i] == 0) out.push_back(entities[i]);
  return out;
}

std::optional<std::size_t> ProximityNetwork::index_of(const std::string& name) const {
  auto it = std::find(nodes.begin(), nodes.end(), name);
  if (it == nodes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

ProximityMatrix proximity(const SpecializationSet& spec, std::span<const std::string> entities) {
  const std::size_t n = entities.size();
  const std::size_t n_disc = spec.disciplines.size();
  const std::size_t words = (n_disc + 63) / 64;
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx.emplace(entities[i], i);

  // One bitset over disciplines per entity.
  std::vector<std::uint64_t> bits(n * words, 0);
  for (std::size_t d = 0; d < n_disc; ++d) {
    for (const auto& name : spec.of(spec.disciplines[d])) {
      auto it = idx.find(name);
      if (it == idx.end()) continue;
      bits[it->second * words + d / 64] |= std::uint64_t{1} << (d % 64);
    }
  }

  ProximityMatrix p;
  p.entities.assign(entities.begin(), entities.end());
  p.basis_count.assign(n, 0);
  p.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    int c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(bits[i * words + w]);
    p.basis_count[i] = c;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p.basis_count[i] == 0) continue;
    p.values[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p.basis_count[j] == 0) continue;
      int shared = 0;
      for (std::size_t w = 0; w < words; ++w) shared += std::popcount(bits[i * words + w] & bits[j * words + w]);
      const double v = static_cast<double>(shared) / std::max(p.basis_count[i], p.basis_count[j]);
      p.values[i * n + j] = v;
      p.values[j * n + i] = v;
    }
  }
  return p;
}

ProximityNetwork to_network(const ProximityMatrix& p, const std::map<std::string, NodeAttributes>& node_attrs) {
  ProximityNetwork net;
  net.nodes = p.entities;
  net.attrs.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto it = node_attrs.find(p.entities[i]);
    if (it != node_attrs.end()) net.attrs[i] = it->second;
  }
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p.at(i, j) > 0.0) net.edges.push_back({i, j, p.at(i, j)});
  return net;
}

ProximityNetwork make_network(std::vector<std::string> nodes, std::vector<WeightedEdge> edges) {
  if (std::set<std::string>(nodes.begin(), nodes.end()).size() != nodes.size())
    throw ArgumentError("duplicate node name");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges) {
    if (e.i == e.j) throw ArgumentError("self-loop on node " + std::to_string(e.i));
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.j >= nodes.size()) throw ArgumentError("edge endpoint out of range");
    if (!(e.weight > 0.0 && e.weight <= 1.0)) throw ArgumentError("edge weight outside (0,1]");
    if (!seen.emplace(e.i, e.j).second) throw ArgumentError("duplicate undirected edge");
  }
  ProximityNetwork net;
  net.attrs.resize(nodes.size());
  net.nodes = std::move(nodes);
  net.edges = std::move(edges);
  return net;
}

void write_edge_list(std::ostream& out, const ProximityNetwork& net) {
  io::write_row(out, {"tool_i", "tool_j", "phi"});
  for (const auto& e : net.edges) io::write_row(out, {net.nodes[e.i], net.nodes[e.j], io::format_double(e.weight)});
}

void write_node_table(std::ostream& out, const ProximityNetwork& net, const ProximityMatrix* p) {
  io::write_row(out, {"tool", "total_mentions", "basis_count"});
  for (std::size_t i = 0; i < net.n_nodes(); ++i) {
    io::write_row(out, {net.nodes[i], std::to_string(net.attrs[i].total_mentions),
                        p ? std::to_string(p->basis_count[i]) : ""});
  }
}

ProximityNetwork read_network(std::istream& nodes_in, std::istream& edges_in, const std::string& source_name) {
  io::Table nodes = io::read_table(nodes_in, source_name + " (nodes)");
  io::Table edges = io::read_table(edges_in, source_name + " (edges)");
  const auto c_tool = nodes.column("tool"), c_tot = nodes.column("total_mentions");
  std::vector<std::string> names;
  std::vector<NodeAttributes> attrs;
  std::unordered_map<std::string, std::size_t> idx;
  for (const auto& row : nodes.rows) {
    if (!idx.emplace(row[c_tool], names.size()).second) throw DataError(source_name + ": duplicate node '" + row[c_tool] + "'");
    names.push_back(row[c_tool]);
    attrs.push_back({io::parse_int(row[c_tot], "total_mentions"), std::nullopt});
  }
  const auto c_i = edges.column("tool_i"), c_j = edges.column("tool_j"), c_w = edges.column("phi");
  std::vector<WeightedEdge> list;
  for (const auto& row : edges.rows) {
    auto a = idx.find(row[c_i]);
    auto b = idx.find(row[c_j]);
    if (a == idx.end() || b == idx.end()) throw DataError(source_name + ": edge references unknown node");
    list.push_back({a->second, b->second, io::parse_double(row[c_w], "phi")});
  }
  ProximityNetwork net;
  try {
    net = make_network(std::move(names), std::move(list));
  } catch (const ArgumentError& e) {
    throw DataError(source_name + ": " + e.what());
  }
  net.attrs = std::move(attrs);
  return net;
}

void write_graphml(std::ostream& out, const ProximityNetwork& net) {
  graphml::Writer w(out);
  w.key("label", graphml::Domain::Node, graphml::Type::String);
  w.key("total_mentions", graphml::Domain::Node, graphml::Type::Long);
  w.key("community", graphml::Domain::Node, graphml::Type::Int);
  w.key("weight", graphml::Domain::Edge, graphml::Type::Double);
  w.begin_graph();
  for (std::size_t i = 0; i < net.n_nodes(); ++i) {
    graphml::Attributes a{{"label", net.nodes[i]}, {"total_mentions", std::to_string(net.attrs[i].total_mentions)}};
    if (net.attrs[i].community) a.emplace_back("community", std::to_string(*net.attrs[i].community));
    w.node("n" + std::to_string(i), a);
  }
  for (const auto& e : net.edges) {
    w.edge("n" + std::to_string(e.i), "n" + std::to_string(e.j), {{"weight", io::format_double(e.weight)}});
  }
  w.end_graph();
}

}  // namespace softspace
