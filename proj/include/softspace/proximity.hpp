#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace softspace {

struct SpecializationSet;

// Co-specialization proximity between entities. With D_i the set of
// disciplines specializing in i,
//
//   phi(i,j) = min(P(i | j), P(j | i)) = |D_i & D_j| / max(|D_i|, |D_j|).
//
// The diagonal is 1 for entities with a nonempty basis and 0 otherwise.
struct ProximityMatrix {
  std::vector<std::string> entities;
  std::vector<double> values;
  std::vector<int> basis_count;

  std::size_t size() const { return entities.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * entities.size() + j]; }
  // Entities no discipline specializes in; they stay in the network as isolated nodes.
  std::vector<std::string> unsupported() const;
};

struct NodeAttributes {
  std::int64_t total_mentions = 0;
  std::optional<int> community;
};

// Undirected edge between node indices, i < j.
struct WeightedEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 0.0;
};

struct ProximityNetwork {
  std::vector<std::string> nodes;
  std::vector<NodeAttributes> attrs;
  std::vector<WeightedEdge> edges;

  std::size_t n_nodes() const { return nodes.size(); }
  std::size_t n_edges() const { return edges.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;
};

ProximityMatrix proximity(const SpecializationSet& spec, std::span<const std::string> entities);

// Edges for every pair with phi > 0, in row-major (i, j) order.
ProximityNetwork to_network(const ProximityMatrix& p, const std::map<std::string, NodeAttributes>& node_attrs = {});

// Builds a network from explicit edges. Throws ArgumentError on self-loops,
// duplicate pairs, unknown indices or weights outside (0, 1].
ProximityNetwork make_network(std::vector<std::string> nodes, std::vector<WeightedEdge> edges);

// Edge list: tool_i, tool_j, phi.
void write_edge_list(std::ostream& out, const ProximityNetwork& net);
// Node table: tool, total_mentions, basis_count.
void write_node_table(std::ostream& out, const ProximityNetwork& net, const ProximityMatrix* p = nullptr);
ProximityNetwork read_network(std::istream& nodes_in, std::istream& edges_in, const std::string& source_name);

void write_graphml(std::ostream& out, const ProximityNetwork& net);

}  // namespace softspace
