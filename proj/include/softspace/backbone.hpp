#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "softspace/proximity.hpp"

namespace softspace {

enum class EdgeOrigin { Filter, Mst, Both };
std::string_view to_string(EdgeOrigin o);

// Edge names are ordered so that i < j in byte order.
struct BackboneEdge {
  std::string i;
  std::string j;
  double weight = 0.0;
  double significance = 1.0;
  EdgeOrigin origin = EdgeOrigin::Filter;
};

// Node-local disparity p-values for one edge, one per endpoint. For a node of
// degree k >= 2 and strength s the p-value of an incident edge of weight w is
// (1 - w/s)^(k-1); nodes of degree 1 report 1.
struct EdgePValues {
  double at_i = 1.0;
  double at_j = 1.0;
  double significance() const { return at_i < at_j ? at_i : at_j; }
};

// Parallel to net.edges.
std::vector<EdgePValues> disparity_pvalues(const ProximityNetwork& net);

// Edges significant at either endpoint (min p-value < alpha).
std::vector<BackboneEdge> disparity_filter(const ProximityNetwork& net, double alpha);

// Maximum spanning forest: Kruskal over edges sorted by descending weight,
// ties by (i, j) name order. One tree per connected component.
std::vector<BackboneEdge> max_spanning_tree(const ProximityNetwork& net);

// Union of the filter and the spanning forest with origin tagging.
std::vector<BackboneEdge> backbone(const ProximityNetwork& net, double alpha, bool with_mst = true);

// Number of connected components, counting isolated nodes.
std::size_t count_components(std::size_t n_nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// Columns: i, j, phi, significance, origin.
void write_backbone(std::ostream& out, const std::vector<BackboneEdge>& edges);
void write_backbone_graphml(std::ostream& out, const ProximityNetwork& net, const std::vector<BackboneEdge>& edges);

}  // namespace softspace
