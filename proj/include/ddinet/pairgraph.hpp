#pragma once

#include <cstdint>
#include <vector>

#include "ddinet/chem/brics.hpp"
#include "ddinet/kgstore.hpp"
#include "ddinet/mat.hpp"

namespace ddinet {

struct SubgraphConfig {
  int k = 2;                 // hop radius
  std::size_t node_cap = 200;
};

/// Distance one-hot width per anchor: distances clamped to 2k+2, so the
/// alphabet is {0, ..., 2k+2}.
inline std::size_t distance_onehot_width(int k) { return 2 * static_cast<std::size_t>(k) + 3; }

/// Enclosing subgraph of a drug pair: union of the depth-k balls around both
/// drugs in the training graph, with the pair's own DDI edges removed before
/// extraction. Node order is sorted global index; u and v always survive the
/// node cap.
struct EnclosingSubgraph {
  std::vector<std::size_t> node_ids;   // global entity indices, ascending
  std::vector<std::pair<std::size_t, std::size_t>> local_edges;  // undirected, local idx
  std::size_t u_local = 0;
  std::size_t v_local = 0;
  std::vector<int> dist_u;  // adjusted distances (pre-clamp) within the subgraph
  std::vector<int> dist_v;
  Mat positions;   // |V| x 2*(2k+3), one-hot clamped distances
  Mat categories;  // |V| x kNumEntityClasses

  std::size_t size() const { return node_ids.size(); }
};

EnclosingSubgraph khop_enclosing_subgraph(const BiomedicalKG& kg, std::size_t u, std::size_t v,
                                          const SubgraphConfig& cfg);

/// Adjusted shortest-path distance of local node i to the given anchor:
/// BFS distance within the induced subgraph when finite, otherwise one past
/// the largest finite distance to that anchor.
int adjusted_distance(const EnclosingSubgraph& sub, std::size_t i, bool anchor_u);

/// Two substructure graphs joined by complete bipartite cross-drug edges.
struct HierarchicalInteractionGraph {
  std::size_t n_u = 0;  // fragments of drug u come first
  std::size_t n_v = 0;
  std::vector<std::pair<std::size_t, std::size_t>> intra_edges;
  std::vector<std::pair<std::size_t, std::size_t>> inter_edges;  // (u-side, v-side)

  std::size_t size() const { return n_u + n_v; }
  bool is_u_side(std::size_t node) const { return node < n_u; }
};

HierarchicalInteractionGraph build_hig(const chem::SubstructureGraph& su,
                                       const chem::SubstructureGraph& sv);

}  // namespace ddinet
