#include "ddinet/pairgraph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "ddinet/common.hpp"

namespace ddinet {

namespace {

// Depth-limited BFS over the knowledge graph, skipping the direct DDI edges
// between the anchor pair (the prediction target must not leak a length-1
// path into its own subgraph).
std::vector<int> bfs_limited(const BiomedicalKG& kg, std::size_t src, int max_depth,
                             std::size_t u, std::size_t v) {
  std::vector<int> dist(kg.num_entities(), -1);
  std::queue<std::size_t> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const std::size_t a = q.front();
    q.pop();
    if (dist[a] >= max_depth) continue;
    for (const AdjEntry& e : kg.adjacency[a]) {
      const bool target_edge = e.origin == Origin::ddi &&
                               ((a == u && e.nbr == v) || (a == v && e.nbr == u));
      if (target_edge) continue;
      if (dist[e.nbr] < 0) {
        dist[e.nbr] = dist[a] + 1;
        q.push(e.nbr);
      }
    }
  }
  return dist;
}

// BFS inside the induced subgraph (local adjacency).
std::vector<int> bfs_local(const std::vector<std::vector<std::size_t>>& adj, std::size_t src) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<std::size_t> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const std::size_t a = q.front();
    q.pop();
    for (std::size_t nb : adj[a]) {
      if (dist[nb] < 0) {
        dist[nb] = dist[a] + 1;
        q.push(nb);
      }
    }
  }
  return dist;
}

int adjusted(const std::vector<int>& dist, std::size_t i) {
  if (dist[i] >= 0) return dist[i];
  int mx = 0;
  for (int d : dist) mx = std::max(mx, d);
  return mx + 1;
}

}  // namespace

EnclosingSubgraph khop_enclosing_subgraph(const BiomedicalKG& kg, std::size_t u, std::size_t v,
                                          const SubgraphConfig& cfg) {
  if (u >= kg.num_entities() || v >= kg.num_entities())
    throw InputError("drug index out of range for the knowledge graph");
  if (u == v) throw InputError("enclosing subgraph requires two distinct drugs");
  if (cfg.k < 0) throw InputError("k must be non-negative");

  const auto du = bfs_limited(kg, u, cfg.k, u, v);
  const auto dv = bfs_limited(kg, v, cfg.k, u, v);

  // Membership: min distance within k. The cap keeps the closest nodes,
  // ties broken by global index; u and v always stay.
  std::vector<std::pair<int, std::size_t>> members;
  for (std::size_t i = 0; i < kg.num_entities(); ++i) {
    if (du[i] < 0 && dv[i] < 0) continue;
    int md = std::numeric_limits<int>::max();
    if (du[i] >= 0) md = std::min(md, du[i]);
    if (dv[i] >= 0) md = std::min(md, dv[i]);
    members.emplace_back(md, i);
  }
  std::sort(members.begin(), members.end());
  if (members.size() > cfg.node_cap) members.resize(cfg.node_cap);

  EnclosingSubgraph sub;
  for (const auto& [d, i] : members) sub.node_ids.push_back(i);
  std::sort(sub.node_ids.begin(), sub.node_ids.end());
  // u and v have distance 0; they always survive the cap
  std::map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < sub.node_ids.size(); ++i) local[sub.node_ids[i]] = i;
  sub.u_local = local.at(u);
  sub.v_local = local.at(v);

  // Induced edges (dedup over unordered pairs; target DDI edges stay removed).
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a : sub.node_ids) {
    for (const AdjEntry& e : kg.adjacency[a]) {
      const bool target_edge = e.origin == Origin::ddi &&
                               ((a == u && e.nbr == v) || (a == v && e.nbr == u));
      if (target_edge) continue;
      auto it = local.find(e.nbr);
      if (it == local.end()) continue;
      const std::size_t la = local.at(a), lb = it->second;
      edges.emplace(std::min(la, lb), std::max(la, lb));
    }
  }
  sub.local_edges.assign(edges.begin(), edges.end());

  // Labelling distances are recomputed inside the induced subgraph.
  std::vector<std::vector<std::size_t>> adj(sub.size());
  for (const auto& [a, b] : sub.local_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  sub.dist_u = bfs_local(adj, sub.u_local);
  sub.dist_v = bfs_local(adj, sub.v_local);

  const std::size_t w = distance_onehot_width(cfg.k);
  const int clamp = 2 * cfg.k + 2;
  sub.positions = Mat(sub.size(), 2 * w);
  sub.categories = Mat(sub.size(), kNumEntityClasses);
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const int au = std::min(adjusted(sub.dist_u, i), clamp);
    const int av = std::min(adjusted(sub.dist_v, i), clamp);
    sub.positions.at(i, static_cast<std::size_t>(au)) = 1.0;
    sub.positions.at(i, w + static_cast<std::size_t>(av)) = 1.0;
    const auto cls = kg.entities[sub.node_ids[i]].entity_class;
    sub.categories.at(i, static_cast<std::size_t>(cls)) = 1.0;
  }
  return sub;
}

int adjusted_distance(const EnclosingSubgraph& sub, std::size_t i, bool anchor_u) {
  return adjusted(anchor_u ? sub.dist_u : sub.dist_v, i);
}

HierarchicalInteractionGraph build_hig(const chem::SubstructureGraph& su,
                                       const chem::SubstructureGraph& sv) {
  if (su.fragments.empty() || sv.fragments.empty())
    throw InputError("cannot build an interaction graph from an empty fragment set");
  HierarchicalInteractionGraph hig;
  hig.n_u = su.fragments.size();
  hig.n_v = sv.fragments.size();
  for (const auto& [a, b] : su.edges) hig.intra_edges.emplace_back(a, b);
  for (const auto& [a, b] : sv.edges) hig.intra_edges.emplace_back(hig.n_u + a, hig.n_u + b);
  for (std::size_t a = 0; a < hig.n_u; ++a)
    for (std::size_t b = 0; b < hig.n_v; ++b) hig.inter_edges.emplace_back(a, hig.n_u + b);
  return hig;
}

}  // namespace ddinet
