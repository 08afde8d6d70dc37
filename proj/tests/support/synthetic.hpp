#pragma once

// Hand-built network states for unit tests: fixed positions, explicit
// cluster layouts, and explicit key edges, bypassing the stochastic
// clustering/keying paths so individual operations can be pinned down.

#include <set>
#include <vector>

#include "wsnsim/clustering.hpp"
#include "wsnsim/model.hpp"

namespace synthetic {

inline wsnsim::SimConfig tiny_config(std::uint32_t node_count,
                                     std::uint64_t seed = 1) {
  wsnsim::SimConfig cfg;
  cfg.node_count = node_count;
  cfg.target_cluster_size = 2;
  cfg.seed = seed;
  cfg.area_width = 1000.0;
  cfg.area_height = 1000.0;
  return cfg;
}

/// A state whose nodes sit at exactly the given positions (waypoints and
/// speeds keep their random init draws).
inline wsnsim::NetworkState state_at(const std::vector<wsnsim::Position>& positions,
                                     std::uint64_t seed = 1) {
  wsnsim::NetworkState state =
      wsnsim::init_state(tiny_config(static_cast<std::uint32_t>(positions.size()), seed));
  for (std::size_t i = 0; i < positions.size(); ++i)
    state.nodes[i].pos = positions[i];
  return state;
}

/// Installs one cluster over the given members: mean at their centroid,
/// head by the election rule, radios set accordingly.
inline wsnsim::ClusterId add_cluster(wsnsim::NetworkState& state,
                                     const std::vector<wsnsim::NodeId>& member_ids) {
  wsnsim::Cluster cluster;
  cluster.id = state.next_cluster_id++;
  cluster.epoch = state.epoch;
  double sx = 0, sy = 0;
  for (const wsnsim::NodeId id : member_ids) {
    cluster.members.insert(id);
    sx += state.nodes[id].pos.x;
    sy += state.nodes[id].pos.y;
  }
  cluster.mean = {sx / static_cast<double>(member_ids.size()),
                  sy / static_cast<double>(member_ids.size())};
  cluster.head = wsnsim::elect_head(state, cluster.members, cluster.mean);
  for (const wsnsim::NodeId id : member_ids) {
    state.nodes[id].cluster = cluster.id;
    state.nodes[id].radio =
        id == cluster.head ? wsnsim::Radio::Long : wsnsim::Radio::Short;
    state.nodes[id].key_ring.epoch = cluster.epoch;
  }
  const wsnsim::ClusterId cid = cluster.id;
  state.clusters.emplace(cid, std::move(cluster));
  return cid;
}

inline void add_key(wsnsim::NetworkState& state, wsnsim::NodeId a,
                    wsnsim::NodeId b) {
  const wsnsim::KeyId key = state.fresh_key();
  state.nodes[a].key_ring.pairwise.insert_or_assign(b, key);
  state.nodes[b].key_ring.pairwise.insert_or_assign(a, key);
}

}  // namespace synthetic
