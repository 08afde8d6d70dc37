#include "wsnsim/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wsnsim/clustering.hpp"
#include "wsnsim/keying.hpp"

namespace wsnsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void draw_waypoint(NetworkState& state, Node& node) {
  node.waypoint = {state.rng.uniform_double(0.0, state.config.area_width),
                   state.rng.uniform_double(0.0, state.config.area_height)};
  node.speed = state.rng.uniform_double(state.config.mobility.speed_min,
                                        state.config.mobility.speed_max);
}

}  // namespace

void mobility_step(NetworkState& state) {
  for (Node& node : state.nodes) {
    if (node.status != NodeStatus::Active) continue;
    if (node.pause_remaining > 0) {
      if (--node.pause_remaining == 0) draw_waypoint(state, node);
      continue;
    }
    const double gap = distance(node.pos, node.waypoint);
    if (gap <= node.speed) {
      node.pos = node.waypoint;
      if (state.config.mobility.pause_steps == 0) {
        draw_waypoint(state, node);
      } else {
        node.pause_remaining = state.config.mobility.pause_steps;
      }
    } else {
      const double scale = node.speed / gap;
      node.pos.x += (node.waypoint.x - node.pos.x) * scale;
      node.pos.y += (node.waypoint.y - node.pos.y) * scale;
    }
    node.pos = clamped(node.pos, state.config.area_width,
                       state.config.area_height);
  }
  ++state.step;
}

std::size_t detect_transfers(NetworkState& state) {
  if (state.clusters.empty()) return 0;
  std::size_t moved = 0;
  for (NodeId id : state.active_ids()) {
    const Node& node = state.nodes[id];
    if (!node.cluster) continue;

    ClusterId nearest = *node.cluster;
    double nearest_d2 = kInf;
    for (const auto& [cid, cluster] : state.clusters) {
      const double d2 = squared_distance(node.pos, cluster.mean);
      if (d2 < nearest_d2) {
        nearest_d2 = d2;
        nearest = cid;
      }
    }
    const ClusterId home = *node.cluster;
    if (nearest == home) continue;
    // Strictly nearer only: a tie never uproots the node.
    if (!(nearest_d2 < squared_distance(node.pos, state.cluster(home).mean)))
      continue;

    refresh_on_transfer(state, id, nearest);
    state.emit_event(EventKind::Transferred, id, home, nearest);
    ++moved;
  }
  return moved;
}

NodeId add_node(NetworkState& state, Position pos) {
  if (!inside_area(pos, state.config.area_width, state.config.area_height))
    throw std::invalid_argument("position outside the area");

  const NodeId id = static_cast<NodeId>(state.nodes.size());
  Node node;
  node.id = id;
  node.pos = pos;
  node.key_ring.base_key = state.fresh_key();
  state.nodes.push_back(node);
  draw_waypoint(state, state.nodes[id]);

  // Join the nearest cluster the short radio can reach, else stand alone.
  ClusterId nearest = 0;
  double nearest_d2 = kInf;
  bool found = false;
  for (const auto& [cid, cluster] : state.clusters) {
    const double d2 = squared_distance(pos, cluster.mean);
    if (d2 < nearest_d2) {
      nearest_d2 = d2;
      nearest = cid;
      found = true;
    }
  }
  const double reach2 = state.config.short_range * state.config.short_range;
  if (found && nearest_d2 <= reach2) {
    refresh_on_transfer(state, id, nearest);
    state.emit_event(EventKind::Added, id, std::nullopt, nearest);
  } else {
    Cluster singleton;
    singleton.id = state.next_cluster_id++;
    singleton.mean = pos;
    singleton.head = id;
    singleton.members.insert(id);
    singleton.epoch = state.epoch;
    state.clusters.emplace(singleton.id, singleton);
    Node& self = state.nodes[id];
    self.cluster = singleton.id;
    self.radio = Radio::Long;
    self.key_ring.epoch = state.epoch;
    install_head_keys(state);  // link the lone head to any heads in reach
    state.emit_event(EventKind::Added, id, std::nullopt, singleton.id);
    state.emit_event(EventKind::SingletonFormed, id, std::nullopt, singleton.id);
  }
  return id;
}

void remove_node(NetworkState& state, NodeId node_id, NodeStatus reason) {
  Node& node = state.node(node_id);
  if (node.status != NodeStatus::Active)
    throw std::invalid_argument("node not Active");
  if (reason == NodeStatus::Active)
    throw std::invalid_argument("removal reason must be Dead or Compromised");

  const std::optional<ClusterId> home = node.cluster;
  drop_pairwise_keys(state, node_id);
  node.status = reason;
  node.cluster.reset();
  node.radio = Radio::Short;
  state.emit_event(reason == NodeStatus::Compromised ? EventKind::Compromised
                                                     : EventKind::Removed,
                   node_id, home, std::nullopt);

  if (!home) return;
  Cluster& cluster = state.cluster(*home);
  cluster.members.erase(node_id);
  if (cluster.members.empty()) {
    state.clusters.erase(*home);
    return;
  }

  if (cluster.head == node_id) {
    const NodeId successor = elect_head(state, cluster.members, cluster.mean);
    cluster.head = successor;
    state.nodes[successor].radio = Radio::Long;
    state.emit_event(EventKind::HeadRotated, successor, *home, *home);
    install_head_keys(state);
  }

  // Survivors re-key at a ring size fitted to the shrunken membership.
  const std::uint32_t s =
      effective_share_count(state.config.p_target, cluster.members.size());
  if (s > 0) {
    distribute_cluster_keys(state, *home, s);
  } else {
    cluster.last_share_count = 0;
  }
}

std::size_t compromise_fraction(NetworkState& state, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("fraction outside [0, 1]");
  const std::vector<NodeId> active = state.active_ids();
  const auto hit_count = static_cast<std::uint32_t>(
      std::floor(fraction * static_cast<double>(active.size())));
  const auto victims = state.rng.sample_distinct(
      hit_count, static_cast<std::uint32_t>(active.size()));
  for (std::uint32_t index : victims)
    remove_node(state, active[index], NodeStatus::Compromised);
  if (fraction > 0.7) state.network_compromised = true;
  return hit_count;
}

void recluster(NetworkState& state) {
  ++state.recluster_count;
  std::vector<NodeId> previous_heads;
  for (const auto& [cid, cluster] : state.clusters)
    previous_heads.push_back(cluster.head);

  if (state.active_count() == 0) {
    state.clusters.clear();
    return;
  }
  const std::uint32_t k = std::min<std::uint32_t>(
      default_cluster_count(state.active_count(),
                            state.config.target_cluster_size),
      static_cast<std::uint32_t>(state.active_count()));
  build_clusters(state, k);

  for (const auto& [cid, cluster] : state.clusters) {
    const std::uint32_t s = effective_share_count(state.config.p_target,
                                                  cluster.members.size());
    if (s > 0) distribute_cluster_keys(state, cid, s);
    const bool fresh_head =
        std::find(previous_heads.begin(), previous_heads.end(),
                  cluster.head) == previous_heads.end();
    if (fresh_head)
      state.emit_event(EventKind::HeadRotated, cluster.head, std::nullopt, cid);
  }
  install_head_keys(state);
}

}  // namespace wsnsim
