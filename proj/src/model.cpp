#include "wsnsim/model.hpp"

#include <stdexcept>
#include <string>

namespace wsnsim {

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Added: return "added";
    case EventKind::Removed: return "removed";
    case EventKind::Compromised: return "compromised";
    case EventKind::HeadRotated: return "head_rotated";
    case EventKind::Transferred: return "transferred";
    case EventKind::SingletonFormed: return "singleton_formed";
  }
  return "unknown";
}

Node& NetworkState::node(NodeId id) {
  if (id >= nodes.size())
    throw std::invalid_argument("unknown node id " + std::to_string(id));
  return nodes[id];
}

const Node& NetworkState::node(NodeId id) const {
  if (id >= nodes.size())
    throw std::invalid_argument("unknown node id " + std::to_string(id));
  return nodes[id];
}

Cluster& NetworkState::cluster(ClusterId id) {
  const auto it = clusters.find(id);
  if (it == clusters.end())
    throw std::invalid_argument("unknown cluster id " + std::to_string(id));
  return it->second;
}

const Cluster& NetworkState::cluster(ClusterId id) const {
  const auto it = clusters.find(id);
  if (it == clusters.end())
    throw std::invalid_argument("unknown cluster id " + std::to_string(id));
  return it->second;
}

bool NetworkState::is_active(NodeId id) const {
  return id < nodes.size() && nodes[id].status == NodeStatus::Active;
}

bool NetworkState::is_cluster_head(NodeId id) const {
  if (id >= nodes.size()) return false;
  const auto& membership = nodes[id].cluster;
  if (!membership) return false;
  const auto it = clusters.find(*membership);
  return it != clusters.end() && it->second.head == id;
}

std::vector<NodeId> NetworkState::active_ids() const {
  std::vector<NodeId> out;
  out.reserve(nodes.size());
  for (const Node& n : nodes)
    if (n.status == NodeStatus::Active) out.push_back(n.id);
  return out;
}

std::size_t NetworkState::active_count() const {
  std::size_t count = 0;
  for (const Node& n : nodes)
    if (n.status == NodeStatus::Active) ++count;
  return count;
}

void NetworkState::emit_event(EventKind kind, NodeId node,
                              std::optional<ClusterId> before,
                              std::optional<ClusterId> after) {
  events.push_back({kind, node, step, before, after});
}

NetworkState init_state(const SimConfig& config) {
  config.validate();
  NetworkState state(config);
  state.nodes.reserve(config.node_count);
  for (NodeId id = 0; id < config.node_count; ++id) {
    Node n;
    n.id = id;
    n.pos = {state.rng.uniform_double(0.0, config.area_width),
             state.rng.uniform_double(0.0, config.area_height)};
    n.waypoint = {state.rng.uniform_double(0.0, config.area_width),
                  state.rng.uniform_double(0.0, config.area_height)};
    n.speed = state.rng.uniform_double(config.mobility.speed_min,
                                       config.mobility.speed_max);
    n.key_ring.base_key = state.fresh_key();
    state.nodes.push_back(std::move(n));
  }
  return state;
}

}  // namespace wsnsim
