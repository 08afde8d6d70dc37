#include "wsnsim/keying.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wsnsim/clustering.hpp"
#include "wsnsim/geometry.hpp"

namespace wsnsim {

double exact_birthday_probability(std::uint64_t n, std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("d must be positive");
  if (n > d) return 1.0;  // pigeonhole
  double all_distinct = 1.0;
  for (std::uint64_t i = 1; i < n; ++i) {
    all_distinct *= static_cast<double>(d - i) / static_cast<double>(d);
    if (all_distinct == 0.0) break;
  }
  return 1.0 - all_distinct;
}

double approx_share_probability(std::uint64_t s, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("n below 2");
  if (s < 2) return 0.0;
  // C(s,2) independent pairing chances, each hitting with probability 1/n.
  const double pairs = 0.5 * static_cast<double>(s) * static_cast<double>(s - 1);
  return -std::expm1(pairs * std::log1p(-1.0 / static_cast<double>(n)));
}

std::uint32_t required_share_count(double p_target, std::uint64_t n) {
  if (!(p_target >= 0.0 && p_target < 1.0))
    throw std::invalid_argument("p_target outside [0, 1)");
  if (n < 2) throw std::invalid_argument("n below 2");
  const double threshold = p_target - kShareTargetSlack;
  std::uint32_t s = 1;
  while (approx_share_probability(s, n) < threshold) ++s;
  return s;
}

std::uint32_t effective_share_count(double p_target, std::size_t cluster_size) {
  if (cluster_size < 2) return 0;
  return std::min(required_share_count(p_target, cluster_size),
                  static_cast<std::uint32_t>(cluster_size - 1));
}

void drop_pairwise_keys(NetworkState& state, NodeId node_id) {
  Node& node = state.node(node_id);
  for (const auto& [peer, key] : node.key_ring.pairwise)
    state.nodes[peer].key_ring.pairwise.erase(node_id);
  node.key_ring.pairwise.clear();
}

void distribute_cluster_keys(NetworkState& state, ClusterId cluster_id,
                             std::uint32_t share_count) {
  Cluster& cluster = state.cluster(cluster_id);
  const std::size_t n = cluster.members.size();
  if (n < 2) throw std::invalid_argument("cluster too small to pair keys");
  if (share_count < 1 || share_count >= n)
    throw std::invalid_argument("share_count outside [1, members - 1]");

  const std::vector<NodeId> members(cluster.members.begin(),
                                    cluster.members.end());

  // Retire the previous round. Intra-cluster entries vanish symmetrically
  // because every member is wiped; the only out-of-cluster entries a member
  // can hold are a head's keys to other clusters' heads, which stay valid
  // across a key refresh and are kept.
  for (NodeId id : members) {
    Node& node = state.nodes[id];
    if (state.is_cluster_head(id)) {
      node.key_ring.pairwise.erase_if([&](const PairwiseKeys::Entry& entry) {
        return !(state.is_cluster_head(entry.first) &&
                 state.nodes[entry.first].cluster != node.cluster);
      });
    } else {
      node.key_ring.pairwise.clear();
    }
    node.key_ring.epoch = cluster.epoch;
  }

  // Every member names share_count distinct mates; the union of the named
  // pairs gets fresh keys, installed symmetrically.
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(members.size() * share_count);
  for (std::size_t pi = 0; pi < members.size(); ++pi) {
    const auto picks = state.rng.sample_distinct(
        share_count, static_cast<std::uint32_t>(n - 1));
    for (std::uint32_t raw : picks) {
      const std::size_t qi = (raw >= pi) ? raw + 1 : raw;  // skip self
      const NodeId a = std::min(members[pi], members[qi]);
      const NodeId b = std::max(members[pi], members[qi]);
      edges.emplace_back(a, b);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  for (const auto& [a, b] : edges) {
    const KeyId key = state.fresh_key();
    state.nodes[a].key_ring.pairwise.insert_or_assign(b, key);
    state.nodes[b].key_ring.pairwise.insert_or_assign(a, key);
  }
  cluster.last_share_count = share_count;
}

void refresh_on_transfer(NetworkState& state, NodeId node_id,
                         ClusterId new_cluster_id) {
  Node& node = state.node(node_id);
  if (node.status != NodeStatus::Active)
    throw std::invalid_argument("node not Active");
  Cluster& target = state.cluster(new_cluster_id);
  if (node.cluster && *node.cluster == new_cluster_id)
    throw std::invalid_argument("node already in that cluster");

  // Walk out of the old cluster; its keys are dead on departure.
  if (node.cluster) {
    const ClusterId old_id = *node.cluster;
    Cluster& old_cluster = state.cluster(old_id);
    old_cluster.members.erase(node_id);
    drop_pairwise_keys(state, node_id);
    if (old_cluster.members.empty()) {
      state.clusters.erase(old_id);
    } else if (old_cluster.head == node_id) {
      const NodeId successor =
          elect_head(state, old_cluster.members, old_cluster.mean);
      old_cluster.head = successor;
      state.nodes[successor].radio = Radio::Long;
      state.emit_event(EventKind::HeadRotated, successor, old_id, old_id);
      install_head_keys(state);
    }
  } else {
    drop_pairwise_keys(state, node_id);  // brand-new nodes hold none anyway
  }

  node.cluster = new_cluster_id;
  node.radio = Radio::Short;
  node.key_ring.epoch = target.epoch;
  target.members.insert(node_id);

  const std::uint32_t s =
      effective_share_count(state.config.p_target, target.members.size());
  if (s > 0) {
    std::vector<NodeId> others;
    others.reserve(target.members.size() - 1);
    for (NodeId id : target.members)
      if (id != node_id) others.push_back(id);
    const auto picks =
        state.rng.sample_distinct(s, static_cast<std::uint32_t>(others.size()));
    for (std::uint32_t raw : picks) {
      const NodeId peer = others[raw];
      const KeyId key = state.fresh_key();
      node.key_ring.pairwise.insert_or_assign(peer, key);
      state.nodes[peer].key_ring.pairwise.insert_or_assign(node_id, key);
    }
  }
}

void install_head_keys(NetworkState& state) {
  const double reach = state.config.long_range();
  const double reach2 = reach * reach;
  std::vector<NodeId> heads;
  heads.reserve(state.clusters.size());
  for (const auto& [cid, cluster] : state.clusters) heads.push_back(cluster.head);

  for (std::size_t i = 0; i < heads.size(); ++i) {
    for (std::size_t j = i + 1; j < heads.size(); ++j) {
      Node& a = state.nodes[heads[i]];
      Node& b = state.nodes[heads[j]];
      if (squared_distance(a.pos, b.pos) > reach2) continue;
      if (a.key_ring.pairwise.contains(b.id)) continue;
      const KeyId key = state.fresh_key();
      a.key_ring.pairwise.insert_or_assign(b.id, key);
      b.key_ring.pairwise.insert_or_assign(a.id, key);
    }
  }
}

double mean_share_count(const NetworkState& state) {
  if (state.clusters.empty()) return 0.0;
  double total = 0.0;
  for (const auto& [cid, cluster] : state.clusters)
    total += static_cast<double>(cluster.last_share_count);
  return total / static_cast<double>(state.clusters.size());
}

}  // namespace wsnsim
