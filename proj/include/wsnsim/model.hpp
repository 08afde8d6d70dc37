#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "wsnsim/config.hpp"
#include "wsnsim/geometry.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

using NodeId = std::uint32_t;
using ClusterId = std::uint32_t;
using KeyId = std::uint64_t;

enum class Radio : std::uint8_t { Short, Long };

enum class NodeStatus : std::uint8_t { Active, Compromised, Dead };

/// Sorted flat map from peer id to shared key. Rings hold a few dozen
/// entries and get rebuilt constantly, so a vector beats a node-based map.
class PairwiseKeys {
 public:
  using Entry = std::pair<NodeId, KeyId>;
  using const_iterator = std::vector<Entry>::const_iterator;

  bool contains(NodeId peer) const { return find(peer) != nullptr; }

  const KeyId* find(NodeId peer) const {
    const auto it = lower(peer);
    return (it != entries_.end() && it->first == peer) ? &it->second : nullptr;
  }

  void insert_or_assign(NodeId peer, KeyId key) {
    const auto it = lower(peer);
    if (it != entries_.end() && it->first == peer) {
      entries_[static_cast<std::size_t>(it - entries_.begin())].second = key;
    } else {
      entries_.insert(it, {peer, key});
    }
  }

  bool erase(NodeId peer) {
    const auto it = lower(peer);
    if (it == entries_.end() || it->first != peer) return false;
    entries_.erase(it);
    return true;
  }

  template <class Pred>
  void erase_if(Pred pred) {
    std::erase_if(entries_, pred);
  }

  void clear() { entries_.clear(); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

  bool operator==(const PairwiseKeys&) const = default;

 private:
  std::vector<Entry>::const_iterator lower(NodeId peer) const {
    return std::lower_bound(
        entries_.begin(), entries_.end(), peer,
        [](const Entry& e, NodeId id) { return e.first < id; });
  }

  std::vector<Entry> entries_;  // sorted by peer id, unique
};

struct KeyRing {
  /// Key shared with the base station only; never rotated.
  KeyId base_key = 0;
  /// Keys shared with cluster mates, plus head-to-head keys on heads.
  PairwiseKeys pairwise;
  /// Epoch of the distribution round the pairwise keys came from.
  std::uint64_t epoch = 0;

  bool operator==(const KeyRing&) const = default;
};

struct Node {
  NodeId id = 0;
  Position pos;
  Position waypoint;
  double speed = 0.0;
  std::uint32_t pause_remaining = 0;
  Radio radio = Radio::Short;
  NodeStatus status = NodeStatus::Active;
  std::optional<ClusterId> cluster;
  double energy_used = 0.0;
  KeyRing key_ring;
};

struct Cluster {
  ClusterId id = 0;
  Position mean;
  NodeId head = 0;
  std::set<NodeId> members;
  /// Epoch stamped when this cluster's keys were last distributed in full.
  std::uint64_t epoch = 0;
  /// Ring size used in the most recent key distribution (0 = none yet).
  std::uint32_t last_share_count = 0;
};

enum class EventKind : std::uint8_t {
  Added,
  Removed,
  Compromised,
  HeadRotated,
  Transferred,
  SingletonFormed,
};

struct ChurnEvent {
  EventKind kind = EventKind::Added;
  NodeId node = 0;
  std::uint64_t step = 0;
  std::optional<ClusterId> cluster_before;
  std::optional<ClusterId> cluster_after;
};

const char* event_kind_name(EventKind kind);

struct NetworkState {
  SimConfig config;
  std::vector<Node> nodes;  // indexed by NodeId; removed nodes stay in place
  std::map<ClusterId, Cluster> clusters;
  std::uint64_t step = 0;
  /// Bumped on every full clustering round; stamps clusters and key rings.
  std::uint64_t epoch = 0;
  Rng rng;
  ClusterId next_cluster_id = 0;
  std::vector<ChurnEvent> events;
  bool network_compromised = false;
  std::uint32_t recluster_count = 0;
  /// Clustering rounds that hit the escalation cap with oversized clusters.
  std::uint32_t diameter_warnings = 0;

  explicit NetworkState(const SimConfig& cfg)
      : config(cfg), rng(cfg.seed), key_stream_(mix64(cfg.seed ^ kGoldenGamma)) {}

  /// Globally unique opaque key identifier (bijective mix of a counter).
  KeyId fresh_key() { return mix64(key_stream_ + ++key_sequence_); }

  Node& node(NodeId id);
  const Node& node(NodeId id) const;
  Cluster& cluster(ClusterId id);
  const Cluster& cluster(ClusterId id) const;

  bool is_active(NodeId id) const;
  /// True when `id` currently heads the cluster it belongs to.
  bool is_cluster_head(NodeId id) const;

  std::vector<NodeId> active_ids() const;
  std::size_t active_count() const;

  void emit_event(EventKind kind, NodeId node, std::optional<ClusterId> before,
                  std::optional<ClusterId> after);

 private:
  std::uint64_t key_stream_ = 0;
  std::uint64_t key_sequence_ = 0;
};

/// Validates the config and scatters node_count Active nodes uniformly over
/// the area, each with a fresh base-station key, a random waypoint, and a
/// random speed. No clusters exist yet.
NetworkState init_state(const SimConfig& config);

}  // namespace wsnsim
