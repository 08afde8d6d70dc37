#include "wsnsim/routing.hpp"

#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wsnsim/geometry.hpp"

namespace wsnsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_active(const NetworkState& state, NodeId id, const char* role) {
  if (id >= state.nodes.size() || state.nodes[id].status != NodeStatus::Active)
    throw std::invalid_argument(std::string(role) + " not an Active node");
}

/// Greedy walk over the key graph induced by `eligible` (which also
/// whitelists the peers a hop may use). Shared by both route flavors.
template <class Eligible>
RouteResult greedy_walk(const NetworkState& state, NodeId src, NodeId dst,
                        Eligible&& eligible) {
  RouteResult result;
  result.path.push_back(src);
  if (src == dst) {
    result.outcome = RouteOutcome::Delivered;
    return result;
  }

  const Position goal = state.nodes[dst].pos;
  std::set<NodeId> visited{src};
  NodeId current = src;
  for (;;) {
    const PairwiseKeys& ring = state.nodes[current].key_ring.pairwise;
    // A key straight to the destination always wins.
    if (ring.contains(dst)) {
      result.path.push_back(dst);
      result.hops = static_cast<std::uint32_t>(result.path.size() - 1);
      result.outcome = RouteOutcome::Delivered;
      return result;
    }
    NodeId best = 0;
    double best_d2 = kInf;
    bool found = false;
    for (const auto& [peer, key] : ring) {
      if (visited.count(peer) || !eligible(peer)) continue;
      const double d2 = squared_distance(state.nodes[peer].pos, goal);
      if (d2 < best_d2 || (d2 == best_d2 && (!found || peer < best))) {
        best_d2 = d2;
        best = peer;
        found = true;
      }
    }
    if (!found) {  // dead end: every keyed peer is spent or out of scope
      result.hops = static_cast<std::uint32_t>(result.path.size() - 1);
      result.outcome = RouteOutcome::Unreachable;
      return result;
    }
    result.path.push_back(best);
    visited.insert(best);
    current = best;
  }
}

}  // namespace

RouteResult route_intra(const NetworkState& state, ClusterId cluster_id,
                        NodeId src, NodeId dst) {
  const Cluster& cluster = state.cluster(cluster_id);
  require_active(state, src, "src");
  require_active(state, dst, "dst");
  if (!cluster.members.count(src) || !cluster.members.count(dst))
    throw std::invalid_argument("endpoint outside the cluster");

  RouteResult result = greedy_walk(state, src, dst, [&](NodeId peer) {
    return cluster.members.count(peer) && state.is_active(peer);
  });
  result.intra_src_hops = result.hops;
  return result;
}

RouteResult route_inter(const NetworkState& state, NodeId src, NodeId dst) {
  require_active(state, src, "src");
  require_active(state, dst, "dst");
  const Node& s = state.nodes[src];
  const Node& d = state.nodes[dst];
  if (!s.cluster || !d.cluster)
    throw std::invalid_argument("endpoint not clustered");
  if (*s.cluster == *d.cluster)
    throw std::invalid_argument("endpoints share a cluster");

  const NodeId src_head = state.cluster(*s.cluster).head;
  const NodeId dst_head = state.cluster(*d.cluster).head;

  // Leg 1: climb to the local head.
  RouteResult leg1 = route_intra(state, *s.cluster, src, src_head);
  RouteResult result;
  result.path = std::move(leg1.path);
  result.intra_src_hops = leg1.hops;
  result.hops = leg1.hops;
  if (leg1.outcome != RouteOutcome::Delivered) return result;

  // Leg 2: head to head over the long radio.
  RouteResult leg2 = greedy_walk(state, src_head, dst_head, [&](NodeId peer) {
    return state.is_cluster_head(peer) && state.is_active(peer);
  });
  result.path.insert(result.path.end(), leg2.path.begin() + 1, leg2.path.end());
  result.head_hops = leg2.hops;
  result.hops += leg2.hops;
  if (leg2.outcome != RouteOutcome::Delivered) return result;

  // Leg 3: descend to the destination.
  RouteResult leg3 = route_intra(state, *d.cluster, dst_head, dst);
  result.path.insert(result.path.end(), leg3.path.begin() + 1, leg3.path.end());
  result.intra_dst_hops = leg3.hops;
  result.hops += leg3.hops;
  result.outcome = leg3.outcome;
  return result;
}

RouteResult deliver(NetworkState& state, NodeId src, NodeId dst) {
  require_active(state, src, "src");
  require_active(state, dst, "dst");
  const Node& s = state.nodes[src];
  const Node& d = state.nodes[dst];
  if (!s.cluster || !d.cluster)
    throw std::invalid_argument("endpoint not clustered");

  const RouteResult result =
      (*s.cluster == *d.cluster)
          ? route_intra(state, *s.cluster, src, dst)
          : route_inter(state, src, dst);

  // Each node that forwarded pays for its transmission; the head-to-head
  // leg runs on the expensive radio.
  for (std::size_t i = 0; i + 1 < result.path.size(); ++i) {
    const bool long_leg = i >= result.intra_src_hops &&
                          i < result.intra_src_hops + result.head_hops;
    state.nodes[result.path[i]].energy_used += long_leg
                                                   ? state.config.energy_costs.long_tx
                                                   : state.config.energy_costs.short_tx;
  }
  return result;
}

std::string describe_route(const RouteResult& result, NodeId src, NodeId dst) {
  std::ostringstream out;
  out << "route " << src << " -> " << dst << ": "
      << (result.outcome == RouteOutcome::Delivered ? "delivered" : "unreachable")
      << " hops=" << result.hops << " path=";
  for (std::size_t i = 0; i < result.path.size(); ++i) {
    if (i) out << ',';
    out << result.path[i];
  }
  return out.str();
}

}  // namespace wsnsim
