#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsnsim/model.hpp"

namespace wsnsim {

enum class RouteOutcome : std::uint8_t { Delivered, Unreachable };

struct RouteResult {
  RouteOutcome outcome = RouteOutcome::Unreachable;
  /// Nodes visited in order, starting at src; ends at dst when delivered.
  std::vector<NodeId> path;
  std::uint32_t hops = 0;
  /// Hop counts of the three legs of an inter-cluster route:
  /// src -> own head, head -> head (long radio), head -> dst.
  /// Intra-cluster routes put everything in intra_src_hops.
  std::uint32_t intra_src_hops = 0;
  std::uint32_t head_hops = 0;
  std::uint32_t intra_dst_hops = 0;
};

/// Greedy key-constrained forwarding inside one cluster: each hop goes to
/// the key-ring peer (Active, same cluster, not yet visited) closest to the
/// destination, with a direct hop whenever the current node already shares
/// a key with dst. A node whose eligible peers are exhausted ends the route
/// Unreachable. Both endpoints must be Active members of the cluster.
RouteResult route_intra(const NetworkState& state, ClusterId cluster_id,
                        NodeId src, NodeId dst);

/// Three-leg route between different clusters: greedy to the source head,
/// greedy across the head-to-head key graph (same rule, restricted to
/// current heads), then greedy from the destination head. Fails as a whole
/// if any leg fails.
RouteResult route_inter(const NetworkState& state, NodeId src, NodeId dst);

/// Routes src -> dst (dispatching on whether they share a cluster) and
/// charges each forwarding node's energy meter: long-radio cost on the
/// head-to-head leg, short-radio cost elsewhere.
RouteResult deliver(NetworkState& state, NodeId src, NodeId dst);

/// One-line trace of a routing attempt, for debug streams.
std::string describe_route(const RouteResult& result, NodeId src, NodeId dst);

}  // namespace wsnsim
