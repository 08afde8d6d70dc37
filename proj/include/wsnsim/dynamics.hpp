#pragma once

#include <cstddef>
#include <cstdint>

#include "wsnsim/geometry.hpp"
#include "wsnsim/model.hpp"

namespace wsnsim {

/// Advances every Active node one random-waypoint step: move `speed`
/// meters toward the waypoint, pause pause_steps on arrival, then draw a
/// fresh waypoint and speed. Positions stay clamped to the area. Bumps
/// state.step.
void mobility_step(NetworkState& state);

/// Re-homes every Active node that moved strictly nearer to another
/// cluster's mean than to its own: the node leaves its old ring behind,
/// joins the nearer cluster, and draws fresh keys there (refresh_on_transfer
/// semantics, including head re-election in the abandoned cluster). Emits a
/// Transferred event per move and returns how many happened.
std::size_t detect_transfers(NetworkState& state);

/// Admits a new Active node at `pos` with a fresh base-station key. It
/// joins the nearest cluster whose mean lies within short-radio reach and
/// draws a ring there; with no cluster in reach it becomes a single-member
/// cluster and its own head (SingletonFormed). Returns the new id.
NodeId add_node(NetworkState& state, Position pos);

/// Retires an Active node as Dead or Compromised: its pairwise keys and
/// all mirrors vanish, the cluster re-elects a head if it lost one (or is
/// deleted when emptied), and the survivors' keys are redistributed with a
/// ring size recomputed for the shrunken membership.
void remove_node(NetworkState& state, NodeId node_id, NodeStatus reason);

/// Marks floor(fraction * active) uniformly chosen Active nodes
/// Compromised, one remove_node at a time. Fractions above 0.7 set the
/// network_compromised flag. Returns how many nodes were hit.
std::size_t compromise_fraction(NetworkState& state, double fraction);

/// Full re-clustering of the current Active population (k from
/// default_cluster_count), followed by key distribution in every cluster
/// and head-to-head key installation. Emits HeadRotated for nodes that
/// gained headship relative to the previous round.
void recluster(NetworkState& state);

}  // namespace wsnsim
