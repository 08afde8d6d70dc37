#pragma once

#include <cstdint>

#include "wsnsim/model.hpp"

namespace wsnsim {

/// Probability that n draws with replacement from d equally likely values
/// collide at least once: 1 - prod_{i=0}^{n-1} (d - i) / d. Exact up to
/// floating-point rounding; returns 1 whenever n > d. Throws when d == 0.
double exact_birthday_probability(std::uint64_t n, std::uint64_t d);

/// Probability that two members of an n-node cluster share at least one of
/// the C(s,2) candidate pairings: 1 - (1 - 1/n)^(s(s-1)/2), evaluated as
/// -expm1(C * log1p(-1/n)) to stay accurate near 0 and 1. Throws when n < 2.
double approx_share_probability(std::uint64_t s, std::uint64_t n);

/// Tolerance applied to the p_target comparison below. The reported ring
/// sizes round the probability to a few decimals, so an s whose coverage
/// misses the target by less than this counts as reaching it.
inline constexpr double kShareTargetSlack = 1e-3;

/// Smallest ring size s with approx_share_probability(s, n) >=
/// p_target - kShareTargetSlack. Throws unless 0 <= p_target < 1 and n >= 2.
std::uint32_t required_share_count(double p_target, std::uint64_t n);

/// required_share_count clamped to cluster_size - 1 (a ring cannot list
/// more peers than exist); 0 when the cluster is too small to pair.
std::uint32_t effective_share_count(double p_target, std::size_t cluster_size);

/// Base-station view of one distribution round: every member draws
/// share_count distinct cluster mates, the drawn pairs are unioned
/// symmetrically, and each resulting pair gets a fresh unique key. Existing
/// intra-cluster pairwise keys are discarded first; keys a head shares with
/// other clusters' heads survive. Rings are stamped with the cluster epoch.
/// Throws when the cluster has fewer than 2 members or share_count is not
/// in [1, members - 1].
void distribute_cluster_keys(NetworkState& state, ClusterId cluster_id,
                             std::uint32_t share_count);

/// Moves one Active node into new_cluster_id: strips its old pairwise keys
/// (and the mirrors held by old peers), re-elects the old cluster's head if
/// the mover held it (deleting the old cluster instead when it empties),
/// then draws a fresh ring inside the new cluster. The mover never becomes
/// the new cluster's head here.
void refresh_on_transfer(NetworkState& state, NodeId node_id,
                         ClusterId new_cluster_id);

/// Gives every pair of current cluster heads within long-radio reach of
/// each other a shared key, if they do not already hold one.
void install_head_keys(NetworkState& state);

/// Erases every pairwise key the node holds, together with the mirror
/// entries its peers hold. The base-station key stays.
void drop_pairwise_keys(NetworkState& state, NodeId node_id);

/// Share-count of the most recent distribution in each cluster, averaged;
/// 0 when no cluster has distributed yet.
double mean_share_count(const NetworkState& state);

}  // namespace wsnsim
