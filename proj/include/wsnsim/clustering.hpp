#pragma once

#include <cstdint>
#include <vector>

#include "wsnsim/geometry.hpp"
#include "wsnsim/model.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

struct ClusteringResult {
  std::vector<Position> centers;
  /// assignment[i] = index into centers for points[i].
  std::vector<std::uint32_t> assignment;
  double wcss = 0.0;
  std::uint32_t iterations = 0;
  /// Objective after each iteration's binding step; non-increasing.
  std::vector<double> wcss_history;
};

/// Distance-weighted center seeding. The first center is drawn uniformly
/// unless `initial_centers` pins a prefix; each later center is drawn with
/// probability proportional to the squared distance to the nearest center
/// chosen so far. Returns all k centers, pinned prefix first.
std::vector<Position> seed_centers(const std::vector<Position>& points,
                                   std::uint32_t k, Rng& rng,
                                   const std::vector<Position>& initial_centers = {});

/// Alternates nearest-center binding (ties to the lowest center index) and
/// mean updates until assignments stop changing or max_iters is hit. A
/// center left with no points is reseeded at the point farthest from its
/// own center, taken from a cluster that keeps at least one other point.
ClusteringResult lloyd_refine(const std::vector<Position>& points,
                              std::vector<Position> centers,
                              std::uint32_t max_iters);

/// Sum over points of squared distance to the assigned center.
double wcss(const std::vector<Position>& points,
            const std::vector<Position>& centers,
            const std::vector<std::uint32_t>& assignment);

/// ceil(active / target): the cluster count the defaults aim at.
std::uint32_t default_cluster_count(std::size_t active_count,
                                    std::uint32_t target_cluster_size);

/// Head election rule: the member nearest `mean`, ties broken by lower
/// energy spent, then lower id. `members` must be non-empty.
NodeId elect_head(const NetworkState& state, const std::set<NodeId>& members,
                  const Position& mean);

/// Clusters the Active nodes into k groups: seeds, refines, enforces the
/// cluster-diameter budget (escalating k up to 3 times, then proceeds and
/// counts a diameter warning), then replaces state.clusters wholesale.
/// Heads are the members nearest their cluster mean (ties: lower energy
/// spent, then lower id); heads get the long radio, members the short one.
/// Every key ring's pairwise set is cleared and restamped with the new
/// epoch — distribution happens separately.
void build_clusters(NetworkState& state, std::uint32_t k);

}  // namespace wsnsim
