#include "wsnsim/clustering.hpp"

#include <limits>
#include <stdexcept>

namespace wsnsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint32_t nearest_center(const Position& p,
                             const std::vector<Position>& centers) {
  std::uint32_t best = 0;
  double best_d2 = kInf;
  for (std::uint32_t c = 0; c < centers.size(); ++c) {
    const double d2 = squared_distance(p, centers[c]);
    if (d2 < best_d2) {  // strict: ties stay with the lowest index
      best_d2 = d2;
      best = c;
    }
  }
  return best;
}

}  // namespace

std::vector<Position> seed_centers(const std::vector<Position>& points,
                                   std::uint32_t k, Rng& rng,
                                   const std::vector<Position>& initial_centers) {
  const std::size_t n = points.size();
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (k > n) throw std::invalid_argument("k exceeds point count");
  if (initial_centers.size() > k)
    throw std::invalid_argument("more initial centers than k");

  std::vector<Position> centers = initial_centers;
  centers.reserve(k);
  std::vector<double> min_d2(n, kInf);
  std::vector<char> taken(n, 0);  // point indices already chosen as centers

  const auto account = [&](const Position& c) {
    for (std::size_t i = 0; i < n; ++i)
      min_d2[i] = std::min(min_d2[i], squared_distance(points[i], c));
  };
  for (const Position& c : centers) account(c);

  if (centers.empty()) {
    const auto first = static_cast<std::size_t>(rng.uniform_index(n));
    taken[first] = 1;
    centers.push_back(points[first]);
    account(points[first]);
  }

  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += min_d2[i];

    std::size_t pick = n;
    if (total > 0.0) {
      // Weighted draw: points scanned in order, cumulative weight walk.
      // Zero-weight points (already centers, or duplicates of one) can
      // never absorb the draw because u < cum requires positive weight.
      const double u = rng.uniform_double(0.0, total);
      double cum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cum += min_d2[i];
        if (u < cum) {
          pick = i;
          break;
        }
      }
      if (pick == n) {  // summation rounding pushed u past the last step
        for (std::size_t i = n; i-- > 0;)
          if (min_d2[i] > 0.0) {
            pick = i;
            break;
          }
      }
    }
    if (pick == n) {
      // Every remaining point coincides with a center; fall back to a
      // uniform draw over the points not themselves chosen yet.
      std::uint64_t open = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (!taken[i]) ++open;
      std::uint64_t skip = rng.uniform_index(open);
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i]) continue;
        if (skip == 0) {
          pick = i;
          break;
        }
        --skip;
      }
    }

    taken[pick] = 1;
    centers.push_back(points[pick]);
    account(points[pick]);
  }
  return centers;
}

double wcss(const std::vector<Position>& points,
            const std::vector<Position>& centers,
            const std::vector<std::uint32_t>& assignment) {
  if (assignment.size() != points.size())
    throw std::invalid_argument("assignment size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (assignment[i] >= centers.size())
      throw std::invalid_argument("assignment references missing center");
    total += squared_distance(points[i], centers[assignment[i]]);
  }
  return total;
}

ClusteringResult lloyd_refine(const std::vector<Position>& points,
                              std::vector<Position> centers,
                              std::uint32_t max_iters) {
  if (points.empty()) throw std::invalid_argument("no points to cluster");
  if (centers.empty()) throw std::invalid_argument("no centers to refine");
  if (max_iters < 1) throw std::invalid_argument("max_iters below 1");

  const std::size_t n = points.size();
  const std::size_t k = centers.size();
  ClusteringResult result;
  result.assignment.assign(n, 0);
  std::vector<std::size_t> sizes(k, 0);

  for (std::uint32_t iter = 0; iter < max_iters; ++iter) {
    // Binding: each point to its nearest current center.
    bool changed = (iter == 0);
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t c = nearest_center(points[i], centers);
      if (c != result.assignment[i]) {
        result.assignment[i] = c;
        changed = true;
      }
      ++sizes[c];
    }

    // A center that lost every point restarts at the farthest point of
    // some cluster that can spare one; the objective only drops.
    for (std::uint32_t empty = 0; empty < k; ++empty) {
      if (sizes[empty] != 0) continue;
      std::size_t donor = n;
      double worst = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[result.assignment[i]] < 2) continue;
        const double d2 = squared_distance(points[i], centers[result.assignment[i]]);
        if (d2 > worst) {
          worst = d2;
          donor = i;
        }
      }
      if (donor == n) break;  // k > distinct occupied points; leave empty
      --sizes[result.assignment[donor]];
      centers[empty] = points[donor];
      result.assignment[donor] = empty;
      sizes[empty] = 1;
      changed = true;
    }

    result.iterations = iter + 1;
    result.wcss = wcss(points, centers, result.assignment);
    result.wcss_history.push_back(result.wcss);
    if (!changed) break;

    // Update: every occupied center moves to the mean of its points.
    std::vector<Position> sums(k, Position{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
      sums[result.assignment[i]].x += points[i].x;
      sums[result.assignment[i]].y += points[i].y;
    }
    for (std::size_t c = 0; c < k; ++c)
      if (sizes[c] > 0)
        centers[c] = {sums[c].x / static_cast<double>(sizes[c]),
                      sums[c].y / static_cast<double>(sizes[c])};
  }

  result.centers = std::move(centers);
  return result;
}

std::uint32_t default_cluster_count(std::size_t active_count,
                                    std::uint32_t target_cluster_size) {
  if (target_cluster_size == 0)
    throw std::invalid_argument("target_cluster_size below 2");
  if (active_count == 0) return 0;
  return static_cast<std::uint32_t>(
      (active_count + target_cluster_size - 1) / target_cluster_size);
}

NodeId elect_head(const NetworkState& state, const std::set<NodeId>& members,
                  const Position& mean) {
  if (members.empty()) throw std::invalid_argument("no members to elect from");
  NodeId head = *members.begin();
  double head_d2 = kInf;
  for (NodeId id : members) {
    const Node& n = state.nodes[id];
    const double d2 = squared_distance(n.pos, mean);
    const Node& h = state.nodes[head];
    if (d2 < head_d2 ||
        (d2 == head_d2 && (n.energy_used < h.energy_used ||
                           (n.energy_used == h.energy_used && id < head)))) {
      head_d2 = d2;
      head = id;
    }
  }
  return head;
}

void build_clusters(NetworkState& state, std::uint32_t k) {
  const std::vector<NodeId> active = state.active_ids();
  if (active.empty()) throw std::invalid_argument("no Active nodes to cluster");
  if (k == 0 || k > active.size())
    throw std::invalid_argument("k outside [1, Active count]");

  std::vector<Position> points;
  points.reserve(active.size());
  for (NodeId id : active) points.push_back(state.nodes[id].pos);

  // Diameter feasibility: grow k a few times if some cluster spans more
  // than the short radio can cover, then accept the best effort.
  const double limit2 = state.config.short_range * state.config.short_range;
  constexpr std::uint32_t kMaxEscalations = 3;
  ClusteringResult best;
  std::uint32_t attempt_k = k;
  for (std::uint32_t escalation = 0;; ++escalation) {
    best = lloyd_refine(points, seed_centers(points, attempt_k, state.rng), 100);

    std::vector<std::vector<std::size_t>> groups(best.centers.size());
    for (std::size_t i = 0; i < points.size(); ++i)
      groups[best.assignment[i]].push_back(i);
    bool oversized = false;
    for (const auto& group : groups) {
      for (std::size_t a = 0; a < group.size() && !oversized; ++a)
        for (std::size_t b = a + 1; b < group.size(); ++b)
          if (squared_distance(points[group[a]], points[group[b]]) > limit2) {
            oversized = true;
            break;
          }
      if (oversized) break;
    }
    if (!oversized) break;
    if (escalation == kMaxEscalations || attempt_k == active.size()) {
      ++state.diameter_warnings;
      break;
    }
    ++attempt_k;
  }

  // Commit: fresh epoch, brand-new clusters, all rings wiped.
  ++state.epoch;
  state.clusters.clear();
  std::vector<std::vector<NodeId>> members(best.centers.size());
  for (std::size_t i = 0; i < active.size(); ++i)
    members[best.assignment[i]].push_back(active[i]);

  for (std::size_t c = 0; c < best.centers.size(); ++c) {
    if (members[c].empty()) continue;  // unoccupied center (k near Active count)
    Cluster cluster;
    cluster.id = state.next_cluster_id++;
    cluster.mean = best.centers[c];
    cluster.epoch = state.epoch;
    cluster.members.insert(members[c].begin(), members[c].end());
    const NodeId head = elect_head(state, cluster.members, cluster.mean);
    cluster.head = head;

    for (NodeId id : members[c]) {
      Node& n = state.nodes[id];
      n.cluster = cluster.id;
      n.radio = (id == head) ? Radio::Long : Radio::Short;
      n.key_ring.pairwise.clear();
      n.key_ring.epoch = state.epoch;
    }
    state.clusters.emplace(cluster.id, std::move(cluster));
  }
}

}  // namespace wsnsim
