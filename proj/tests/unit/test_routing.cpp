#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "wsnsim/keying.hpp"
#include "wsnsim/routing.hpp"
#include "../support/oracles.hpp"
#include "../support/synthetic.hpp"

using namespace wsnsim;

TEST_CASE("a shared key delivers in one hop") {
  NetworkState state = synthetic::state_at({{0, 0}, {50, 0}, {100, 0}});
  const ClusterId cid = synthetic::add_cluster(state, {0, 1, 2});
  synthetic::add_key(state, 0, 2);

  const RouteResult r = route_intra(state, cid, 0, 2);
  CHECK(r.outcome == RouteOutcome::Delivered);
  CHECK(r.hops == 1);
  CHECK(r.path == std::vector<NodeId>{0, 2});
  CHECK(r.intra_src_hops == 1);
  CHECK(r.head_hops == 0);
}

TEST_CASE("routing to yourself is a zero-hop delivery") {
  NetworkState state = synthetic::state_at({{0, 0}, {50, 0}});
  const ClusterId cid = synthetic::add_cluster(state, {0, 1});
  const RouteResult r = route_intra(state, cid, 0, 0);
  CHECK(r.outcome == RouteOutcome::Delivered);
  CHECK(r.hops == 0);
  CHECK(r.path == std::vector<NodeId>{0});
}

TEST_CASE("each hop picks the keyed peer closest to the destination") {
  // Line 0..4 at x = 0,10,20,30,40. src 0 knows 1 and 2; 2 is nearer to
  // dst 4, so the walk must jump over 1.
  NetworkState state =
      synthetic::state_at({{0, 0}, {10, 0}, {20, 0}, {30, 0}, {40, 0}});
  const ClusterId cid = synthetic::add_cluster(state, {0, 1, 2, 3, 4});
  synthetic::add_key(state, 0, 1);
  synthetic::add_key(state, 0, 2);
  synthetic::add_key(state, 2, 3);
  synthetic::add_key(state, 3, 4);
  synthetic::add_key(state, 1, 3);

  const RouteResult r = route_intra(state, cid, 0, 4);
  CHECK(r.outcome == RouteOutcome::Delivered);
  CHECK(r.path == std::vector<NodeId>{0, 2, 3, 4});
  CHECK(r.hops == 3);
}

TEST_CASE("the direct hop beats any greedy detour") {
  // 0 holds a key for dst 3 and a key for 2, which sits right next to the
  // destination; the direct key must still win.
  NetworkState state = synthetic::state_at({{0, 0}, {5, 0}, {29, 0}, {30, 0}});
  const ClusterId cid = synthetic::add_cluster(state, {0, 1, 2, 3});
  synthetic::add_key(state, 0, 2);
  synthetic::add_key(state, 0, 3);
  synthetic::add_key(state, 2, 3);

  const RouteResult r = route_intra(state, cid, 0, 3);
  CHECK(r.path == std::vector<NodeId>{0, 3});
  CHECK(r.hops == 1);
}

TEST_CASE("equidistant candidates break toward the lower id") {
  // Peers 1 and 2 are both 10 away from the destination.
  NetworkState state = synthetic::state_at({{0, 0}, {0, 10}, {20, 10}, {10, 10}});
  const ClusterId cid = synthetic::add_cluster(state, {0, 1, 2, 3});
  synthetic::add_key(state, 0, 1);
  synthetic::add_key(state, 0, 2);
  synthetic::add_key(state, 1, 3);
  synthetic::add_key(state, 2, 3);

  const RouteResult r = route_intra(state, cid, 0, 3);
  CHECK(r.path == std::vector<NodeId>{0, 1, 3});
}

TEST_CASE("a spent neighborhood ends the route as Unreachable") {
  NetworkState state = synthetic::state_at({{0, 0}, {10, 0}, {20, 0}});
  const ClusterId cid = synthetic::add_cluster(state, {0, 1, 2});
  synthetic::add_key(state, 0, 1);  // 2 is keyless: nobody can hand off to it

  const RouteResult r = route_intra(state, cid, 0, 2);
  CHECK(r.outcome == RouteOutcome::Unreachable);
  CHECK(r.path == std::vector<NodeId>{0, 1});
  CHECK(r.hops == 1);

  // A keyless source dead-ends immediately.
  const RouteResult empty = route_intra(state, cid, 2, 0);
  CHECK(empty.outcome == RouteOutcome::Unreachable);
  CHECK(empty.hops == 0);
  CHECK(empty.path == std::vector<NodeId>{2});
}

TEST_CASE("greedy never revisits a node") {
  // 1 and 2 know only each other and the source; the walk must not bounce
  // between them forever.
  NetworkState state = synthetic::state_at({{0, 0}, {10, 0}, {12, 0}, {50, 0}});
  const ClusterId cid = synthetic::add_cluster(state, {0, 1, 2, 3});
  synthetic::add_key(state, 0, 1);
  synthetic::add_key(state, 1, 2);

  const RouteResult r = route_intra(state, cid, 0, 3);
  CHECK(r.outcome == RouteOutcome::Unreachable);
  CHECK(r.path == std::vector<NodeId>{0, 1, 2});
  std::set<NodeId> unique(r.path.begin(), r.path.end());
  CHECK(unique.size() == r.path.size());
}

TEST_CASE("intra-cluster routing validates its endpoints") {
  NetworkState state = synthetic::state_at({{0, 0}, {10, 0}, {500, 500}});
  const ClusterId cid = synthetic::add_cluster(state, {0, 1});
  CHECK_THROWS_AS(route_intra(state, cid, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(route_intra(state, 42, 0, 1), std::invalid_argument);
  state.nodes[1].status = NodeStatus::Dead;
  CHECK_THROWS_AS(route_intra(state, cid, 0, 1), std::invalid_argument);
}

TEST_CASE("greedy walks are sound against breadth-first search") {
  // Over many random single-cluster instances: a delivered greedy path is
  // a real key path (so BFS reaches too, in no more hops), and greedy
  // never claims delivery where no key path exists.
  std::size_t delivered = 0, unreachable = 0;
  Rng scenario_rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + scenario_rng.uniform_index(11);
    std::vector<Position> positions;
    for (std::size_t i = 0; i < n; ++i)
      positions.push_back({scenario_rng.uniform_double(0, 1000),
                           scenario_rng.uniform_double(0, 1000)});
    NetworkState state = synthetic::state_at(positions, 900 + trial);
    std::vector<NodeId> ids(n);
    for (NodeId i = 0; i < n; ++i) ids[i] = i;
    const ClusterId cid = synthetic::add_cluster(state, ids);
    const std::uint32_t s =
        1 + static_cast<std::uint32_t>(scenario_rng.uniform_index(n - 1));
    distribute_cluster_keys(state, cid, s);

    const NodeId src = static_cast<NodeId>(scenario_rng.uniform_index(n));
    NodeId dst = static_cast<NodeId>(scenario_rng.uniform_index(n - 1));
    if (dst >= src) ++dst;

    const RouteResult r = route_intra(state, cid, src, dst);
    const std::set<NodeId> allowed(ids.begin(), ids.end());
    const auto bfs = oracle::bfs_key_hops(state, allowed, src, dst);

    if (r.outcome == RouteOutcome::Delivered) {
      ++delivered;
      REQUIRE(bfs.has_value());
      CHECK(*bfs <= r.hops);
      CHECK(r.path.front() == src);
      CHECK(r.path.back() == dst);
      CHECK(r.hops == r.path.size() - 1);
      for (std::size_t i = 0; i + 1 < r.path.size(); ++i)
        CHECK(state.nodes[r.path[i]].key_ring.pairwise.contains(r.path[i + 1]));
    } else {
      ++unreachable;
      if (!bfs.has_value()) {
        // Consistent: nobody could have routed this.
      }
      // Greedy may fail where BFS succeeds; the reverse must never happen.
    }
  }
  CHECK(delivered > 0);   // the corpus exercises both outcomes
  CHECK(unreachable > 0);
}

TEST_CASE("no key path means greedy reports Unreachable") {
  // Split key graph: {0,1} and {2,3} keyed internally, no bridge.
  NetworkState state = synthetic::state_at({{0, 0}, {10, 0}, {20, 0}, {30, 0}});
  const ClusterId cid = synthetic::add_cluster(state, {0, 1, 2, 3});
  synthetic::add_key(state, 0, 1);
  synthetic::add_key(state, 2, 3);
  const std::set<NodeId> allowed{0, 1, 2, 3};
  REQUIRE(!oracle::bfs_key_hops(state, allowed, 0, 3).has_value());
  CHECK(route_intra(state, cid, 0, 3).outcome == RouteOutcome::Unreachable);
}

namespace {

/// Two 3-node line clusters with hand-picked keys so every leg of the
/// inter-cluster route is forced: 0-2-1 up, 1-4 across, 4-3-5 down.
NetworkState two_cluster_fixture(ClusterId& left, ClusterId& right) {
  NetworkState state = synthetic::state_at(
      {{0, 0}, {10, 0}, {20, 0}, {100, 0}, {110, 0}, {120, 0}});
  left = synthetic::add_cluster(state, {0, 1, 2});   // head: 1 (at the mean)
  right = synthetic::add_cluster(state, {3, 4, 5});  // head: 4
  install_head_keys(state);
  synthetic::add_key(state, 0, 2);
  synthetic::add_key(state, 2, 1);
  synthetic::add_key(state, 4, 3);
  synthetic::add_key(state, 3, 5);
  return state;
}

}  // namespace

TEST_CASE("inter-cluster routes chain through both heads") {
  ClusterId left = 0, right = 0;
  NetworkState state = two_cluster_fixture(left, right);
  REQUIRE(state.cluster(left).head == 1);
  REQUIRE(state.cluster(right).head == 4);

  const RouteResult r = route_inter(state, 0, 5);
  CHECK(r.outcome == RouteOutcome::Delivered);
  CHECK(r.path == std::vector<NodeId>{0, 2, 1, 4, 3, 5});
  CHECK(r.intra_src_hops == 2);
  CHECK(r.head_hops == 1);
  CHECK(r.intra_dst_hops == 2);
  CHECK(r.hops == 5);
}

TEST_CASE("an unreachable head fails the whole route") {
  ClusterId left = 0, right = 0;
  NetworkState state = two_cluster_fixture(left, right);
  // Cut the source's path to its head.
  state.nodes[0].key_ring.pairwise.clear();
  state.nodes[2].key_ring.pairwise.erase(0);
  const RouteResult r = route_inter(state, 0, 5);
  CHECK(r.outcome == RouteOutcome::Unreachable);
  CHECK(r.head_hops == 0);
  CHECK(r.intra_dst_hops == 0);
}

TEST_CASE("inter-cluster routing validates its endpoints") {
  ClusterId left = 0, right = 0;
  NetworkState state = two_cluster_fixture(left, right);
  CHECK_THROWS_AS(route_inter(state, 0, 2), std::invalid_argument);  // same cluster
  state.nodes[5].status = NodeStatus::Compromised;
  CHECK_THROWS_AS(route_inter(state, 0, 5), std::invalid_argument);
}

TEST_CASE("delivery charges senders, with the long radio on the head leg") {
  ClusterId left = 0, right = 0;
  NetworkState state = two_cluster_fixture(left, right);
  state.config.energy_costs = {1.0, 5.0};

  const RouteResult r = deliver(state, 0, 5);
  REQUIRE(r.path == std::vector<NodeId>{0, 2, 1, 4, 3, 5});
  CHECK(state.nodes[0].energy_used == 1.0);  // short uphill
  CHECK(state.nodes[2].energy_used == 1.0);
  CHECK(state.nodes[1].energy_used == 5.0);  // head fires the long radio
  CHECK(state.nodes[4].energy_used == 1.0);  // short downhill
  CHECK(state.nodes[3].energy_used == 1.0);
  CHECK(state.nodes[5].energy_used == 0.0);  // receiving is free

  // A second identical delivery accumulates.
  deliver(state, 0, 5);
  CHECK(state.nodes[1].energy_used == 10.0);
}

TEST_CASE("delivery inside one cluster never uses the long radio") {
  NetworkState state = synthetic::state_at({{0, 0}, {10, 0}, {20, 0}});
  synthetic::add_cluster(state, {0, 1, 2});
  state.config.energy_costs = {1.0, 5.0};
  synthetic::add_key(state, 0, 1);
  synthetic::add_key(state, 1, 2);

  const RouteResult r = deliver(state, 0, 2);
  CHECK(r.outcome == RouteOutcome::Delivered);
  CHECK(r.head_hops == 0);
  CHECK(state.nodes[0].energy_used == 1.0);
  CHECK(state.nodes[1].energy_used == 1.0);
  CHECK(state.nodes[2].energy_used == 0.0);
}

TEST_CASE("a failed delivery still bills the hops that happened") {
  NetworkState state = synthetic::state_at({{0, 0}, {10, 0}, {20, 0}});
  synthetic::add_cluster(state, {0, 1, 2});
  state.config.energy_costs = {1.0, 5.0};
  synthetic::add_key(state, 0, 1);

  const RouteResult r = deliver(state, 0, 2);
  CHECK(r.outcome == RouteOutcome::Unreachable);
  CHECK(state.nodes[0].energy_used == 1.0);  // it did transmit to 1
  CHECK(state.nodes[1].energy_used == 0.0);  // dead end: never forwarded
  CHECK(state.nodes[2].energy_used == 0.0);
}

TEST_CASE("route descriptions read as one line") {
  RouteResult r;
  r.outcome = RouteOutcome::Delivered;
  r.path = {3, 1, 4};
  r.hops = 2;
  CHECK(describe_route(r, 3, 4) == "route 3 -> 4: delivered hops=2 path=3,1,4");
  RouteResult fail;
  fail.path = {7};
  CHECK(describe_route(fail, 7, 9) ==
        "route 7 -> 9: unreachable hops=0 path=7");
}
