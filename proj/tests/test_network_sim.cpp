#include "jsr/network_sim.hpp"

#include <gtest/gtest.h>

namespace jsr {
namespace {

TEST(Topology, CompleteDegrees) {
  const auto t = Topology::complete(4);
  for (Index l = 0; l < 4; ++l) EXPECT_EQ(t.neighbors(l).size(), 3u);
  EXPECT_TRUE(t.is_complete());
  EXPECT_TRUE(t.is_connected());
}

TEST(Topology, RingTwoIsCycle) {
  const auto t = Topology::ring(5, 2);
  for (Index l = 0; l < 5; ++l) {
    ASSERT_EQ(t.neighbors(l).size(), 2u);
    EXPECT_EQ(t.neighbors(l), (std::vector<Index>{std::min((l + 1) % 5, (l + 4) % 5),
                                                  std::max((l + 1) % 5, (l + 4) % 5)}));
  }
  EXPECT_EQ(t.edges().size(), 5u);
}

TEST(Topology, OddDegreeRingUsesDiameter) {
  const auto t = Topology::ring(10, 7);
  for (Index l = 0; l < 10; ++l) {
    EXPECT_EQ(t.neighbors(l).size(), 7u);
    const auto& adj = t.neighbors(l);
    EXPECT_NE(std::find(adj.begin(), adj.end(), (l + 5) % 10), adj.end());
  }
  EXPECT_THROW(Topology::ring(9, 3), InvalidParameter);
}

TEST(Topology, RingRejectsInfeasibleDegree) {
  EXPECT_THROW(Topology::ring(5, 5), InvalidParameter);
  EXPECT_THROW(Topology::ring(5, 0), InvalidParameter);
  EXPECT_THROW(Topology::complete(0), InvalidParameter);
}

TEST(Topology, SymmetricNoSelfLoopsProperty) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Index l_count = 2 + static_cast<Index>(rng.below(15));
    const auto t = Topology::random_connected(l_count, 0.3, rng);
    EXPECT_TRUE(t.is_connected());
    for (Index a = 0; a < l_count; ++a) {
      for (Index b : t.neighbors(a)) {
        EXPECT_NE(a, b);
        const auto& back = t.neighbors(b);
        EXPECT_NE(std::find(back.begin(), back.end(), a), back.end());
      }
    }
  }
}

TEST(Topology, RandomConnectedDeterministicPerSeed) {
  Rng a(31), b(31);
  const auto x = Topology::random_connected(10, 0.3, a);
  const auto y = Topology::random_connected(10, 0.3, b);
  EXPECT_EQ(x.edges(), y.edges());
  EXPECT_TRUE(x.is_connected());
}

TEST(Topology, FromEdgesRejectsDisconnected) {
  EXPECT_THROW(Topology::from_edges(4, {{0, 1}, {2, 3}}), InvalidParameter);
  EXPECT_THROW(Topology::from_edges(3, {{0, 0}, {1, 2}}), InvalidParameter);
  const auto path = Topology::from_edges(2, {{0, 1}});
  EXPECT_EQ(path.neighbors(0), std::vector<Index>{1});
}

TEST(TopologySpec, ParseRoundTrip) {
  for (const char* text : {"complete", "ring_k:4", "ring_k:half"}) {
    EXPECT_EQ(TopologySpec::parse(text).to_string(), text);
  }
  EXPECT_EQ(TopologySpec::parse("random_connected:0.3").kind, TopologyKind::kRandomConnected);
  EXPECT_THROW(TopologySpec::parse("star"), InvalidParameter);
  EXPECT_THROW(TopologySpec::parse("random_connected:1.5"), InvalidParameter);
  EXPECT_THROW(TopologySpec::parse("ring_k:x"), InvalidParameter);
}

TEST(TopologySpec, HalfResolvesAgainstNodeCount) {
  Rng rng(1);
  const auto t = Topology::build(TopologySpec::parse("ring_k:half"), 8, rng);
  EXPECT_EQ(t.neighbors(0).size(), 4u);
}

TEST(Ledger, GlobalIndexOnCompleteGraph) {
  const auto t = Topology::complete(10);
  MessageLedger ledger(10);
  ledger.send_global(t, 3, 1);
  EXPECT_EQ(ledger.global_scalars(), 9);
  EXPECT_EQ(ledger.global_messages(), 9);
  EXPECT_EQ(ledger.local_scalars(), 0);
  EXPECT_EQ(ledger.per_node_scalars()[3], 9);
}

TEST(Ledger, LocalVectorOnRing) {
  const auto t = Topology::ring(10, 2);
  MessageLedger ledger(10);
  ledger.send_local(t, 0, 256);
  EXPECT_EQ(ledger.local_scalars(), 512);
  EXPECT_EQ(ledger.local_messages(), 2);
}

TEST(Ledger, RejectsEmptyPayload) {
  const auto t = Topology::complete(3);
  MessageLedger ledger(3);
  EXPECT_THROW(ledger.send_local(t, 0, 0), InvalidParameter);
  EXPECT_THROW(ledger.send_global(t, 5, 1), InvalidParameter);
}

TEST(Ledger, OrderIndependentAndMonotone) {
  const auto t = Topology::ring(8, 4);
  MessageLedger forward(8), backward(8);
  std::int64_t last = 0;
  for (Index l = 0; l < 8; ++l) {
    forward.send_local(t, l, l + 1);
    forward.send_global(t, l, 2);
    EXPECT_GE(forward.local_scalars() + forward.global_scalars(), last);
    last = forward.local_scalars() + forward.global_scalars();
  }
  for (Index l = 7; l >= 0; --l) {
    backward.send_global(t, l, 2);
    backward.send_local(t, l, l + 1);
  }
  EXPECT_EQ(forward.local_scalars(), backward.local_scalars());
  EXPECT_EQ(forward.global_scalars(), backward.global_scalars());
  EXPECT_EQ(forward.per_node_scalars(), backward.per_node_scalars());
}

}  // namespace
}  // namespace jsr
