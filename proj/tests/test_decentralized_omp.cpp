#include "jsr/decentralized_omp.hpp"
#include "jsr/experiment.hpp"
#include "jsr/greedy_core.hpp"
#include "jsr/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace jsr {
namespace {

std::set<Index> as_set(const Support& s) { return {s.begin(), s.end()}; }

TrialData small_trial(Index n, Index m, Index k, Index l_count, double sigma2, std::uint64_t seed,
                      bool shared = false) {
  TrialSetup setup;
  setup.n = n;
  setup.m = m;
  setup.k = k;
  setup.l_count = l_count;
  setup.sigma2 = sigma2;
  setup.shared_matrix = shared;
  return make_trial(setup, seed);
}

TEST(IndexFusionFull, RepeatedValueWins) {
  const std::vector<Index> p{5, 5, 9};
  EXPECT_EQ(index_fusion_full(p, {}), Support{5});
}

TEST(IndexFusionFull, SmallestIdFallback) {
  const std::vector<Index> p{3, 7, 9};
  EXPECT_EQ(index_fusion_full(p, {}), Support{3});
}

TEST(IndexFusionFull, AllRepeatedValues) {
  const std::vector<Index> p{2, 2, 8, 8, 8};
  const auto fused = index_fusion_full(p, {});
  EXPECT_EQ(as_set(fused), (std::set<Index>{2, 8}));
  EXPECT_EQ(fused.front(), 8);  // most frequent first
}

TEST(IndexFusionFull, SkipsAlreadySelected) {
  const std::vector<Index> p{4, 4, 6, 6};
  const std::vector<Index> held{4};
  EXPECT_EQ(index_fusion_full(p, held), Support{6});
  const std::vector<Index> q{4, 7, 9};
  EXPECT_EQ(index_fusion_full(q, held), Support{7});
}

TEST(IndexFusionNeighborhood, Examples) {
  const std::vector<Index> r1{4, 9};
  EXPECT_EQ(index_fusion_neighborhood(4, r1, {}), Support{4});
  const std::vector<Index> r2{2, 9};
  const std::vector<Index> p2{1};
  EXPECT_EQ(index_fusion_neighborhood(6, r2, p2), Support{6});
  const std::vector<Index> r3{2, 2};
  const std::vector<Index> p3{2};
  EXPECT_EQ(index_fusion_neighborhood(6, r3, p3), Support{6});
}

TEST(Dcomp1, SingleNodeIsOmp) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = small_trial(32, 12, 3, 1, 0.01, seed);
    const auto topo = Topology::complete(1);
    for (auto mode : {FusionMode::kFull, FusionMode::kNeighborhood}) {
      const auto r = dcomp1(t.obs, t.meas, topo, 3, mode);
      EXPECT_EQ(r.per_node_support[0], omp(t.obs.per_node[0], t.meas.matrices[0], 3));
    }
  }
}

TEST(Dcomp1, NoiselessSingleIndexTerminatesAtOnce) {
  const auto t = small_trial(8, 6, 1, 5, 0.0, 7);
  const auto r = dcomp1(t.obs, t.meas, Topology::complete(5), 1, FusionMode::kFull);
  for (Index l = 0; l < 5; ++l) {
    EXPECT_EQ(r.iterations[l], 1);
    EXPECT_EQ(r.per_node_support[l], t.ensemble.support);
  }
}

TEST(Dcomp1, FullModeNeedsCompleteGraph) {
  const auto t = small_trial(16, 8, 2, 5, 0.01, 1);
  EXPECT_THROW(dcomp1(t.obs, t.meas, Topology::ring(5, 2), 2, FusionMode::kFull),
               InvalidParameter);
}

TEST(Dcomp2, CompleteGraphProposalsMatchSomp) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = small_trial(64, 16, 4, 5, 0.01, seed);
    const auto r = dcomp2(t.obs, t.meas, Topology::complete(5), 4);
    const auto reference = somp(t.obs, t.meas, 4);
    for (Index l = 0; l < 5; ++l) EXPECT_EQ(as_set(r.per_node_support[l]), as_set(reference));
    // every phase-I proposal is the S-OMP pick for that iteration
    ASSERT_FALSE(r.rounds.empty());
    for (std::size_t i = 0; i < r.rounds.size(); ++i) {
      for (Index p : r.rounds[i].proposals)
        if (p >= 0) EXPECT_EQ(p, reference[i]);
    }
  }
}

TEST(Dcomp2, TwoNodePathGraph) {
  const auto t = small_trial(32, 12, 3, 2, 0.0, 5);
  const auto r = dcomp2(t.obs, t.meas, Topology::from_edges(2, {{0, 1}}), 3);
  EXPECT_EQ(as_set(r.per_node_support[0]), as_set(t.ensemble.support));
  EXPECT_EQ(r.per_node_support[0], r.per_node_support[1]);
}

TEST(MajorityFuse, UnanimousSets) {
  const std::vector<Support> s{{1, 4, 7}, {7, 1, 4}, {4, 7, 1}};
  EXPECT_EQ(as_set(majority_fuse(s, 3)), (std::set<Index>{1, 4, 7}));
}

TEST(MajorityFuse, TopVotes) {
  // a=0 gets 3 votes, b=1 gets 2, c=2 and d=3 one each
  const std::vector<Support> s{{0, 1}, {0, 1}, {0, 2, 3}};
  EXPECT_EQ(as_set(majority_fuse(s, 2)), (std::set<Index>{0, 1}));
}

TEST(MajorityFuse, TieGoesToSmallerIndex) {
  const std::vector<Support> s{{0, 9}, {0, 4}};
  EXPECT_EQ(as_set(majority_fuse(s, 2)), (std::set<Index>{0, 4}));
}

TEST(Domp, UsesExactlyKIterations) {
  const auto t = small_trial(64, 16, 4, 6, 0.01, 3);
  const auto r = domp_majority(t.obs, t.meas, Topology::complete(6), 4);
  for (Index l = 0; l < 6; ++l) {
    EXPECT_EQ(r.iterations[l], 4);
    EXPECT_EQ(r.per_node_support[l].size(), 4u);
  }
  EXPECT_EQ(r.ledger.global_scalars(), 4 * 5 * 6);
}

TEST(Invariants, SupportsAreDistinctAndBounded) {
  const auto ring = Topology::ring(8, 4);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto t = small_trial(128, 20, 6, 8, 0.01, seed);
    const std::vector<RecoveryResult> results{
        dcomp1(t.obs, t.meas, Topology::complete(8), 6, FusionMode::kFull),
        dcomp1(t.obs, t.meas, ring, 6, FusionMode::kNeighborhood),
        dcomp2(t.obs, t.meas, ring, 6),
        domp_majority(t.obs, t.meas, Topology::complete(8), 6),
        somp_networked(t.obs, t.meas, Topology::complete(8), 6)};
    for (const auto& r : results) {
      for (Index l = 0; l < 8; ++l) {
        const auto& s = r.per_node_support[l];
        EXPECT_EQ(s.size(), 6u);
        EXPECT_EQ(as_set(s).size(), s.size());
        EXPECT_LE(r.iterations[l], 6);
        EXPECT_GE(r.iterations[l], 1);
      }
    }
  }
}

TEST(Invariants, LedgerMatchesComplexityTable) {
  const auto ring = Topology::ring(10, 4);
  std::vector<Index> ring_sizes(10), full_sizes(10, 9);
  for (Index l = 0; l < 10; ++l) ring_sizes[l] = static_cast<Index>(ring.neighbors(l).size());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto t = small_trial(256, 25, 10, 10, 0.01, seed);
    const auto full = Topology::complete(10);

    auto r = dcomp1(t.obs, t.meas, full, 10, FusionMode::kFull);
    LedgerTotals got{r.ledger.local_scalars(), r.ledger.global_scalars()};
    EXPECT_EQ(got, table1_expected(Algorithm::kDcomp1, 10, 10, 256, full_sizes, r.iterations));

    r = dcomp2(t.obs, t.meas, ring, 10);
    got = {r.ledger.local_scalars(), r.ledger.global_scalars()};
    EXPECT_EQ(got, table1_expected(Algorithm::kDcomp2, 10, 10, 256, ring_sizes, r.iterations));

    r = somp_networked(t.obs, t.meas, full, 10);
    EXPECT_EQ(r.ledger.global_scalars(), 230400);
    r = domp_majority(t.obs, t.meas, full, 10);
    EXPECT_EQ(r.ledger.global_scalars(), 900);
  }
}

TEST(Validation, RejectsBadSparsity) {
  const auto t = small_trial(16, 6, 2, 3, 0.01, 1);
  const auto topo = Topology::complete(3);
  EXPECT_THROW(dcomp2(t.obs, t.meas, topo, 0), InvalidParameter);
  EXPECT_THROW(dcomp2(t.obs, t.meas, topo, 7), InvalidParameter);
  EXPECT_THROW(dcomp2(t.obs, t.meas, Topology::complete(4), 2), InvalidParameter);
}

TEST(PairedMonteCarlo, Dcomp1BeatsDomp) {
  std::size_t dc = 0, d = 0;
  const auto full = Topology::complete(10);
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    const auto t = small_trial(256, 25, 10, 10, 0.01, trial_seed(11, trial));
    const auto a = dcomp1(t.obs, t.meas, full, 10, FusionMode::kFull);
    const auto b = domp_majority(t.obs, t.meas, full, 10);
    for (Index l = 0; l < 10; ++l) {
      dc += exact_recovery(a.per_node_support[l], t.ensemble.support);
      d += exact_recovery(b.per_node_support[l], t.ensemble.support);
    }
  }
  EXPECT_GE(dc, d);
}

TEST(PairedMonteCarlo, Dcomp2CloseToSomp) {
  std::size_t dc = 0, s = 0;
  const auto ring = Topology::ring(10, 7);
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    const auto t = small_trial(256, 25, 10, 10, 0.01, trial_seed(12, trial));
    const auto a = dcomp2(t.obs, t.meas, ring, 10);
    for (Index l = 0; l < 10; ++l) dc += exact_recovery(a.per_node_support[l], t.ensemble.support);
    s += 10 * exact_recovery(somp(t.obs, t.meas, 10), t.ensemble.support);
  }
  EXPECT_LE(std::abs(static_cast<double>(dc) - static_cast<double>(s)) / 5000.0, 0.05);
}

}  // namespace
}  // namespace jsr
