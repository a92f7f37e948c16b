#include <gtest/gtest.h>

#include <map>

#include "atasim/architecture.hpp"
#include "atasim/generator.hpp"
#include "helpers.hpp"

using namespace atasim;
using namespace testing_support;

TEST(Pipeline, Descriptions) {
  auto p = describe_pipeline(Architecture::Private);
  EXPECT_FALSE(p.aggregated_tags);
  EXPECT_TRUE(p.remote_hit.empty());
  auto a = describe_pipeline(Architecture::AtaCache);
  EXPECT_TRUE(a.aggregated_tags);
  EXPECT_FALSE(a.probes_on_miss);
  EXPECT_FALSE(a.remote_hit.empty());
  EXPECT_TRUE(describe_pipeline(Architecture::RemoteSharing).probes_on_miss);
  auto d = describe_pipeline(Architecture::DecoupledSharing);
  EXPECT_TRUE(d.noc_to_l1);
  EXPECT_FALSE(d.replicates);
}

TEST(Pipeline, HomeCacheIsModulo) {
  EXPECT_EQ(home_cache(23, 10), 3u);
  EXPECT_EQ(home_cache(30, 10), 0u);
}

// Hand-timed stage sums against the simulator, one request at a time on an idle system.
TEST(Pipeline, IdleLatenciesMatchSimulation) {
  for (Architecture arch : kAllArchitectures) {
    SCOPED_TRACE(std::string(to_string(arch)));
    const SimConfig c = small_config(arch);
    const IdleLatency idle = idle_latency(c, arch);
    // Line cold in L2, then the same line again from the L1.
    auto run = run_logged(c, {load(0, 0, 0x1000, 0), load(1000, 0, 0x1000, 1)});
    EXPECT_EQ(*run.records[0].request.completion_cycle, idle.l2_miss);
    EXPECT_EQ(*run.records[1].request.completion_cycle - 1000, idle.local_hit);
  }
  EXPECT_EQ(idle_latency(SimConfig{}, Architecture::Private).local_hit, 32u);
  EXPECT_EQ(idle_latency(SimConfig{}, Architecture::DecoupledSharing).local_hit, 6u + 32 + 6);
}

TEST(Pipeline, L2HitPathTiming) {
  for (Architecture arch : {Architecture::Private, Architecture::AtaCache}) {
    SimConfig c = small_config(arch);
    // Core 0 brings line into L2; core 1 (Private) misses and hits in L2.
    auto run = run_logged(c, {load(0, 0, 0x1000, 0), load(1000, 1, 0x1000, 1)});
    if (arch == Architecture::Private) {
      EXPECT_EQ(*run.records[1].request.completion_cycle - 1000, idle_latency(c, arch).l2_hit_miss);
    } else {
      EXPECT_EQ(*run.records[1].request.completion_cycle - 1000, idle_latency(c, arch).remote_hit);
    }
  }
}

TEST(Pipeline, RemoteSharingRemoteHitTiming) {
  const SimConfig c = small_config(Architecture::RemoteSharing);
  auto run = run_logged(c, {load(0, 0, 0x1000, 0), load(1000, 1, 0x1000, 1)});
  EXPECT_EQ(run.records[1].outcome, L1Outcome::RemoteHit);
  EXPECT_EQ(*run.records[1].request.completion_cycle - 1000,
            idle_latency(c, Architecture::RemoteSharing).remote_hit);
  EXPECT_EQ(run.report.probe_messages, 2u);  // one per miss, one peer each
}

TEST(Pipeline, PrivateNeverTalksBetweenCaches) {
  auto trace = single_writer_trace(4, 4, 4000, 16, 16);
  auto run = run_logged(small_config(Architecture::Private, 4, 4), trace);
  EXPECT_EQ(run.report.intra_cluster_flits, 0u);
  EXPECT_EQ(run.report.l1_remote_hits, 0u);
  EXPECT_EQ(run.report.probe_messages, 0u);
}

TEST(Pipeline, PrivateReplicatesMisses) {
  auto run = run_logged(small_config(Architecture::Private),
                        {load(0, 0, 0x1000, 0), load(0, 1, 0x1000, 1)});
  EXPECT_EQ(run.report.l2_hits + run.report.l2_misses, 2u);
}

TEST(Pipeline, DecoupledSameLineSerializes) {
  const SimConfig c = small_config(Architecture::DecoupledSharing, 8, 8);
  std::vector<TraceRecord> warm{load(0, 0, 0x1000, 0)};
  std::vector<TraceRecord> trace = warm;
  for (CoreId k = 0; k < 8; ++k) trace.push_back(load(1000, k, 0x1000, 1 + k));
  auto run = run_logged(c, trace);
  Cycle lo = ~Cycle{0}, hi = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    lo = std::min(lo, *run.records[i].request.completion_cycle);
    hi = std::max(hi, *run.records[i].request.completion_cycle);
  }
  EXPECT_GE(hi - lo, 7u);
}

TEST(Pipeline, DecoupledNeverReplicates) {
  SimConfig c = small_config(Architecture::DecoupledSharing, 4, 4);
  auto trace = single_writer_trace(8, 4, 5000, 40, 40);
  Simulator sim(c, trace);
  sim.run();
  for (std::uint32_t cache = 0; cache < 4; ++cache) {
    const TagArray& t = sim.memory().l1_tags(cache);
    for (std::uint64_t s = 0; s < t.sets(); ++s) {
      for (std::uint32_t w = 0; w < t.ways(); ++w) {
        const TagEntry& e = t.entry(s, w);
        if (!e.in_use()) continue;
        const std::uint64_t line = e.tag * t.sets() + s;
        ASSERT_EQ(home_cache(line, 4), cache);
      }
    }
  }
}

TEST(Pipeline, DisjointSetsAreLocalHitsUnderAta) {
  GenParams g;
  g.cores = 2;
  g.shared_prob = 0;
  g.lines_private = 64;
  g.requests_per_core = 6000;
  auto trace = generate(g);
  auto run = run_logged(small_config(Architecture::AtaCache), trace);
  EXPECT_EQ(run.report.intra_cluster_flits, 0u);
  std::size_t warm = 0;
  for (const auto& r : run.records) {
    if (r.request.issue_cycle < 4000) continue;
    ++warm;
    ASSERT_EQ(r.outcome, L1Outcome::LocalHit);
    ASSERT_EQ(*r.request.completion_cycle - r.request.issue_cycle, 32u);
  }
  EXPECT_GT(warm, 1000u);
}

TEST(Pipeline, AtaDepartsLikePrivateOnNoReuse) {
  GenParams g;
  g.cores = 4;
  g.shared_prob = 0;
  g.lines_private = 20000;
  g.requests_per_core = 2000;
  auto trace = generate(g);
  auto p = run_logged(small_config(Architecture::Private, 4, 4), trace);
  auto a = run_logged(small_config(Architecture::AtaCache, 4, 4), trace);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    ASSERT_EQ(p.records[i].l2_depart, a.records[i].l2_depart);
    if (a.records[i].l2_depart) {
      ASSERT_EQ(*a.records[i].l2_depart, a.records[i].tag_done);
    }
  }
}

TEST(Pipeline, RemoteSharingWaitsForAllProbeResponses) {
  GenParams g;
  g.cores = 4;
  g.shared_prob = 0;
  g.lines_private = 20000;
  g.requests_per_core = 400;
  auto run = run_logged(small_config(Architecture::RemoteSharing, 4, 4), generate(g));
  std::map<std::string, std::uint64_t> last_response;
  for (const auto& line : run.log) {
    if (line.find("ev=probe_resp") == std::string::npos) continue;
    auto f = line.substr(line.find("req="));
    const std::string id = f.substr(4, f.find(' ') - 4);
    last_response[id] = std::stoull(line.substr(6, line.find(' ') - 6));
  }
  for (const auto& r : run.records) {
    if (!r.l2_depart || r.merged) continue;
    const auto it = last_response.find(std::to_string(r.request.request_id));
    ASSERT_NE(it, last_response.end());
    ASSERT_GE(*r.l2_depart, it->second);
  }
}

TEST(Pipeline, ProbeLatencyGrowsWithClusterSize) {
  double previous = 0;
  for (std::uint32_t cpc : {2u, 5u, 10u}) {
    GenParams g;
    g.cores = 10;
    g.shared_prob = 0;
    g.lines_private = 20000;
    g.requests_per_core = 400;
    SimConfig c = small_config(Architecture::RemoteSharing, 10, cpc);
    auto run = run_logged(c, generate(g));
    double sum = 0;
    std::uint64_t n = 0;
    for (const auto& r : run.records) {
      sum += static_cast<double>(*r.request.completion_cycle - r.request.issue_cycle);
      ++n;
    }
    const double mean = sum / n;
    EXPECT_GT(mean, previous) << "cores_per_cluster " << cpc;
    previous = mean;
  }
}
