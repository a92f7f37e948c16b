#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "atasim/generator.hpp"
#include "atasim/locality.hpp"
#include "atasim/trace.hpp"
#include "helpers.hpp"

using namespace atasim;
using namespace testing_support;

TEST(Trace, ParsesRecords) {
  auto t = parse_trace("# header\n0 0 L 0x1080 1\n\n5 2 S 0x20 7  # trailing\n");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], (TraceRecord{0, 0, AccessKind::Load, 0x1080, 1}));
  EXPECT_EQ(t[1], (TraceRecord{5, 2, AccessKind::Store, 0x20, 7}));
}

TEST(Trace, UnknownKind) {
  try {
    parse_trace("0 0 L 0x0 1\n0 0 X 0x0 1\n");
    FAIL();
  } catch (const TraceError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("unknown kind X"), std::string::npos);
  }
}

TEST(Trace, MalformedFields) {
  EXPECT_THROW(parse_trace("0 0 L 0x0\n"), TraceError);
  EXPECT_THROW(parse_trace("a 0 L 0x0 1\n"), TraceError);
  EXPECT_THROW(parse_trace("0 0 L 1234 1\n"), TraceError);
  EXPECT_THROW(parse_trace("0 0 L 0xzz 1\n"), TraceError);
  EXPECT_THROW(parse_trace("0 -1 L 0x0 1\n"), TraceError);
}

TEST(Trace, PerCoreCyclesMustNotDecrease) {
  EXPECT_NO_THROW(parse_trace("5 0 L 0x0 1\n1 1 L 0x0 2\n"));
  try {
    parse_trace("5 0 L 0x0 1\n4 0 L 0x0 2\n");
    FAIL();
  } catch (const TraceError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Trace, FileRoundTripPlainAndGzip) {
  GenParams g;
  g.cores = 3;
  g.requests_per_core = 500;
  g.store_prob = 0.3;
  auto trace = generate(g);
  for (const char* name : {"t.txt", "t.txt.gz"}) {
    auto path = temp_path(name);
    save_trace(path.string(), trace);
    EXPECT_EQ(load_trace(path.string()), trace);
  }
  EXPECT_THROW(load_trace("/nonexistent/trace.txt"), std::runtime_error);
}

TEST(Trace, DigestSeesEveryField) {
  std::vector<TraceRecord> t{load(0, 0, 0x40, 1)};
  const auto base = trace_digest(t);
  auto v = t;
  v[0].address = 0x60;
  EXPECT_NE(trace_digest(v), base);
  v = t;
  v[0].kind = AccessKind::Store;
  EXPECT_NE(trace_digest(v), base);
  EXPECT_EQ(trace_digest(t), base);
}

TEST(Generator, InstructionsWalkFourSectors) {
  GenParams g;
  g.cores = 2;
  g.requests_per_core = 64;
  auto t = generate(g);
  ASSERT_EQ(t.size(), 128u);
  std::map<std::uint64_t, std::vector<TraceRecord>> by_inst;
  for (const auto& r : t) by_inst[r.instruction_id].push_back(r);
  for (const auto& [id, rs] : by_inst) {
    ASSERT_EQ(rs.size(), 4u);
    for (std::size_t s = 0; s < 4; ++s) {
      EXPECT_EQ(rs[s].address, rs[0].address + 32 * s);
      EXPECT_EQ(rs[s].core_id, rs[0].core_id);
      EXPECT_EQ(rs[s].cycle, rs[0].cycle + s);
    }
    EXPECT_EQ(rs[0].address % 128, 0u);
  }
}

TEST(Generator, Deterministic) {
  GenParams g;
  EXPECT_EQ(generate(g), generate(g));
  GenParams h = g;
  h.seed = 2;
  EXPECT_NE(generate(g), generate(h));
}

TEST(Generator, ZeroSharingHasNoReplication) {
  GenParams g;
  g.shared_prob = 0;
  g.cores = 8;
  EXPECT_EQ(analyze_locality(generate(g)).replication_ratio, 0.0);
}

TEST(Generator, FullSharingReplicatesReusedLines) {
  GenParams g;
  g.shared_prob = 1;
  g.lines_shared = 64;
  g.cores = 10;
  g.requests_per_core = 2000;
  auto t = generate(g);
  auto p = analyze_locality(t);
  std::map<std::uint64_t, std::uint64_t> touches;
  for (const auto& r : t) ++touches[r.address / 128];
  std::uint64_t reused = 0;
  for (auto& [line, n] : touches) reused += n >= 8;  // at least two instructions
  EXPECT_EQ(p.replicated_lines, reused);
  EXPECT_DOUBLE_EQ(p.replication_ratio, 1.0);
}

TEST(Generator, SharedFractionWithinTwoPercent) {
  for (double prob : {0.1, 0.5, 0.8}) {
    GenParams g;
    g.cores = 10;
    g.shared_prob = prob;
    g.requests_per_core = 10000;
    auto t = generate(g);
    std::uint64_t shared = 0;
    for (const auto& r : t) shared += r.address < kPrivateBase;
    EXPECT_NEAR(static_cast<double>(shared) / t.size(), prob, 0.02);
  }
}

TEST(Generator, StoresOnlyTargetPrivateRegion) {
  GenParams g;
  g.store_prob = 0.5;
  auto t = generate(g);
  std::uint64_t stores = 0;
  for (const auto& r : t) {
    if (r.kind != AccessKind::Store) continue;
    ++stores;
    EXPECT_GE(r.address, kPrivateBase);
  }
  EXPECT_GT(stores, 0u);
}

TEST(Generator, RejectsEmptyRegionWithProbability) {
  GenParams g;
  g.lines_shared = 0;
  g.shared_prob = 0.5;
  EXPECT_THROW(generate(g), ConfigError);
  g.shared_prob = 0;
  EXPECT_NO_THROW(generate(g));
  g.lines_private = 0;
  EXPECT_THROW(generate(g), ConfigError);
  g = GenParams{};
  g.shared_prob = 1.5;
  EXPECT_THROW(generate(g), ConfigError);
}

TEST(Generator, ZipfFavorsLowRanks) {
  GenParams g;
  g.shared_prob = 1;
  g.lines_shared = 100;
  g.zipf_s = 1.2;
  g.requests_per_core = 8000;
  std::map<std::uint64_t, std::uint64_t> n;
  for (const auto& r : generate(g)) ++n[(r.address - kSharedBase) / 128];
  EXPECT_GT(n[0], n[10]);
  EXPECT_GT(n[10], n[90]);
}

TEST(Locality, Examples) {
  std::vector<TraceRecord> disjoint{load(0, 0, 0x000, 0), load(0, 1, 0x080, 1)};
  EXPECT_EQ(analyze_locality(disjoint).replication_ratio, 0.0);
  std::vector<TraceRecord> same{load(0, 0, 0x100, 0), load(0, 1, 0x120, 1)};
  auto p = analyze_locality(same);
  EXPECT_EQ(p.replication_ratio, 1.0);
  EXPECT_EQ(p.sharing_histogram, (std::map<std::uint32_t, std::uint64_t>{{2, 1}}));
  EXPECT_EQ(locality_class(p), "high");
  EXPECT_EQ(locality_class(analyze_locality(disjoint)), "low");
}

TEST(Locality, PermutationInvariant) {
  GenParams g;
  g.cores = 6;
  g.shared_prob = 0.4;
  auto t = generate(g);
  auto p = analyze_locality(t);
  std::vector<TraceRecord> rev(t.rbegin(), t.rend());
  EXPECT_EQ(analyze_locality(rev), p);
  std::mt19937_64 rng(2);
  std::shuffle(rev.begin(), rev.end(), rng);
  EXPECT_EQ(analyze_locality(rev), p);
  std::uint64_t sum = 0;
  for (auto& [k, n] : p.sharing_histogram) sum += n;
  EXPECT_EQ(sum, p.distinct_lines);
  EXPECT_GE(p.replication_ratio, 0.0);
  EXPECT_LE(p.replication_ratio, 1.0);
}
