#include "prufer/codec.hpp"

#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace prufer;

// The rear-to-front decoder must agree with the independent forward-reading
// oracle on every string of small order.
TEST(Decode, AgreesWithOracleExhaustively) {
  for (int n = 3; n <= 7; ++n) {
    testutil::for_each_string(n, [&](const PruferString& p) {
      ASSERT_EQ(decode(p), testutil::oracle_decode(p)) << format_prufer(p);
    });
  }
}

TEST(Decode, SingleEntryString) {
  const LabeledTree t = decode(make_prufer(3, {1}));
  const LabeledTree want = validate_tree(3, {{1, 3}, {1, 2}});
  EXPECT_EQ(t, want);
}

TEST(Decode, WorkedSevenVertexString) {
  const LabeledTree t = decode(make_prufer(7, {4, 3, 2, 2, 7}));
  const LabeledTree want = validate_tree(7, {{6, 7}, {2, 7}, {5, 2}, {3, 2}, {4, 3}, {1, 4}});
  EXPECT_EQ(t, want);
}

TEST(Decode, WorkedSevenVertexStringMutated) {
  const LabeledTree t = decode(make_prufer(7, {4, 3, 2, 2, 6}));
  const LabeledTree want = validate_tree(7, {{6, 7}, {2, 6}, {5, 2}, {3, 2}, {4, 3}, {1, 4}});
  EXPECT_EQ(t, want);
}

TEST(Encode, StarRecordsTheCenter) {
  const LabeledTree star = validate_tree(4, {{1, 4}, {2, 4}, {3, 4}});
  EXPECT_EQ(encode(star).entries, (std::vector<int>{4, 4}));
}

TEST(Encode, PathTakesLowestLeafFirst) {
  const LabeledTree path = validate_tree(3, {{1, 2}, {1, 3}});
  EXPECT_EQ(encode(path).entries, (std::vector<int>{1}));
}

TEST(Encode, WorkedSevenVertexTree) {
  const LabeledTree t = validate_tree(7, {{1, 4}, {4, 3}, {3, 2}, {5, 2}, {2, 7}, {6, 7}});
  EXPECT_EQ(encode(t).entries, (std::vector<int>{4, 3, 2, 2, 7}));
}

TEST(Encode, RejectsTooSmall) {
  const LabeledTree t = validate_tree(2, {{1, 2}});
  EXPECT_THROW(encode(t), TooSmallError);
}

TEST(HMapOp, WorkedExample) {
  const HMap h = h_map(make_prufer(7, {4, 3, 2, 2, 7}));
  EXPECT_EQ(h(1), 4);
  EXPECT_EQ(h(2), 7);
  EXPECT_EQ(h(3), 2);
  EXPECT_EQ(h(4), 3);
  EXPECT_EQ(h(5), 2);
  EXPECT_EQ(h(6), 7);
}

TEST(HMapOp, SingleEntryAndStar) {
  const HMap h3 = h_map(make_prufer(3, {1}));
  EXPECT_EQ(h3(1), 3);
  EXPECT_EQ(h3(2), 1);
  const HMap h4 = h_map(make_prufer(4, {4, 4}));
  EXPECT_EQ(h4(1), 4);
  EXPECT_EQ(h4(2), 4);
  EXPECT_EQ(h4(3), 4);
}

// The decoded edge set is exactly { {v, h(v)} : v in 1..n-1 }.
TEST(HMapOp, ReconstructsTheEdgeSet) {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 60);
    const PruferString p = testutil::random_prufer(n, rng);
    const HMap h = h_map(p);
    LabeledTree rebuilt;
    rebuilt.n = n;
    for (int v = 1; v <= n - 1; ++v) {
      ASSERT_NE(h(v), 0);
      ASSERT_NE(h(v), v);
      rebuilt.edges.push_back(make_edge(v, h(v)));
    }
    EXPECT_EQ(rebuilt, decode(p));
  }
}

TEST(RoundTrip, EncodeAfterDecodeIsIdentityExhaustively) {
  for (int n = 3; n <= 6; ++n) {
    testutil::for_each_string(n, [&](const PruferString& p) {
      ASSERT_EQ(encode(decode(p)), p) << format_prufer(p);
    });
  }
}

TEST(RoundTrip, DecodeAfterEncodeOnRandomTrees) {
  std::mt19937_64 rng(4242);
  for (int n : {3, 10, 100, 1000, 10000}) {
    for (int rep = 0; rep < 20; ++rep) {
      const LabeledTree t = testutil::random_tree(n, rng);
      ASSERT_EQ(decode(encode(t)), t) << "n=" << n;
    }
  }
}

// Cayley count: decoding all n^(n-2) strings yields that many distinct trees.
TEST(RoundTrip, DecodeIsInjectiveOnSmallOrders) {
  for (int n = 3; n <= 7; ++n) {
    std::set<std::vector<Edge>> seen;
    long strings = 0;
    testutil::for_each_string(n, [&](const PruferString& p) {
      seen.insert(decode(p).canonical_edges());
      ++strings;
    });
    EXPECT_EQ(static_cast<long>(seen.size()), strings) << "n=" << n;
  }
}

TEST(DecodeRun, StepHookSeesEveryEdge) {
  const PruferString p = make_prufer(7, {4, 3, 2, 2, 7});
  std::vector<Edge> edges;
  decode_with_hook(p, [&](const DecodeStep& s) { edges.push_back(make_edge(s.y, s.attach)); });
  EXPECT_EQ(edges.size(), 6u);
  LabeledTree t;
  t.n = 7;
  t.edges = edges;
  EXPECT_EQ(t, decode(p));
}

TEST(DecodeRun, EntryOverrideActsAsMutatedString) {
  const PruferString p = make_prufer(7, {4, 3, 2, 2, 7});
  DecodeRun run;
  run.reset(p.n, p.entries.data(), 5, 6);
  LabeledTree t;
  t.n = p.n;
  t.edges.assign(6, Edge{});
  while (!run.done()) {
    const DecodeStep s = run.step();
    t.edges[s.i] = make_edge(s.y, s.attach);
  }
  EXPECT_EQ(t, decode(make_prufer(7, {4, 3, 2, 2, 6})));
}

// 10^6 decodes of order 100 should take seconds, not minutes.
TEST(Performance, MillionDecodesOfOrder100) {
  std::mt19937_64 rng(5);
  PruferString p;
  p.n = 100;
  p.entries.assign(98, 1);
  DecodeRun run;
  long long acc = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 1000000; ++i) {
    for (int& e : p.entries) e = 1 + static_cast<int>(rng() % 100);
    run.reset(p);
    while (!run.done()) acc += run.step().y;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_GT(acc, 0);
  EXPECT_LT(elapsed, 120.0);
}

TEST(PruferFormat, RoundTripsAndValidates) {
  EXPECT_EQ(format_prufer(make_prufer(7, {4, 3, 2, 2, 7})), "7; 4,3,2,2,7");
  EXPECT_EQ(parse_prufer("7; 4,3,2,2,7"), make_prufer(7, {4, 3, 2, 2, 7}));
  EXPECT_THROW(parse_prufer("7; 4,3,2,2"), ParseError);    // wrong length
  EXPECT_THROW(parse_prufer("7; 4,3,2,2,9"), ParseError);  // entry range
  EXPECT_THROW(make_prufer(2, {}), TooSmallError);
  std::istringstream in("3; 1\nnot a string\n");
  try {
    parse_prufer_lines(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}
