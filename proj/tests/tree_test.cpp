#include "prufer/tree.hpp"

#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "prufer/codec.hpp"
#include "test_util.hpp"

using namespace prufer;

TEST(ValidateTree, AcceptsTwoVertexTree) {
  const LabeledTree t = validate_tree(2, {{1, 2}});
  EXPECT_EQ(t.n, 2);
  ASSERT_EQ(t.edges.size(), 1u);
  EXPECT_EQ(t.edges[0], make_edge(1, 2));
}

TEST(ValidateTree, RejectsDuplicateEdge) {
  EXPECT_THROW(validate_tree(3, {{1, 2}, {1, 2}}), NotATreeError);
  EXPECT_THROW(validate_tree(3, {{1, 2}, {2, 1}}), NotATreeError);
}

TEST(ValidateTree, AcceptsSevenVertexExample) {
  const LabeledTree t = validate_tree(7, {{1, 4}, {4, 3}, {3, 2}, {5, 2}, {2, 7}, {6, 7}});
  EXPECT_EQ(t.n, 7);
  EXPECT_EQ(t.edges.size(), 6u);
}

TEST(ValidateTree, RejectsMalformedInputs) {
  EXPECT_THROW(validate_tree(1, {}), NotATreeError);                        // too small
  EXPECT_THROW(validate_tree(3, {{1, 2}}), NotATreeError);                  // wrong count
  EXPECT_THROW(validate_tree(3, {{1, 2}, {2, 5}}), NotATreeError);          // label range
  EXPECT_THROW(validate_tree(3, {{1, 2}, {3, 3}}), NotATreeError);          // self-loop
  EXPECT_THROW(validate_tree(4, {{1, 2}, {2, 3}, {1, 3}}), NotATreeError);  // cycle + isolated 4
}

TEST(TreeDistance, ZeroOnIdenticalTrees) {
  const LabeledTree t = validate_tree(3, {{1, 2}, {2, 3}});
  EXPECT_EQ(tree_distance(t, t), 0);
}

TEST(TreeDistance, PathVersusStar) {
  const LabeledTree path = validate_tree(3, {{1, 2}, {2, 3}});
  const LabeledTree star = validate_tree(3, {{1, 2}, {1, 3}});
  EXPECT_EQ(tree_distance(path, star), 1);
  EXPECT_EQ(tree_distance(star, path), 1);
}

TEST(TreeDistance, DecodedMutationExampleDiffersByOneEdge) {
  const LabeledTree t = decode(make_prufer(7, {4, 3, 2, 2, 7}));
  const LabeledTree tstar = decode(make_prufer(7, {4, 3, 2, 2, 6}));
  EXPECT_EQ(tree_distance(t, tstar), 1);
}

TEST(TreeDistance, ThrowsOnSizeMismatch) {
  const LabeledTree a = validate_tree(3, {{1, 2}, {2, 3}});
  const LabeledTree b = validate_tree(4, {{1, 2}, {2, 3}, {3, 4}});
  EXPECT_THROW(tree_distance(a, b), SizeMismatchError);
}

TEST(TreeDistance, SymmetricBoundedAndZeroIffEqual) {
  std::mt19937_64 rng(20240811);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const LabeledTree a = testutil::random_tree(n, rng);
    const LabeledTree b = testutil::random_tree(n, rng);
    const int d = tree_distance(a, b);
    EXPECT_EQ(d, tree_distance(b, a));
    EXPECT_GE(d, 0);
    EXPECT_LE(d, n - 1);
    EXPECT_EQ(d == 0, a.canonical_edges() == b.canonical_edges());
    EXPECT_EQ(tree_distance(a, a), 0);
  }
}

TEST(TreeFormat, RoundTrips) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 30);
    const LabeledTree t = testutil::random_tree(n, rng);
    const LabeledTree back = parse_tree(format_tree(t));
    EXPECT_EQ(t, back);
  }
}

TEST(TreeFormat, SevenVertexLine) {
  const LabeledTree t = decode(make_prufer(7, {4, 3, 2, 2, 7}));
  EXPECT_EQ(format_tree(t), "7; 1-4, 3-4, 2-3, 2-5, 2-7, 6-7");
}

TEST(TreeFormat, ParserReportsLineNumbers) {
  std::istringstream in("3; 1-2, 2-3\n3; 1-2, 2\n");
  try {
    parse_tree_lines(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(TreeFormat, ParserRejectsNonTrees) {
  EXPECT_THROW(parse_tree("3; 1-2, 1-2"), ParseError);
  EXPECT_THROW(parse_tree("garbage"), ParseError);
  EXPECT_THROW(parse_tree("3: 1-2, 2-3"), ParseError);
}
