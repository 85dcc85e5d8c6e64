#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "fillrec/enumerate.hpp"
#include "fillrec/fillings.hpp"

using namespace fillrec;

namespace {

AugmentedFilling worked_ssaf() {
  return AugmentedFilling(SkewShape({0, 3, 1, 3, 4}), {1, 3, 2, 5, 4},
                          {{}, {3, 1, 1}, {2}, {5, 5, 5}, {4, 4, 3, 2}});
}

struct Cell {
  int r, c, v;
};

std::vector<Cell> cells(const AugmentedFilling& t) {
  std::vector<Cell> out;
  for (int r = 1; r <= t.num_rows(); ++r)
    for (int c = 0; c <= t.num_cols(); ++c)
      if (t.has_cell(r, c)) out.push_back({r, c, t.at(r, c)});
  return out;
}

using Key = std::tuple<int, int, int, int, int, int>;

/// Attacking pairs straight from the picture: same column, or the right box
/// one column over and strictly lower.
std::set<std::pair<Box, Box>> attacking_reference(const AugmentedFilling& t) {
  std::set<std::pair<Box, Box>> out;
  for (const auto& u : cells(t))
    for (const auto& w : cells(t)) {
      if (u.v != w.v) continue;
      if (u.c == w.c && u.r < w.r) out.insert({{u.r, u.c}, {w.r, w.c}});
      if (w.c == u.c + 1 && w.r > u.r) out.insert({{u.r, u.c}, {w.r, w.c}});
    }
  return out;
}

/// Inversion triples by scanning all ordered cell triples.
std::pair<std::set<Key>, std::set<Key>> triples_reference(const AugmentedFilling& t) {
  std::set<Key> a_type, b_type;
  auto len = [&](int r) { return t.shape.row_length(r); };
  for (const auto& a : cells(t))
    for (const auto& b : cells(t)) {
      if (b.r != a.r || b.c != a.c + 1) continue;
      for (const auto& c : cells(t)) {
        bool inv = a.v >= c.v && c.v >= b.v;
        if (!inv) continue;
        if (c.c == b.c && c.r > b.r && len(a.r) >= len(c.r)) a_type.insert({a.r, a.c, b.r, b.c, c.r, c.c});
        if (c.c == a.c && c.r < a.r && len(a.r) > len(c.r)) b_type.insert({a.r, a.c, b.r, b.c, c.r, c.c});
      }
    }
  return {a_type, b_type};
}

std::set<Key> as_keys(const std::vector<Triple>& v) {
  std::set<Key> out;
  for (const auto& t : v) out.insert({t.a.row, t.a.col, t.b.row, t.b.col, t.c.row, t.c.col});
  return out;
}

AugmentedFilling random_basement_filling(std::mt19937& rng, int rows, int max_len, int n) {
  Composition shape(rows);
  std::vector<int> basement(rows);
  for (int r = 0; r < rows; ++r) shape[r] = std::uniform_int_distribution<int>(0, max_len)(rng);
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i + 1;
  std::shuffle(labels.begin(), labels.end(), rng);
  std::copy_n(labels.begin(), rows, basement.begin());
  std::vector<std::vector<int>> entries(rows);
  for (int r = 0; r < rows; ++r) {
    int prev = basement[r];
    for (int k = 0; k < shape[r]; ++k) {
      int v = std::uniform_int_distribution<int>(1, std::max(1, prev))(rng);
      entries[r].push_back(v);
      prev = v;
    }
  }
  return AugmentedFilling(SkewShape(shape), basement, entries);
}

}  // namespace

TEST(WorkedExample, GeneralAtomFillingIsSsaf) {
  auto t = worked_ssaf();
  EXPECT_TRUE(is_member(t, {Family::ssaf, 5, {}, {}}));
  EXPECT_TRUE(attacking_pairs(t).empty());
  auto tr = inversion_triples(t);
  EXPECT_TRUE(tr.type_a.empty());
  EXPECT_TRUE(tr.type_b.empty());
  // The underlined type B configuration is a triple position, just not an inversion.
  int positions = 0;
  for_each_triple(t, [&](bool type_a, const Triple& x, bool inv) {
    if (!type_a && x.a == Box{5, 2} && x.c == Box{2, 2}) {
      ++positions;
      EXPECT_FALSE(inv);
    }
  });
  EXPECT_EQ(positions, 1);
}

TEST(WorkedExample, SortToKey) {
  AugmentedFilling t(SkewShape({3, 3, 2, 1}), {8, 4, 6, 7}, {{5, 4, 1}, {3, 2, 2}, {6, 5}, {4}});
  auto k = sort_to_key(t);
  EXPECT_EQ(k.basement, (std::vector<int>{8, 4, 6, 7}));
  EXPECT_EQ(k.rows, (std::vector<std::vector<int>>{{6, 5, 2}, {4, 4, 1}, {5, 2}, {3}}));
  EXPECT_TRUE(is_member(k, {Family::ssaf, 8, {}, {}}));
}

TEST(SortToKey, Rejections) {
  AugmentedFilling increasing(SkewShape({2}), {3}, {{1, 2}});
  EXPECT_THROW(sort_to_key(increasing), NotSortable);
  AugmentedFilling composition_shape(SkewShape({1, 2}), {2, 3}, {{1}, {2, 1}});
  EXPECT_THROW(sort_to_key(composition_shape), NotSortable);
  AugmentedFilling no_basement(SkewShape({1}), {}, {{1}});
  EXPECT_THROW(sort_to_key(no_basement), NotSortable);
  EXPECT_THROW(sort_columns_to_key({2, 1}, {1, 1}, {{1, 1}}), NotSortable);
}

TEST(SortToKeyProperty, ColumnsKeepTheirContentAndResultIsKey) {
  std::mt19937 rng(21);
  int sorted = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    int rows = std::uniform_int_distribution<int>(1, 4)(rng);
    Composition lambda(rows);
    for (int r = 0; r < rows; ++r) lambda[r] = std::uniform_int_distribution<int>(1, 3)(rng);
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    std::vector<int> basement(rows);
    for (int r = 0; r < rows; ++r) basement[r] = std::uniform_int_distribution<int>(1, 6)(rng);
    std::sort(basement.begin(), basement.end());
    if (std::adjacent_find(basement.begin(), basement.end()) != basement.end()) continue;
    std::shuffle(basement.begin(), basement.end(), rng);
    std::vector<std::vector<int>> cols(lambda[0]);
    for (int c = 1; c <= lambda[0]; ++c) {
      int h = 0;
      while (h < rows && lambda[h] >= c) ++h;
      std::vector<int> pool{1, 2, 3, 4, 5, 6};
      std::shuffle(pool.begin(), pool.end(), rng);
      cols[c - 1].assign(pool.begin(), pool.begin() + h);
    }
    try {
      auto k = sort_columns_to_key(basement, lambda, cols);
      ++sorted;
      EXPECT_TRUE(is_member(k, {Family::ssaf, 6, {}, {}}));
      for (int c = 1; c <= lambda[0]; ++c) {
        std::vector<int> got;
        for (int r = 1; r <= rows; ++r)
          if (k.has_box(r, c)) got.push_back(k.at(r, c));
        auto want = cols[c - 1];
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        EXPECT_EQ(got, want);
      }
    } catch (const NotSortable&) {
    }
  }
  EXPECT_GT(sorted, 50);
}

TEST(FillingsProperty, AttackingPairsMatchReference) {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    auto t = random_basement_filling(rng, std::uniform_int_distribution<int>(1, 4)(rng), 3, 5);
    auto got = attacking_pairs(t);
    std::set<std::pair<Box, Box>> s(got.begin(), got.end());
    EXPECT_EQ(s.size(), got.size());
    EXPECT_EQ(s, attacking_reference(t));
  }
}

TEST(FillingsProperty, InversionTriplesMatchReference) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    auto t = random_basement_filling(rng, std::uniform_int_distribution<int>(1, 4)(rng), 3, 5);
    auto tr = inversion_triples(t);
    auto [ra, rb] = triples_reference(t);
    EXPECT_EQ(as_keys(tr.type_a), ra);
    EXPECT_EQ(as_keys(tr.type_b), rb);
  }
}

TEST(FillingsProperty, CoinvRulesPartitionTriplePositions) {
  std::mt19937 rng(24);
  for (int trial = 0; trial < 300; ++trial) {
    auto t = random_basement_filling(rng, 3, 3, 4);
    int positions = 0;
    for_each_triple(t, [&](bool, const Triple&, bool) { ++positions; });
    EXPECT_EQ(coinv(t, CoinvRule::failing) + coinv(t, CoinvRule::satisfying), positions);
    auto tr = inversion_triples(t);
    EXPECT_EQ(coinv(t, CoinvRule::satisfying), static_cast<int>(tr.type_a.size() + tr.type_b.size()));
  }
}

TEST(Statistics, WeightsAndDn) {
  AugmentedFilling t(SkewShape({3, 1}), {2, 1}, {{2, 1, 1}, {1}});
  EXPECT_EQ(weight(t, 2), (std::vector<int>{3, 1}));
  EXPECT_EQ(dn(t, true), 1);
  EXPECT_EQ(dn(t, false), 1);
  AugmentedFilling u(SkewShape({2}), {3}, {{2, 2}});
  EXPECT_EQ(dn(u, true), 1);
  EXPECT_EQ(dn(u, false), 0);
  // Symplectic encoding: 1 -> 1, 2 -> 1bar, 3 -> 2.
  AugmentedFilling s(SkewShape({3}), {}, {{1, 2, 3}});
  EXPECT_EQ(symplectic_weight(s, 2), (std::vector<int>{0, 1}));
  AugmentedFilling sets(SkewShape({2}), {}, {{0b011, 0b110}}, true);
  EXPECT_EQ(weight(sets, 3), (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(excess(sets), 2);
  AugmentedFilling rpp(SkewShape({2, 1}), {}, {{2, 2}, {2}});
  EXPECT_EQ(ev(rpp, 2), (std::vector<int>{0, 2}));
}

TEST(DnFlag, UnobservableOnStandardBasement) {
  for (const Composition& a : {Composition{2, 1}, Composition{1, 2}, Composition{2, 0, 1}, Composition{1, 1, 2},
                               Composition{0, 2, 2}, Composition{3, 1, 1}}) {
    FillingSpec s;
    s.family = Family::nawf;
    s.n = static_cast<int>(a.size());
    s.shape = SkewShape(a);
    for (int i = 1; i <= s.n; ++i) s.basement.push_back(i);
    auto all = enumerate(s, Path::oracle);
    ASSERT_FALSE(all.empty());
    for (const auto& t : all) {
      for (int r = 1; r <= t.num_rows(); ++r)
        if (t.has_box(r, 1)) {
          EXPECT_EQ(t.at(r, 1), r);
        }
      EXPECT_EQ(dn(t, true), dn(t, false));
    }
  }
}

TEST(Membership, FamilyRules) {
  AugmentedFilling ssyt(SkewShape({2, 1}), {}, {{1, 1}, {2}});
  EXPECT_TRUE(is_member(ssyt, {Family::ssyt, 2, {}, {}}));
  EXPECT_FALSE(is_member(ssyt, {Family::ssyt, 1, {}, {}}));
  EXPECT_FALSE(is_member(ssyt, {Family::flagged, 2, {1, 1}, {1, 1}}));
  EXPECT_TRUE(is_member(ssyt, {Family::flagged, 2, {1, 2}, {1, 2}}));
  AugmentedFilling bad_col(SkewShape({1, 1}), {}, {{2}, {2}});
  EXPECT_FALSE(is_member(bad_col, {Family::ssyt, 2, {}, {}}));
  EXPECT_TRUE(is_member(bad_col, {Family::rpp, 2, {}, {}}));
  // Row 2 of a symplectic tableau starts at 2 (encoded 3).
  AugmentedFilling sp(SkewShape({1, 1}), {}, {{1}, {2}});
  EXPECT_FALSE(is_member(sp, {Family::symplectic, 2, {}, {}}));
  AugmentedFilling sp_ok(SkewShape({1, 1}), {}, {{1}, {3}});
  EXPECT_TRUE(is_member(sp_ok, {Family::symplectic, 2, {}, {}}));
  AugmentedFilling attacking(SkewShape({1, 1}), {2, 1}, {{1}, {1}});
  EXPECT_FALSE(is_member(attacking, {Family::nawf, 2, {}, {}}));
  EXPECT_THROW(is_member(ssyt, {Family::set_valued, 2, {}, {}}), UsageError);
}

TEST(Construction, Validation) {
  EXPECT_THROW(AugmentedFilling(SkewShape({2}), {}, {{1}}), ShapeError);
  EXPECT_THROW(AugmentedFilling(SkewShape({1, 1}), {1, 1}, {{1}, {1}}), UsageError);
  EXPECT_THROW(AugmentedFilling(SkewShape({1}), {}, {{0}}), UsageError);
  EXPECT_THROW(AugmentedFilling(SkewShape({2}, {1}), {1}, {{1}}), ShapeError);
}

TEST(ColumnSurgery, DuplicateThenDeleteRestores) {
  auto t = worked_ssaf();
  for (int j = 1; j <= t.num_cols(); ++j) {
    auto d = duplicate_column(t, j, 3);
    EXPECT_EQ(d.shape.size(), t.shape.size() + 2 * t.shape.column_rows(j).size());
    EXPECT_EQ(delete_column(delete_column(d, j), j), t);
  }
  EXPECT_THROW(duplicate_column(t, 0, 2), UsageError);
  EXPECT_THROW(duplicate_column(t, 1, 0), UsageError);
}

TEST(ColumnSurgery, SkewInnerShifts) {
  AugmentedFilling t(SkewShape({3, 2}, {1}), {}, {{1, 2}, {2, 3}});
  auto d = duplicate_column(t, 1, 2);
  EXPECT_EQ(d.shape.outer, (Composition{4, 3}));
  EXPECT_EQ(d.shape.inner, (Composition{2, 0}));
  EXPECT_EQ(d.rows[1], (std::vector<int>{2, 2, 3}));
  EXPECT_EQ(delete_column(d, 1), t);
}

TEST(ColumnSurgeryProperty, WeakClosureUnderDuplication) {
  struct Case {
    Family f;
    Composition shape;
    std::vector<int> basement;
    int n;
  };
  for (const auto& c : {Case{Family::ssaf, {1, 2, 1}, {2, 3, 1}, 3}, Case{Family::ssaf, {2, 0, 2}, {1, 2, 3}, 3},
                        Case{Family::nawf, {2, 1, 2}, {1, 2, 3}, 3}, Case{Family::ssyt, {2, 1}, {}, 3},
                        Case{Family::symplectic, {2, 1}, {}, 2}, Case{Family::rpp, {2, 2}, {}, 2}}) {
    FillingSpec s;
    s.family = c.f;
    s.shape = SkewShape(c.shape);
    s.basement = c.basement;
    s.n = c.n;
    for (const auto& t : enumerate(s, Path::oracle))
      for (int j = 1; j <= t.num_cols(); ++j) {
        auto d = duplicate_column(t, j, 2);
        EXPECT_TRUE(is_member(d, s.rules())) << family_name(c.f) << " column " << j;
      }
  }
}

TEST(ColumnSurgeryProperty, SsytStrictClosureUnderDeletion) {
  FillingSpec s;
  s.family = Family::ssyt;
  s.shape = SkewShape({3, 2, 1});
  s.n = 3;
  for (const auto& t : enumerate(s, Path::oracle))
    for (int j = 1; j <= t.num_cols(); ++j) EXPECT_TRUE(is_member(delete_column(t, j), s.rules()));
}
