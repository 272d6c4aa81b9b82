#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace paralat;
using namespace testutil;

namespace {

Int direct_floor(const Poly& f, const Poly& h, const Int& t) { return floor_rat(f.eval(Rat(t)) / h.eval(Rat(t))); }

Int direct_nearest(const Poly& f, const Poly& h, const Int& t) {
  return floor_rat(f.eval(Rat(t)) / h.eval(Rat(t)) + Rat(1, 2));
}

}  // namespace

TEST(Floor, ParityOfSquare) {
  EqpFunc e = floor_ratfunc(Poly{0, 0, 1}, Poly(2));
  EXPECT_EQ(e.modulus(), 2);
  EXPECT_EQ(e.threshold(), 0);
  EXPECT_EQ(e.piece(0), Poly(std::vector<Rat>{0, 0, Rat(1, 2)}));
  EXPECT_EQ(e.piece(1), Poly(std::vector<Rat>{Rat(-1, 2), 0, Rat(1, 2)}));
}

TEST(Floor, ExactDivision) {
  EqpFunc e = floor_ratfunc(Poly::t(), Poly(1));
  EXPECT_EQ(e.modulus(), 1);
  EXPECT_EQ(e.piece(0), Poly::t());
  EqpFunc n = nearest_ratfunc(Poly{0, 0, 0, 1}, Poly::t());
  EXPECT_EQ(n.modulus(), 1);
  EXPECT_EQ(n.piece(0), (Poly{0, 0, 1}));
}

TEST(Floor, SmallPositiveTail) {
  Poly f{1, 0, 1}, h{0, 1};
  EqpFunc e = floor_ratfunc(f, h);
  EXPECT_EQ(e.modulus(), 1);
  EXPECT_EQ(e.piece(0), Poly::t());
  EXPECT_LE(e.threshold(), 2);
  for (long t = 1; t <= 200; ++t)
    if (t >= e.threshold()) { EXPECT_EQ(e.eval(Int(t)), Rat(direct_floor(f, h, Int(t)))); }
}

TEST(Nearest, SlightlyAboveHalfRoundsUp) {
  EqpFunc e = nearest_ratfunc(Poly{0, 2, 2}, Poly{0, 0, 4});
  EXPECT_EQ(e.modulus(), 1);
  EXPECT_EQ(e.piece(0), Poly(1));
  EXPECT_EQ(e.threshold(), 1);
}

TEST(Nearest, LinearOverThree) {
  Poly f{1, 3}, h(3);
  EqpFunc e = nearest_ratfunc(f, h);
  for (long k = 0; k <= 300; ++k) {
    Int t = e.threshold() + k;
    EXPECT_EQ(e.eval(t), Rat(direct_nearest(f, h, t)));
  }
}

TEST(Floor, ZeroDenominatorThrows) {
  EXPECT_THROW(floor_ratfunc(Poly::t(), Poly()), DivByZero);
  EXPECT_THROW(nearest_ratfunc(Poly::t(), Poly()), DivByZero);
}

TEST(Floor, NegativeLeadingDenominator) {
  Poly f{1, 0, 1}, h{0, -2};
  EqpFunc e = floor_ratfunc(f, h);
  for (long k = 0; k <= 100; ++k) {
    Int t = e.threshold() + k;
    EXPECT_EQ(e.eval(t), Rat(direct_floor(f, h, t)));
  }
}

TEST(Floor, RandomPairsMatchDirectEvaluation) {
  for (int i = 0; i < 300; ++i) {
    Poly f = rand_poly(4, -9, 9), h = rand_nonzero_poly(4, -9, 9);
    for (bool nearest : {false, true}) {
      EqpFunc e = nearest ? nearest_ratfunc(f, h) : floor_ratfunc(f, h);
      ASSERT_TRUE(e.is_mild()) << f.to_string() << " / " << h.to_string();
      long span = 4 * e.modulus() + 20;
      for (long k = 0; k <= span; ++k) {
        Int t = e.threshold() + k;
        Int want = nearest ? direct_nearest(f, h, t) : direct_floor(f, h, t);
        ASSERT_EQ(e.eval(t), Rat(want)) << f.to_string() << " / " << h.to_string() << " at " << t.get_str();
      }
    }
  }
}

TEST(Floor, ModulusGivesIntegralPiecesAfterSubstitution) {
  // t(t+1)/2 is integer-valued but only becomes an integer polynomial on the
  // classes mod 2.
  EqpFunc e = floor_ratfunc(Poly{0, 1, 1}, Poly(2));
  EXPECT_EQ(e.modulus(), 2);
  EqpFunc g = floor_ratfunc(Poly{0, 0, 1}, Poly(4));
  EXPECT_EQ(g.modulus(), 2);
  EqpFunc h = floor_ratfunc(Poly{0, 2, 6}, Poly(4));
  EXPECT_EQ(h.modulus(), 2);
  EqpFunc c = floor_ratfunc(Poly{1, 4}, Poly(2));
  EXPECT_EQ(c.modulus(), 1);
  for (int i = 0; i < 200; ++i) {
    Poly f = rand_poly(4, -20, 20);
    Int d(rand_int(1, 12));
    EqpFunc x = floor_ratfunc(f, Poly(d));
    for (std::int64_t r = 0; r < x.modulus(); ++r) {
      Poly sub = x.piece(r).substitute(Int(static_cast<long>(x.modulus())), Int(static_cast<long>(r)));
      EXPECT_TRUE(sub.is_integral()) << f.to_string() << " / " << d.get_str();
    }
  }
}

TEST(EqpArith, ModulusIsLcm) {
  EqpFunc a = floor_ratfunc(Poly::t(), Poly(2));
  EqpFunc b = floor_ratfunc(Poly::t(), Poly(3));
  EXPECT_EQ((a + b).modulus(), 6);
  EXPECT_EQ(a + EqpFunc(Poly()), a);
}

TEST(EqpArith, PiecewiseSquare) {
  EqpFunc a(Int(0), 2, {Poly::t(), Poly{1, 1}});
  EqpFunc sq = a * a;
  EXPECT_EQ(sq.piece(0), (Poly{0, 0, 1}));
  EXPECT_EQ(sq.piece(1), (Poly{1, 2, 1}));
}

TEST(EqpArith, EvaluationHomomorphism) {
  for (int i = 0; i < 100; ++i) {
    EqpFunc a = floor_ratfunc(rand_poly(3, -9, 9), rand_nonzero_poly(2, -6, 6));
    EqpFunc b = nearest_ratfunc(rand_poly(3, -9, 9), rand_nonzero_poly(2, -6, 6));
    EqpFunc s = a + b, d = a - b, p = a * b, c = Rat(3, 2) * a;
    Int T = s.threshold();
    for (long k = 0; k < 30; ++k) {
      Int t = T + k;
      EXPECT_EQ(s.eval(t), a.eval(t) + b.eval(t));
      EXPECT_EQ(d.eval(t), a.eval(t) - b.eval(t));
      EXPECT_EQ(p.eval(t), a.eval(t) * b.eval(t));
      EXPECT_EQ(c.eval(t), Rat(3, 2) * a.eval(t));
    }
  }
}

TEST(EqpArith, RefineRejectsNonMultiple) {
  EqpFunc a(Int(0), 2, {Poly::t(), Poly{1, 1}});
  EXPECT_THROW(a.refine(3), InvalidRefinement);
  EXPECT_EQ(a.refine(4).piece(3), (Poly{1, 1}));
}

TEST(EventualMin, Dominance) {
  EqpSelection s = eqp_eventual_min({EqpFunc(Poly{0, 0, 1}), EqpFunc(Poly{0, 0, 2})});
  EXPECT_EQ(s.modulus, 1);
  EXPECT_EQ(s.index, std::vector<std::size_t>{0});
  EqpSelection one = eqp_eventual_min({EqpFunc(Poly{4, 1})});
  EXPECT_EQ(one.modulus, 1);
  EXPECT_EQ(one.index[0], 0u);
  EXPECT_THROW(eqp_eventual_min({}), EmptyBasis);
}

TEST(EventualMin, ResidueDependentChoice) {
  // Squared norms of (2t + 3a, 1) with a = -floor(2t/3) + j, j = -1, 0, 1.
  EqpFunc fl = floor_ratfunc(Poly{0, 2}, Poly(3));
  std::vector<EqpFunc> cands;
  for (long j = -1; j <= 1; ++j) {
    EqpFunc x = EqpFunc(Poly{3 * j, 2}) - Rat(3) * fl;
    cands.push_back(x * x + EqpFunc(Poly(1)));
  }
  EqpSelection s = eqp_eventual_min(cands);
  EXPECT_EQ(s.modulus, 3);
  EXPECT_EQ(s.index, (std::vector<std::size_t>{1, 0, 1}));
  for (long t = 3; t < 30; ++t) {
    std::size_t r = static_cast<std::size_t>(t % 3);
    EXPECT_EQ(cands[s.index[r]].eval(Int(t)), Rat(r == 0 ? 1 : 2));
  }
}

TEST(EventualMin, SoundOnRandomCandidates) {
  for (int i = 0; i < 50; ++i) {
    std::vector<EqpFunc> c;
    for (int k = 0; k < 4; ++k) c.push_back(floor_ratfunc(rand_poly(2, -9, 9), Poly(rand_int(1, 4))));
    EqpSelection s = eqp_eventual_min(c);
    for (long k = 0; k < 3 * s.modulus; ++k) {
      Int t = s.threshold + k;
      std::size_t r = mod_floor(t, Int(static_cast<long>(s.modulus))).get_ui();
      for (const EqpFunc& o : c) EXPECT_LE(c[s.index[r]].eval(t), o.eval(t));
    }
  }
}

TEST(BranchTree, SplitsIntoResidues) {
  BranchTree<Poly> tree(Poly{0, 0, 1});
  tree.branch(0, 3);
  ASSERT_EQ(tree.size(), 3u);
  for (std::int64_t r = 0; r < 3; ++r) {
    EXPECT_EQ(tree.leaves()[static_cast<std::size_t>(r)].residue, r);
    EXPECT_EQ(tree.leaves()[static_cast<std::size_t>(r)].modulus, 3);
  }
  EXPECT_TRUE(tree.is_partition());
  EXPECT_EQ(tree.leaves()[1].payload, (Poly{1, 6, 9}));
}

TEST(BranchTree, RefineOddClass) {
  BranchTree<Poly> tree(Poly::t());
  tree.branch(0, 2);
  tree.branch(1, 4);
  ASSERT_EQ(tree.size(), 3u);
  EXPECT_EQ(tree.leaves()[1].residue, 1);
  EXPECT_EQ(tree.leaves()[2].residue, 3);
  EXPECT_EQ(tree.leaves()[1].modulus, 4);
  EXPECT_TRUE(tree.is_partition());
  EXPECT_EQ(tree.common_modulus(), 4);
  EXPECT_THROW(tree.branch(0, 3), InvalidRefinement);
}

TEST(BranchTree, ThresholdsCarryThroughRefinement) {
  Leaf<Poly> leaf{1, 0, Int(10), Poly::t()};
  auto kids = split_leaf(leaf, 3);
  for (const auto& k : kids) {
    EXPECT_GE(k.t_threshold(), 10);
    EXPECT_LT(k.t_threshold(), 13);
  }
}

TEST(BranchTree, FlattenReproducesValues) {
  for (int i = 0; i < 30; ++i) {
    Poly f = rand_poly(3, -9, 9);
    BranchTree<Poly> tree(f);
    tree.branch(0, rand_int(1, 3));
    tree.branch(tree.size() - 1, tree.leaves().back().modulus * rand_int(1, 3));
    ASSERT_TRUE(tree.is_partition());
    EqpFunc e = flatten(tree);
    for (long t = 0; t <= 100; ++t) {
      EXPECT_EQ(e.eval(Int(t)), f.eval(Rat(t)));
      const Leaf<Poly>& l = tree.leaf_for(Int(t));
      Int s = floor_div(Int(t) - l.residue, Int(static_cast<long>(l.modulus)));
      EXPECT_EQ(l.payload.eval(Rat(s)), f.eval(Rat(t)));
    }
  }
}
