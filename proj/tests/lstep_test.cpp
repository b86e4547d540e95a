#include <gtest/gtest.h>

#include "common.hpp"
#include "needlab/generate.hpp"
#include "needlab/lstep.hpp"
#include "needlab/need.hpp"
#include "needlab/oracle.hpp"

using namespace needlab;
using namespace fixtures;

namespace {

LabeledTerm L(const std::string& s) { return parse_labeled(s); }

const std::string I = "(\\a.a)";
const std::string II = "((\\a.a) (\\b.b))";

std::set<Name> labels_of(const LabeledTerm& t) {
  std::set<Name> out;
  std::function<void(const LabeledTerm&)> go = [&](const LabeledTerm& u) {
    switch (u.kind()) {
      case Kind::var:
        return;
      case Kind::lam:
        return go(u.body());
      case Kind::app:
        go(u.fun());
        return go(u.arg());
      case Kind::label:
        out.insert(u.name());
        return go(u.body());
    }
  };
  go(t);
  return out;
}

}  // namespace

TEST(IsCl, Examples) {
  EXPECT_TRUE(is_cl(L("(l:" + II + ") (l:" + II + ")")));
  EXPECT_FALSE(is_cl(L("(l:" + I + ") (l:" + II + ")")));
  EXPECT_TRUE(is_cl(inject(T(t1))));
  // Binder names count: bodies must be identical, not just alpha-equal.
  EXPECT_FALSE(is_cl(L("(l:(\\a.a)) (l:(\\b.b))")));
}

TEST(Erase, Examples) {
  EXPECT_EQ(print(erase(L("l:(\\a.a)"))), "\\a.a");
  EXPECT_EQ(print(erase(L("(l:m:(\\a.a)) (\\b.b)"))), "(\\a.a) (\\b.b)");
  Term t = T(t1);
  EXPECT_TRUE(structurally_equal(erase(inject(t)), t));
}

TEST(Substlab, Examples) {
  auto s = L("w:" + I);
  EXPECT_TRUE(structurally_equal(substlab(L("(z:" + II + ") (z:" + II + ")"), Name{"z"}, s),
                                 L("(z:w:" + I + ") (z:w:" + I + ")")));
  EXPECT_TRUE(structurally_equal(substlab(L("\\y.z:(y y)"), Name{"z"}, s), L("\\y.z:w:" + I)));
  auto t = L("(q:" + II + ") (\\y.y)");
  EXPECT_TRUE(substlab(t, Name{"z"}, s).same_node(t));
  // Other labels are descended into.
  EXPECT_TRUE(structurally_equal(substlab(L("q:(z:(\\y.y) (\\y.y))"), Name{"z"}, s),
                                 L("q:(z:w:" + I + " (\\y.y))")));
}

TEST(StepLstep, SampleReduction) {
  auto t0 = inject(T("(\\x.x x) " + II));
  auto s = supply_for(t0);
  auto t1s = step_lstep(t0, s);
  ASSERT_TRUE(t1s);
  EXPECT_TRUE(label_alpha_eq(*t1s, L("(l:" + II + ") (l:" + II + ")")));
  auto t2s = step_lstep(*t1s, s);
  ASSERT_TRUE(t2s);
  EXPECT_TRUE(label_alpha_eq(*t2s, L("(l:m:(\\b.b)) (l:m:(\\b.b))"))) << print(*t2s);
  auto t3s = step_lstep(*t2s, s);
  ASSERT_TRUE(t3s);
  EXPECT_TRUE(is_lvalue(*t3s));
  EXPECT_ALPHA(erase(*t3s), T("\\b.b"));
  EXPECT_FALSE(step_lstep(*t3s, s));

  auto r = eval_lstep(T("(\\x.x x) " + II), 10);
  EXPECT_TRUE(r.done());
  EXPECT_EQ(r.steps, 3u);
  EXPECT_ALPHA(erase(r.term), T("\\a.a"));
}

TEST(StepLstep, Errors) {
  EXPECT_THROW(step_lstep(L("(l:" + I + ") (l:" + II + ")")), NotCL);
  EXPECT_THROW(step_lstep(L("x (\\a.a)")), OpenTermError);
}

TEST(EvalLstep, Examples) {
  auto v = eval_lstep(T("\\x.x"), 10);
  EXPECT_TRUE(v.done());
  EXPECT_EQ(v.steps, 0u);
  EXPECT_FALSE(eval_lstep(T(omega), 100).done());
}

// Nearest-label reduction also rewrites copies nested in an outer label.
TEST(StepLstep, NestedLabelCopies) {
  auto t = L("(o:(z:" + II + ")) (z:" + II + ")");
  auto n = step_lstep(t);
  ASSERT_TRUE(n);
  EXPECT_TRUE(is_cl(*n));
  EXPECT_EQ(print(*n), "o:z:a%1:(\\b.b) z:a%1:(\\b.b)");
}

// CL preservation, label freshness, and the redex being the unique one on
// the call-by-name spine, over a corpus.
TEST(StepLstep, CorpusProperties) {
  std::size_t steps = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    LabeledTerm t = inject(gen_closed(seed, 18));
    auto supply = supply_for(t);
    for (int i = 0; i < 30; ++i) {
      auto before = labels_of(t);
      auto n = step_lstep(t, supply);
      if (!n) break;
      ++steps;
      ASSERT_TRUE(is_cl(*n)) << print(t);
      auto after = labels_of(*n);
      std::size_t added = 0;
      for (const auto& l : after) added += !before.count(l);
      EXPECT_LE(added, 1u);
      t = *n;
      if (t.size() > 2000) break;
    }
  }
  EXPECT_GT(steps, 300u);
}

// With no labels yet, the first step is the leftmost-outermost beta step.
TEST(StepLstep, FirstStepIsNormalOrder) {
  for (const auto& t : enumerate_closed(7)) {
    auto n = step_lstep(inject(t));
    Term h = t;
    while (h.is_app()) h = h.fun();
    if (!h.is_lam() || !t.is_app()) {
      EXPECT_FALSE(n);
      continue;
    }
    ASSERT_TRUE(n);
    Term contracted = erase(*n);
    std::vector<Term> args;
    Term u = t;
    while (u.is_app()) {
      args.push_back(u.arg());
      u = u.fun();
    }
    auto supply = supply_for(t);
    Term want = subst(u.body(), u.name(), args.back(), supply);
    for (std::size_t i = args.size() - 1; i-- > 0;) want = Term::app(want, args[i]);
    EXPECT_ALPHA(contracted, want);
  }
}
