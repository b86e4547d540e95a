#include <gtest/gtest.h>

#include "common.hpp"
#include "needlab/ck.hpp"
#include "needlab/generate.hpp"
#include "needlab/need.hpp"

using namespace needlab;
using namespace fixtures;

namespace {

const Term id_y = T("\\y.y");

}  // namespace

TEST(InjectCk, Examples) {
  auto s = inject_ck(T("\\x.x"));
  EXPECT_TRUE(s.frames.empty());
  EXPECT_TRUE(structurally_equal(build(inject_ck(T(t1))), T(t1)));
  EXPECT_THROW(inject_ck(T("x")), OpenTermError);
}

TEST(StepCk, IdentityTrace) {
  NameSupply sup(100);
  auto s0 = inject_ck(T("(\\x.x)(\\y.y)"));
  auto s1 = step_ck(s0, sup);
  ASSERT_TRUE(s1);
  EXPECT_EQ(s1->rule, "pusharg");
  EXPECT_EQ(print(s1->state.control), "\\x.x");
  EXPECT_EQ(print(s1->state.frames), "[] (\\y.y)");

  auto s2 = step_ck(s1->state, sup);
  ASSERT_TRUE(s2);
  EXPECT_EQ(s2->rule, "descend-lam");
  EXPECT_EQ(print(s2->state.control), "x");
  EXPECT_EQ(print(buildF(s2->state.frames)), "(\\x.[]) (\\y.y)");

  auto s3 = step_ck(s2->state, sup);
  ASSERT_TRUE(s3);
  EXPECT_EQ(s3->rule, "lookupvar");
  EXPECT_EQ(print(s3->state.control), "\\y.y");
  ASSERT_EQ(s3->state.frames.size(), 1u);
  EXPECT_EQ(s3->state.frames[0].kind, FrameKind::bod);
  EXPECT_EQ(print(buildF(s3->state.frames)), "(\\x.x) []");
  EXPECT_EQ(print(build(s3->state)), "(\\x.x) (\\y.y)");

  auto s4 = step_ck(s3->state, sup);
  ASSERT_TRUE(s4);
  EXPECT_EQ(s4->rule, "beta-need-ck");
  EXPECT_TRUE(s4->state.frames.empty());
  EXPECT_TRUE(is_final(s4->state));
  EXPECT_FALSE(step_ck(s4->state, sup));
}

TEST(BuildF, Examples) {
  EXPECT_EQ(print(buildF({})), "[]");
  EXPECT_EQ(print(buildF({Frame::lam("x"), Frame::arg(id_y)})), "(\\x.[]) (\\y.y)");
  EXPECT_EQ(print(buildF({Frame::bod("x", {}, {})})), "(\\x.x) []");
  EXPECT_EQ(print(build(CKState{T("x"), {Frame::lam("x"), Frame::arg(id_y)}})), "(\\x.x) (\\y.y)");
}

TEST(Psi, Examples) {
  EXPECT_TRUE(structurally_equal(buildtostep(inject_ck(T(t1))), inject(T(t1))));
  auto a = buildtostep(CKState{T("\\x.x"), {Frame::arg(id_y)}});
  EXPECT_EQ(print(a), "(\\x.x) (\\y.y)");
  auto b = buildtostep(CKState{T("x"), {Frame::lam("x"), Frame::arg(id_y)}});
  ASSERT_TRUE(b.is_label());
  EXPECT_TRUE(label_alpha_eq(b, parse_labeled("l:(\\y.y)")));
}

TEST(EvalCk, Examples) {
  auto i = eval_ck(T("(\\x.x)(\\y.y)"), 100);
  ASSERT_TRUE(i.done());
  EXPECT_EQ(i.steps, 4u);
  EXPECT_ALPHA(i.term, T("\\y.y"));

  auto k = eval_ck(T(k_omega), 100);
  ASSERT_TRUE(k.done());
  EXPECT_LE(k.steps, 2u);
  EXPECT_ALPHA(k.term, eval_sr(T(k_omega), 100).term);

  EXPECT_FALSE(eval_ck(T(omega), 100).done());
}

TEST(EvalCk, AgreesWithStandardReductionT1) {
  auto c = eval_ck(T(t1), 1000);
  auto n = eval_sr(T(t1), 1000);
  ASSERT_TRUE(c.done());
  EXPECT_ALPHA(c.term, n.term);
}

// Per-transition properties over a seeded corpus: φ images are equal or one
// standard step apart, only beta-need-ck steps, decompositions cohere, and
// finality implies an answer.
TEST(StepCk, ShapeOfTransitions) {
  std::size_t betas = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Term t = gen_closed(seed, 16);
    auto supply = supply_for(t);
    CKState s = inject_ck(hygienize(t, supply));
    for (int i = 0; i < 300; ++i) {
      Term before = build(s);
      auto n = step_ck(s, supply);
      if (!n) {
        EXPECT_TRUE(is_answer(before));
        break;
      }
      Term after = build(n->state);
      if (n->rule == "beta-need-ck") {
        ++betas;
        auto d = decompose(before);
        ASSERT_TRUE(std::holds_alternative<Redex>(d)) << print(before);
        const auto& r = std::get<Redex>(d);
        std::size_t j = 0;
        while (s.frames[j].kind != FrameKind::bod) ++j;
        const Frame& b = s.frames[j];
        EXPECT_EQ(r.x, b.x);
        EXPECT_TRUE(frames_equal(r.a1, *b.between));
        EXPECT_TRUE(frames_equal(r.a2, slice(s.frames, 0, j)));
        EXPECT_TRUE(frames_equal(concat(r.demand, r.a_check), *b.body));
        auto next = step_sr(before, supply);
        ASSERT_TRUE(next);
        EXPECT_ALPHA(after, *next);
      } else {
        EXPECT_TRUE(alpha_eq(before, after)) << n->rule;
      }
      s = std::move(n->state);
    }
  }
  EXPECT_GT(betas, 100u);
}

// Once the built term is an answer, the machine only walks to the value.
TEST(StepCk, NoBetaAfterAnswer) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Term t = gen_closed(seed, 16);
    auto supply = supply_for(t);
    CKState s = inject_ck(hygienize(t, supply));
    bool answered = false;
    for (int i = 0; i < 300; ++i) {
      answered = answered || is_answer(build(s)).has_value();
      auto n = step_ck(s, supply);
      if (!n) break;
      if (answered) EXPECT_NE(n->rule, "beta-need-ck");
      s = std::move(n->state);
    }
  }
}

// The demanded x6 sits under \x7, whose argument lies beyond the x1 binder.
// Looking up x1 then needs the whole-list reading of the side conditions.
TEST(StepCk, LookupThroughLentArgument) {
  Term t = T("(\\x1.(\\x6.\\x7.x6) x1) ((\\x3.\\x4.x4) (\\x5.x5)) ((\\x8.x8) (\\x9.x9))");
  auto supply = supply_for(t);
  CKState s = inject_ck(t);
  std::size_t lookups = 0;
  for (int i = 0; i < 100; ++i) {
    auto n = step_ck(s, supply);
    if (!n) break;
    if (n->rule == "lookupvar") ++lookups;
    s = n->state;
  }
  EXPECT_TRUE(is_final(s));
  EXPECT_EQ(lookups, 2u);
  EXPECT_ALPHA(build(s), eval_sr(t, 100).term);
}
