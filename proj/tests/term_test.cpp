#include <gtest/gtest.h>

#include <set>

#include "needlab/generate.hpp"
#include "needlab/syntax.hpp"
#include "needlab/term.hpp"

using namespace needlab;

namespace {

std::set<std::string> names(const std::set<Name>& s) {
  std::set<std::string> out;
  for (const auto& n : s) out.insert(n.str());
  return out;
}

}  // namespace

TEST(Parse, Basics) {
  auto t = parse("\\x.x");
  ASSERT_TRUE(t.is_lam());
  EXPECT_EQ(t.name(), Name("x"));
  EXPECT_TRUE(t.body().is_var());

  auto u = parse("\\x.x x");
  ASSERT_TRUE(u.is_lam());
  EXPECT_TRUE(u.body().is_app());

  auto v = parse("f a b");
  ASSERT_TRUE(v.is_app());
  EXPECT_TRUE(v.fun().is_app());
  EXPECT_EQ(v.arg().name(), Name("b"));
}

TEST(Parse, LambdaSynonymAndComments) {
  EXPECT_TRUE(structurally_equal(parse("λx.x -- identity\n"), parse("\\x.x")));
  EXPECT_TRUE(structurally_equal(parse("f \\x.x"), parse("f (\\x.x)")));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse("\\x."), SyntaxError);
  EXPECT_THROW(parse("(a b"), SyntaxError);
  EXPECT_THROW(parse("x%1"), SyntaxError);
  EXPECT_THROW(parse(""), SyntaxError);
  try {
    parse("a\n  )");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line, 2u);
    EXPECT_EQ(e.col, 3u);
  }
}

TEST(Print, MinimalParens) {
  EXPECT_EQ(print(parse("\\x.x x")), "\\x.x x");
  EXPECT_EQ(print(parse("f a b")), "f a b");
  EXPECT_EQ(print(parse("(\\x.x) y")), "(\\x.x) y");
  EXPECT_EQ(print(parse("f (a b)")), "f (a b)");
  EXPECT_EQ(print(parse("(\\x.x) (\\y.y)")), "(\\x.x) (\\y.y)");
}

TEST(Print, Labeled) {
  auto t = parse_labeled("(l:m:(\\a.a)) (z%3:x)");
  EXPECT_EQ(print(t), "l:m:(\\a.a) z%3:x");
  EXPECT_TRUE(structurally_equal(parse_labeled(print(t)), t));
}

TEST(Print, RoundTripCorpus) {
  for (const auto& t : enumerate_closed(8)) {
    EXPECT_TRUE(structurally_equal(parse(print(t)), t)) << print(t);
  }
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto t = gen_closed(s, 25);
    EXPECT_TRUE(structurally_equal(parse(print(t)), t)) << print(t);
  }
}

TEST(FreeVars, Examples) {
  EXPECT_TRUE(is_closed(parse("\\x.x")));
  EXPECT_EQ(names(free_vars(parse("\\x.y"))), std::set<std::string>{"y"});
  EXPECT_EQ(names(free_vars(parse("(\\x.x) x"))), std::set<std::string>{"x"});
}

TEST(Subst, Examples) {
  NameSupply s;
  auto r1 = subst(parse("\\y.x"), "x", parse("\\a.a"), s);
  EXPECT_TRUE(alpha_eq(r1, parse("\\y.\\a.a")));

  auto r2 = subst_hygienic(parse("x x"), "x", parse("\\a.a"), s);
  EXPECT_TRUE(alpha_eq(r2, parse("(\\a.a) (\\a.a)")));
  EXPECT_TRUE(is_hygienic(r2));

  auto r3 = subst(parse("\\y.x y"), "x", parse("y"), s);
  ASSERT_TRUE(r3.is_lam());
  EXPECT_NE(r3.name(), Name("y"));
  EXPECT_TRUE(alpha_eq(r3, parse("\\q.y q")));
}

TEST(Subst, FreeVariableSafety) {
  NameSupply s(1000);
  auto terms = enumerate_closed(6);
  const Term open_bodies[] = {parse("\\x0.x x0"), parse("x0 (\\x1.x x1)"), parse("\\x0.\\x1.x x0")};
  const Term args[] = {parse("x0"), parse("\\x1.x0 x1"), parse("y")};
  for (const auto& t : open_bodies) {
    for (const auto& a : args) {
      auto r = subst(t, "x", a, s);
      auto fr = free_vars(r);
      auto allowed = free_vars(t);
      allowed.erase(Name("x"));
      for (const auto& n : free_vars(a)) allowed.insert(n);
      for (const auto& n : fr) EXPECT_TRUE(allowed.contains(n)) << print(r);
    }
  }
}

TEST(Subst, RespectsAlpha) {
  NameSupply s(1000);
  auto r1 = subst(parse("\\a.x a"), "x", parse("\\b.b"), s);
  auto r2 = subst(parse("\\c.x c"), "x", parse("\\d.d"), s);
  EXPECT_TRUE(alpha_eq(r1, r2));
}

TEST(Alpha, Examples) {
  EXPECT_TRUE(alpha_eq(parse("\\x.x"), parse("\\y.y")));
  EXPECT_FALSE(alpha_eq(parse("\\x.\\y.x"), parse("\\a.\\b.b")));
  EXPECT_TRUE(alpha_eq(parse("(\\x.x)(\\y.y)"), parse("(\\a.a)(\\a.a)")));
  EXPECT_FALSE(alpha_eq(parse("\\x.y"), parse("\\x.z")));
}

TEST(Alpha, LabelModes) {
  auto a = parse_labeled("l:(\\x.x) m:(\\y.y)");
  auto b = parse_labeled("p:(\\z.z) q:(\\w.w)");
  auto c = parse_labeled("p:(\\z.z) p:(\\w.w)");
  EXPECT_FALSE(alpha_eq(a, b));
  EXPECT_TRUE(label_alpha_eq(a, b));
  EXPECT_FALSE(label_alpha_eq(a, c));
  EXPECT_TRUE(label_alpha_eq(a, c, LabelMode::renamable_values));
  EXPECT_TRUE(alpha_eq(erase(a), parse("(\\x.x) (\\y.y)")));
}

TEST(Hygiene, Hygienize) {
  NameSupply s;
  auto t = parse("(\\x.x) (\\x.\\y.x) y");
  EXPECT_FALSE(is_hygienic(t));
  auto h = hygienize(t, s);
  EXPECT_TRUE(is_hygienic(h));
  EXPECT_TRUE(alpha_eq(h, t));
}

TEST(Generate, Counts) {
  TermCounts c(11);
  const std::uint64_t cumulative[] = {0, 1, 3, 7, 20, 62, 201, 707, 2622, 10180, 41272};
  std::uint64_t sum = 0;
  for (std::size_t n = 1; n <= 11; ++n) {
    sum += c(n, 0);
    EXPECT_EQ(sum, cumulative[n - 1]) << n;
  }
  EXPECT_EQ(TermCounts(25)(25, 0), 185570805235978ull);
}

TEST(Generate, EnumerateSmall) {
  auto ts = enumerate_closed(4);
  std::set<std::string> keys;
  for (const auto& t : ts) {
    EXPECT_TRUE(is_closed(t));
    EXPECT_TRUE(keys.insert(canonical_key(t)).second);
  }
  for (const char* s : {"\\x.x", "\\x.\\y.x", "\\x.\\y.y", "\\x.x x"})
    EXPECT_TRUE(keys.contains(canonical_key(parse(s)))) << s;
  EXPECT_EQ(ts.size(), 7u);
  // `\x.x x` has four nodes.
  EXPECT_EQ(enumerate_closed(3).size(), 3u);
}

TEST(Generate, EnumerationIsUniqueUpToAlpha) {
  std::set<std::string> keys;
  std::size_t n = 0;
  for_each_closed(8, [&](const Term& t) {
    ++n;
    EXPECT_TRUE(is_hygienic(t));
    keys.insert(canonical_key(t));
  });
  EXPECT_EQ(n, 707u);
  EXPECT_EQ(keys.size(), 707u);
}

TEST(Generate, Deterministic) {
  EXPECT_TRUE(structurally_equal(gen_closed(42, 20), gen_closed(42, 20)));
  for (std::uint64_t s = 0; s < 500; ++s) {
    auto t = gen_closed(s, 25);
    EXPECT_TRUE(is_closed(t));
    EXPECT_LE(t.size(), 25u);
    EXPECT_TRUE(is_hygienic(t));
  }
}
