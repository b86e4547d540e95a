#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "needlab/term.hpp"

namespace needlab {

/// Counts of closed-term shapes: count(n, m) is the number of terms with `n`
/// nodes whose free variables are among `m` enclosing binders.
class TermCounts {
 public:
  explicit TermCounts(std::size_t max_size) : max_(max_size) {
    table_.assign(max_ + 1, std::vector<std::uint64_t>(max_ + 1, 0));
    for (std::size_t n = 1; n <= max_; ++n) {
      for (std::size_t m = 0; m + n <= max_ + 1; ++m) {
        if (n == 1) {
          table_[n][m] = m;
          continue;
        }
        std::uint64_t c = m + 1 <= max_ ? table_[n - 1][m + 1] : 0;
        for (std::size_t k = 1; k + 1 < n; ++k) c = add(c, mul(table_[k][m], table_[n - 1 - k][m]));
        table_[n][m] = c;
      }
    }
  }

  std::uint64_t operator()(std::size_t n, std::size_t m) const { return table_.at(n).at(m); }
  std::size_t max_size() const { return max_; }

 private:
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("term count overflow");
    return r;
  }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("term count overflow");
    return r;
  }

  std::size_t max_;
  std::vector<std::vector<std::uint64_t>> table_;
};

namespace detail {

// Nameless skeletons: a variable's generation field holds its de Bruijn index.
inline Term nameless_var(std::size_t idx) { return Term::var(Name{"", static_cast<std::uint32_t>(idx)}); }

inline Term name_preorder(const Term& t, std::vector<Name>& env, std::size_t& counter) {
  switch (t.kind()) {
    case Kind::var:
      return Term::var(env[env.size() - 1 - t.name().gen]);
    case Kind::lam: {
      Name x{"x" + std::to_string(counter++)};
      env.push_back(x);
      auto b = name_preorder(t.body(), env, counter);
      env.pop_back();
      return Term::lam(x, b);
    }
    case Kind::app: {
      auto f = name_preorder(t.fun(), env, counter);
      auto a = name_preorder(t.arg(), env, counter);
      return Term::app(f, a);
    }
    case Kind::label:
      break;
  }
  throw std::logic_error("unexpected label in skeleton");
}

inline Term name_canonically(const Term& skeleton) {
  std::vector<Name> env;
  std::size_t counter = 0;
  return name_preorder(skeleton, env, counter);
}

inline Term unrank(const TermCounts& c, std::size_t n, std::size_t m, std::uint64_t r) {
  if (n == 1) return nameless_var(r);
  std::uint64_t lam_count = c(n - 1, m + 1);
  if (r < lam_count) return Term::lam(Name{}, unrank(c, n - 1, m + 1, r));
  r -= lam_count;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::uint64_t right = c(n - 1 - k, m);
    std::uint64_t block = c(k, m) * right;
    if (r < block) return Term::app(unrank(c, k, m, r / right), unrank(c, n - 1 - k, m, r % right));
    r -= block;
  }
  throw std::logic_error("rank out of range");
}

// A[v] with A = [] | A[\\x.A] e: the spine of arguments is matched by the
// binders met on the way down, and a value sits at the bottom.
inline bool is_answer_shape(const Term& t) {
  long pending = 0;
  Term c = t;
  for (;;) {
    if (c.is_app()) {
      ++pending;
      c = c.fun();
    } else if (c.is_lam()) {
      if (pending == 0) return true;
      --pending;
      c = c.body();
    } else {
      return false;
    }
  }
}

// Uniform draw in [0, bound) without std distributions, whose output is not
// pinned across standard libraries.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

}  // namespace detail

namespace detail {

// Top-down sampler: an application (any feasible split, uniformly) with
// probability 3/5 whenever both shapes are possible.
inline Term sample(const TermCounts& c, std::mt19937_64& rng, std::size_t n, std::size_t m) {
  if (n == 1) return nameless_var(draw_below(rng, m));
  bool lam_ok = c(n - 1, m + 1) > 0;
  std::vector<std::size_t> splits;
  for (std::size_t k = 1; k + 1 < n; ++k)
    if (c(k, m) > 0 && c(n - 1 - k, m) > 0) splits.push_back(k);
  bool app = !splits.empty() && (!lam_ok || draw_below(rng, 5) < 3);
  if (!app) return Term::lam(Name{}, sample(c, rng, n - 1, m + 1));
  std::size_t k = splits[draw_below(rng, splits.size())];
  Term f = sample(c, rng, k, m);
  return Term::app(std::move(f), sample(c, rng, n - 1 - k, m));
}

}  // namespace detail

/// Deterministic pseudo-random closed term with at most `max_size` nodes.
/// The size is uniform in [2, max_size] and the shape is drawn top-down with
/// applications favored. Draws that are already answers (A[v]) are redrawn,
/// up to 16 times, so most results need evaluation. Binders are named x0,
/// x1, ... in preorder, so the result is hygienic.
inline Term gen_closed(std::uint64_t seed, std::size_t max_size) {
  if (max_size < 2) throw std::invalid_argument("no closed term has fewer than 2 nodes");
  TermCounts counts(max_size);
  std::mt19937_64 rng(seed);
  Term t;
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::size_t n = 2 + detail::draw_below(rng, max_size - 1);
    t = detail::name_canonically(detail::sample(counts, rng, n, 0));
    if (!detail::is_answer_shape(t)) break;
  }
  return t;
}

/// Calls `visit` once for every closed term of 1..max_size nodes, one
/// representative per alpha class, in order of size and then rank.
inline void for_each_closed(std::size_t max_size, const std::function<void(const Term&)>& visit) {
  if (max_size < 1) throw std::invalid_argument("max_size must be positive");
  TermCounts counts(max_size);
  for (std::size_t n = 1; n <= max_size; ++n)
    for (std::uint64_t r = 0; r < counts(n, 0); ++r)
      visit(detail::name_canonically(detail::unrank(counts, n, 0, r)));
}

inline std::vector<Term> enumerate_closed(std::size_t max_size) {
  std::vector<Term> out;
  for_each_closed(max_size, [&](const Term& t) { out.push_back(t); });
  return out;
}

}  // namespace needlab
