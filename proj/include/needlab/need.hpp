#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "needlab/context.hpp"
#include "needlab/result.hpp"
#include "needlab/term.hpp"

namespace needlab {

inline bool is_value(const Term& t) { return t.is_lam(); }

/// t = a[v].
struct Answer {
  Frames a;
  Term v;
};

/// t = outer[ a_hat[ (a1[\x.a_check[demand[x]]]) a2[v] ] ].
struct Redex {
  Frames outer;
  Frames a_hat;
  Frames a1;
  Name x;
  Frames a_check;
  Frames demand;
  Frames a2;
  Term v;
};

using Decomposition = std::variant<Answer, Redex>;

/// An answer context split around one of its binder/argument pairs:
/// a = outer[(mid[\x.inner]) e].
struct Partition {
  Frames outer;  // Â
  Frames mid;    // A
  Frames inner;  // Ǎ
  Name x;
  Term arg;
};

namespace detail {

// Demand reached a variable with no enclosing binder in the term.
struct Stuck {
  Name x;
};

using WalkResult = std::variant<Answer, Redex, Stuck>;

// Redex search by the CK discipline. `rev` holds frames outermost first.
inline WalkResult walk(const Term& t) {
  Frames rev;
  long bal = 0;
  Term c = t;
  for (;;) {
    switch (c.kind()) {
      case Kind::app:
        rev.push_back(Frame::arg(c.arg()));
        ++bal;
        c = c.fun();
        continue;
      case Kind::lam: {
        if (bal > 0) {
          rev.push_back(Frame::lam(c.name()));
          --bal;
          c = c.body();
          continue;
        }
        std::size_t j = rev.size();
        while (j > 0 && rev[j - 1].kind != FrameKind::bod) --j;
        if (j == 0) return Answer{Frames(rev.rbegin(), rev.rend()), c};
        const Frame& op = rev[j - 1];
        Redex r;
        r.x = op.x;
        r.a1 = *op.between;
        r.a2 = Frames(rev.rbegin(), rev.rend() - static_cast<std::ptrdiff_t>(j));
        r.v = c;
        std::size_t cut = check_split(*op.body);
        r.demand = slice(*op.body, 0, cut);
        r.a_check = slice(*op.body, cut, op.body->size());
        long k = scan(r.a_check, 0, r.a_check.size()).open_lams;
        Frames rest(rev.rbegin() + static_cast<std::ptrdiff_t>(rev.size() - j + 1), rev.rend());
        std::size_t h = hat_prefix(rest, k);
        r.a_hat = slice(rest, 0, h);
        r.outer = slice(rest, h, rest.size());
        return r;
      }
      case Kind::var: {
        std::size_t i = rev.size();
        while (i > 0 && !(rev[i - 1].kind == FrameKind::lam && rev[i - 1].x == c.name())) --i;
        if (i == 0) return Stuck{c.name()};
        std::size_t li = i - 1;
        long depth = 0;
        std::size_t m = li;
        bool found = false;
        while (m > 0) {
          --m;
          const Frame& f = rev[m];
          if (f.kind == FrameKind::bod) throw std::logic_error("binder separated from its argument");
          if (f.kind == FrameKind::lam) {
            ++depth;
          } else if (depth == 0) {
            found = true;
            break;
          } else {
            --depth;
          }
        }
        if (!found) throw std::logic_error("binder without argument");
        Frames body(rev.rbegin(), rev.rend() - static_cast<std::ptrdiff_t>(li + 1));
        Frames between(rev.rbegin() + static_cast<std::ptrdiff_t>(rev.size() - li),
                       rev.rend() - static_cast<std::ptrdiff_t>(m + 1));
        Term e = rev[m].e;
        Name x = c.name();
        rev.resize(m);
        rev.push_back(Frame::bod(std::move(x), std::move(body), std::move(between)));
        bal = 0;
        c = e;
        continue;
      }
      case Kind::label:
        break;
    }
    throw std::logic_error("label in a pure term");
  }
}

}  // namespace detail

/// The answer split of `t`, if `t` is an answer.
inline std::optional<Answer> is_answer(const Term& t) {
  auto w = detail::walk(t);
  if (auto* a = std::get_if<Answer>(&w)) return *a;
  return std::nullopt;
}

/// Unique decomposition of a closed term. Throws OpenTermError.
inline Decomposition decompose(const Term& t) {
  require_closed(t);
  auto w = detail::walk(t);
  if (auto* a = std::get_if<Answer>(&w)) return *a;
  if (auto* r = std::get_if<Redex>(&w)) return *r;
  throw std::logic_error("closed term is stuck");
}

/// Reassembles the decomposed term.
inline Term plug(const Redex& r) {
  Term op = plug(r.a1, Term::lam(r.x, plug(r.a_check, plug(r.demand, Term::var(r.x)))));
  return plug(r.outer, plug(r.a_hat, Term::app(op, plug(r.a2, r.v))));
}

namespace detail {

struct CaptureHazard {};

inline Term contract_or_throw(const Redex& r, NameSupply& supply) {
  Term a2v = plug(r.a2, r.v);
  auto fv = free_vars(a2v);
  for (const auto& f : r.a1)
    if (f.kind == FrameKind::lam && fv.contains(f.x)) throw CaptureHazard{};

  Frames a2 = r.a2;
  Term v = r.v;
  if (!a2.empty()) {
    auto fresh = std::get<Answer>(walk(freshen_binders(a2v, supply)));
    a2 = std::move(fresh.a);
    v = std::move(fresh.v);
  }
  Term body = plug(r.a_check, plug(r.demand, Term::var(r.x)));
  Term reduced = subst_hygienic(body, r.x, v, supply);
  return plug(r.outer, plug(r.a_hat, plug(r.a1, plug(a2, reduced))));
}

}  // namespace detail

/// Contracts the redex. A2 is lifted over the hole with fresh binders and
/// every copy of the value is freshly named.
inline Term contract(const Redex& r, NameSupply& supply) {
  try {
    return detail::contract_or_throw(r, supply);
  } catch (const detail::CaptureHazard&) {
    Term h = hygienize(plug(r), supply);
    auto w = detail::walk(h);
    return detail::contract_or_throw(std::get<Redex>(w), supply);
  }
}

/// One standard-reduction step; nullopt on answers. Throws OpenTermError.
inline std::optional<Term> step_sr(const Term& t, NameSupply& supply) {
  auto d = decompose(t);
  if (std::holds_alternative<Answer>(d)) return std::nullopt;
  return contract(std::get<Redex>(d), supply);
}

inline std::optional<Term> step_sr(const Term& t) {
  auto s = supply_for(t);
  return step_sr(t, s);
}

/// Iterates step_sr at most `fuel` times from a hygienic copy of `t`.
inline EvalResult<Term> eval_sr(const Term& t, std::size_t fuel, std::size_t size_cap = default_size_cap) {
  require_closed(t);
  auto supply = supply_for(t);
  EvalResult<Term> r;
  r.term = hygienize(t, supply);
  for (;;) {
    auto w = detail::walk(r.term);
    if (std::holds_alternative<Answer>(w)) {
      r.verdict = Verdict::done;
      return r;
    }
    if (r.steps == fuel) return r;
    auto* x = std::get_if<Redex>(&w);
    if (!x) throw std::logic_error("closed term is stuck");
    r.term = contract(*x, supply);
    ++r.steps;
    if (r.term.size() > size_cap) {
      r.capped = true;
      return r;
    }
  }
}

/// For an answer A[v]: v with every binder of A replaced by its argument,
/// innermost binder first. Throws if `t` is not an answer.
inline Term readback(const Term& t, NameSupply& supply) {
  auto ans = is_answer(t);
  if (!ans) throw std::invalid_argument("readback of a non-answer");
  std::vector<std::pair<Name, Term>> pairs;  // outermost binder first
  std::vector<const Term*> open_args;
  for (std::size_t i = ans->a.size(); i-- > 0;) {
    const Frame& f = ans->a[i];
    if (f.kind == FrameKind::arg) {
      open_args.push_back(&f.e);
    } else {
      pairs.emplace_back(f.x, *open_args.back());
      open_args.pop_back();
    }
  }
  Term v = ans->v;
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) v = subst_hygienic(v, it->first, it->second, supply);
  return v;
}

inline Term readback(const Term& t) {
  auto s = supply_for(t);
  return readback(t, s);
}

/// One partition per binder/argument pair of the answer context `a`,
/// outermost binder first.
inline std::vector<Partition> partitions(const Frames& a) {
  if (!is_answer_frames(a)) throw std::invalid_argument("not an answer context");
  std::vector<Partition> out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i].kind != FrameKind::lam) continue;
    long depth = 0;
    std::size_t j = i + 1;
    for (; j < a.size(); ++j) {
      if (a[j].kind == FrameKind::lam) {
        ++depth;
      } else if (depth == 0) {
        break;
      } else {
        --depth;
      }
    }
    out.push_back(Partition{slice(a, j + 1, a.size()), slice(a, i + 1, j), slice(a, 0, i), a[i].x, a[j].e});
  }
  return out;
}

inline Frames recompose(const Partition& p) {
  Frames r = p.inner;
  r.push_back(Frame::lam(p.x));
  r.insert(r.end(), p.mid.begin(), p.mid.end());
  r.push_back(Frame::arg(p.arg));
  r.insert(r.end(), p.outer.begin(), p.outer.end());
  return r;
}

// ---------------------------------------------------------------------------
// Compatible closure

/// Paths of subterms that are βneed redexes.
inline std::vector<Path> redex_positions(const Term& t) {
  std::vector<Path> out;
  for (auto& p : all_paths(t)) {
    auto w = detail::walk(subterm_at(t, p));
    if (auto* r = std::get_if<Redex>(&w); r && r->outer.empty()) out.push_back(std::move(p));
  }
  return out;
}

/// One-step reducts under the compatible closure of the standard step: every
/// subterm that is not an answer takes its own standard step. Distinct up to
/// alpha, in preorder of subterm position. A subterm's redex may lean on
/// arguments its outer context supplies, so this can exceed redex_positions.
inline std::vector<Term> compatible_reducts(const Term& t, NameSupply& supply) {
  Term h = is_hygienic(t) ? t : hygienize(t, supply);
  std::vector<Term> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : all_paths(h)) {
    auto w = detail::walk(subterm_at(h, p));
    auto* r = std::get_if<Redex>(&w);
    if (!r) continue;
    Term u = replace_at(h, p, contract(*r, supply));
    if (seen.insert(canonical_key(u)).second) out.push_back(u);
  }
  return out;
}

inline std::vector<Term> compatible_reducts(const Term& t) {
  auto s = supply_for(t);
  return compatible_reducts(t, s);
}

/// Memoized one-step reducts keyed by alpha class.
class ReductCache {
 public:
  const std::vector<std::string>& reducts(const std::string& key, const Term& t) {
    auto it = succ_.find(key);
    if (it != succ_.end()) return it->second;
    std::vector<std::string> ks;
    auto supply = supply_for(t);
    for (const auto& u : compatible_reducts(t, supply)) {
      auto k = canonical_key(u);
      terms_.emplace(k, u);
      ks.push_back(std::move(k));
    }
    return succ_.emplace(key, std::move(ks)).first->second;
  }

  const Term& term(const std::string& key) const { return terms_.at(key); }
  void remember(const std::string& key, const Term& t) { terms_.emplace(key, t); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> succ_;
  std::unordered_map<std::string, Term> terms_;
};

/// True iff the reduct closures of t1 and t2, each to depth k, meet in an
/// alpha class.
inline bool joinable(const Term& t1, const Term& t2, std::size_t k, ReductCache& cache) {
  auto k1 = canonical_key(t1), k2 = canonical_key(t2);
  if (k1 == k2) return true;
  cache.remember(k1, t1);
  cache.remember(k2, t2);
  std::unordered_set<std::string> seen[2] = {{k1}, {k2}};
  std::vector<std::string> frontier[2] = {{k1}, {k2}};
  std::size_t depth[2] = {0, 0};
  for (;;) {
    int side = -1;
    for (int s = 0; s < 2; ++s)
      if (depth[s] < k && !frontier[s].empty() &&
          (side < 0 || frontier[s].size() < frontier[side].size()))
        side = s;
    if (side < 0) return false;
    std::vector<std::string> next;
    for (const auto& key : frontier[side]) {
      for (const auto& r : cache.reducts(key, cache.term(key))) {
        if (seen[1 - side].contains(r)) return true;
        if (seen[side].insert(r).second) next.push_back(r);
      }
    }
    frontier[side] = std::move(next);
    ++depth[side];
  }
}

inline bool joinable(const Term& t1, const Term& t2, std::size_t k) {
  ReductCache cache;
  return joinable(t1, t2, k, cache);
}

}  // namespace needlab
