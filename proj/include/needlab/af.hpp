#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "needlab/context.hpp"
#include "needlab/result.hpp"
#include "needlab/term.hpp"

namespace needlab {

/// Answers of the re-associating calculi: v | (\x.a) e.
inline bool is_af_answer(Term t) {
  while (t.is_app()) {
    if (!t.fun().is_lam()) return false;
    t = t.fun().body();
  }
  return t.is_lam();
}

struct AfStep {
  std::string rule;
  Term term;
};

namespace detail {

struct AfAnswer {};
struct AfDemand {
  Name x;
  Path rev_path;  // from the current node to the variable, reversed
};
struct AfRewrite {
  std::string rule;
  Term term;
};
using AfResult = std::variant<AfAnswer, AfDemand, AfRewrite>;

enum class AfMode { af, mod, merged };

// Splits an answer Aaf[v] into binder/argument layers (outermost first) and v.
inline std::pair<std::vector<std::pair<Name, Term>>, Term> split_af_answer(Term t) {
  std::vector<std::pair<Name, Term>> layers;
  while (t.is_app()) {
    layers.emplace_back(t.fun().name(), t.arg());
    t = t.fun().body();
  }
  return {std::move(layers), t};
}

inline Term plug_af_answer(const std::vector<std::pair<Name, Term>>& layers, Term t) {
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) t = Term::app(Term::lam(it->first, t), it->second);
  return t;
}

// Leftmost-outermost standard redex of the re-associating calculi, rewritten
// in place.
inline AfResult af_search(const Term& t, AfMode mode, NameSupply& supply) {
  switch (t.kind()) {
    case Kind::lam:
      return AfAnswer{};
    case Kind::var:
      return AfDemand{t.name(), {}};
    case Kind::label:
      break;
    case Kind::app: {
      Term f = t.fun(), e = t.arg();
      if (f.is_app() && f.fun().is_lam() && is_af_answer(f.fun().body())) {
        // ((\x.a) e1) e2
        Name x = f.fun().name();
        Term a = f.fun().body();
        if (mode == AfMode::af) return AfRewrite{"lift", Term::app(Term::lam(x, Term::app(a, e)), f.arg())};
        auto [layers, v] = split_af_answer(a);
        return AfRewrite{"lift'", Term::app(Term::lam(x, plug_af_answer(layers, Term::app(v, e))), f.arg())};
      }
      if (!f.is_lam()) {
        auto r = af_search(f, mode, supply);
        if (auto* d = std::get_if<AfDemand>(&r)) {
          d->rev_path.push_back(Dir::fun);
          return r;
        }
        if (auto* w = std::get_if<AfRewrite>(&r)) return AfRewrite{w->rule, Term::app(w->term, e)};
        throw std::logic_error("answer operator missed by lift");
      }
      Name x = f.name();
      Term body = f.body();
      auto r = af_search(body, mode, supply);
      if (std::holds_alternative<AfAnswer>(r)) return r;
      if (auto* w = std::get_if<AfRewrite>(&r)) return AfRewrite{w->rule, Term::app(Term::lam(x, w->term), e)};
      auto& d = std::get<AfDemand>(r);
      if (d.x != x) {
        d.rev_path.push_back(Dir::body);
        d.rev_path.push_back(Dir::fun);
        return r;
      }
      if (e.is_lam()) {
        if (mode == AfMode::af) {
          Path p(d.rev_path.rbegin(), d.rev_path.rend());
          Term copy = freshen_binders(e, supply);
          return AfRewrite{"deref", Term::app(Term::lam(x, replace_at(body, p, copy)), e)};
        }
        return AfRewrite{mode == AfMode::merged ? "beta-need''" : "beta-need'",
                         subst_hygienic(body, x, e, supply)};
      }
      if (is_af_answer(e)) {
        if (mode == AfMode::af) {
          // (\x.E[x]) ((\y.a) e') -> (\y.(\x.E[x]) a) e'
          Term y = e.fun();
          return AfRewrite{"assoc", Term::app(Term::lam(y.name(), Term::app(f, y.body())), e.arg())};
        }
        auto [layers, v] = split_af_answer(e);
        if (mode == AfMode::merged)
          return AfRewrite{"beta-need''", plug_af_answer(layers, subst_hygienic(body, x, v, supply))};
        return AfRewrite{"assoc'", plug_af_answer(layers, Term::app(f, v))};
      }
      auto ra = af_search(e, mode, supply);
      if (auto* da = std::get_if<AfDemand>(&ra)) {
        da->rev_path.push_back(Dir::arg);
        return ra;
      }
      if (auto* w = std::get_if<AfRewrite>(&ra)) return AfRewrite{w->rule, Term::app(f, w->term)};
      throw std::logic_error("answer argument missed");
    }
  }
  throw std::logic_error("label in a pure term");
}

// Assumes `h` is closed and hygienic.
inline std::optional<AfStep> af_step_unchecked(const Term& h, AfMode mode, NameSupply& supply) {
  auto r = af_search(h, mode, supply);
  if (std::holds_alternative<AfAnswer>(r)) return std::nullopt;
  if (auto* d = std::get_if<AfDemand>(&r)) throw OpenTermError(d->x.str());
  auto& w = std::get<AfRewrite>(r);
  return AfStep{std::move(w.rule), std::move(w.term)};
}

inline std::optional<AfStep> af_step(const Term& t, AfMode mode, NameSupply& supply) {
  require_closed(t);
  return af_step_unchecked(is_hygienic(t) ? t : hygienize(t, supply), mode, supply);
}

template <class Step>
EvalResult<Term> iterate(const Term& t, std::size_t fuel, std::size_t size_cap, Step step) {
  require_closed(t);
  auto supply = supply_for(t);
  EvalResult<Term> r;
  r.term = hygienize(t, supply);
  for (;;) {
    auto n = step(r.term, supply);
    if (!n) {
      r.verdict = Verdict::done;
      return r;
    }
    if (r.steps == fuel) return r;
    r.term = std::move(*n);
    ++r.steps;
    if (r.term.size() > size_cap) {
      r.capped = true;
      return r;
    }
  }
}

}  // namespace detail

/// One standard step of the re-associating calculus: deref, lift or assoc.
inline std::optional<AfStep> step_af(const Term& t, NameSupply& supply) {
  return detail::af_step(t, detail::AfMode::af, supply);
}

/// One standard step of the modified calculus: beta-need', lift' or
/// assoc'. With `merged`, an assoc' followed by its beta-need' is one
/// beta-need'' step.
inline std::optional<AfStep> step_afmod(const Term& t, NameSupply& supply, bool merged = false) {
  return detail::af_step(t, merged ? detail::AfMode::merged : detail::AfMode::mod, supply);
}

inline std::optional<AfStep> step_af(const Term& t) {
  auto s = supply_for(t);
  return step_af(t, s);
}

inline std::optional<AfStep> step_afmod(const Term& t, bool merged = false) {
  auto s = supply_for(t);
  return step_afmod(t, s, merged);
}

inline EvalResult<Term> eval_af(const Term& t, std::size_t fuel, std::size_t size_cap = default_size_cap) {
  return detail::iterate(t, fuel, size_cap, [](const Term& u, NameSupply& s) -> std::optional<Term> {
    auto r = detail::af_step_unchecked(u, detail::AfMode::af, s);
    if (!r) return std::nullopt;
    return r->term;
  });
}

inline EvalResult<Term> eval_afmod(const Term& t, std::size_t fuel, bool merged = false,
                                   std::size_t size_cap = default_size_cap) {
  auto mode = merged ? detail::AfMode::merged : detail::AfMode::mod;
  return detail::iterate(t, fuel, size_cap, [mode](const Term& u, NameSupply& s) -> std::optional<Term> {
    auto r = detail::af_step_unchecked(u, mode, s);
    if (!r) return std::nullopt;
    return r->term;
  });
}

// ---------------------------------------------------------------------------
// Call by name

/// One leftmost-outermost beta step toward weak head normal form; nullopt
/// when `t` is an abstraction.
inline std::optional<Term> step_name(const Term& t, NameSupply& supply) {
  std::vector<Term> args;
  Term h = t;
  while (h.is_app()) {
    args.push_back(h.arg());
    h = h.fun();
  }
  if (h.is_lam()) {
    if (args.empty()) return std::nullopt;
    Term r = subst_hygienic(h.body(), h.name(), args.back(), supply);
    for (std::size_t i = args.size() - 1; i-- > 0;) r = Term::app(r, args[i]);
    return r;
  }
  throw OpenTermError(h.name().str());
}

inline EvalResult<Term> eval_name(const Term& t, std::size_t fuel, std::size_t size_cap = default_size_cap) {
  return detail::iterate(t, fuel, size_cap, [](const Term& u, NameSupply& s) { return step_name(u, s); });
}

namespace detail {

inline std::optional<Term> normal_step(const Term& t, NameSupply& supply) {
  if (t.is_lam()) {
    auto b = normal_step(t.body(), supply);
    if (!b) return std::nullopt;
    return Term::lam(t.name(), std::move(*b));
  }
  if (!t.is_app()) return std::nullopt;
  if (t.fun().is_lam()) return subst_hygienic(t.fun().body(), t.fun().name(), t.arg(), supply);
  if (auto f = normal_step(t.fun(), supply)) return Term::app(std::move(*f), t.arg());
  if (auto a = normal_step(t.arg(), supply)) return Term::app(t.fun(), std::move(*a));
  return std::nullopt;
}

}  // namespace detail

/// Normal-order reduction to beta-normal form, under binders too. Open
/// terms are fine.
inline EvalResult<Term> normalize(const Term& t, std::size_t fuel, std::size_t size_cap = default_size_cap) {
  auto supply = supply_for(t);
  EvalResult<Term> r;
  r.term = t;
  for (;;) {
    auto n = detail::normal_step(r.term, supply);
    if (!n) {
      r.verdict = Verdict::done;
      return r;
    }
    if (r.steps == fuel) return r;
    r.term = std::move(*n);
    ++r.steps;
    if (r.term.size() > size_cap) {
      r.capped = true;
      return r;
    }
  }
}

}  // namespace needlab
