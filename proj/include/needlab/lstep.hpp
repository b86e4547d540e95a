#pragma once

// Parallel rewriting with labels: the redex search is call by name, looking
// through labels, and reducing inside a label reduces every copy of it.

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "needlab/result.hpp"
#include "needlab/term.hpp"

namespace needlab {

class NotCL : public std::invalid_argument {
 public:
  explicit NotCL(const Name& l) : std::invalid_argument("inconsistent label " + l.str()) {}
};

/// A lambda under zero or more labels.
inline bool is_lvalue(const LabeledTerm& t) { return detail::is_labeled_value(t); }

namespace detail {

inline std::optional<Name> first_inconsistency(const LabeledTerm& t,
                                               std::unordered_map<Name, LabeledTerm>& seen) {
  switch (t.kind()) {
    case Kind::var:
      return std::nullopt;
    case Kind::lam:
      return first_inconsistency(t.body(), seen);
    case Kind::app:
      if (auto l = first_inconsistency(t.fun(), seen)) return l;
      return first_inconsistency(t.arg(), seen);
    case Kind::label: {
      auto [it, fresh] = seen.emplace(t.name(), t.body());
      if (!fresh) {
        if (!it->second.same_node(t.body()) && !structurally_equal(it->second, t.body())) return t.name();
        return std::nullopt;  // an identical body was already scanned
      }
      return first_inconsistency(t.body(), seen);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Consistently labeled: equal labels wrap structurally equal bodies.
inline bool is_cl(const LabeledTerm& t) {
  std::unordered_map<Name, LabeledTerm> seen;
  return !detail::first_inconsistency(t, seen);
}

/// t{{z := s}}: every z-labeled subterm gets body s, keeping its label.
inline LabeledTerm substlab(const LabeledTerm& t, const Name& z, const LabeledTerm& s) {
  switch (t.kind()) {
    case Kind::label:
      if (t.name() == z) return LabeledTerm::label(z, s);
      return detail::rebuild_label(t, substlab(t.body(), z, s));
    case Kind::lam:
      return detail::rebuild_lam(t, t.name(), substlab(t.body(), z, s));
    case Kind::app:
      return detail::rebuild_app(t, substlab(t.fun(), z, s), substlab(t.arg(), z, s));
    case Kind::var:
      return t;
  }
  return t;
}

namespace detail {

struct SpineContraction {
  LabeledTerm whole;                 // t with the redex contracted in place
  std::optional<Name> nearest;       // innermost label around the redex
  LabeledTerm nearest_body;          // that label's body after contraction
};

inline LabeledTerm strip_labels(LabeledTerm t) {
  while (t.is_label()) t = t.body();
  return t;
}

// nullopt when t is a labeled value.
inline std::optional<LabeledTerm> contract_spine(const LabeledTerm& t, NameSupply& supply,
                                                 SpineContraction& out) {
  switch (t.kind()) {
    case Kind::var:
      throw OpenTermError(t.name().str());
    case Kind::lam:
      return std::nullopt;
    case Kind::app: {
      LabeledTerm f = strip_labels(t.fun());
      if (f.is_lam()) {
        Name w = supply.fresh(f.name());
        return subst(f.body(), f.name(), LabeledTerm::label(w, t.arg()), supply);
      }
      auto r = contract_spine(t.fun(), supply, out);
      if (!r) throw std::logic_error("value in operator position not found as a redex");
      return LabeledTerm::app(*r, t.arg());
    }
    case Kind::label: {
      auto r = contract_spine(t.body(), supply, out);
      if (!r) return std::nullopt;
      if (!out.nearest) {
        out.nearest = t.name();
        out.nearest_body = *r;
      }
      return LabeledTerm::label(t.name(), *r);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// One beta-step without precondition checks.
inline std::optional<LabeledTerm> step_lstep_unchecked(const LabeledTerm& t, NameSupply& supply) {
  detail::SpineContraction c;
  auto r = detail::contract_spine(t, supply, c);
  if (!r) return std::nullopt;
  if (!c.nearest) return r;
  return substlab(t, *c.nearest, c.nearest_body);
}

/// One beta-step; nullopt on labeled values. Throws NotCL and OpenTermError.
inline std::optional<LabeledTerm> step_lstep(const LabeledTerm& t, NameSupply& supply) {
  std::unordered_map<Name, LabeledTerm> seen;
  if (auto l = detail::first_inconsistency(t, seen)) throw NotCL(*l);
  require_closed(erase(t));
  return step_lstep_unchecked(t, supply);
}

inline std::optional<LabeledTerm> step_lstep(const LabeledTerm& t) {
  auto s = supply_for(t);
  return step_lstep(t, s);
}

inline EvalResult<LabeledTerm> eval_lstep(const Term& t, std::size_t fuel, std::size_t size_cap = default_size_cap) {
  require_closed(t);
  auto supply = supply_for(t);
  EvalResult<LabeledTerm> r;
  r.term = inject(t);
  for (;;) {
    auto n = step_lstep_unchecked(r.term, supply);
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
