#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "needlab/name.hpp"

namespace needlab {

enum class Kind : std::uint8_t { var, lam, app, label };

namespace detail {

struct Node {
  Kind kind;
  Name name;  // variable, binder or label
  std::shared_ptr<const Node> first;   // lam/label body, app operator
  std::shared_ptr<const Node> second;  // app operand
  std::size_t size;
};

using NodePtr = std::shared_ptr<const Node>;

}  // namespace detail

/// Immutable, structurally shared lambda term. `basic_term<false>` is a pure
/// term; `basic_term<true>` may additionally carry labels. Every pure term
/// is a valid labeled term, so injection is free.
template <bool Labeled>
class basic_term {
 public:
  basic_term() = default;

  static basic_term var(Name x) {
    return basic_term(std::make_shared<const detail::Node>(
        detail::Node{Kind::var, std::move(x), nullptr, nullptr, 1}));
  }
  static basic_term lam(Name x, basic_term body) {
    auto sz = body.size() + 1;
    return basic_term(std::make_shared<const detail::Node>(
        detail::Node{Kind::lam, std::move(x), std::move(body.node_), nullptr, sz}));
  }
  static basic_term app(basic_term f, basic_term a) {
    auto sz = f.size() + a.size() + 1;
    return basic_term(std::make_shared<const detail::Node>(
        detail::Node{Kind::app, Name{}, std::move(f.node_), std::move(a.node_), sz}));
  }
  static basic_term label(Name l, basic_term body)
    requires Labeled
  {
    auto sz = body.size() + 1;
    return basic_term(std::make_shared<const detail::Node>(
        detail::Node{Kind::label, std::move(l), std::move(body.node_), nullptr, sz}));
  }

  explicit operator bool() const { return node_ != nullptr; }

  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::var; }
  bool is_lam() const { return kind() == Kind::lam; }
  bool is_app() const { return kind() == Kind::app; }
  bool is_label() const { return kind() == Kind::label; }

  /// Variable name, binder of an abstraction, or label.
  const Name& name() const { return node_->name; }
  basic_term body() const { return basic_term(node_->first); }
  basic_term fun() const { return basic_term(node_->first); }
  basic_term arg() const { return basic_term(node_->second); }

  /// Number of AST nodes.
  std::size_t size() const { return node_ ? node_->size : 0; }

  bool same_node(const basic_term& o) const { return node_ == o.node_; }

  const detail::NodePtr& node() const { return node_; }
  explicit basic_term(detail::NodePtr n) : node_(std::move(n)) {}

 private:
  detail::NodePtr node_;
};

using Term = basic_term<false>;
using LabeledTerm = basic_term<true>;

inline LabeledTerm inject(const Term& t) { return LabeledTerm(t.node()); }

/// Thrown when an operation requiring a closed program receives an open one.
struct OpenTermError : std::invalid_argument {
  explicit OpenTermError(const std::string& what)
      : std::invalid_argument("open term: free variable " + what) {}
};

// ---------------------------------------------------------------------------
// Structural queries

template <bool L>
bool structurally_equal(const basic_term<L>& a, const basic_term<L>& b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Kind::var:
      return a.name() == b.name();
    case Kind::lam:
    case Kind::label:
      return a.name() == b.name() && structurally_equal(a.body(), b.body());
    case Kind::app:
      return structurally_equal(a.fun(), b.fun()) && structurally_equal(a.arg(), b.arg());
  }
  return false;
}

namespace detail {

template <bool L>
void collect_free(const basic_term<L>& t, std::multiset<Name>& bound, std::set<Name>& out) {
  switch (t.kind()) {
    case Kind::var:
      if (!bound.contains(t.name())) out.insert(t.name());
      return;
    case Kind::lam: {
      auto it = bound.insert(t.name());
      collect_free(t.body(), bound, out);
      bound.erase(it);
      return;
    }
    case Kind::label:
      collect_free(t.body(), bound, out);
      return;
    case Kind::app:
      collect_free(t.fun(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
  }
}

}  // namespace detail

/// Free variables. Labels are not variables and never count as free.
template <bool L>
std::set<Name> free_vars(const basic_term<L>& t) {
  std::multiset<Name> bound;
  std::set<Name> out;
  detail::collect_free(t, bound, out);
  return out;
}

template <bool L>
bool is_closed(const basic_term<L>& t) {
  return free_vars(t).empty();
}

template <bool L>
bool occurs_free(const basic_term<L>& t, const Name& x) {
  switch (t.kind()) {
    case Kind::var:
      return t.name() == x;
    case Kind::lam:
      return t.name() != x && occurs_free(t.body(), x);
    case Kind::label:
      return occurs_free(t.body(), x);
    case Kind::app:
      return occurs_free(t.fun(), x) || occurs_free(t.arg(), x);
  }
  return false;
}

template <bool L>
void require_closed(const basic_term<L>& t) {
  auto fv = free_vars(t);
  if (!fv.empty()) throw OpenTermError(fv.begin()->str());
}

/// Largest generation index anywhere in `t` (binders, variables, labels).
template <bool L>
std::uint32_t max_gen(const basic_term<L>& t) {
  std::uint32_t m = t.name().gen;
  switch (t.kind()) {
    case Kind::var:
      return m;
    case Kind::lam:
    case Kind::label:
      return std::max(m, max_gen(t.body()));
    case Kind::app:
      return std::max(max_gen(t.fun()), max_gen(t.arg()));
  }
  return m;
}

/// A supply that cannot reissue any name already present in `t`.
template <bool L>
NameSupply supply_for(const basic_term<L>& t) {
  NameSupply s;
  s.reserve_above(max_gen(t));
  return s;
}

template <bool L>
void collect_binders(const basic_term<L>& t, std::vector<Name>& out) {
  switch (t.kind()) {
    case Kind::var:
      return;
    case Kind::lam:
      out.push_back(t.name());
      collect_binders(t.body(), out);
      return;
    case Kind::label:
      collect_binders(t.body(), out);
      return;
    case Kind::app:
      collect_binders(t.fun(), out);
      collect_binders(t.arg(), out);
      return;
  }
}

/// Barendregt condition over a whole program: binders are pairwise distinct
/// and disjoint from the free variables.
template <bool L>
bool is_hygienic(const basic_term<L>& t) {
  std::vector<Name> bs;
  collect_binders(t, bs);
  std::set<Name> seen = free_vars(t);
  for (const auto& b : bs)
    if (!seen.insert(b).second) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Renaming and substitution

namespace detail {

template <bool L>
basic_term<L> rebuild_lam(const basic_term<L>& orig, const Name& x, basic_term<L> body) {
  if (x == orig.name() && body.same_node(orig.body())) return orig;
  return basic_term<L>::lam(x, std::move(body));
}

template <bool L>
basic_term<L> rebuild_label(const basic_term<L>& orig, basic_term<L> body) {
  if (body.same_node(orig.body())) return orig;
  if constexpr (L) {
    return basic_term<L>::label(orig.name(), std::move(body));
  } else {
    throw std::logic_error("label in a pure term");
  }
}

template <bool L>
basic_term<L> rebuild_app(const basic_term<L>& orig, basic_term<L> f, basic_term<L> a) {
  if (f.same_node(orig.fun()) && a.same_node(orig.arg())) return orig;
  return basic_term<L>::app(std::move(f), std::move(a));
}

// Renames every binder it passes to a fresh name; `env` maps old bound names
// to new ones. Free variables are untouched.
template <bool L>
basic_term<L> freshen(const basic_term<L>& t, std::vector<std::pair<Name, Name>>& env,
                      NameSupply& supply) {
  switch (t.kind()) {
    case Kind::var:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.name()) return basic_term<L>::var(it->second);
      return t;
    case Kind::lam: {
      Name fresh = supply.fresh(t.name());
      env.emplace_back(t.name(), fresh);
      auto body = freshen(t.body(), env, supply);
      env.pop_back();
      return basic_term<L>::lam(fresh, std::move(body));
    }
    case Kind::label:
      return rebuild_label(t, freshen(t.body(), env, supply));
    case Kind::app:
      return rebuild_app(t, freshen(t.fun(), env, supply), freshen(t.arg(), env, supply));
  }
  return t;
}

}  // namespace detail

/// Alpha-renames every binder of `t` to a fresh name.
template <bool L>
basic_term<L> freshen_binders(const basic_term<L>& t, NameSupply& supply) {
  std::vector<std::pair<Name, Name>> env;
  return detail::freshen(t, env, supply);
}

/// Replaces free occurrences of variable `x` by variable `y`. `y` must not be
/// bound anywhere in `t` on a path to an occurrence of `x` (true when fresh).
template <bool L>
basic_term<L> rename_free(const basic_term<L>& t, const Name& x, const Name& y) {
  switch (t.kind()) {
    case Kind::var:
      return t.name() == x ? basic_term<L>::var(y) : t;
    case Kind::lam:
      if (t.name() == x) return t;
      return detail::rebuild_lam(t, t.name(), rename_free(t.body(), x, y));
    case Kind::label:
      return detail::rebuild_label(t, rename_free(t.body(), x, y));
    case Kind::app:
      return detail::rebuild_app(t, rename_free(t.fun(), x, y), rename_free(t.arg(), x, y));
  }
  return t;
}

namespace detail {

template <bool L>
basic_term<L> subst_rec(const basic_term<L>& t, const Name& x, const basic_term<L>& s,
                        const std::set<Name>& fv_s, NameSupply& supply, bool fresh_copies) {
  switch (t.kind()) {
    case Kind::var:
      if (t.name() != x) return t;
      return fresh_copies ? freshen_binders(s, supply) : s;
    case Kind::lam: {
      if (t.name() == x) return t;
      if (fv_s.contains(t.name()) && occurs_free(t.body(), x)) {
        Name y = supply.fresh(t.name());
        auto body = rename_free(t.body(), t.name(), y);
        return basic_term<L>::lam(y, subst_rec(body, x, s, fv_s, supply, fresh_copies));
      }
      return rebuild_lam(t, t.name(), subst_rec(t.body(), x, s, fv_s, supply, fresh_copies));
    }
    case Kind::label:
      return rebuild_label(t, subst_rec(t.body(), x, s, fv_s, supply, fresh_copies));
    case Kind::app:
      return rebuild_app(t, subst_rec(t.fun(), x, s, fv_s, supply, fresh_copies),
                         subst_rec(t.arg(), x, s, fv_s, supply, fresh_copies));
  }
  return t;
}

}  // namespace detail

/// Capture-avoiding substitution t{x := s}. Binders of `t` that would capture
/// a free variable of `s` are renamed with `supply`. Copies of `s` are shared.
template <bool L>
basic_term<L> subst(const basic_term<L>& t, const Name& x, const basic_term<L>& s,
                    NameSupply& supply) {
  return detail::subst_rec(t, x, s, free_vars(s), supply, false);
}

/// Like subst, but every inserted copy of `s` gets freshly named binders so a
/// hygienic program stays hygienic.
template <bool L>
basic_term<L> subst_hygienic(const basic_term<L>& t, const Name& x, const basic_term<L>& s,
                             NameSupply& supply) {
  return detail::subst_rec(t, x, s, free_vars(s), supply, true);
}

namespace detail {

template <bool L>
basic_term<L> hygienize_rec(const basic_term<L>& t, std::set<Name>& used,
                            std::vector<std::pair<Name, Name>>& env, NameSupply& supply) {
  switch (t.kind()) {
    case Kind::var:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.name())
          return it->second == t.name() ? t : basic_term<L>::var(it->second);
      return t;
    case Kind::lam: {
      Name b = t.name();
      if (!used.insert(b).second) {
        b = supply.fresh(t.name());
        used.insert(b);
      }
      env.emplace_back(t.name(), b);
      auto body = hygienize_rec(t.body(), used, env, supply);
      env.pop_back();
      return rebuild_lam(t, b, std::move(body));
    }
    case Kind::label:
      return rebuild_label(t, hygienize_rec(t.body(), used, env, supply));
    case Kind::app: {
      auto f = hygienize_rec(t.fun(), used, env, supply);
      auto a = hygienize_rec(t.arg(), used, env, supply);
      return rebuild_app(t, std::move(f), std::move(a));
    }
  }
  return t;
}

}  // namespace detail

/// Alpha-equivalent copy satisfying is_hygienic. The first binder of each
/// name keeps it; later duplicates are renamed.
template <bool L>
basic_term<L> hygienize(const basic_term<L>& t, NameSupply& supply) {
  std::set<Name> used = free_vars(t);
  std::vector<std::pair<Name, Name>> env;
  return detail::hygienize_rec(t, used, env, supply);
}

// ---------------------------------------------------------------------------
// Canonical keys

/// How labels take part in a canonical key.
enum class LabelMode {
  exact,         // label names compared literally
  renamable,     // compared modulo an injective renaming
  renamable_values  // as renamable, and labels wrapping a value are dropped
};

namespace detail {

template <bool L>
bool is_labeled_value(basic_term<L> t) {
  while (t.is_label()) t = t.body();
  return t.is_lam();
}

template <bool L>
void key_rec(const basic_term<L>& t, std::vector<Name>& env, std::map<Name, std::size_t>& labels,
             LabelMode mode, std::string& out) {
  switch (t.kind()) {
    case Kind::var: {
      for (std::size_t i = env.size(); i-- > 0;) {
        if (env[i] == t.name()) {
          out += 'v';
          out += std::to_string(env.size() - 1 - i);
          out += ';';
          return;
        }
      }
      out += 'f';
      out += t.name().str();
      out += ';';
      return;
    }
    case Kind::lam:
      out += '\\';
      env.push_back(t.name());
      key_rec(t.body(), env, labels, mode, out);
      env.pop_back();
      return;
    case Kind::app:
      out += '@';
      key_rec(t.fun(), env, labels, mode, out);
      key_rec(t.arg(), env, labels, mode, out);
      return;
    case Kind::label: {
      if (mode == LabelMode::renamable_values && is_labeled_value(t)) {
        key_rec(t.body(), env, labels, mode, out);
        return;
      }
      out += ':';
      if (mode == LabelMode::exact) {
        out += t.name().str();
      } else {
        auto [it, _] = labels.emplace(t.name(), labels.size());
        out += std::to_string(it->second);
      }
      out += ';';
      key_rec(t.body(), env, labels, mode, out);
      return;
    }
  }
}

}  // namespace detail

/// A string equal for two terms iff they are alpha-equivalent (and, per
/// `mode`, equal up to label renaming). Bound variables become binder-depth
/// indices; free variables keep their names.
template <bool L>
std::string canonical_key(const basic_term<L>& t, LabelMode mode = LabelMode::exact) {
  std::vector<Name> env;
  std::map<Name, std::size_t> labels;
  std::string out;
  out.reserve(t.size() * 3);
  detail::key_rec(t, env, labels, mode, out);
  return out;
}

template <bool L>
bool alpha_eq(const basic_term<L>& a, const basic_term<L>& b) {
  return canonical_key(a) == canonical_key(b);
}

/// Alpha-equivalence that also identifies terms differing by an injective
/// renaming of labels.
inline bool label_alpha_eq(const LabeledTerm& a, const LabeledTerm& b,
                           LabelMode mode = LabelMode::renamable) {
  return canonical_key(a, mode) == canonical_key(b, mode);
}

// ---------------------------------------------------------------------------
// Labels

/// Drops every label.
inline Term erase(const LabeledTerm& t) {
  switch (t.kind()) {
    case Kind::var:
      return Term(t.node());
    case Kind::lam: {
      auto b = erase(t.body());
      if (b.node() == t.body().node()) return Term(t.node());
      return Term::lam(t.name(), std::move(b));
    }
    case Kind::label:
      return erase(t.body());
    case Kind::app: {
      auto f = erase(t.fun());
      auto a = erase(t.arg());
      if (f.node() == t.fun().node() && a.node() == t.arg().node()) return Term(t.node());
      return Term::app(std::move(f), std::move(a));
    }
  }
  return Term(t.node());
}

inline bool has_labels(const LabeledTerm& t) {
  switch (t.kind()) {
    case Kind::var:
      return false;
    case Kind::label:
      return true;
    case Kind::lam:
      return has_labels(t.body());
    case Kind::app:
      return has_labels(t.fun()) || has_labels(t.arg());
  }
  return false;
}

}  // namespace needlab
