#pragma once

// Store machine for the natural semantics: control, frames, heap.

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "needlab/result.hpp"
#include "needlab/syntax.hpp"
#include "needlab/term.hpp"

namespace needlab {

/// A variable with no heap binding where one must exist.
class UnboundVariable : public std::logic_error {
 public:
  explicit UnboundVariable(const Name& x) : std::logic_error("unbound heap variable " + x.str()) {}
};

struct CKHFrame {
  enum class Kind { arg, var } kind;
  Term e;  // arg
  Name x;  // var

  static CKHFrame arg(Term e) { return {Kind::arg, std::move(e), {}}; }
  static CKHFrame var(Name x) { return {Kind::var, {}, std::move(x)}; }
};

/// Insertion-ordered bindings.
class Heap {
 public:
  const Term* find(const Name& x) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
      if (it->first == x) return &it->second;
    return nullptr;
  }

  bool contains(const Name& x) const { return find(x) != nullptr; }

  void bind(Name x, Term e) {
    if (contains(x)) throw std::logic_error("heap name bound twice: " + x.str());
    entries_.emplace_back(std::move(x), std::move(e));
  }

  /// Removes and returns the binding of x.
  Term take(const Name& x) {
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
      if (it->first == x) {
        Term e = std::move(it->second);
        entries_.erase(it);
        return e;
      }
    }
    throw UnboundVariable(x);
  }

  const std::vector<std::pair<Name, Term>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<Name, Term>> entries_;
};

struct CKHState {
  Term control;
  std::vector<CKHFrame> frames;  // innermost first
  Heap heap;
};

struct CKHStep {
  std::string rule;
  CKHState state;
};

inline CKHState inject_ckh(const Term& t) {
  require_closed(t);
  return CKHState{t, {}, {}};
}

inline bool is_final(const CKHState& s) { return s.control.is_lam() && s.frames.empty(); }

/// One transition; nullopt on final states. Heap names come from `supply`.
inline std::optional<CKHStep> step_ckh(const CKHState& s, NameSupply& supply) {
  const Term& c = s.control;
  CKHState n;
  if (c.is_app()) {
    n.control = c.fun();
    n.frames.reserve(s.frames.size() + 1);
    n.frames.push_back(CKHFrame::arg(c.arg()));
    n.frames.insert(n.frames.end(), s.frames.begin(), s.frames.end());
    n.heap = s.heap;
    return CKHStep{"pusharg", std::move(n)};
  }
  if (c.is_var()) {
    n.heap = s.heap;
    n.control = n.heap.take(c.name());
    n.frames.reserve(s.frames.size() + 1);
    n.frames.push_back(CKHFrame::var(c.name()));
    n.frames.insert(n.frames.end(), s.frames.begin(), s.frames.end());
    return CKHStep{"lookupvar", std::move(n)};
  }
  if (!c.is_lam()) throw std::logic_error("label in control");
  if (s.frames.empty()) return std::nullopt;
  const CKHFrame& top = s.frames.front();
  n.frames.assign(s.frames.begin() + 1, s.frames.end());
  n.heap = s.heap;
  if (top.kind == CKHFrame::Kind::arg) {
    Name y = supply.fresh(c.name());
    n.control = rename_free(c.body(), c.name(), y);
    n.heap.bind(y, top.e);
    return CKHStep{"descend-lam", std::move(n)};
  }
  n.control = c;
  n.heap.bind(top.x, c);
  return CKHStep{"updateheap", std::move(n)};
}

namespace detail {

class Closer {
 public:
  explicit Closer(const Heap& h) : heap_(h) {}

  LabeledTerm close(const LabeledTerm& t) {
    std::vector<Name> bound;
    return rec(t, bound);
  }

 private:
  LabeledTerm image(const Name& x) {
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    const Term* e = heap_.find(x);
    if (!e) throw UnboundVariable(x);
    if (!active_.insert(x).second) throw std::logic_error("cyclic heap at " + x.str());
    std::vector<Name> bound;
    LabeledTerm r = LabeledTerm::label(x, rec(inject(*e), bound));
    active_.erase(x);
    return memo_.emplace(x, r).first->second;
  }

  LabeledTerm rec(const LabeledTerm& t, std::vector<Name>& bound) {
    switch (t.kind()) {
      case Kind::var:
        for (const auto& b : bound)
          if (b == t.name()) return t;
        return image(t.name());
      case Kind::lam: {
        bound.push_back(t.name());
        LabeledTerm b = rec(t.body(), bound);
        bound.pop_back();
        return LabeledTerm::lam(t.name(), std::move(b));
      }
      case Kind::app: {
        LabeledTerm f = rec(t.fun(), bound);
        return LabeledTerm::app(std::move(f), rec(t.arg(), bound));
      }
      case Kind::label:
        return LabeledTerm::label(t.name(), rec(t.body(), bound));
    }
    throw std::logic_error("bad term kind");
  }

  const Heap& heap_;
  std::unordered_map<Name, LabeledTerm> memo_;
  std::unordered_set<Name> active_;
};

}  // namespace detail

/// φL: folds the frames back into the control, then replaces every free
/// variable by its heap term (closed the same way) labeled with its name.
inline LabeledTerm buildL(const CKHState& s) {
  Heap h = s.heap;
  Term e = s.control;
  for (const auto& f : s.frames) {
    if (f.kind == CKHFrame::Kind::arg) {
      e = Term::app(e, f.e);
    } else {
      h.bind(f.x, e);
      e = Term::var(f.x);
    }
  }
  return detail::Closer(h).close(inject(e));
}

/// Nodes in control, frames and heap.
inline std::size_t state_size(const CKHState& s) {
  std::size_t n = s.control.size();
  for (const auto& f : s.frames) n += 1 + (f.kind == CKHFrame::Kind::arg ? f.e.size() : 0);
  for (const auto& [x, e] : s.heap.entries()) n += 1 + e.size();
  return n;
}

inline std::string print(const CKHState& s) {
  std::string out = "<" + print(s.control) + " | ";
  for (std::size_t i = 0; i < s.frames.size(); ++i) {
    if (i) out += ", ";
    const auto& f = s.frames[i];
    out += f.kind == CKHFrame::Kind::arg ? "arg " + print(f.e) : "var " + f.x.str();
  }
  out += " | ";
  for (std::size_t i = 0; i < s.heap.entries().size(); ++i) {
    if (i) out += ", ";
    out += s.heap.entries()[i].first.str() + " -> " + print(s.heap.entries()[i].second);
  }
  return out + ">";
}

/// Runs the machine; the result term is buildL of the last state.
inline EvalResult<LabeledTerm> eval_ckh(const Term& t, std::size_t fuel, std::size_t size_cap = default_size_cap) {
  auto supply = supply_for(t);
  CKHState s = inject_ckh(t);
  EvalResult<LabeledTerm> r;
  for (;;) {
    auto n = step_ckh(s, supply);
    if (!n) {
      r.verdict = Verdict::done;
      break;
    }
    if (r.steps == fuel) break;
    s = std::move(n->state);
    ++r.steps;
    if (n->rule == "descend-lam" && state_size(s) > size_cap) {
      r.capped = true;
      break;
    }
  }
  r.term = buildL(s);
  return r;
}

}  // namespace needlab
