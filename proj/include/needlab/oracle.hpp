#pragma once

// Exhaustive grammar matcher for λneed contexts. It tries every split the
// context grammars allow, directly on terms and paths, and shares no code
// with the frame-based decomposition in need.hpp. Exponential; meant for
// small terms.

#include <string>
#include <vector>

#include "needlab/context.hpp"
#include "needlab/need.hpp"
#include "needlab/term.hpp"

namespace needlab::oracle {

namespace detail {

inline Term step(const Term& t, Dir d) {
  if (d == Dir::body) return t.is_lam() ? t.body() : Term{};
  if (!t.is_app()) return Term{};
  return d == Dir::fun ? t.fun() : t.arg();
}

// Node reached from `t` by p[a..b), or an empty term if the path leaves it.
inline Term follow(Term t, const Path& p, std::size_t a, std::size_t b) {
  for (std::size_t i = a; i < b && t; ++i) t = step(t, p[i]);
  return t;
}

// Each recognizer asks whether `t` with a hole at p[a..b) is in the grammar.

inline bool in_a(const Term& t, const Path& p, std::size_t a, std::size_t b) {
  if (a == b) return true;
  // A[\x.A] e
  if (!t.is_app() || p[a] != Dir::fun) return false;
  Term f = t.fun();
  Term n = f;
  for (std::size_t j = a + 1; j < b && n; ++j) {
    if (n.is_lam() && p[j] == Dir::body && in_a(f, p, a + 1, j) && in_a(n.body(), p, j + 1, b))
      return true;
    n = step(n, p[j]);
  }
  return false;
}

inline bool in_a_hat(const Term& t, const Path& p, std::size_t a, std::size_t b) {
  if (a == b) return true;
  // (A[Â]) e
  if (!t.is_app() || p[a] != Dir::fun) return false;
  Term f = t.fun();
  Term n = f;
  for (std::size_t j = a + 1; j <= b && n; ++j) {
    if (in_a(f, p, a + 1, j) && in_a_hat(n, p, j, b)) return true;
    if (j < b) n = step(n, p[j]);
  }
  return false;
}

inline bool in_a_check(const Term& t, const Path& p, std::size_t a, std::size_t b) {
  if (a == b) return true;
  // A[\x.Ǎ]
  Term n = t;
  for (std::size_t j = a; j < b && n; ++j) {
    if (n.is_lam() && p[j] == Dir::body && in_a(t, p, a, j) && in_a_check(n.body(), p, j + 1, b))
      return true;
    n = step(n, p[j]);
  }
  return false;
}

inline bool in_e(const Term& t, const Path& p, std::size_t a, std::size_t b);

inline bool bound_on_path(const Term& t, const Path& p, std::size_t a, std::size_t b, const Name& x) {
  Term n = t;
  for (std::size_t i = a; i < b; ++i) {
    if (n.is_lam() && n.name() == x) return true;
    n = step(n, p[i]);
  }
  return false;
}

// Ǎ[E[x]] with x at p[a..b) of `body`, and Â[Ǎ] ∈ A where Â is the context
// `outer` with hole at `outer_path`.
inline bool in_check_e_x(const Term& body, const Path& p, std::size_t a, std::size_t b,
                         const Term& outer, const Path& outer_path) {
  for (std::size_t k = a; k <= b; ++k) {
    if (!in_a_check(body, p, a, k)) continue;
    if (!in_e(follow(body, p, a, k), p, k, b)) continue;
    Path composed = outer_path;
    composed.insert(composed.end(), p.begin() + static_cast<std::ptrdiff_t>(a),
                    p.begin() + static_cast<std::ptrdiff_t>(k));
    if (in_a(replace_at(outer, outer_path, body), composed, 0, composed.size())) return true;
  }
  return false;
}

// (A[\x.Ǎ[E[x]]]) e, for some occurrence x, with hole anywhere below `e`:
// returns true if the operator part matches with Â = (outer, outer_path).
inline bool op_matches(const Term& f, const Term& outer, const Path& outer_path) {
  for (const auto& pl : all_paths(f)) {
    Term lam = subterm_at(f, pl);
    if (!lam.is_lam() || !in_a(f, pl, 0, pl.size())) continue;
    for (const auto& pv : all_paths(lam.body())) {
      Term v = subterm_at(lam.body(), pv);
      if (!v.is_var() || v.name() != lam.name()) continue;
      if (bound_on_path(lam.body(), pv, 0, pv.size(), lam.name())) continue;
      if (in_check_e_x(lam.body(), pv, 0, pv.size(), outer, outer_path)) return true;
    }
  }
  return false;
}

inline bool in_e(const Term& t, const Path& p, std::size_t a, std::size_t b) {
  if (!t) return false;
  if (a == b) return true;
  // E e
  if (t.is_app() && p[a] == Dir::fun && in_e(t.fun(), p, a + 1, b)) return true;
  // A[E], A non-empty
  {
    Term n = step(t, p[a]);
    for (std::size_t j = a + 1; j <= b && n; ++j) {
      if (in_a(t, p, a, j) && in_e(n, p, j, b)) return true;
      if (j < b) n = step(n, p[j]);
    }
  }
  // Â[(A[\x.Ǎ[E[x]]]) E]
  Term n = t;
  for (std::size_t j = a; j < b && n; ++j) {
    if (n.is_app() && p[j] == Dir::arg && in_a_hat(t, p, a, j) && in_e(n.arg(), p, j + 1, b)) {
      Path hat(p.begin() + static_cast<std::ptrdiff_t>(a), p.begin() + static_cast<std::ptrdiff_t>(j));
      if (op_matches(n.fun(), t, hat)) return true;
    }
    n = step(n, p[j]);
  }
  return false;
}

}  // namespace detail

inline bool in_a(const Term& t, const Path& p) { return detail::in_a(t, p, 0, p.size()); }
inline bool in_a_hat(const Term& t, const Path& p) { return detail::in_a_hat(t, p, 0, p.size()); }
inline bool in_a_check(const Term& t, const Path& p) { return detail::in_a_check(t, p, 0, p.size()); }
inline bool in_e(const Term& t, const Path& p) { return detail::in_e(t, p, 0, p.size()); }

/// Positions identifying one decomposition. For an answer only `value` is
/// set; for a redex all paths are from the root of the whole term.
struct Witness {
  bool answer = false;
  Path root, app, lam, var, value;

  friend bool operator==(const Witness&, const Witness&) = default;
};

inline Path join(Path a, std::initializer_list<Dir> mid, const Path& b) {
  a.insert(a.end(), mid.begin(), mid.end());
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// All βneed redex matches rooted exactly at the root of `s`, with paths
/// prefixed by `root`.
inline std::vector<Witness> root_redexes(const Term& s, const Path& root) {
  std::vector<Witness> out;
  for (const auto& pa : all_paths(s)) {
    Term app = subterm_at(s, pa);
    if (!app.is_app() || !in_a_hat(s, pa)) continue;
    Term f = app.fun(), e = app.arg();
    std::vector<Path> values;
    for (const auto& pw : all_paths(e))
      if (subterm_at(e, pw).is_lam() && in_a(e, pw)) values.push_back(pw);
    if (values.empty()) continue;
    for (const auto& pl : all_paths(f)) {
      Term lam = subterm_at(f, pl);
      if (!lam.is_lam() || !in_a(f, pl)) continue;
      for (const auto& pv : all_paths(lam.body())) {
        Term v = subterm_at(lam.body(), pv);
        if (!v.is_var() || v.name() != lam.name()) continue;
        if (detail::bound_on_path(lam.body(), pv, 0, pv.size(), lam.name())) continue;
        if (!detail::in_check_e_x(lam.body(), pv, 0, pv.size(), s, pa)) continue;
        for (const auto& pw : values) {
          Witness w;
          w.root = root;
          w.app = join(root, {}, pa);
          w.lam = join(w.app, {Dir::fun}, pl);
          w.var = join(w.lam, {Dir::body}, pv);
          w.value = join(w.app, {Dir::arg}, pw);
          out.push_back(std::move(w));
        }
      }
    }
  }
  return out;
}

/// Every way `t` decomposes as A[v] or E[redex].
inline std::vector<Witness> all_decompositions(const Term& t) {
  std::vector<Witness> out;
  for (const auto& p : all_paths(t)) {
    if (subterm_at(t, p).is_lam() && in_a(t, p)) {
      Witness w;
      w.answer = true;
      w.value = p;
      out.push_back(w);
    }
    if (in_e(t, p))
      for (auto& w : root_redexes(subterm_at(t, p), p)) out.push_back(std::move(w));
  }
  return out;
}

/// Every βneed redex match at any position (the compatible closure).
inline std::vector<Witness> all_redexes(const Term& t) {
  std::vector<Witness> out;
  for (const auto& p : all_paths(t))
    for (auto& w : root_redexes(subterm_at(t, p), p)) out.push_back(std::move(w));
  return out;
}

/// The witness corresponding to a frame-based decomposition.
inline Witness witness_of(const Decomposition& d) {
  Witness w;
  if (auto* a = std::get_if<Answer>(&d)) {
    w.answer = true;
    w.value = path_of(a->a);
    return w;
  }
  const auto& r = std::get<Redex>(d);
  w.root = path_of(r.outer);
  w.app = join(w.root, {}, path_of(r.a_hat));
  w.lam = join(w.app, {Dir::fun}, path_of(r.a1));
  w.var = join(w.lam, {Dir::body}, join(path_of(r.a_check), {}, path_of(r.demand)));
  w.value = join(w.app, {Dir::arg}, path_of(r.a2));
  return w;
}

}  // namespace needlab::oracle
