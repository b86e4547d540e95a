#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "needlab/syntax.hpp"
#include "needlab/term.hpp"

namespace needlab {

struct Frame;

/// A one-hole context as a list of frames, innermost first: element 0 is
/// the frame directly around the hole.
using Frames = std::vector<Frame>;

enum class FrameKind : std::uint8_t {
  arg,  // [] e
  lam,  // \x.[]
  bod   // (A[\x.C[x]]) []   with C = body frames, A = between frames
};

struct Frame {
  FrameKind kind;
  Name x;                              // lam and bod
  Term e;                              // arg
  std::shared_ptr<const Frames> body;  // bod: frames around the demanded x
  std::shared_ptr<const Frames> between;  // bod: answer frames around \x

  static Frame arg(Term e) { return Frame{FrameKind::arg, Name{}, std::move(e), nullptr, nullptr}; }
  static Frame lam(Name x) { return Frame{FrameKind::lam, std::move(x), Term{}, nullptr, nullptr}; }
  static Frame bod(Name x, Frames body, Frames between) {
    return Frame{FrameKind::bod, std::move(x), Term{},
                 std::make_shared<const Frames>(std::move(body)),
                 std::make_shared<const Frames>(std::move(between))};
  }
};

/// Fills the hole of `fs` with `t`.
inline Term plug(const Frames& fs, Term t) {
  for (const auto& f : fs) {
    switch (f.kind) {
      case FrameKind::arg:
        t = Term::app(std::move(t), f.e);
        break;
      case FrameKind::lam:
        t = Term::lam(f.x, std::move(t));
        break;
      case FrameKind::bod: {
        auto op = plug(*f.between, Term::lam(f.x, plug(*f.body, Term::var(f.x))));
        t = Term::app(std::move(op), std::move(t));
        break;
      }
    }
  }
  return t;
}

/// The context as a term whose hole is the variable `[]`.
inline Term context_term(const Frames& fs) { return plug(fs, Term::var(hole_name())); }

inline std::string print(const Frames& fs) { return print(context_term(fs)); }

/// Frames of a context term built only from `[] e` and `\x.[]` layers.
inline Frames frames_of(const Term& ctx) {
  Frames outer_first;
  Term t = ctx;
  for (;;) {
    if (t.is_var() && t.name() == hole_name()) break;
    if (t.is_lam()) {
      outer_first.push_back(Frame::lam(t.name()));
      t = t.body();
    } else if (t.is_app() && occurs_free(t.fun(), hole_name())) {
      outer_first.push_back(Frame::arg(t.arg()));
      t = t.fun();
    } else {
      throw std::invalid_argument("not a lam/arg context: " + print(ctx));
    }
  }
  return Frames(outer_first.rbegin(), outer_first.rend());
}

inline Frames concat(const Frames& inner, const Frames& outer) {
  Frames r = inner;
  r.insert(r.end(), outer.begin(), outer.end());
  return r;
}

inline Frames slice(const Frames& fs, std::size_t from, std::size_t to) {
  return Frames(fs.begin() + static_cast<std::ptrdiff_t>(from), fs.begin() + static_cast<std::ptrdiff_t>(to));
}

/// Structural equality of frame lists.
inline bool frames_equal(const Frames& a, const Frames& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].kind != b[i].kind) return false;
    switch (a[i].kind) {
      case FrameKind::arg:
        if (!structurally_equal(a[i].e, b[i].e)) return false;
        break;
      case FrameKind::lam:
        if (a[i].x != b[i].x) return false;
        break;
      case FrameKind::bod:
        if (a[i].x != b[i].x || !frames_equal(*a[i].body, *b[i].body) ||
            !frames_equal(*a[i].between, *b[i].between))
          return false;
        break;
    }
  }
  return true;
}

/// Arg frames minus lam frames before the first bod frame.
inline long balance(const Frames& fs) {
  long b = 0;
  for (const auto& f : fs) {
    if (f.kind == FrameKind::bod) break;
    b += f.kind == FrameKind::arg ? 1 : -1;
  }
  return b;
}

/// Root-to-hole directions.
enum class Dir : std::uint8_t { fun, arg, body };
using Path = std::vector<Dir>;

inline Path path_of(const Frames& fs) {
  Path p;
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    switch (it->kind) {
      case FrameKind::arg:
        p.push_back(Dir::fun);
        break;
      case FrameKind::lam:
        p.push_back(Dir::body);
        break;
      case FrameKind::bod:
        p.push_back(Dir::arg);
        break;
    }
  }
  return p;
}

/// Subterm at `p`.
inline Term subterm_at(Term t, const Path& p) {
  for (Dir d : p) t = d == Dir::fun ? t.fun() : d == Dir::arg ? t.arg() : t.body();
  return t;
}

inline Term replace_at(const Term& t, const Path& p, std::size_t i, const Term& s) {
  if (i == p.size()) return s;
  switch (p[i]) {
    case Dir::fun:
      return Term::app(replace_at(t.fun(), p, i + 1, s), t.arg());
    case Dir::arg:
      return Term::app(t.fun(), replace_at(t.arg(), p, i + 1, s));
    case Dir::body:
      return Term::lam(t.name(), replace_at(t.body(), p, i + 1, s));
  }
  return t;
}

inline Term replace_at(const Term& t, const Path& p, const Term& s) { return replace_at(t, p, 0, s); }

/// Every subterm path, preorder.
inline void all_paths(const Term& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  if (t.is_lam()) {
    cur.push_back(Dir::body);
    all_paths(t.body(), cur, out);
    cur.pop_back();
  } else if (t.is_app()) {
    cur.push_back(Dir::fun);
    all_paths(t.fun(), cur, out);
    cur.back() = Dir::arg;
    all_paths(t.arg(), cur, out);
    cur.pop_back();
  }
}

inline std::vector<Path> all_paths(const Term& t) {
  std::vector<Path> out;
  Path cur;
  all_paths(t, cur, out);
  return out;
}

// ---------------------------------------------------------------------------
// Grammar membership on frame lists.
//
// Read innermost first, a lam frame opens and an arg frame closes. Answer
// contexts are balanced words; partial answer contexts are the pieces left
// when one matching pair is removed.

namespace detail {

struct SegmentScan {
  long excess_args = 0;  // arg frames with no lam to close
  long open_lams = 0;    // lam frames still unclosed at the end
};

inline SegmentScan scan(const Frames& fs, std::size_t from, std::size_t to) {
  SegmentScan s;
  for (std::size_t i = from; i < to; ++i) {
    if (fs[i].kind == FrameKind::lam) {
      ++s.open_lams;
    } else if (s.open_lams > 0) {
      --s.open_lams;
    } else {
      ++s.excess_args;
    }
  }
  return s;
}

inline bool bod_free(const Frames& fs) {
  for (const auto& f : fs)
    if (f.kind == FrameKind::bod) return false;
  return true;
}

inline bool in_check_e(const Frames& fs);

// Segments are the runs between bod frames. Every segment but possibly the
// last must close all its lams; the segment after a bod frame must supply at
// least as many excess args as its body frames leave lams open.
inline bool segments_ok(const Frames& fs, bool last_may_open) {
  std::size_t start = 0;
  long need = 0;
  for (std::size_t i = 0; i <= fs.size(); ++i) {
    bool end = i == fs.size();
    if (!end && fs[i].kind != FrameKind::bod) continue;
    auto s = scan(fs, start, i);
    if (s.excess_args < need) return false;
    if (s.open_lams > 0 && !(end && last_may_open)) return false;
    if (end) break;
    const Frame& b = fs[i];
    if (!bod_free(*b.between) || scan(*b.between, 0, b.between->size()).excess_args != 0 ||
        scan(*b.between, 0, b.between->size()).open_lams != 0)
      return false;
    if (!in_check_e(*b.body)) return false;
    std::size_t last_bod = 0;
    bool any = false;
    for (std::size_t j = 0; j < b.body->size(); ++j)
      if ((*b.body)[j].kind == FrameKind::bod) last_bod = j + 1, any = true;
    need = scan(*b.body, any ? last_bod : 0, b.body->size()).open_lams;
    start = i + 1;
  }
  return true;
}

inline bool in_check_e(const Frames& fs) { return segments_ok(fs, true); }

}  // namespace detail

struct FrameClasses {
  bool a = false;        // A
  bool a_hat = false;    // Â
  bool a_check = false;  // Ǎ
  bool e = false;        // E
  bool check_e = false;  // Ǎ[E]
  bool e_hat = false;    // E[Â]
};

/// Membership of the context denoted by `fs` in each context grammar.
inline FrameClasses classify_frames(const Frames& fs) {
  FrameClasses c;
  if (detail::bod_free(fs)) {
    auto s = detail::scan(fs, 0, fs.size());
    c.a = s.excess_args == 0 && s.open_lams == 0;
    // Ǎ is [] or begins with a lam that is never closed.
    c.a_check = fs.empty() ||
                (fs[0].kind == FrameKind::lam && detail::scan(fs, 1, fs.size()).excess_args == 0);
    c.a_hat = s.open_lams == 0 &&
              (fs.empty() || (fs.back().kind == FrameKind::arg && [&] {
                 auto p = detail::scan(fs, 0, fs.size() - 1);
                 return p.open_lams == 0;
               }()));
  }
  c.e = detail::segments_ok(fs, false);
  c.e_hat = c.e;
  c.check_e = detail::in_check_e(fs);
  return c;
}

inline bool is_answer_frames(const Frames& fs) { return classify_frames(fs).a; }

namespace detail {

// Splits body frames Ǎ[E] into E (inner part) and Ǎ (outer part): Ǎ starts
// at the first lam of the last segment that is never closed.
inline std::size_t check_split(const Frames& body) {
  std::size_t start = 0;
  for (std::size_t j = 0; j < body.size(); ++j)
    if (body[j].kind == FrameKind::bod) start = j + 1;
  std::vector<std::size_t> open;
  for (std::size_t j = start; j < body.size(); ++j) {
    if (body[j].kind == FrameKind::lam)
      open.push_back(j);
    else if (!open.empty())
      open.pop_back();
  }
  return open.empty() ? body.size() : open.front();
}

// Whole-list reading of E and Ǎ[E]: lams left open inside a bod frame's
// body may be closed by arg frames anywhere outward, up to the next bod.
// Returns the lams still open at the outer end, or nullopt if `fs` is
// not a context of that shape.
inline std::optional<long> carried_lams(const Frames& fs, bool allow_open) {
  long pending = 0;
  for (const auto& f : fs) {
    switch (f.kind) {
      case FrameKind::lam:
        ++pending;
        break;
      case FrameKind::arg:
        if (pending > 0) --pending;
        break;
      case FrameKind::bod: {
        if (pending != 0 || !classify_frames(*f.between).a) return std::nullopt;
        auto inner = carried_lams(*f.body, true);
        if (!inner) return std::nullopt;
        pending = *inner;
        break;
      }
    }
  }
  if (!allow_open && pending != 0) return std::nullopt;
  return pending;
}

// Length of the shortest prefix of `fs` with `k` excess arg frames.
inline std::size_t hat_prefix(const Frames& fs, long k) {
  if (k == 0) return 0;
  long open = 0, excess = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].kind == FrameKind::bod) break;
    if (fs[i].kind == FrameKind::lam) {
      ++open;
    } else if (open > 0) {
      --open;
    } else if (++excess == k) {
      return i + 1;
    }
  }
  throw std::logic_error("no partial answer context with enough arguments");
}

}  // namespace detail

}  // namespace needlab
