#pragma once

#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "needlab/context.hpp"
#include "needlab/result.hpp"
#include "needlab/term.hpp"

namespace needlab {

/// No transition applies to a state that is not final.
struct IllFormedState : std::logic_error {
  using std::logic_error::logic_error;
};

struct CKState {
  Term control;
  Frames frames;
};

struct CKStep {
  std::string rule;
  CKState state;
};

inline CKState inject_ck(const Term& t) {
  require_closed(t);
  return CKState{t, {}};
}

/// φ: plugs the control into the context the frames denote.
inline Term build(const CKState& s) { return plug(s.frames, s.control); }

inline Term buildF(const Frames& fs) { return context_term(fs); }

/// Nodes in the control plus every term the frames hold, one per frame.
inline std::size_t state_size(const Frames& fs) {
  std::size_t n = 0;
  for (const auto& f : fs) {
    ++n;
    if (f.kind == FrameKind::arg) n += f.e.size();
    if (f.kind == FrameKind::bod) n += state_size(*f.body) + state_size(*f.between);
  }
  return n;
}

inline std::size_t state_size(const CKState& s) { return s.control.size() + state_size(s.frames); }

inline std::string print_frames(const Frames& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    const Frame& f = fs[i];
    switch (f.kind) {
      case FrameKind::arg:
        out += "arg " + print(f.e);
        break;
      case FrameKind::lam:
        out += "lam " + f.x.str();
        break;
      case FrameKind::bod:
        out += "bod " + f.x.str() + " (" + print_frames(*f.body) + ") (" + print_frames(*f.between) + ")";
        break;
    }
  }
  return out;
}

inline std::string print(const CKState& s) { return "<" + print(s.control) + " | " + print_frames(s.frames) + ">"; }

inline bool is_final(const CKState& s) { return s.control.is_lam() && is_answer_frames(s.frames); }

/// Substitution through every term a frame list holds. Binders in the
/// frames are assumed distinct from x and from fv(v), as in hygienic states.
inline Frames subst_frames(const Frames& fs, const Name& x, const Term& v, NameSupply& supply) {
  Frames out;
  out.reserve(fs.size());
  for (const auto& f : fs) {
    switch (f.kind) {
      case FrameKind::arg:
        out.push_back(Frame::arg(subst_hygienic(f.e, x, v, supply)));
        break;
      case FrameKind::lam:
        out.push_back(f);
        break;
      case FrameKind::bod:
        out.push_back(Frame::bod(f.x, subst_frames(*f.body, x, v, supply),
                                 subst_frames(*f.between, x, v, supply)));
        break;
    }
  }
  return out;
}

namespace detail {

// Index of the arg frame closing the lam at `li`, scanning outward with no
// bod frame in between.
inline std::optional<std::size_t> matching_arg(const Frames& fs, std::size_t li) {
  long depth = 0;
  for (std::size_t m = li + 1; m < fs.size(); ++m) {
    switch (fs[m].kind) {
      case FrameKind::bod:
        return std::nullopt;
      case FrameKind::lam:
        ++depth;
        break;
      case FrameKind::arg:
        if (depth == 0) return m;
        --depth;
        break;
    }
  }
  return std::nullopt;
}

// The lookupvar side conditions for binder frame `li`, checked literally.
inline bool literal_lookup_conditions(const Frames& fs, std::size_t li, std::size_t m) {
  Frames fs1 = slice(fs, 0, li), fs2 = slice(fs, li + 1, m), rest = slice(fs, m + 1, fs.size());
  if (!classify_frames(fs1).check_e || !classify_frames(fs2).a || !classify_frames(rest).e_hat) return false;
  Frames check = slice(fs1, check_split(fs1), fs1.size());
  long k = scan(check, 0, check.size()).open_lams;
  std::size_t h;
  try {
    h = hat_prefix(rest, k);
  } catch (const std::logic_error&) {
    return false;
  }
  Frames hat = slice(rest, 0, h);
  return classify_frames(check).a_check && classify_frames(hat).a_hat && classify_frames(concat(check, hat)).a;
}

// The literal conditions, or else the whole-list reading that decompose
// uses: the frames after the lookup must form an evaluation context in
// which lams left open in a body are closed further out.
inline bool lookup_conditions(const Frames& fs, std::size_t li, std::size_t m) {
  if (literal_lookup_conditions(fs, li, m)) return true;
  if (!classify_frames(slice(fs, li + 1, m)).a) return false;
  Frames after;
  after.push_back(Frame::bod(fs[li].x, slice(fs, 0, li), slice(fs, li + 1, m)));
  after.insert(after.end(), fs.begin() + static_cast<std::ptrdiff_t>(m + 1), fs.end());
  return carried_lams(after, false).has_value();
}

}  // namespace detail

/// One CK transition; nullopt on final states.
inline std::optional<CKStep> step_ck(const CKState& s, NameSupply& supply) {
  const Term& c = s.control;
  if (c.is_app()) {
    Frames fs;
    fs.reserve(s.frames.size() + 1);
    fs.push_back(Frame::arg(c.arg()));
    fs.insert(fs.end(), s.frames.begin(), s.frames.end());
    return CKStep{"pusharg", CKState{c.fun(), std::move(fs)}};
  }
  if (c.is_lam()) {
    if (balance(s.frames) > 0) {
      Frames fs;
      fs.reserve(s.frames.size() + 1);
      fs.push_back(Frame::lam(c.name()));
      fs.insert(fs.end(), s.frames.begin(), s.frames.end());
      return CKStep{"descend-lam", CKState{c.body(), std::move(fs)}};
    }
    std::size_t j = 0;
    while (j < s.frames.size() && s.frames[j].kind != FrameKind::bod) ++j;
    Frames fs3 = slice(s.frames, 0, j);
    if (!classify_frames(fs3).a) throw IllFormedState("value under a non-answer context");
    if (j == s.frames.size()) return std::nullopt;
    const Frame& b = s.frames[j];
    Frames fs = subst_frames(*b.body, b.x, c, supply);
    fs.insert(fs.end(), fs3.begin(), fs3.end());
    fs.insert(fs.end(), b.between->begin(), b.between->end());
    fs.insert(fs.end(), s.frames.begin() + static_cast<std::ptrdiff_t>(j + 1), s.frames.end());
    return CKStep{"beta-need-ck", CKState{c, std::move(fs)}};
  }
  if (c.is_var()) {
    std::optional<std::pair<std::size_t, std::size_t>> chosen;
    for (std::size_t i = 0; i < s.frames.size(); ++i) {
      if (s.frames[i].kind != FrameKind::lam || s.frames[i].x != c.name()) continue;
      auto m = detail::matching_arg(s.frames, i);
      if (!m || !detail::lookup_conditions(s.frames, i, *m)) continue;
      if (chosen) throw IllFormedState("two frame splits satisfy lookupvar");
      chosen.emplace(i, *m);
    }
    if (!chosen) throw IllFormedState("no binder frame for " + c.name().str());
    auto [li, m] = *chosen;
    Frames fs;
    fs.push_back(Frame::bod(c.name(), slice(s.frames, 0, li), slice(s.frames, li + 1, m)));
    fs.insert(fs.end(), s.frames.begin() + static_cast<std::ptrdiff_t>(m + 1), s.frames.end());
    return CKStep{"lookupvar", CKState{s.frames[m].e, std::move(fs)}};
  }
  throw IllFormedState("label in control");
}

inline EvalResult<Term> eval_ck(const Term& t, std::size_t fuel, std::size_t size_cap = default_size_cap) {
  auto supply = supply_for(t);
  CKState s = inject_ck(hygienize(t, supply));
  EvalResult<Term> r;
  for (;;) {
    auto n = step_ck(s, supply);
    if (!n) {
      r.verdict = Verdict::done;
      break;
    }
    if (r.steps == fuel) break;
    s = std::move(n->state);
    ++r.steps;
    if (n->rule == "beta-need-ck" && state_size(s) > size_cap) {
      r.capped = true;
      break;
    }
  }
  r.term = build(s);
  return r;
}

// ---------------------------------------------------------------------------
// ψ: CK states to λstep terms

namespace detail {

struct PsiFrame {
  FrameKind kind;
  Name x;
  LabeledTerm e;
  const Frame* bod = nullptr;
};

inline PsiFrame psi_frame(const Frame& f) {
  return PsiFrame{f.kind, f.x, f.kind == FrameKind::arg ? inject(f.e) : LabeledTerm{}, &f};
}

}  // namespace detail

/// ψ. Each binder/argument pair becomes a substitution of a freshly labeled
/// argument; labels come from `supply`.
inline LabeledTerm buildtostep(const CKState& s, NameSupply& supply) {
  std::deque<detail::PsiFrame> fs;
  for (const auto& f : s.frames) fs.push_back(detail::psi_frame(f));
  LabeledTerm e = inject(s.control);
  while (!fs.empty()) {
    detail::PsiFrame head = fs.front();
    fs.pop_front();
    switch (head.kind) {
      case FrameKind::arg:
        e = LabeledTerm::app(e, head.e);
        break;
      case FrameKind::bod: {
        const Frame& b = *head.bod;
        std::vector<detail::PsiFrame> pre;
        for (const auto& f : *b.body) pre.push_back(detail::psi_frame(f));
        pre.push_back(detail::PsiFrame{FrameKind::lam, b.x, LabeledTerm{}, nullptr});
        for (const auto& f : *b.between) pre.push_back(detail::psi_frame(f));
        pre.push_back(detail::PsiFrame{FrameKind::arg, Name{}, e, nullptr});
        fs.insert(fs.begin(), pre.begin(), pre.end());
        e = LabeledTerm::var(b.x);
        break;
      }
      case FrameKind::lam: {
        long depth = 0;
        std::size_t m = 0;
        for (; m < fs.size(); ++m) {
          if (fs[m].kind == FrameKind::bod) throw IllFormedState("binder frame without argument");
          if (fs[m].kind == FrameKind::lam) {
            ++depth;
          } else if (depth == 0) {
            break;
          } else {
            --depth;
          }
        }
        if (m == fs.size()) throw IllFormedState("binder frame without argument");
        LabeledTerm arg = fs[m].e;
        fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(m));
        e = subst(e, head.x, LabeledTerm::label(supply.fresh(head.x), arg), supply);
        break;
      }
    }
  }
  return e;
}

inline LabeledTerm buildtostep(const CKState& s) {
  auto supply = supply_for(build(s));
  return buildtostep(s, supply);
}

}  // namespace needlab
