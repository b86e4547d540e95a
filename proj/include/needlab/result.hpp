#pragma once

#include <cstddef>
#include <string>

namespace needlab {

/// Evaluators give up (as a timeout) once a term outgrows this many nodes.
inline constexpr std::size_t default_size_cap = 10000;

enum class Verdict { done, timeout };

inline std::string to_string(Verdict v) { return v == Verdict::done ? "done" : "timeout"; }

/// Outcome of running an evaluator under a step budget. On timeout `term`
/// is the last term reached; `capped` says the size cap, not the fuel, ran out.
template <class T>
struct EvalResult {
  Verdict verdict = Verdict::timeout;
  T term;
  std::size_t steps = 0;
  bool capped = false;

  bool done() const { return verdict == Verdict::done; }
};

}  // namespace needlab
