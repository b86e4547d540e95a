#pragma once

// Lazy pairs as macros: cons, car and cdr.

#include <string>
#include <utility>
#include <vector>

#include "needlab/syntax.hpp"
#include "needlab/term.hpp"

namespace needlab {

struct PreludeBinding {
  std::string name;
  Term expansion;
};

inline const std::vector<PreludeBinding>& prelude() {
  static const std::vector<PreludeBinding> bindings = {
      {"cons", parse("\\x.\\y.\\s.s x y")},
      {"car", parse("\\p.p (\\x.\\y.x)")},
      {"cdr", parse("\\p.p (\\x.\\y.y)")},
  };
  return bindings;
}

/// Replaces free `cons`, `car` and `cdr` by their closed expansions.
inline Term expand_prelude(const Term& t) {
  auto supply = supply_for(t);
  Term out = t;
  for (const auto& b : prelude())
    if (occurs_free(out, Name{b.name})) out = subst(out, Name{b.name}, b.expansion, supply);
  return out;
}

}  // namespace needlab
