#pragma once

#include <string>

#include "needlab/syntax.hpp"
#include "needlab/term.hpp"

namespace fixtures {

inline const std::string omega = "((\\w.w w) (\\w.w w))";
inline const std::string t1 = "((\\x.(\\y.\\z.z y x) (\\y.y)) (\\x.x)) (\\z.z)";
inline const std::string t1_line2 = "(\\x.(\\y.(\\z.z) y x) (\\y.y)) (\\x.x)";
inline const std::string t1_line3 = "(\\x.((\\z.z) (\\y.y)) x) (\\x.x)";
inline const std::string t1_line4 = "(\\x.(\\y.y) x) (\\x.x)";
inline const std::string k_omega = "(\\x.\\y.x) " + omega;
// AF1 with distinct identities for vx, vy, vz.
inline const std::string vx = "(\\p.p)", vy = "(\\q.q)", vz = "(\\r.r)";
inline const std::string af1 = "((\\x.(\\y.\\z.z) " + vy + ") " + vx + ") " + vz;

inline needlab::Term T(const std::string& s) { return needlab::parse(s); }

}  // namespace fixtures

#define EXPECT_ALPHA(a, b)                                                          \
  EXPECT_TRUE(needlab::alpha_eq((a), (b))) << "  got: " << needlab::print(a) << "\n" \
                                           << "  want: " << needlab::print(b)
