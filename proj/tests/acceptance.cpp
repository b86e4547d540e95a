// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "needlab/harness.hpp"
#include "needlab/prelude.hpp"

using namespace needlab;

namespace {

const std::string omega = "((\\w.w w) (\\w.w w))";
const std::string ident = "(\\i.i)";

Term P(const std::string& s) { return parse(s); }
Term G(const std::string& s) { return erase(parse_labeled(s)); }

struct Check {
  bool ok = true;
  std::string note;

  void expect(bool c, const std::string& what) {
    if (!c && ok) {
      ok = false;
      note = what;
    }
  }
};

int failures = 0;

void criterion(int n, const char* title, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.note = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %2d %-36s %7.2fs  %s\n", c.ok ? "PASS" : "FAIL", n, title, secs, c.note.c_str());
  std::fflush(stdout);
  failures += !c.ok;
}

}  // namespace

int main() {
  criterion(1, "golden by-need trace", [](Check& c) {
    auto tr = run_eval(P("((\\x.(\\y.\\z.z y x) (\\y.y)) (\\x.x)) (\\z.z)"), "need-sr", 100);
    const char* lines[] = {"(\\x.(\\y.(\\z.z) y x) (\\y.y)) (\\x.x)", "(\\x.((\\z.z) (\\y.y)) x) (\\x.x)",
                           "(\\x.(\\y.y) x) (\\x.x)"};
    c.expect(tr.steps.size() == 5, "expected 5 steps, got " + std::to_string(tr.steps.size()));
    for (std::size_t i = 0; i < 3 && i < tr.steps.size(); ++i)
      c.expect(alpha_eq(G(tr.steps[i].term), P(lines[i])), "line " + std::to_string(i + 2) + ": " + tr.steps[i].term);
    c.expect(tr.verdict == Verdict::done, "not done");
    c.expect(tr.answer && alpha_eq(G(*tr.answer), P("\\x.x")), "wrong value");
    if (c.ok) c.note = "3 steps to line 4, done with \\x.x after 5";
  });

  criterion(2, "answer-context partitions", [](Check& c) {
    auto a4 = frames_of(parse_context("(\\x.(\\y.\\z.[]) ey) ex ez"));
    auto ps = partitions(a4);
    c.expect(ps.size() == 3, "expected 3 partitions, got " + std::to_string(ps.size()));
    const char* want[3][3] = {{"[] ez", "[]", "(\\y.\\z.[]) ey"},
                              {"(\\x.[]) ex ez", "[]", "\\z.[]"},
                              {"[]", "(\\x.(\\y.[]) ey) ex", "[]"}};
    for (std::size_t i = 0; i < 3 && i < ps.size(); ++i) {
      std::string got = print(ps[i].outer) + " | " + print(ps[i].mid) + " | " + print(ps[i].inner);
      c.expect(print(ps[i].outer) == want[i][0] && print(ps[i].mid) == want[i][1] && print(ps[i].inner) == want[i][2],
               "row " + std::to_string(i + 1) + ": " + got);
      c.expect(frames_equal(recompose(ps[i]), a4), "row " + std::to_string(i + 1) + " does not recompose");
    }
  });

  criterion(3, "af re-association", [](Check& c) {
    const std::string vx = "(\\p.p)", vy = "(\\q.q)", vz = "(\\r.r)";
    auto a = step_af(P("((\\x.(\\y.\\z.z) " + vy + ") " + vx + ") " + vz));
    c.expect(a && a->rule == "lift" && alpha_eq(a->term, P("(\\x.((\\y.\\z.z) " + vy + ") " + vz + ") " + vx)),
             "first lift");
    if (!a) return;
    auto b = step_af(a->term);
    c.expect(b && b->rule == "lift" && alpha_eq(b->term, P("(\\x.(\\y.(\\z.z) " + vz + ") " + vy + ") " + vx)),
             "second lift");
    if (!b) return;
    auto d = step_af(b->term);
    c.expect(d && d->rule == "deref" && is_af_answer(d->term), "third step is not a deref to an answer");
  });

  criterion(4, "laziness witnesses", [](Check& c) {
    Term k = P("(\\x.\\y.x) " + omega);
    auto sr = eval_sr(k, 500);
    c.expect(sr.done() && sr.steps == 0, "need-sr on K omega");

    auto supply = supply_for(k);
    CKHState s = inject_ckh(k);
    std::optional<Name> omega_cell;
    std::size_t lookups = 0, steps = 0;
    while (auto n = step_ckh(s, supply)) {
      if (++steps > 500) break;
      if (n->rule == "descend-lam" && !omega_cell) omega_cell = n->state.heap.entries().back().first;
      if (n->rule == "lookupvar" && omega_cell && s.control.is_var() && s.control.name() == *omega_cell) ++lookups;
      s = std::move(n->state);
    }
    c.expect(is_final(s) && omega_cell && lookups == 0, "ckh demanded the omega binding");

    auto pair = eval_sr(expand_prelude(P("cdr (cons " + omega + " " + ident + ")")), 500);
    c.expect(pair.done(), "cdr (cons omega I) did not finish");
    c.expect(!eval_sr(P(omega), 500).done(), "omega finished");
  });

  criterion(5, "labeled golden trace", [](Check& c) {
    const std::string ii = "(" + ident + " " + ident + ")";
    auto tr = run_eval(P("(\\x.x x) " + ii), "lstep", 100);
    c.expect(tr.verdict == Verdict::done && tr.steps.size() == 3,
             "expected 3 steps to done, got " + std::to_string(tr.steps.size()));
    const std::string want[] = {ii + " " + ii, ii, ident};
    for (std::size_t i = 0; i < 3 && i < tr.steps.size(); ++i)
      c.expect(alpha_eq(G(tr.steps[i].term), P(want[i])), "step " + std::to_string(i + 1) + ": " + tr.steps[i].term);
  });

  criterion(6, "unique decomposition, size <= 9", [](Check& c) {
    auto r = check_unique_decomposition(9);
    c.expect(r.ok(), std::to_string(r.failures.size()) + " failures, first " +
                         (r.failures.empty() ? "" : r.failures.front()));
    if (c.ok)
      c.note = std::to_string(r.terms) + " terms (" + std::to_string(r.answers) + " answers, " +
               std::to_string(r.redexes) + " redexes)";
  });

  criterion(7, "bounded confluence", [](Check& c) {
    auto r = check_confluence(8, 10);
    c.expect(r.ok(), std::to_string(r.failures.size()) + " non-joinable at size 8");
    auto wider = check_confluence(12, 10);
    c.expect(wider.ok(), std::to_string(wider.failures.size()) + " non-joinable at size 12");
    if (c.ok)
      c.note = "size 8: " + std::to_string(r.pairs) + " pairs; size 12: " + std::to_string(wider.pairs) +
               " pairs, all joinable";
  });

  criterion(8, "differential suite", [](Check& c) {
    auto r = run_diff(42, 1000, 25, 2000);
    c.expect(r.mismatches.empty(), std::to_string(r.mismatches.size()) + " mismatches, first " +
                                       (r.mismatches.empty() ? "" : to_json(r.mismatches.front()).dump()));
    c.expect(r.inconclusive.empty(), std::to_string(r.inconclusive.size()) + " inconclusive");
    if (c.ok)
      c.note = "0 mismatches; reruns " + std::to_string(r.reruns) + "; by-name values checked " +
               std::to_string(r.name_values_checked) + ", unchecked " + std::to_string(r.name_values_unchecked);
  });

  criterion(9, "per-step simulation", [](Check& c) {
    std::string summary;
    for (auto p : {SimPair::ckh_lstep, SimPair::ck_need, SimPair::ck_lstep}) {
      auto r = check_simulation_corpus(42, 1000, 25, 2000, p);
      c.expect(r.ok(), to_string(p) + ": " + std::to_string(r.violations.size()) + " violations, first term " +
                           (r.violations.empty() ? "" : std::to_string(r.violations.front().first)));
      summary += (summary.empty() ? "" : "; ") + to_string(p) + " " + std::to_string(r.transitions) + " transitions";
    }
    if (c.ok) c.note = summary;
  });

  criterion(10, "consistent labeling", [](Check& c) {
    auto r = check_cl_corpus(42, 1000, 25, 2000);
    c.expect(r.ok(), std::to_string(r.violations.size()) + " violations");
    if (c.ok) c.note = std::to_string(r.transitions) + " transitions checked";
  });

  return failures ? 1 : 0;
}
