#pragma once

// Traces, differential runs, simulation checks and exhaustive audits.

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "needlab/af.hpp"
#include "needlab/ck.hpp"
#include "needlab/ckh.hpp"
#include "needlab/generate.hpp"
#include "needlab/lstep.hpp"
#include "needlab/need.hpp"
#include "needlab/oracle.hpp"
#include "needlab/syntax.hpp"

namespace needlab {

using json = nlohmann::json;

inline const std::vector<std::string>& machine_names() {
  static const std::vector<std::string> names = {"need-sr", "af", "af-mod", "name", "ck", "ckh", "lstep"};
  return names;
}

inline void require_machine(const std::string& m) {
  const auto& ms = machine_names();
  if (std::find(ms.begin(), ms.end(), m) == ms.end()) throw std::invalid_argument("unknown machine: " + m);
}

// ---------------------------------------------------------------------------
// Traces

struct TraceStep {
  std::string rule;
  std::string term;
  std::optional<std::string> mapped;
};

struct Trace {
  std::string machine;
  std::size_t fuel = 0;
  std::string initial;
  std::vector<TraceStep> steps;
  Verdict verdict = Verdict::timeout;
  bool capped = false;
  std::optional<std::string> answer;
};

inline json to_json(const Trace& t) {
  json steps = json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"rule", s.rule}, {"term", s.term}, {"mapped", s.mapped ? json(*s.mapped) : json(nullptr)}});
  return {{"machine", t.machine},
          {"fuel", t.fuel},
          {"verdict", to_string(t.verdict)},
          {"steps", std::move(steps)},
          {"answer", t.answer ? json(*t.answer) : json(nullptr)}};
}

inline std::string render(const Trace& t) {
  std::string out = "    " + t.initial + "\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    out += std::to_string(i + 1) + " " + s.rule + "\n    " + s.term + "\n";
    if (s.mapped) out += "    => " + *s.mapped + "\n";
  }
  out += to_string(t.verdict);
  if (t.capped) out += " (size cap)";
  if (t.answer) out += ": " + *t.answer;
  return out + "\n";
}

namespace detail {

// A machine as a stepper: step() advances and describes the transition,
// returning nullopt at a final state.
struct Stepper {
  std::function<std::optional<TraceStep>()> step;
  std::function<std::size_t()> size;
  std::function<std::string()> answer;
  std::string initial;
};

template <class F>
Stepper term_stepper(Term start, F next) {
  auto state = std::make_shared<Term>(std::move(start));
  auto supply = std::make_shared<NameSupply>(supply_for(*state));
  Stepper s;
  s.initial = print(*state);
  s.step = [=]() -> std::optional<TraceStep> {
    auto n = next(*state, *supply);
    if (!n) return std::nullopt;
    *state = std::move(n->second);
    return TraceStep{n->first, print(*state), std::nullopt};
  };
  s.size = [=] { return state->size(); };
  s.answer = [=] { return print(*state); };
  return s;
}

inline Stepper make_stepper(const Term& t, const std::string& machine) {
  require_machine(machine);
  require_closed(t);
  using Next = std::optional<std::pair<std::string, Term>>;
  auto supply0 = supply_for(t);
  Term h = hygienize(t, supply0);
  if (machine == "need-sr") {
    return term_stepper(h, [](const Term& u, NameSupply& s) -> Next {
      auto w = walk(u);
      auto* r = std::get_if<Redex>(&w);
      if (!r) return std::nullopt;
      return std::pair{std::string("beta-need"), contract(*r, s)};
    });
  }
  if (machine == "af" || machine == "af-mod") {
    AfMode mode = machine == "af" ? AfMode::af : AfMode::mod;
    return term_stepper(h, [mode](const Term& u, NameSupply& s) -> Next {
      auto r = af_step_unchecked(u, mode, s);
      if (!r) return std::nullopt;
      return std::pair{r->rule, r->term};
    });
  }
  if (machine == "name") {
    return term_stepper(h, [](const Term& u, NameSupply& s) -> Next {
      auto r = step_name(u, s);
      if (!r) return std::nullopt;
      return std::pair{std::string("beta-name"), *r};
    });
  }
  if (machine == "lstep") {
    auto state = std::make_shared<LabeledTerm>(inject(h));
    auto supply = std::make_shared<NameSupply>(supply_for(h));
    Stepper s;
    s.initial = print(*state);
    s.step = [=]() -> std::optional<TraceStep> {
      auto n = step_lstep_unchecked(*state, *supply);
      if (!n) return std::nullopt;
      *state = std::move(*n);
      return TraceStep{"beta-step", print(*state), std::nullopt};
    };
    s.size = [=] { return state->size(); };
    s.answer = [=] { return print(*state); };
    return s;
  }
  if (machine == "ck") {
    auto state = std::make_shared<CKState>(inject_ck(h));
    auto supply = std::make_shared<NameSupply>(supply_for(h));
    Stepper s;
    s.initial = print(*state);
    s.step = [=]() -> std::optional<TraceStep> {
      auto n = step_ck(*state, *supply);
      if (!n) return std::nullopt;
      *state = std::move(n->state);
      return TraceStep{n->rule, print(*state), print(build(*state))};
    };
    s.size = [=] { return state_size(*state); };
    s.answer = [=] { return print(build(*state)); };
    return s;
  }
  auto state = std::make_shared<CKHState>(inject_ckh(h));
  auto supply = std::make_shared<NameSupply>(supply_for(h));
  Stepper s;
  s.initial = print(*state);
  s.step = [=]() -> std::optional<TraceStep> {
    auto n = step_ckh(*state, *supply);
    if (!n) return std::nullopt;
    *state = std::move(n->state);
    return TraceStep{n->rule, print(*state), print(buildL(*state))};
  };
  s.size = [=] { return state_size(*state); };
  s.answer = [=] { return print(buildL(*state)); };
  return s;
}

}  // namespace detail

/// Full trace of one machine on a closed term. Throws OpenTermError and
/// std::invalid_argument for an unknown machine.
inline Trace run_eval(const Term& t, const std::string& machine, std::size_t fuel,
                      std::size_t size_cap = default_size_cap) {
  auto m = detail::make_stepper(t, machine);
  Trace tr;
  tr.machine = machine;
  tr.fuel = fuel;
  tr.initial = m.initial;
  for (;;) {
    if (tr.steps.size() == fuel) {
      // Done iff there is no further transition.
      if (!m.step()) tr.verdict = Verdict::done;
      break;
    }
    auto s = m.step();
    if (!s) {
      tr.verdict = Verdict::done;
      break;
    }
    tr.steps.push_back(std::move(*s));
    if (m.size() > size_cap) {
      tr.capped = true;
      break;
    }
  }
  if (tr.verdict == Verdict::done) tr.answer = m.answer();
  return tr;
}


// ---------------------------------------------------------------------------
// Parallel map with index-ordered results

template <class F>
void parallel_for(std::size_t n, F f, unsigned workers = 0) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// Differential testing

/// One evaluator's outcome: verdict plus the answer's value with every
/// binding substituted in and labels erased.
struct Outcome {
  Verdict verdict = Verdict::timeout;
  bool capped = false;
  std::size_t steps = 0;
  std::optional<Term> value;
  std::optional<Term> whole;  // need-sr and ck: the answer itself
};

inline Outcome run_machine(const Term& t, const std::string& machine, std::size_t fuel,
                           std::size_t size_cap = default_size_cap) {
  require_machine(machine);
  Outcome o;
  auto fill = [&](const auto& r) {
    o.verdict = r.verdict;
    o.capped = r.capped;
    o.steps = r.steps;
  };
  if (machine == "need-sr" || machine == "af" || machine == "af-mod" || machine == "ck") {
    EvalResult<Term> r = machine == "need-sr" ? eval_sr(t, fuel, size_cap)
                         : machine == "af"    ? eval_af(t, fuel, size_cap)
                         : machine == "ck"    ? eval_ck(t, fuel, size_cap)
                                              : eval_afmod(t, fuel, false, size_cap);
    fill(r);
    if (r.done()) {
      o.whole = r.term;
      o.value = readback(r.term);
    }
  } else if (machine == "name") {
    auto r = eval_name(t, fuel, size_cap);
    fill(r);
    if (r.done()) o.value = r.term;
  } else {
    auto r = machine == "ckh" ? eval_ckh(t, fuel, size_cap) : eval_lstep(t, fuel, size_cap);
    fill(r);
    if (r.done()) o.value = erase(r.term);
  }
  return o;
}

struct DiffIssue {
  std::size_t index;
  std::string term;
  std::string machine;
  std::string kind;
  std::string detail;
};

struct DiffRow {
  std::string term;
  std::vector<Outcome> outcomes;  // machine_names() order, after any rerun
};

struct DiffReport {
  std::uint64_t seed = 0;
  std::size_t count = 0, max_size = 0, fuel = 0;
  std::vector<DiffRow> rows;
  std::vector<DiffIssue> mismatches;
  std::vector<DiffIssue> inconclusive;
  std::size_t reruns = 0;
  std::size_t name_values_checked = 0, name_values_unchecked = 0;

  bool ok() const { return mismatches.empty(); }
};

/// Fuel and size bound for comparing by-name values by normal form.
inline constexpr std::size_t name_normalize_fuel = 2000;

namespace detail {

struct RowResult {
  DiffRow row;
  std::vector<DiffIssue> mismatches, inconclusive;
  std::size_t reruns = 0;
  int name_value = -1;  // 1 checked, 0 unchecked, -1 not applicable
};

inline RowResult diff_one(std::size_t index, const Term& t, std::size_t fuel) {
  const auto& ms = machine_names();
  RowResult out;
  out.row.term = print(t);
  for (const auto& m : ms) out.row.outcomes.push_back(run_machine(t, m, fuel));
  auto& os = out.row.outcomes;
  auto issue = [&](std::vector<DiffIssue>& to, const std::string& m, std::string kind, std::string detail) {
    to.push_back({index, out.row.term, m, std::move(kind), std::move(detail)});
  };

  bool any_done = false, any_timeout = false;
  for (const auto& o : os) (o.verdict == Verdict::done ? any_done : any_timeout) = true;
  if (any_done && any_timeout) {
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (os[i].verdict == Verdict::done) continue;
      ++out.reruns;
      os[i] = run_machine(t, ms[i], fuel * 10);
      if (os[i].verdict == Verdict::timeout)
        issue(out.inconclusive, ms[i], os[i].capped ? "timeout-capped" : "timeout",
              "still running at 10x fuel while another evaluator finished");
    }
  }
  if (!out.inconclusive.empty()) return out;

  const Outcome& ref = os[0];
  if (ref.verdict == Verdict::timeout) return out;
  for (std::size_t i = 1; i < ms.size(); ++i) {
    if (ms[i] == "name") continue;
    if (!alpha_eq(*os[i].value, *ref.value))
      issue(out.mismatches, ms[i], "value", print(*os[i].value) + " vs need-sr " + print(*ref.value));
  }
  const Outcome& ck = os[4];
  if (!alpha_eq(*ck.whole, *ref.whole))
    issue(out.mismatches, "ck", "answer", print(*ck.whole) + " vs need-sr " + print(*ref.whole));

  // By-name leaves unevaluated copies where sharing evaluated them, so its
  // value is compared by normal form when both normalize within bounds.
  auto a = normalize(*os[3].value, name_normalize_fuel);
  auto b = normalize(*ref.value, name_normalize_fuel);
  if (a.done() && b.done()) {
    out.name_value = 1;
    if (!alpha_eq(a.term, b.term))
      issue(out.mismatches, "name", "normal-form", print(a.term) + " vs need-sr " + print(b.term));
  } else {
    out.name_value = 0;
  }
  return out;
}

}  // namespace detail

inline std::vector<Term> corpus(std::uint64_t seed, std::size_t count, std::size_t max_size) {
  std::vector<Term> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen_closed(seed + i, max_size));
  return out;
}

/// Runs all seven evaluators on gen_closed(seed + i, max_size), i < count.
/// Verdicts must agree; a Done/Timeout split reruns the timed-out side with
/// ten times the fuel and is inconclusive if it still runs. Done values are
/// compared up to alpha against need-sr (by-name by normal form), and ck's
/// whole answer against need-sr's.
inline DiffReport run_diff(std::uint64_t seed, std::size_t count, std::size_t max_size, std::size_t fuel,
                           unsigned workers = 0) {
  if (count == 0) throw std::invalid_argument("count must be positive");
  auto terms = corpus(seed, count, max_size);
  std::vector<detail::RowResult> results(count);
  parallel_for(count, [&](std::size_t i) { results[i] = detail::diff_one(i, terms[i], fuel); }, workers);
  DiffReport r;
  r.seed = seed;
  r.count = count;
  r.max_size = max_size;
  r.fuel = fuel;
  for (auto& x : results) {
    r.rows.push_back(std::move(x.row));
    r.mismatches.insert(r.mismatches.end(), x.mismatches.begin(), x.mismatches.end());
    r.inconclusive.insert(r.inconclusive.end(), x.inconclusive.begin(), x.inconclusive.end());
    r.reruns += x.reruns;
    if (x.name_value == 1) ++r.name_values_checked;
    if (x.name_value == 0) ++r.name_values_unchecked;
  }
  return r;
}

inline json to_json(const DiffIssue& d) {
  return {{"index", d.index}, {"term", d.term}, {"machine", d.machine}, {"kind", d.kind}, {"detail", d.detail}};
}

inline json to_json(const DiffReport& r) {
  json rows = json::array();
  const auto& ms = machine_names();
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    json verdicts = json::object();
    for (std::size_t m = 0; m < ms.size(); ++m) {
      const auto& o = r.rows[i].outcomes[m];
      verdicts[ms[m]] = {{"verdict", to_string(o.verdict)}, {"steps", o.steps}, {"capped", o.capped}};
    }
    rows.push_back({{"index", i}, {"term", r.rows[i].term}, {"results", std::move(verdicts)}});
  }
  json mm = json::array(), inc = json::array();
  for (const auto& d : r.mismatches) mm.push_back(to_json(d));
  for (const auto& d : r.inconclusive) inc.push_back(to_json(d));
  return {{"corpus", {{"seed", r.seed}, {"count", r.count}, {"max_size", r.max_size}, {"fuel", r.fuel}}},
          {"rows", std::move(rows)},
          {"mismatches", std::move(mm)},
          {"inconclusive", std::move(inc)},
          {"reruns", r.reruns},
          {"name_values", {{"checked", r.name_values_checked}, {"unchecked", r.name_values_unchecked}}}};
}

// ---------------------------------------------------------------------------
// Simulation checks

enum class SimPair { ckh_lstep, ck_need, ck_lstep };

inline std::string to_string(SimPair p) {
  switch (p) {
    case SimPair::ckh_lstep:
      return "ckh-lstep";
    case SimPair::ck_need:
      return "ck-need";
    case SimPair::ck_lstep:
      return "ck-lstep";
  }
  return "?";
}

/// Accepts "ckh-lstep", "ckh->lstep" and the like.
inline SimPair parse_pair(std::string s) {
  for (auto pos = s.find("->"); pos != std::string::npos; pos = s.find("->")) s.replace(pos, 2, "-");
  if (s == "ckh-lstep") return SimPair::ckh_lstep;
  if (s == "ck-need") return SimPair::ck_need;
  if (s == "ck-lstep") return SimPair::ck_lstep;
  throw std::invalid_argument("unknown simulation pair: " + s);
}

struct SimViolation {
  std::size_t transition;  // 1-based
  std::string rule;
  std::string before, after;
  std::string reason;
};

struct SimReport {
  SimPair pair{};
  std::size_t transitions = 0, noops = 0, steps = 0;
  bool finished = false;   // the machine reached a final state
  bool truncated = false;  // stopped by the size cap
  std::optional<SimViolation> violation;

  bool ok() const { return !violation; }
};

inline json to_json(const SimReport& r) {
  json j = {{"pair", to_string(r.pair)}, {"transitions", r.transitions}, {"noops", r.noops},
            {"steps", r.steps},          {"finished", r.finished},       {"truncated", r.truncated},
            {"ok", r.ok()}};
  if (r.violation) {
    const auto& v = *r.violation;
    j["violation"] = {{"transition", v.transition}, {"rule", v.rule}, {"before", v.before},
                      {"after", v.after}, {"reason", v.reason}};
  }
  return j;
}

namespace detail {

// Maps each transition's endpoints into the target semantics. `stepping` is
// the one rule whose image must be a target step; all others must be no-ops.
template <class State, class Step, class Map, class Same, class TargetStep>
SimReport simulate(SimPair pair, State s, std::size_t fuel, std::size_t size_cap, const std::string& stepping,
                   Step step, Map map, Same same, TargetStep target_step) {
  SimReport r;
  r.pair = pair;
  auto before = map(s);
  for (; r.transitions < fuel; ++r.transitions) {
    auto n = step(s);
    if (!n) {
      r.finished = true;
      break;
    }
    s = std::move(n->state);
    auto after = map(s);
    bool ok;
    if (n->rule == stepping) {
      auto t = target_step(before);
      ok = t && same(*t, after);
      r.steps += ok;
    } else {
      ok = same(before, after);
      r.noops += ok;
    }
    if (!ok) {
      r.violation = SimViolation{r.transitions + 1, n->rule, print(before), print(after),
                                 n->rule == stepping ? "not one target step" : "images differ"};
      ++r.transitions;
      return r;
    }
    before = std::move(after);
    if (before.size() > size_cap) {
      r.truncated = true;
      ++r.transitions;
      return r;
    }
  }
  return r;
}

}  // namespace detail

/// Checks that every transition of the source machine maps to no change or
/// exactly one step of the target, with one designated rule responsible for
/// all steps: beta-need-ck (ck-need, via build), descend-lam (ck-lstep via
/// ψ, ckh-lstep via buildL). λstep images are compared modulo label
/// renaming and labels on values.
inline SimReport check_simulation(const Term& t, SimPair pair, std::size_t fuel,
                                  std::size_t size_cap = default_size_cap) {
  require_closed(t);
  auto supply = supply_for(t);
  Term h = hygienize(t, supply);
  auto lsame = [](const LabeledTerm& a, const LabeledTerm& b) {
    return label_alpha_eq(a, b, LabelMode::renamable_values);
  };
  auto lstep = [](const LabeledTerm& a) { return step_lstep(a); };
  switch (pair) {
    case SimPair::ck_need:
      return detail::simulate(
          pair, inject_ck(h), fuel, size_cap, "beta-need-ck", [&](const CKState& s) { return step_ck(s, supply); },
          [](const CKState& s) { return build(s); }, [](const Term& a, const Term& b) { return alpha_eq(a, b); },
          [](const Term& a) { return step_sr(a); });
    case SimPair::ck_lstep:
      return detail::simulate(
          pair, inject_ck(h), fuel, size_cap, "descend-lam", [&](const CKState& s) { return step_ck(s, supply); },
          [](const CKState& s) { return buildtostep(s); }, lsame, lstep);
    case SimPair::ckh_lstep:
      return detail::simulate(
          pair, inject_ckh(h), fuel, size_cap, "descend-lam", [&](const CKHState& s) { return step_ckh(s, supply); },
          [](const CKHState& s) { return buildL(s); }, lsame, lstep);
  }
  throw std::invalid_argument("unknown simulation pair");
}

struct SimCorpusReport {
  SimPair pair{};
  std::size_t terms = 0, transitions = 0, noops = 0, steps = 0, truncated = 0;
  std::vector<std::pair<std::size_t, SimReport>> violations;  // by corpus index

  bool ok() const { return violations.empty(); }
};

inline SimCorpusReport check_simulation_corpus(std::uint64_t seed, std::size_t count, std::size_t max_size,
                                               std::size_t fuel, SimPair pair, unsigned workers = 0) {
  auto terms = corpus(seed, count, max_size);
  std::vector<SimReport> rs(count);
  parallel_for(count, [&](std::size_t i) { rs[i] = check_simulation(terms[i], pair, fuel); }, workers);
  SimCorpusReport out;
  out.pair = pair;
  out.terms = count;
  for (std::size_t i = 0; i < count; ++i) {
    out.transitions += rs[i].transitions;
    out.noops += rs[i].noops;
    out.steps += rs[i].steps;
    out.truncated += rs[i].truncated;
    if (!rs[i].ok()) out.violations.emplace_back(i, rs[i]);
  }
  return out;
}

inline json to_json(const SimCorpusReport& r) {
  json v = json::array();
  for (const auto& [i, rep] : r.violations) v.push_back({{"index", i}, {"report", to_json(rep)}});
  return {{"pair", to_string(r.pair)}, {"terms", r.terms},         {"transitions", r.transitions},
          {"noops", r.noops},          {"steps", r.steps},         {"truncated", r.truncated},
          {"violations", std::move(v)}};
}

// ---------------------------------------------------------------------------
// Consistent labeling along λstep traces

struct ClReport {
  std::size_t terms = 0, transitions = 0;
  std::vector<std::pair<std::size_t, std::string>> violations;  // index, offending term

  bool ok() const { return violations.empty(); }
};

inline ClReport check_cl_corpus(std::uint64_t seed, std::size_t count, std::size_t max_size, std::size_t fuel,
                                unsigned workers = 0) {
  auto terms = corpus(seed, count, max_size);
  std::vector<std::size_t> transitions(count);
  std::vector<std::optional<std::string>> bad(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        LabeledTerm t = inject(terms[i]);
        auto supply = supply_for(t);
        for (std::size_t k = 0; k < fuel; ++k) {
          auto n = step_lstep_unchecked(t, supply);
          if (!n) break;
          ++transitions[i];
          t = std::move(*n);
          if (!is_cl(t)) {
            bad[i] = print(t);
            break;
          }
          if (t.size() > default_size_cap) break;
        }
      },
      workers);
  ClReport r;
  r.terms = count;
  for (std::size_t i = 0; i < count; ++i) {
    r.transitions += transitions[i];
    if (bad[i]) r.violations.emplace_back(i, *bad[i]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive audits

struct UdReport {
  std::size_t max_size = 0, terms = 0, answers = 0, redexes = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// For every closed term up to `max_size` nodes, the grammar oracle must
/// find exactly one decomposition, the one decompose returns.
inline UdReport check_unique_decomposition(std::size_t max_size) {
  UdReport r;
  r.max_size = max_size;
  for_each_closed(max_size, [&](const Term& t) {
    ++r.terms;
    auto d = decompose(t);
    (std::holds_alternative<Answer>(d) ? r.answers : r.redexes)++;
    auto ws = oracle::all_decompositions(t);
    if (ws.size() != 1 || !(ws[0] == oracle::witness_of(d)))
      r.failures.push_back(print(t) + " (" + std::to_string(ws.size()) + " grammar decompositions)");
  });
  return r;
}

inline json to_json(const UdReport& r) {
  return {{"max_size", r.max_size}, {"terms", r.terms},       {"answers", r.answers},
          {"redexes", r.redexes},   {"failures", r.failures}, {"ok", r.ok()}};
}

struct CrReport {
  std::size_t max_size = 0, depth = 0, terms = 0, multi_redex_terms = 0, pairs = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// For every closed term up to `max_size` nodes, every pair of one-step
/// reducts (compatible closure) must have a common reduct within `depth`
/// further steps on each side.
inline CrReport check_confluence(std::size_t max_size, std::size_t depth, unsigned workers = 0) {
  auto terms = enumerate_closed(max_size);
  std::vector<std::size_t> pairs(terms.size());
  std::vector<std::optional<std::string>> bad(terms.size());
  parallel_for(
      terms.size(),
      [&](std::size_t i) {
        auto rs = compatible_reducts(terms[i]);
        if (rs.size() < 2) return;
        ReductCache cache;
        for (std::size_t a = 0; a < rs.size(); ++a)
          for (std::size_t b = a + 1; b < rs.size(); ++b) {
            ++pairs[i];
            if (!bad[i] && !joinable(rs[a], rs[b], depth, cache))
              bad[i] = print(terms[i]) + ": " + print(rs[a]) + " / " + print(rs[b]);
          }
      },
      workers);
  CrReport r;
  r.max_size = max_size;
  r.depth = depth;
  r.terms = terms.size();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    r.pairs += pairs[i];
    r.multi_redex_terms += pairs[i] > 0;
    if (bad[i]) r.failures.push_back(*bad[i]);
  }
  return r;
}

inline json to_json(const CrReport& r) {
  return {{"max_size", r.max_size}, {"depth", r.depth}, {"terms", r.terms}, {"multi_redex_terms", r.multi_redex_terms},
          {"pairs", r.pairs},       {"failures", r.failures}, {"ok", r.ok()}};
}

}  // namespace needlab
