// Acceptance gate: one line per criterion, nonzero exit if any fails.
//
// Each check returns an empty string on success or a short reason on
// failure. Wall-clock limits are enforced too: a correct answer that blows
// its budget still fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "lonely/fast_runner.hpp"
#include "lonely/spectrum.hpp"
#include "lonely/tuples.hpp"
#include "oracles.hpp"

using namespace lonely;

namespace {

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<Speed> as_vector(const SpeedSet& s) { return {s.speeds().begin(), s.speeds().end()}; }

std::string fail(const std::string& what) { return what; }

std::string tight_chain() {
  for (Speed n = 2; n <= 8; ++n) {
    std::vector<Speed> v;
    for (Speed i = 1; i <= n; ++i) v.push_back(i);
    const Rational ml = max_loneliness(SpeedSet(v)).value;
    if (ml != Rational(1, n + 1)) return fail("ML(1..." + std::to_string(n) + ") = " + ml.to_string());
  }
  return {};
}

std::string spectrum_construction() {
  for (std::int64_t n = 2; n <= 6; ++n) {
    for (std::int64_t s = 1; s <= 10; ++s) {
      const Construction c = construction_set(n, s);
      const Rational ml = max_loneliness(c.speeds).value;
      if (c.expected != Rational(s, n * s + 1) || ml != c.expected) {
        return fail("ML(" + c.speeds.to_string() + ") = " + ml.to_string());
      }
    }
  }
  return {};
}

std::string two_runner() {
  for (Speed a = 1; a <= 200; ++a) {
    for (Speed b = a + 1; b <= 200; ++b) {
      if (two_runner_closed_form(a, b) != max_loneliness({a, b}).value) {
        return fail("pair " + std::to_string(a) + "," + std::to_string(b));
      }
    }
  }
  return {};
}

std::string three_runner_survey() {
  using Tag = SpectrumClass::Tag;
  const auto records = survey(3, 60, true, workers());
  std::size_t bad = 0;
  for (const auto& r : records) {
    if (r.cls.tag == Tag::SpectrumGapViolation || r.cls.tag == Tag::LonelyRunnerViolation) ++bad;
  }
  if (bad) return fail(std::to_string(bad) + " violations");
  if (records.empty()) return fail("empty survey");
  return {};
}

std::string tight_recovery() {
  if (tight_sets(3, 20, workers()) != std::vector<SpeedSet>{{1, 2, 3}}) return fail("n = 3");
  if (tight_sets(5, 9, workers()) != std::vector<SpeedSet>{{1, 2, 3, 4, 5}, {1, 3, 4, 5, 9}}) return fail("n = 5");
  if (tight_sets(4, 10, workers()) != std::vector<SpeedSet>{{1, 2, 3, 4}, {1, 3, 4, 7}}) return fail("n = 4");
  return {};
}

std::string admissibility() {
  for (const SpeedSet& s : {SpeedSet{1, 2, 3}, SpeedSet{1, 2, 3, 4, 5}, SpeedSet{1, 3, 4, 5, 9}}) {
    std::vector<std::int64_t> qs;
    for (const auto& r : admissible_residues(s)) {
      if (r.admissible) qs.push_back(r.q);
    }
    if (qs != std::vector<std::int64_t>{0}) return fail(s.to_string());
  }
  return {};
}

std::string condition_iib() {
  std::vector<std::pair<SpeedSet, std::int64_t>> cases;
  for (std::int64_t n = 4; n <= 7; ++n) {
    std::vector<Speed> v;
    for (Speed i = 1; i < n; ++i) v.push_back(i);
    cases.emplace_back(SpeedSet(v), n);
  }
  cases.emplace_back(SpeedSet{1, 3, 4, 5, 9}, 6);
  cases.emplace_back(SpeedSet{1, 3, 4, 7}, 5);
  for (const auto& [s, n] : cases) {
    if (!check_condition_iib(s, n).overall) return fail(s.to_string());
  }
  return {};
}

std::string prediction_agreement() {
  const SpeedSet base{1, 2, 3};
  for (Speed s = 28; s <= 40; ++s) {
    const Speed v = 4 * s;
    const Rational expected(s, v + 1);
    const Rational predicted = predicted_ml(base, 0, v);
    const Rational exact = max_loneliness(base.with(v)).value;
    if (predicted != expected || exact != expected) {
      return fail("v4 = " + std::to_string(v) + ": " + predicted.to_string() + " vs " + exact.to_string());
    }
  }
  return {};
}

std::string lower_accumulation() {
  Rational prev;
  for (Speed s = 1; s <= 50; ++s) {
    const Rational ml = max_loneliness({1, 2, 3, 4 * s}).value;
    if (ml != Rational(s, 4 * s + 1)) return fail("s = " + std::to_string(s) + ": " + ml.to_string());
    if (!(prev < ml) || !(ml < Rational(1, 4))) return fail("not increasing below 1/4 at s = " + std::to_string(s));
    prev = ml;
  }
  return {};
}

std::string small_speeds() {
  const auto report = small_speed_check(5, Rational(6, 5), workers());
  if (report.entries.size() != 6) return fail("expected 6 subsets");
  if (!report.conforms()) return fail(std::to_string(report.counterexamples.size()) + " counterexamples");
  for (const auto& e : report.entries) {
    const Rational& ml = e.record.ml;
    if (!(ml == Rational(1, 6) || ml == Rational(2, 11) || ml >= Rational(1, 5))) {
      return fail(e.record.speeds.to_string());
    }
  }
  return {};
}

// Every set with n <= 4 and speeds <= 30.
std::vector<SpeedSet> small_universe() {
  std::vector<SpeedSet> out;
  for (std::int64_t n = 1; n <= 4; ++n) {
    TupleEnumerator e(n, 30);
    std::vector<std::int64_t> t;
    while (e.next(t)) out.emplace_back(t);
  }
  return out;
}

std::string property_suites() {
  const auto universe = small_universe();
  const unsigned w = workers();

  // The scan's maximum sits on the grid k/N (it is a candidate time), so
  // scan <= grid max <= true max. The piecewise-linear oracle gives the true
  // max exactly; equality there pins the grid max as well. The literal grid
  // is also run whenever N is small enough to enumerate.
  struct Outcome {
    bool ok = true;
    std::string why;
    Rational ml;
  };
  std::mt19937_64 seed_rng(20261017);
  const auto outcomes = parallel_map(universe, w, [](const SpeedSet& s) {
    Outcome o;
    const MaxLoneliness m = max_loneliness(s);
    o.ml = m.value;
    const auto v = as_vector(s);
    if (s.size() >= 2 && s.gcd() == 1) {
      Rational best;
      for (const auto& t : candidate_times(s)) best = std::max(best, loneliness_at(s, t));
      if (best != m.value) return Outcome{false, "candidate max " + s.to_string(), m.value};
      const std::int64_t grid = oracle::pair_sum_lcm(v);
      if (grid <= (1 << 17) && !oracle::grid_max(v, grid).matches(m.value)) {
        return Outcome{false, "grid " + s.to_string(), m.value};
      }
    }
    if (!oracle::piecewise_linear_max(v).matches(m.value)) return Outcome{false, "envelope " + s.to_string(), m.value};

    for (const auto& wit : m.witnesses) {
      if (wit.value != m.value || loneliness_at(s, wit.time) != m.value) {
        return Outcome{false, "witness " + s.to_string(), m.value};
      }
    }

    const SpeedSet r = reduce_speed_set(s);
    const bool all_odd = std::all_of(r.speeds().begin(), r.speeds().end(), [](Speed x) { return x % 2 == 1; });
    if ((m.value == Rational(1, 2)) != all_odd) return Outcome{false, "all-odd " + s.to_string(), m.value};

    std::mt19937_64 rng(static_cast<std::uint64_t>(s.max() * 1000003 + s[0] * 101 + static_cast<Speed>(s.size())));
    std::uniform_int_distribution<long> num(0, 1 << 20);
    std::uniform_int_distribution<long> den(1, 1 << 12);
    for (int k = 0; k < 4; ++k) {
      if (loneliness_at(s, Rational(num(rng), den(rng))) > m.value) {
        return Outcome{false, "random time beats ML " + s.to_string(), m.value};
      }
    }
    return o;
  });

  std::map<SpeedSet, Rational> table;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (!outcomes[i].ok) return fail(outcomes[i].why);
    table.emplace(universe[i], outcomes[i].ml);
  }

  // Subset monotonicity, exhaustively via the table.
  for (const auto& [s, ml] : table) {
    if (s.size() < 2) continue;
    const auto v = as_vector(s);
    for (std::size_t drop = 0; drop < v.size(); ++drop) {
      std::vector<Speed> sub = v;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
      if (table.at(SpeedSet(sub)) < ml) return fail("monotonicity " + s.to_string());
    }
  }

  // Scaling invariance on every set, with factors beyond the table range.
  std::mt19937_64 rng(seed_rng());
  std::uniform_int_distribution<Speed> factor(2, 1000);
  for (const auto& [s, ml] : table) {
    const Speed g = factor(rng);
    std::vector<Speed> scaled;
    for (Speed x : s.speeds()) scaled.push_back(x * g);
    if (max_loneliness(SpeedSet(scaled)).value != ml) return fail("scaling " + s.to_string());
  }

  // Perturbation soundness: 200 instances with n <= 4, speeds <= 60.
  std::uniform_int_distribution<int> size(1, 3);
  std::uniform_int_distribution<Speed> speed(1, 59);
  std::uniform_int_distribution<long> eps_num(1, 40);
  std::uniform_int_distribution<long> eps_den(2, 60);
  int instances = 0;
  for (int attempt = 0; instances < 200 && attempt < 1000000; ++attempt) {
    std::vector<Speed> v;
    const int k = size(rng);
    while (static_cast<int>(v.size()) < k) {
      const Speed x = speed(rng);
      if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }
    const SpeedSet s(v);
    const Rational l = max_loneliness(s).value;
    const Rational eps(eps_num(rng), eps_den(rng));
    if (eps >= l) continue;
    std::uniform_int_distribution<Speed> fast(s.max() + 1, 60);
    const Speed vn = fast(rng);
    if (!perturb_guarantee(s, l, eps, vn)) continue;
    if (max_loneliness(s.with(vn)).value < l - eps) return fail("perturbation " + s.to_string());
    ++instances;
  }
  if (instances < 200) return fail("only " + std::to_string(instances) + " perturbation instances");
  return {};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "tight canonical chain", 10, tight_chain},
      {2, "spectrum construction", 60, spectrum_construction},
      {3, "two-runner closed form", 60, two_runner},
      {4, "three-runner survey to 60", 600, three_runner_survey},
      {5, "tight-set recovery", 300, tight_recovery},
      {6, "admissible residues", 1, admissibility},
      {7, "condition (II.b)", 1, condition_iib},
      {8, "prediction agrees with engine", 30, prediction_agreement},
      {9, "lower accumulation", 30, lower_accumulation},
      {10, "small speeds", 10, small_speeds},
      {11, "property suites", 600, property_suites},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string why;
    try {
      why = c.run();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (why.empty() && secs > c.limit_seconds) why = "over time limit";
    const bool ok = why.empty();
    failures += ok ? 0 : 1;
    std::printf("%s %2d %-32s %8.3f s (limit %g s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_seconds,
                ok ? "" : ": ", why.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
