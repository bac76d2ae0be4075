#include "lonely/fast_runner.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace lonely {

namespace {

BigInt big(std::int64_t x) { return BigInt(static_cast<long>(x)); }
Rational integer(std::int64_t x) { return Rational::integer(big(x)); }

struct Analysis {
  Rational L;
  std::vector<Rational> times;
  std::int64_t d = 1;
};

Analysis analyze(const SpeedSet& s) {
  Analysis a;
  a.L = max_loneliness(s).value;
  if (a.L == Rational(1, 2)) {
    throw std::domain_error("fast-runner analysis undefined at L = 1/2 (all speeds odd)");
  }
  a.times = equality_times(s);
  const BigInt d = denominator_lcm(s);
  if (!d.fits_slong_p() || d > BigInt(1L << 40)) throw std::domain_error("D = " + d.get_str() + " is too large");
  a.d = d.get_si();
  return a;
}

bool in_range(const Analysis& a, std::int64_t q) { return 2 * q > -a.d && 2 * q <= a.d; }

bool admissible(const Analysis& a, std::int64_t q) {
  const Rational rq = integer(q);
  return std::all_of(a.times.begin(), a.times.end(), [&](const Rational& t) { return norm_dist(t * rq) < a.L; });
}

void require_admissible(const Analysis& a, std::int64_t q) {
  if (!in_range(a, q)) {
    throw std::invalid_argument("residue " + std::to_string(q) + " outside (-D/2, D/2] for D = " +
                                std::to_string(a.d));
  }
  if (!admissible(a, q)) throw std::invalid_argument("residue " + std::to_string(q) + " is not admissible");
}

struct Candidate {
  std::size_t j;
  MuKind kind;
  std::size_t index;
  Speed speed;
  Rational u;
  Rational weight;
};

MuSelection select_mu_impl(const SpeedSet& s, const Analysis& a, std::int64_t q) {
  require_admissible(a, q);
  const auto profiles = equality_profiles(s, q);
  std::vector<Candidate> cands;
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    const auto& p = profiles[j];
    if (!p.rho) throw MissingSideError(p.t, MuKind::Rho);
    if (!p.lambda) throw MissingSideError(p.t, MuKind::Lambda);
    const Speed vr = s[*p.rho];
    const Speed vl = s[*p.lambda];
    cands.push_back({j, MuKind::Rho, *p.rho, vr, p.u, integer(vr) * (a.L + p.u)});
    cands.push_back({j, MuKind::Lambda, *p.lambda, vl, p.u, integer(vl) * (a.L - p.u)});
  }
  // Equal weights: the faster runner gives the larger loneliness for every v_n.
  const auto best = std::min_element(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    if (x.speed != y.speed) return x.speed > y.speed;
    if (x.j != y.j) return x.j < y.j;
    return x.kind == MuKind::Rho && y.kind == MuKind::Lambda;
  });
  return {best->j, best->kind, best->index, best->speed, profiles[best->j].t, best->u, best->weight};
}

Rational predicted_impl(const Analysis& a, const MuSelection& mu, Speed v_n) {
  const Rational v = integer(mu.mu_speed);
  const Rational gap = mu.kind == MuKind::Rho ? a.L + mu.u_k : a.L - mu.u_k;
  return a.L - v / (v + integer(v_n)) * gap;
}

void require_member(const Analysis& a, std::int64_t q, const SpeedSet& s, Speed v_n) {
  if (v_n <= s.max()) throw std::invalid_argument("fast runner must be faster than every other runner");
  const std::int64_t r = ((v_n - q) % a.d + a.d) % a.d;
  if (r != 0) {
    throw std::invalid_argument("v_n = " + std::to_string(v_n) + " is not congruent to " + std::to_string(q) +
                                " modulo D = " + std::to_string(a.d));
  }
}

std::string describe(const StabilizationError::Diagnostics& d) {
  std::ostringstream os;
  os << "no stabilization for Q = " << d.q << " at or below cap " << d.cap;
  if (d.last_mismatch) {
    os << " (last mismatch at v_n = " << *d.last_mismatch << ": predicted " << d.predicted << ", exact " << d.exact
       << ")";
  }
  return os.str();
}

}  // namespace

const char* mu_kind_name(MuKind kind) { return kind == MuKind::Rho ? "rho" : "lambda"; }

MissingSideError::MissingSideError(const Rational& time, MuKind missing)
    : std::runtime_error(std::string("no ") + mu_kind_name(missing) + " index at equality time " + time.to_string()),
      time_(time),
      missing_(missing) {}

StabilizationError::StabilizationError(Diagnostics diag) : std::runtime_error(describe(diag)), diag_(std::move(diag)) {}

std::vector<AdmissibleResidue> admissible_residues(const SpeedSet& s) {
  const Analysis a = analyze(s);
  std::vector<AdmissibleResidue> out;
  for (std::int64_t q = -((a.d - 1) / 2); q <= a.d / 2; ++q) out.push_back({q, a.d, admissible(a, q)});
  return out;
}

MuSelection select_mu(const SpeedSet& s, std::int64_t q) { return select_mu_impl(s, analyze(s), q); }

Rational predicted_ml(const SpeedSet& s, std::int64_t q, Speed v_n) {
  const Analysis a = analyze(s);
  require_admissible(a, q);
  require_member(a, q, s, v_n);
  return predicted_impl(a, select_mu_impl(s, a, q), v_n);
}

Speed default_stabilization_cap(const SpeedSet& s) {
  const BigInt v = big(s.max());
  const BigInt cap = 4 * v * v * v * v;
  return cap.fits_slong_p() ? cap.get_si() : std::numeric_limits<Speed>::max();
}

Speed stabilization_threshold(const SpeedSet& s, std::int64_t q, std::int64_t run_length, std::optional<Speed> cap) {
  if (run_length < 1) throw std::invalid_argument("run length must be positive");
  const Analysis a = analyze(s);
  const MuSelection mu = select_mu_impl(s, a, q);
  const Speed limit = cap.value_or(default_stabilization_cap(s));

  // First v_n > max(s) with v_n ≡ q (mod D).
  Speed v = s.max() + 1;
  v += ((q - v) % a.d + a.d) % a.d;

  StabilizationError::Diagnostics diag{q, limit, std::nullopt, {}, {}};
  Speed run_start = 0;
  std::int64_t run = 0;
  for (; v <= limit || run > 0; v += a.d) {
    const Rational predicted = predicted_impl(a, mu, v);
    const Rational exact = max_loneliness(s.with(v)).value;
    if (predicted == exact) {
      if (run == 0) run_start = v;
      if (++run == run_length) return run_start;
    } else {
      run = 0;
      diag.last_mismatch = v;
      diag.predicted = predicted;
      diag.exact = exact;
    }
  }
  throw StabilizationError(std::move(diag));
}

ConditionReport check_condition_iib(const SpeedSet& s, std::int64_t n) {
  if (n != static_cast<std::int64_t>(s.size()) + 1) {
    throw std::invalid_argument("condition (II.b) needs exactly n - 1 speeds");
  }
  if (s.gcd() != 1) throw std::invalid_argument("condition (II.b) needs speeds with gcd 1");
  const Rational one_over_n(1, big(n));
  if (max_loneliness(s).value != one_over_n) {
    throw NotTightError("not a tight set for n-1 runners: ML(" + s.to_string() + ") != 1/" + std::to_string(n));
  }
  const Analysis a = analyze(s);
  const Rational rn = integer(n);
  const Rational rd = integer(a.d);

  ConditionReport report{s, n, a.d, {}, true};
  for (std::int64_t q = -((a.d - 1) / 2); q <= a.d / 2; ++q) {
    if (!admissible(a, q)) continue;
    ResidueCheck check;
    check.q = q;
    check.mu = select_mu_impl(s, a, q);
    const Rational v = integer(check.mu.mu_speed);
    const Rational& u = check.mu.u_k;
    const bool rho = check.mu.kind == MuKind::Rho;
    const Rational expected_q = rho ? rn * v * u : -(rn * v * u);
    check.equality_holds = integer(q) == expected_q;
    const Rational factor = rho ? Rational(1, 1) + rn * u : Rational(1, 1) - rn * u;
    if (factor != Rational()) {
      check.quotient = rd / (rn * v * factor);
      check.integrality_holds = check.quotient.is_integer();
    }
    report.overall = report.overall && check.equality_holds && check.integrality_holds;
    report.per_q.push_back(std::move(check));
  }
  return report;
}

OneFastVerdict conjecture_1fast_verdict(std::int64_t n, std::span<const SpeedSet> tight_list) {
  OneFastVerdict verdict{true, {}};
  for (const SpeedSet& s : tight_list) {
    verdict.reports.push_back(check_condition_iib(s, n));
    verdict.holds = verdict.holds && verdict.reports.back().overall;
  }
  return verdict;
}

bool perturb_guarantee(const SpeedSet& s, const Rational& L, const Rational& eps, Speed v_n) {
  if (eps <= Rational() || eps >= L) throw std::invalid_argument("perturbation needs 0 < eps < L");
  if (max_loneliness(s).value < L) throw std::invalid_argument("ML(" + s.to_string() + ") is below L");
  return integer(v_n) >= (L - eps) / eps * integer(s.max());
}

bool lemma_1fast_guarantee(const SpeedSet& s, std::int64_t n, Speed v_n) {
  if (n != static_cast<std::int64_t>(s.size()) + 1) throw std::invalid_argument("needs exactly n - 1 speeds");
  if (max_loneliness(s).value <= Rational(1, big(n))) {
    throw std::domain_error("ML(" + s.to_string() + ") must exceed 1/" + std::to_string(n));
  }
  const BigInt v = big(s.max());
  return big(v_n) >= v * (2 * v - 1);
}

}  // namespace lonely
