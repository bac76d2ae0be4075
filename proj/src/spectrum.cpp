#include "lonely/spectrum.hpp"

#include <numeric>
#include <stdexcept>

#include "lonely/tuples.hpp"

namespace lonely {

namespace {

BigInt big(std::int64_t x) { return BigInt(static_cast<long>(x)); }

Rational unit_fraction(std::int64_t d) { return Rational(1, big(d)); }

}  // namespace

std::string SpectrumClass::label() const {
  switch (tag) {
    case Tag::DiscretePart:
      return "discrete:" + s.get_str();
    case Tag::LargeValue:
      return "large";
    case Tag::SpectrumGapViolation:
      return "gap-violation";
    case Tag::LonelyRunnerViolation:
      return "lrc-violation";
  }
  return "unknown";
}

SpectrumClass::Tag parse_class_tag(std::string_view label) {
  constexpr std::string_view kDiscrete = "discrete:";
  if (label.starts_with(kDiscrete)) {
    const auto digits = label.substr(kDiscrete.size());
    if (!digits.empty() && digits.front() != '0' &&
        digits.find_first_not_of("0123456789") == std::string_view::npos) {
      return SpectrumClass::Tag::DiscretePart;
    }
  }
  if (label == "large") return SpectrumClass::Tag::LargeValue;
  if (label == "gap-violation") return SpectrumClass::Tag::SpectrumGapViolation;
  if (label == "lrc-violation") return SpectrumClass::Tag::LonelyRunnerViolation;
  throw std::invalid_argument("unknown spectrum class '" + std::string(label) + "'");
}

SpectrumClass classify(std::int64_t n, const Rational& ml) {
  if (n < 1) throw std::invalid_argument("classify: n must be positive");
  if (ml <= Rational() || ml > Rational(1, 2)) {
    throw std::invalid_argument("classify: value " + ml.to_string() + " outside (0, 1/2]");
  }
  using Tag = SpectrumClass::Tag;
  if (ml >= unit_fraction(n)) return {Tag::LargeValue, 0, ml};
  // s/(ns+1) is already reduced, so the reduced denominator pins s down.
  const BigInt& p = ml.numerator();
  if (ml.denominator() == big(n) * p + 1) return {Tag::DiscretePart, p, ml};
  if (ml < unit_fraction(n + 1)) return {Tag::LonelyRunnerViolation, 0, ml};
  return {Tag::SpectrumGapViolation, 0, ml};
}

Rational two_runner_closed_form(Speed v1, Speed v2) {
  if (v1 < 1 || v2 < 1) throw std::invalid_argument("speeds must be positive");
  if (v1 == v2) throw std::invalid_argument("two-runner closed form needs distinct speeds");
  const Speed g = std::gcd(v1, v2);
  const Speed a = v1 / g;
  const Speed b = v2 / g;
  if (a % 2 == 1 && b % 2 == 1) return Rational(1, 2);
  const Speed sum = a + b;  // odd, = 2s + 1
  return Rational(big((sum - 1) / 2), big(sum));
}

Construction construction_set(std::int64_t n, std::int64_t s) {
  if (n < 2) throw std::invalid_argument("construction needs n >= 2");
  if (s < 1) throw std::invalid_argument("construction needs s >= 1");
  std::vector<Speed> speeds;
  for (std::int64_t v = 1; v < n; ++v) speeds.push_back(v);
  speeds.push_back(n * s);
  return {SpeedSet(std::move(speeds)), Rational(big(s), big(n * s + 1))};
}

SurveyRecord evaluate_record(const SpeedSet& speeds) {
  MaxLoneliness ml = max_loneliness(speeds);
  SpectrumClass cls = classify(static_cast<std::int64_t>(speeds.size()), ml.value);
  return {speeds, ml.value, std::move(cls), ml.witnesses.front().time};
}

std::vector<SurveyRecord> survey(std::int64_t n, std::int64_t max_speed, bool primitive_only, unsigned workers) {
  if (n < 1) throw std::invalid_argument("survey needs n >= 1");
  TupleEnumerator tuples(n, max_speed);
  std::vector<SurveyRecord> out;
  std::vector<std::int64_t> tuple;
  std::vector<SpeedSet> batch;
  constexpr std::size_t kBatch = 4096;

  auto flush = [&] {
    auto records = parallel_map(batch, workers, [](const SpeedSet& s) { return evaluate_record(s); });
    for (auto& r : records) out.push_back(std::move(r));
    batch.clear();
  };

  while (tuples.next(tuple)) {
    SpeedSet s(tuple);
    if (primitive_only && s.gcd() != 1) continue;
    batch.push_back(std::move(s));
    if (batch.size() == kBatch) flush();
  }
  if (!batch.empty()) flush();
  return out;
}

std::vector<SpeedSet> tight_sets(std::int64_t n, std::int64_t max_speed, unsigned workers) {
  const Rational tight = unit_fraction(n + 1);
  std::vector<SpeedSet> out;
  for (auto& r : survey(n, max_speed, true, workers)) {
    if (r.ml == tight) out.push_back(std::move(r.speeds));
  }
  return out;
}

const char* disjunct_name(Disjunct d) {
  switch (d) {
    case Disjunct::TightOrSecond:
      return "tight-or-second";
    case Disjunct::SmallDiscrete:
      return "small-discrete";
    case Disjunct::Discrete:
      return "discrete";
    case Disjunct::AtLeastOneOverN:
      return "at-least-1/n";
    case Disjunct::BelowLrcBound:
      return "below-1/(n+1)";
    case Disjunct::None:
      return "none";
  }
  return "unknown";
}

SmallSpeedReport small_speed_check(std::int64_t n, const Rational& bound_factor, unsigned workers) {
  if (n < 2) throw std::invalid_argument("small speed check needs n >= 2");
  const BigInt bound_big = (bound_factor * Rational::integer(big(n))).floor();
  if (bound_big < n) throw std::invalid_argument("bound_factor * n must be at least n");
  if (!bound_big.fits_slong_p()) throw std::invalid_argument("bound too large");

  SmallSpeedReport report;
  report.n = n;
  report.bound = bound_big.get_si();
  if (5 * report.bound <= 6 * n) {
    report.regime = SmallSpeedRegime::UpTo1_2n;
  } else if (2 * report.bound <= 3 * n + 2) {
    report.regime = SmallSpeedRegime::UpTo1_5nPlus1;
  } else {
    report.regime = SmallSpeedRegime::Exploratory;
  }

  const Rational one_over_n = unit_fraction(n);
  const Rational tight = unit_fraction(n + 1);
  const Rational second(2, big(2 * n + 1));
  const Rational three_gap(3, big(3 * n + 2));

  for (auto& r : survey(n, report.bound, false, workers)) {
    Disjunct d = Disjunct::None;
    using Tag = SpectrumClass::Tag;
    switch (report.regime) {
      case SmallSpeedRegime::UpTo1_2n:
        if (r.ml == tight || r.ml == second) {
          d = Disjunct::TightOrSecond;
        } else if (r.ml >= one_over_n) {
          d = Disjunct::AtLeastOneOverN;
        }
        break;
      case SmallSpeedRegime::UpTo1_5nPlus1:
        if (r.ml < tight) {
          d = Disjunct::BelowLrcBound;
        } else if (r.cls.tag == Tag::DiscretePart && r.cls.s <= 3) {
          d = Disjunct::SmallDiscrete;
        } else if (r.ml >= one_over_n) {
          d = Disjunct::AtLeastOneOverN;
        }
        break;
      case SmallSpeedRegime::Exploratory:
        if (r.cls.tag == Tag::DiscretePart) {
          d = Disjunct::Discrete;
        } else if (r.cls.tag == Tag::LargeValue) {
          d = Disjunct::AtLeastOneOverN;
        }
        break;
    }
    if (r.ml == three_gap) report.three_over_3n_plus_2.push_back(r);
    if (d == Disjunct::None) report.counterexamples.push_back(r);
    report.entries.push_back({std::move(r), d});
  }
  return report;
}

}  // namespace lonely
