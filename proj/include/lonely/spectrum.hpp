#pragma once

// Classification of maximum-loneliness values against the conjectured
// spectrum  { s/(ns+1) : s >= 1 }  union  [1/n, 1/2],  closed forms that
// realize it, and bounded enumeration of n-runner speed sets.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lonely/exact_arith.hpp"
#include "lonely/loneliness.hpp"

namespace lonely {

struct SpectrumClass {
  enum class Tag { DiscretePart, LargeValue, SpectrumGapViolation, LonelyRunnerViolation };

  Tag tag = Tag::LargeValue;
  BigInt s = 0;  // meaningful only for DiscretePart
  Rational value;

  // "discrete:s" | "large" | "gap-violation" | "lrc-violation"
  std::string label() const;

  friend bool operator==(const SpectrumClass&, const SpectrumClass&) = default;
};

// Inverse of SpectrumClass::label(); throws std::invalid_argument.
SpectrumClass::Tag parse_class_tag(std::string_view label);

struct SurveyRecord {
  SpeedSet speeds;
  Rational ml;
  SpectrumClass cls;
  Rational witness_time;
};

// Throws std::invalid_argument for n == 0 or ml outside (0, 1/2].
SpectrumClass classify(std::int64_t n, const Rational& ml);

// Throws std::invalid_argument when v1 == v2 or either is non-positive.
Rational two_runner_closed_form(Speed v1, Speed v2);

struct Construction {
  SpeedSet speeds;
  Rational expected;
};

// {1, ..., n-1, n*s} with expected loneliness s/(ns+1).
Construction construction_set(std::int64_t n, std::int64_t s);

// Evaluates one speed set into a record (first witness time).
SurveyRecord evaluate_record(const SpeedSet& speeds);

// One record per strictly increasing n-tuple from {1, ..., max_speed}, in
// lexicographic order; gcd-1 tuples only when primitive_only.
std::vector<SurveyRecord> survey(std::int64_t n, std::int64_t max_speed, bool primitive_only = true,
                                 unsigned workers = 1);

// gcd-1 sets with ML exactly 1/(n+1), lexicographic. Only claims completeness
// up to max_speed.
std::vector<SpeedSet> tight_sets(std::int64_t n, std::int64_t max_speed, unsigned workers = 1);

enum class SmallSpeedRegime {
  UpTo1_2n,       // every speed <= 1.2n
  UpTo1_5nPlus1,  // every speed <= 1.5n + 1
  Exploratory,    // beyond both; data only
};

enum class Disjunct {
  TightOrSecond,   // ML = 1/(n+1) or ML = 2/(2n+1)
  SmallDiscrete,   // ML = s/(ns+1), 1 <= s <= 3
  Discrete,        // any s/(ns+1) (exploratory regime)
  AtLeastOneOverN, // ML >= 1/n
  BelowLrcBound,   // ML < 1/(n+1)
  None,            // no allowed disjunct holds
};

struct SmallSpeedEntry {
  SurveyRecord record;
  Disjunct disjunct;
};

struct SmallSpeedReport {
  std::int64_t n = 0;
  std::int64_t bound = 0;  // floor(bound_factor * n)
  SmallSpeedRegime regime = SmallSpeedRegime::Exploratory;
  std::vector<SmallSpeedEntry> entries;
  std::vector<SurveyRecord> counterexamples;
  // Sets with ML = 3/(3n+2); tracked for the 1.501n question.
  std::vector<SurveyRecord> three_over_3n_plus_2;

  bool conforms() const { return counterexamples.empty(); }
};

const char* disjunct_name(Disjunct d);

// Surveys every n-subset of {1, ..., floor(bound_factor * n)}.
SmallSpeedReport small_speed_check(std::int64_t n, const Rational& bound_factor, unsigned workers = 1);

}  // namespace lonely
