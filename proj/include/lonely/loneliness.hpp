#pragma once

// Exact maximum loneliness ML(v_1, ..., v_n) = max_t min_i ||t v_i||.
//
// The maximum is found by scanning the finite candidate set
//   { m / (v_i + v_j) : i < j, 0 <= m < v_i + v_j }
// which contains every local maximum of t -> min_i ||t v_i|| once the speeds
// are reduced by their common divisor. The scan itself runs on machine
// integers: at time m/d the position of runner k is (m * v_k mod d) / d,
// so only residues modulo d < 2^62 are ever formed. Results are returned as
// exact Rationals.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lonely/exact_arith.hpp"

namespace lonely {

using Speed = std::int64_t;

// Upper bound on a single speed so that every residue and pair sum fits in
// a signed 64-bit word.
inline constexpr Speed kMaxSpeed = Speed{1} << 61;

// Sorted, pairwise distinct, positive integer speeds.
class SpeedSet {
 public:
  // Sorts the input. Throws std::invalid_argument on an empty list, a
  // non-positive or oversized speed, or a repeated speed.
  explicit SpeedSet(std::vector<Speed> speeds);
  SpeedSet(std::initializer_list<Speed> speeds) : SpeedSet(std::vector<Speed>(speeds)) {}

  std::span<const Speed> speeds() const { return speeds_; }
  std::size_t size() const { return speeds_.size(); }
  Speed operator[](std::size_t i) const { return speeds_[i]; }
  Speed max() const { return speeds_.back(); }
  Speed gcd() const;

  // This set plus one more runner. Throws if `extra` is already present.
  SpeedSet with(Speed extra) const;

  // "1,2,3"
  std::string to_string() const;

  friend bool operator==(const SpeedSet&, const SpeedSet&) = default;
  friend auto operator<=>(const SpeedSet&, const SpeedSet&) = default;

 private:
  std::vector<Speed> speeds_;
};

// Parses "1,2,3" (whitespace tolerated). Throws std::invalid_argument.
SpeedSet parse_speed_set(std::string_view text);

struct LonelinessWitness {
  Rational time;      // in [0, 1), equal to m / (v_i + v_j)
  Rational value;     // loneliness at `time`
  std::size_t i = 0;  // generating pair, i < j (i == j == 0 for a lone runner)
  std::size_t j = 0;
  Speed m = 0;
};

struct MaxLoneliness {
  Rational value;
  std::vector<LonelinessWitness> witnesses;  // sorted by time
};

struct EqualityTimeProfile {
  Rational t;
  std::optional<std::size_t> rho;     // largest index whose position is exactly L
  std::optional<std::size_t> lambda;  // largest index whose position is exactly 1 - L
  Rational u;                         // t * Q reduced into (-1/2, 1/2]
};

SpeedSet reduce_speed_set(const SpeedSet& s);

Rational loneliness_at(const SpeedSet& s, const Rational& t);

// Sorted, deduplicated candidate times in [0, 1).
// Requires at least two runners and gcd 1.
std::vector<Rational> candidate_times(const SpeedSet& s);

// The gcd is divided out internally; witness times are reported in the
// caller's coordinates (divided by the gcd).
MaxLoneliness max_loneliness(const SpeedSet& s);

// Maximum loneliness over the times m / (v_i + v_j) of one pair (0-based).
Rational pair_restricted_max(const SpeedSet& s, std::size_t i, std::size_t j);

// All times in [0, 1) at which the loneliness equals ML(s).
std::vector<Rational> equality_times(const SpeedSet& s);

// lcm of the reduced denominators of equality_times(s).
BigInt denominator_lcm(const SpeedSet& s);

// Throws std::domain_error when ML(s) = 1/2.
std::vector<EqualityTimeProfile> equality_profiles(const SpeedSet& s, std::int64_t residue);

}  // namespace lonely
