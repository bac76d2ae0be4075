#pragma once

// One very fast runner.
//
// Fix speeds v_1 < ... < v_{n-1} with ML = L < 1/2, equality times t_j in
// [0, 1) and D = lcm of their denominators. For v_n ≡ Q (mod D) the fast
// runner sits at u_j ≡ t_j Q (mod 1) at every t_j, and for large v_n
//
//   ML(v_1, ..., v_n) = L - v_mu / (v_mu + v_n) * (L + u_k)   if mu = rho_k
//                     = L - v_mu / (v_mu + v_n) * (L - u_k)   if mu = lambda_k
//
// where mu minimizes the weight v_rho (L + u_j), resp. v_lambda (L - u_j).
// With Q = 0 this is v_n L / (v_n + v_mu).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lonely/exact_arith.hpp"
#include "lonely/loneliness.hpp"

namespace lonely {

struct AdmissibleResidue {
  std::int64_t q = 0;  // in (-D/2, D/2]
  std::int64_t d = 1;
  bool admissible = false;
};

enum class MuKind { Rho, Lambda };

const char* mu_kind_name(MuKind kind);

struct MuSelection {
  std::size_t k = 0;  // index into the sorted equality times
  MuKind kind = MuKind::Rho;
  std::size_t mu_speed_index = 0;
  Speed mu_speed = 0;
  Rational t_k;
  Rational u_k;
  Rational weight;
};

struct ResidueCheck {
  std::int64_t q = 0;
  MuSelection mu;
  bool equality_holds = false;
  bool integrality_holds = false;
  Rational quotient;  // D / (n v_mu (1 ± n u_k)); zero when the factor vanishes
};

struct ConditionReport {
  SpeedSet speeds;
  std::int64_t n = 0;
  std::int64_t d = 1;
  std::vector<ResidueCheck> per_q;
  bool overall = false;
};

struct OneFastVerdict {
  bool holds = false;
  std::vector<ConditionReport> reports;
};

// An equality time at which rho_j or lambda_j does not exist.
class MissingSideError : public std::runtime_error {
 public:
  MissingSideError(const Rational& time, MuKind missing);
  const Rational& time() const { return time_; }
  MuKind missing() const { return missing_; }

 private:
  Rational time_;
  MuKind missing_;
};

class NotTightError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StabilizationError : public std::runtime_error {
 public:
  struct Diagnostics {
    std::int64_t q = 0;
    Speed cap = 0;
    std::optional<Speed> last_mismatch;
    Rational predicted;
    Rational exact;
  };

  explicit StabilizationError(Diagnostics diag);
  const Diagnostics& diagnostics() const { return diag_; }

 private:
  Diagnostics diag_;
};

// Every Q in (-D/2, D/2] with its admissibility flag.
// Throws std::domain_error when ML(s) = 1/2.
std::vector<AdmissibleResidue> admissible_residues(const SpeedSet& s);

// Weight-minimizing rho/lambda for an admissible residue. Ties: larger
// speed, then smaller equality-time index, then rho before lambda.
MuSelection select_mu(const SpeedSet& s, std::int64_t q);

// Closed-form ML of s plus a runner of speed v_n ≡ q (mod D), v_n > max(s).
Rational predicted_ml(const SpeedSet& s, std::int64_t q, Speed v_n);

// Default search cap: 4 * v_{n-1}^4.
Speed default_stabilization_cap(const SpeedSet& s);

// Smallest v_n ≡ q (mod D), v_n > max(s), from which predicted_ml agrees
// with the exact engine for `run_length` consecutive values v_n, v_n + D, ...
// Throws StabilizationError when no run starts at or below the cap.
Speed stabilization_threshold(const SpeedSet& s, std::int64_t q, std::int64_t run_length = 5,
                              std::optional<Speed> cap = std::nullopt);

// Requires gcd 1, |s| = n - 1 and ML(s) = 1/n (else NotTightError).
ConditionReport check_condition_iib(const SpeedSet& s, std::int64_t n);

// Runs the (II.b) check on each listed tight set. The list is trusted to be
// complete; this function cannot certify that.
OneFastVerdict conjecture_1fast_verdict(std::int64_t n, std::span<const SpeedSet> tight_list);

// v_n >= ((L - eps) / eps) * v_{n-1}. Requires 0 < eps < L <= ML(s).
bool perturb_guarantee(const SpeedSet& s, const Rational& L, const Rational& eps, Speed v_n);

// v_n >= v_{n-1} (2 v_{n-1} - 1). Requires |s| = n - 1 and ML(s) > 1/n.
bool lemma_1fast_guarantee(const SpeedSet& s, std::int64_t n, Speed v_n);

}  // namespace lonely
