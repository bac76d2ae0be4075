#include "lonely/loneliness.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace lonely {

namespace {

using Wide = __int128;

BigInt big(Speed x) { return BigInt(static_cast<long>(x)); }

// Sign of a/b - c/d for positive b, d.
int compare_fractions(Speed a, Speed b, Speed c, Speed d) {
  Wide lhs = static_cast<Wide>(a) * d;
  Wide rhs = static_cast<Wide>(c) * b;
  return (lhs > rhs) - (lhs < rhs);
}

struct Hit {
  std::size_t i;
  std::size_t j;
  Speed m;
  Speed d;
};

// Running maximum of min_k ||t v_k|| over scanned candidate times, plus every
// time that attains it (in scan order).
struct Scan {
  Speed best_num = -1;
  Speed best_den = 1;
  std::vector<Hit> hits;
  std::vector<Speed> step;
  std::vector<Speed> pos;

  void pair(std::span<const Speed> w, std::size_t i, std::size_t j) {
    const Speed d = w[i] + w[j];
    const std::size_t n = w.size();
    step.resize(n);
    pos.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) step[k] = w[k] % d;
    for (Speed m = 0; m < d; ++m) {
      Speed val = d;
      for (std::size_t k = 0; k < n; ++k) {
        const Speed p = pos[k];
        const Speed dist = p < d - p ? p : d - p;
        if (dist < val) val = dist;
        Speed next = p + step[k];
        pos[k] = next >= d ? next - d : next;
      }
      const int c = compare_fractions(val, d, best_num, best_den);
      if (c > 0) {
        best_num = val;
        best_den = d;
        hits.clear();
      }
      if (c >= 0) hits.push_back({i, j, m, d});
    }
  }
};

void require_index(const SpeedSet& s, std::size_t i, std::size_t j) {
  if (i >= j || j >= s.size()) {
    throw std::invalid_argument("pair indices must satisfy i < j < n");
  }
}

}  // namespace

SpeedSet::SpeedSet(std::vector<Speed> speeds) : speeds_(std::move(speeds)) {
  if (speeds_.empty()) throw std::invalid_argument("speed set must contain at least one runner");
  std::sort(speeds_.begin(), speeds_.end());
  if (speeds_.front() < 1) throw std::invalid_argument("speeds must be positive integers");
  if (speeds_.back() > kMaxSpeed) throw std::invalid_argument("speed exceeds supported range");
  if (std::adjacent_find(speeds_.begin(), speeds_.end()) != speeds_.end()) {
    throw std::invalid_argument("duplicate speed in speed set");
  }
}

Speed SpeedSet::gcd() const {
  Speed g = 0;
  for (Speed v : speeds_) g = std::gcd(g, v);
  return g;
}

SpeedSet SpeedSet::with(Speed extra) const {
  std::vector<Speed> v = speeds_;
  v.push_back(extra);
  return SpeedSet(std::move(v));
}

std::string SpeedSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < speeds_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(speeds_[i]);
  }
  return out;
}

SpeedSet parse_speed_set(std::string_view text) {
  std::vector<Speed> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    Speed v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("malformed speed list: '" + std::string(text) + "'");
    }
    out.push_back(v);
    start = end + 1;
  }
  return SpeedSet(std::move(out));
}

SpeedSet reduce_speed_set(const SpeedSet& s) {
  const Speed g = s.gcd();
  if (g == 1) return s;
  std::vector<Speed> v(s.speeds().begin(), s.speeds().end());
  for (auto& x : v) x /= g;
  return SpeedSet(std::move(v));
}

Rational loneliness_at(const SpeedSet& s, const Rational& t) {
  const BigInt& b = t.denominator();
  BigInt best = b;
  BigInt r;
  for (Speed v : s.speeds()) {
    BigInt prod = t.numerator() * big(v);
    mpz_fdiv_r(r.get_mpz_t(), prod.get_mpz_t(), b.get_mpz_t());
    BigInt other = b - r;
    const BigInt& dist = r < other ? r : other;
    if (dist < best) best = dist;
  }
  return Rational(best, b);
}

std::vector<Rational> candidate_times(const SpeedSet& s) {
  if (s.size() < 2) throw std::invalid_argument("candidate times need at least two runners");
  if (s.gcd() != 1) throw std::invalid_argument("candidate times need speeds with gcd 1");
  std::vector<std::pair<Speed, Speed>> reduced;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const Speed d = s[i] + s[j];
      for (Speed m = 0; m < d; ++m) {
        const Speed g = std::gcd(m, d);
        reduced.emplace_back(m / g, d / g);
      }
    }
  }
  auto less = [](const auto& a, const auto& b) {
    return compare_fractions(a.first, a.second, b.first, b.second) < 0;
  };
  std::sort(reduced.begin(), reduced.end(), less);
  reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
  std::vector<Rational> out;
  out.reserve(reduced.size());
  for (const auto& [m, d] : reduced) out.emplace_back(big(m), big(d));
  return out;
}

MaxLoneliness max_loneliness(const SpeedSet& s) {
  const Speed g = s.gcd();
  if (s.size() == 1) {
    Rational t(1, big(2 * s[0]));
    return {Rational(1, 2), {LonelinessWitness{t, Rational(1, 2), 0, 0, 1}}};
  }
  const SpeedSet w = reduce_speed_set(s);
  Scan scan;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) scan.pair(w.speeds(), i, j);
  }

  // Reduce each hit to lowest terms, keep the first generating pair per time.
  struct Keyed {
    Speed num;
    Speed den;
    Hit hit;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(scan.hits.size());
  for (const Hit& h : scan.hits) {
    const Speed c = std::gcd(h.m, h.d);
    keyed.push_back({h.m / c, h.d / c, h});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return compare_fractions(a.num, a.den, b.num, b.den) < 0;
  });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const Keyed& a, const Keyed& b) { return a.num == b.num && a.den == b.den; }),
              keyed.end());

  MaxLoneliness out{Rational(big(scan.best_num), big(scan.best_den)), {}};
  out.witnesses.reserve(keyed.size());
  for (const Keyed& k : keyed) {
    Rational t(big(k.num), big(k.den) * big(g));
    out.witnesses.push_back({std::move(t), out.value, k.hit.i, k.hit.j, k.hit.m});
  }
  return out;
}

Rational pair_restricted_max(const SpeedSet& s, std::size_t i, std::size_t j) {
  require_index(s, i, j);
  Scan scan;
  scan.pair(s.speeds(), i, j);
  return Rational(big(scan.best_num), big(scan.best_den));
}

std::vector<Rational> equality_times(const SpeedSet& s) {
  const MaxLoneliness ml = max_loneliness(s);
  const Speed g = s.gcd();
  if (g == 1) {
    std::vector<Rational> out;
    out.reserve(ml.witnesses.size());
    for (const auto& w : ml.witnesses) out.push_back(w.time);
    return out;
  }
  // Witness times are tau / g for the reduced set; f has period 1/g here.
  std::vector<Rational> out;
  out.reserve(ml.witnesses.size() * static_cast<std::size_t>(g));
  const Rational period(1, big(g));
  for (Speed h = 0; h < g; ++h) {
    const Rational shift = Rational::integer(big(h)) * period;
    for (const auto& w : ml.witnesses) out.push_back(w.time + shift);
  }
  return out;
}

BigInt denominator_lcm(const SpeedSet& s) {
  const auto times = equality_times(s);
  std::vector<BigInt> dens;
  dens.reserve(times.size());
  for (const auto& t : times) dens.push_back(t.denominator());
  return lcm_list(dens);
}

std::vector<EqualityTimeProfile> equality_profiles(const SpeedSet& s, std::int64_t residue) {
  const Rational L = max_loneliness(s).value;
  if (L == Rational(1, 2)) throw std::domain_error("profiles undefined at L = 1/2");
  const Rational upper = Rational(1, 1) - L;
  const Rational half(1, 2);
  const Rational q = Rational::integer(BigInt(static_cast<long>(residue)));

  std::vector<EqualityTimeProfile> out;
  for (const Rational& t : equality_times(s)) {
    EqualityTimeProfile p{t, std::nullopt, std::nullopt, {}};
    for (std::size_t k = 0; k < s.size(); ++k) {
      const Rational position = (t * Rational::integer(big(s[k]))).frac();
      if (position == L) p.rho = k;
      if (position == upper) p.lambda = k;
    }
    Rational u = (t * q).frac();
    if (u > half) u -= Rational(1, 1);
    p.u = std::move(u);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace lonely
