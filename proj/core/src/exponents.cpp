#include "boltzlab/exponents.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace boltzlab {

namespace {

const Rational kZero{0};
const Rational kOne{1};

bool in_unit_interval(const Rational& r) { return r >= kZero && r <= kOne; }

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

void require_dim(int dim, int lo, int hi) {
  if (dim < lo || dim > hi) {
    throw std::invalid_argument("dimension N=" + std::to_string(dim) + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// Full check of the relations a primal/dual triplet pair is built on.
void finish_pair(TripletPair& pair, int dim) {
  pair.dual = conjugate(pair.dual_primed);
  pair.primal_report = kt_admissible(pair.primal, dim);
  pair.dual_report = kt_admissible(pair.dual, dim);
  pair.inv_a = pair.primal_report.inv_a;

  if (!pair.primal_report.admissible || pair.primal_report.is_endpoint) {
    throw std::logic_error("primal triplet is not a non-endpoint KT-admissible triplet");
  }
  // Same harmonic mean on both sides of the inhomogeneous estimate.
  if (harmonic_mean(pair.dual_primed.inv_p, pair.dual_primed.inv_r) != pair.inv_a) {
    throw std::logic_error("HM(p, r) != HM(p~', r~')");
  }
  const Rational half_n(dim, 2);
  if (pair.dual.inv_q != half_n * (pair.dual.inv_p - pair.dual.inv_r) ||
      pair.dual.inv_q <= kZero) {
    throw std::logic_error("dual triplet violates its scaling relation");
  }
  pair.dual_window_ok = pair.dual_report.admissible && !pair.dual_report.is_endpoint;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  const auto num = parse_int(text.substr(0, slash), text);
  const auto den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational parse_exponent_reciprocal(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kZero;
  const Rational value = parse_rational(text);
  if (value < kOne) {
    throw std::invalid_argument("exponent '" + std::string(text) + "' must be >= 1");
  }
  return kOne / value;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string exponent_string(const Rational& reciprocal) {
  if (reciprocal == kZero) return "inf";
  return to_string(kOne / reciprocal);
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

void ExponentTriplet::validate() const {
  if (!in_unit_interval(inv_q) || !in_unit_interval(inv_r) || !in_unit_interval(inv_p)) {
    throw std::invalid_argument("exponent reciprocals must lie in [0,1]: (" + to_string(inv_q) +
                                ", " + to_string(inv_r) + ", " + to_string(inv_p) + ")");
  }
}

ExponentTriplet conjugate(const ExponentTriplet& t) {
  return {kOne - t.inv_q, kOne - t.inv_r, kOne - t.inv_p};
}

Rational harmonic_mean(const Rational& inv_p, const Rational& inv_r) {
  if (!in_unit_interval(inv_p) || !in_unit_interval(inv_r)) {
    throw std::invalid_argument("harmonic_mean: reciprocals must lie in [0,1]");
  }
  return (inv_p + inv_r) / Rational(2);
}

Rational inv_p_star(const Rational& inv_a, int dim) {
  // a >= (N+1)/N  <=>  1/a <= N/(N+1)
  if (inv_a <= Rational(dim, dim + 1)) return Rational(dim + 1, dim) * inv_a;
  return kOne;
}

Rational inv_r_star(const Rational& inv_a, int dim) {
  if (inv_a <= Rational(dim, dim + 1)) return Rational(dim - 1, dim) * inv_a;
  return Rational(2) * inv_a - kOne;
}

AdmissibilityReport kt_admissible(const ExponentTriplet& t, int dim) {
  require_dim(dim, 1, 3);
  t.validate();

  AdmissibilityReport report;
  report.inv_a = harmonic_mean(t.inv_p, t.inv_r);
  const Rational& inv_a = report.inv_a;
  const Rational ps = inv_p_star(inv_a, dim);
  const Rational rs = inv_r_star(inv_a, dim);

  auto& v = report.violated_conditions;
  if (t.inv_q != Rational(dim, 2) * (t.inv_p - t.inv_r)) v.emplace_back("scaling");
  if (t.inv_p > ps) v.emplace_back("p_lower");
  if (t.inv_p < inv_a) v.emplace_back("p_upper");
  if (t.inv_r > inv_a) v.emplace_back("r_lower");
  if (t.inv_r < rs) v.emplace_back("r_upper");
  if (dim == 1 && inv_a != kZero && t.inv_q == inv_a && t.inv_r == kZero &&
      t.inv_p == Rational(2) * inv_a) {
    v.emplace_back("n1_exception");
  }
  report.admissible = v.empty();
  report.is_endpoint = report.admissible && inv_a != kZero &&
                       inv_a <= Rational(dim, dim + 1) && t.inv_q == inv_a &&
                       t.inv_r == rs && t.inv_p == ps;
  return report;
}

TripletPair theorem1_triplets(const Rational& inv_p, int dim) {
  require_dim(dim, 2, 3);
  const Rational n(dim);
  if (!(inv_p > kOne / n && inv_p < Rational(dim + 1, dim * dim))) {
    throw std::invalid_argument("theorem1_triplets: need 1/N < 1/p < (N+1)/N^2, got 1/p = " +
                                to_string(inv_p));
  }
  const Rational gamma = Rational(2 - dim);

  TripletPair pair;
  pair.primal.inv_p = inv_p;
  pair.primal.inv_q = n * inv_p - kOne;
  pair.primal.inv_r = Rational(2) / n - inv_p;

  pair.dual_primed.inv_p = Rational(2) * inv_p - kOne - gamma / n;
  pair.dual_primed.inv_r = Rational(2) * pair.primal.inv_r;
  pair.dual_primed.inv_q = Rational(2) * pair.primal.inv_q;
  pair.dual_primed.validate();

  finish_pair(pair, dim);
  if (pair.inv_a != kOne / n) throw std::logic_error("theorem1_triplets: HM(p, r) != 1/N");
  // 2/q + 1/q~ = 1 with 1/q < 1/2
  if (Rational(2) * pair.primal.inv_q + pair.dual.inv_q != kOne ||
      pair.primal.inv_q >= Rational(1, 2)) {
    throw std::logic_error("theorem1_triplets: time relation violated");
  }
  return pair;
}

TripletPair theorem2_triplets(const Rational& alpha, const Rational& gamma, int dim) {
  require_dim(dim, 2, 3);
  const Rational n(dim);
  if (!(gamma > -n && gamma < Rational(2 - dim))) {
    throw std::invalid_argument("theorem2_triplets: need -N < gamma < 2 - N, got gamma = " +
                                to_string(gamma));
  }
  if (!(alpha > Rational(1, 2) && alpha < Rational(dim + 1, 2 * dim))) {
    throw std::invalid_argument("theorem2_triplets: need 1/2 < alpha < (N+1)/(2N), got " +
                                to_string(alpha));
  }
  const Rational g = gamma + n;

  TripletPair pair;
  pair.primal.inv_q = (Rational(2) * alpha - kOne) * g / Rational(2);
  pair.primal.inv_r = (kOne - alpha) * g / n;
  pair.primal.inv_p = alpha * g / n;

  pair.dual_primed.inv_p = Rational(2) * pair.primal.inv_p - kOne - gamma / n;
  pair.dual_primed.inv_r = Rational(2) * pair.primal.inv_r;
  // q~ follows from the dual's own scaling relation; the time relation is strict here.
  const Rational dual_inv_p = kOne - pair.dual_primed.inv_p;
  const Rational dual_inv_r = kOne - pair.dual_primed.inv_r;
  pair.dual_primed.inv_q = kOne - Rational(dim, 2) * (dual_inv_p - dual_inv_r);
  pair.dual_primed.validate();

  finish_pair(pair, dim);
  if (pair.inv_a != g / (Rational(2) * n)) {
    throw std::logic_error("theorem2_triplets: HM(p, r) != (gamma + N)/(2N)");
  }
  if (!(Rational(2) * pair.primal.inv_q + pair.dual.inv_q < kOne &&
        pair.primal.inv_q < Rational(1, 2))) {
    throw std::logic_error("theorem2_triplets: strict time relation violated");
  }
  return pair;
}

FeasibilityMode parse_feasibility_mode(std::string_view text) {
  if (text == "equality") return FeasibilityMode::equality;
  if (text == "strict") return FeasibilityMode::strict;
  throw std::invalid_argument("unknown feasibility mode '" + std::string(text) + "'");
}

std::string_view to_string(FeasibilityMode mode) {
  return mode == FeasibilityMode::equality ? "equality" : "strict";
}

std::vector<FeasiblePoint> feasibility_scan(const Rational& gamma, int dim, FeasibilityMode mode,
                                            std::int64_t denominator) {
  require_dim(dim, 2, 3);
  const Rational n(dim);
  if (!(gamma > -n && gamma <= kZero)) {
    throw std::invalid_argument("feasibility_scan: need -N < gamma <= 0");
  }
  if (denominator < 2) throw std::invalid_argument("feasibility_scan: denominator must be >= 2");

  const Rational sum_from_v = kOne + gamma / n;    // v-variable Hoelder/HLS scaling
  const Rational sum_from_t = Rational(2) / n;     // Strichartz + time Hoelder
  const Rational diff_cap_x = kOne / n;            // 1/q < 1/2
  const Rational diff_cap_dual = sum_from_v / Rational(2);  // 1/q~ > 0

  std::vector<FeasiblePoint> out;
  for (std::int64_t i = 1; i < denominator; ++i) {
    const Rational inv_p(i, denominator);
    for (std::int64_t j = 1; j < denominator; ++j) {
      const Rational inv_r(j, denominator);
      const Rational sum = inv_p + inv_r;
      const Rational diff = inv_p - inv_r;

      if (sum != sum_from_v) continue;
      if (mode == FeasibilityMode::equality ? sum != sum_from_t : !(sum < sum_from_t)) continue;
      if (!(diff > kZero && diff < diff_cap_x)) continue;
      if (!(diff < diff_cap_dual)) continue;

      const ExponentTriplet primal{Rational(dim, 2) * diff, inv_r, inv_p};
      if (primal.inv_q > kOne) continue;
      const auto report = kt_admissible(primal, dim);
      if (!report.admissible || report.is_endpoint) continue;
      out.push_back({inv_p, inv_r, primal.inv_q, report.inv_a});
    }
  }
  return out;
}

Rational beta(const Rational& gamma, int dim) {
  require_dim(dim, 1, 3);
  if (!(gamma > Rational(-dim) && gamma < Rational(2 - dim))) {
    throw std::invalid_argument("beta: need -N < gamma < 2 - N, got gamma = " + to_string(gamma));
  }
  return (Rational(2 - dim) - gamma) / Rational(2);
}

Rational critical_inv_a(const Rational& gamma, int dim) {
  require_dim(dim, 1, 3);
  if (!(gamma > Rational(-dim))) throw std::invalid_argument("critical_inv_a: need gamma > -N");
  return (gamma + Rational(dim)) / Rational(2 * dim);
}

}  // namespace boltzlab
