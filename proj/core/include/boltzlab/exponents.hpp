#pragma once

// Exact-rational exponent algebra for kinetic-transport Strichartz triplets.
//
// Every exponent is stored as its reciprocal, so 1/inf is encoded as 0 and
// all reciprocals live in [0, 1]. Nothing in this header touches floating
// point: the feasibility boundaries are measure-zero sets and only exact
// comparison gives meaningful answers on them.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace boltzlab {

using Rational = boost::rational<std::int64_t>;

/// Parses "a/b", "a", "-a/b" exactly. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Parses an exponent ("5/3", "2", "inf") and returns its reciprocal.
Rational parse_exponent_reciprocal(std::string_view text);

std::string to_string(const Rational& r);

/// Formats the exponent whose reciprocal is given ("inf" for 0).
std::string exponent_string(const Rational& reciprocal);

double to_double(const Rational& r);

struct ExponentTriplet {
  Rational inv_q;
  Rational inv_r;
  Rational inv_p;

  /// Throws std::invalid_argument unless all reciprocals lie in [0,1].
  void validate() const;

  friend bool operator==(const ExponentTriplet&, const ExponentTriplet&) = default;
};

/// (1/q, 1/r, 1/p) -> (1 - 1/q, 1 - 1/r, 1 - 1/p).
ExponentTriplet conjugate(const ExponentTriplet& t);

struct AdmissibilityReport {
  bool admissible = false;
  bool is_endpoint = false;
  std::vector<std::string> violated_conditions;
  Rational inv_a;  // 1/a with a = HM(p, r); zero means a = inf
};

/// 1/a = (1/p + 1/r) / 2.
Rational harmonic_mean(const Rational& inv_p, const Rational& inv_r);

/// Reciprocal of the exact lower bound p*(a); two branches split at a = (N+1)/N.
Rational inv_p_star(const Rational& inv_a, int dim);
/// Reciprocal of the exact upper bound r*(a).
Rational inv_r_star(const Rational& inv_a, int dim);

/// Checks the KT-admissibility window for dimension dim in {1,2,3}.
///
/// Conditions reported by name when violated:
///   "scaling"        1/q = (N/2)(1/p - 1/r)
///   "p_lower"        p*(a) <= p
///   "p_upper"        p <= a
///   "r_lower"        a <= r
///   "r_upper"        r <= r*(a)
///   "n1_exception"   N = 1 and (q, r, p) = (a, inf, a/2)
/// Endpoints (a, r*(a), p*(a)) with (N+1)/N <= a < inf are admissible but
/// flagged; the Strichartz-facing operations never accept them.
AdmissibilityReport kt_admissible(const ExponentTriplet& t, int dim);

/// The pair of triplets entering the inhomogeneous estimate.
///
/// `dual_primed` holds (1/q~', 1/r~', 1/p~'); `dual` is its conjugate.
/// `dual_window_ok` records whether the conjugated dual additionally passes
/// the full KT-admissibility window (not only the scaling relation).
struct TripletPair {
  ExponentTriplet primal;
  ExponentTriplet dual_primed;
  ExponentTriplet dual;
  Rational inv_a;
  AdmissibilityReport primal_report;
  AdmissibilityReport dual_report;
  bool dual_window_ok = false;
};

/// Critical case gamma = 2 - N, data in L^N:
///   1/q = N/p - 1, 1/r = 2/N - 1/p, 1/N < 1/p < (N+1)/N^2.
/// The dual is fixed by 2/p = 1 + gamma/N + 1/p~', 1/r~' = 2/r, 1/q~' = 2/q.
/// Throws std::invalid_argument for dim outside {2,3} or inv_p outside the
/// open interval; throws std::logic_error if a derived relation fails.
TripletPair theorem1_triplets(const Rational& inv_p, int dim);

/// Subcritical case -N < gamma < 2 - N, data in L^a with a = 2N/(gamma+N):
///   1/q = (2 alpha - 1)(gamma + N)/2
///   1/r = (1 - alpha)(gamma + N)/N
///   1/p = alpha (gamma + N)/N,   1/2 < alpha < (N+1)/(2N).
/// The dual uses the same v/x relations and its own scaling relation for q~;
/// the time relation 2/q + 1/q~ < 1 is checked strictly.
TripletPair theorem2_triplets(const Rational& alpha, const Rational& gamma, int dim);

enum class FeasibilityMode { equality, strict };

FeasibilityMode parse_feasibility_mode(std::string_view text);
std::string_view to_string(FeasibilityMode mode);

struct FeasiblePoint {
  Rational inv_p;
  Rational inv_r;
  Rational inv_q;
  Rational inv_a;

  friend bool operator==(const FeasiblePoint&, const FeasiblePoint&) = default;
};

/// Brute-force scan of (1/p, 1/r) = (i/D, j/D), 0 < i, j < D.
///
/// equality: 1/p + 1/r = 1 + gamma/N = 2/N, 0 < 1/p - 1/r < min(1/N, (1 + gamma/N)/2)
/// strict:   1/p + 1/r = 1 + gamma/N < 2/N, same difference window
/// In both modes the primal triplet must also be KT-admissible and not an
/// endpoint. Points are returned sorted by (1/p, 1/r).
/// Requires -N < gamma <= 0 and denominator >= 2.
std::vector<FeasiblePoint> feasibility_scan(const Rational& gamma, int dim,
                                            FeasibilityMode mode,
                                            std::int64_t denominator = 120);

/// beta = ((2 - N) - gamma) / 2, the power of T gained on short horizons.
/// Throws std::invalid_argument unless -N < gamma < 2 - N.
Rational beta(const Rational& gamma, int dim);

/// Data exponent a = 2N / (gamma + N), returned as 1/a.
Rational critical_inv_a(const Rational& gamma, int dim);

}  // namespace boltzlab
