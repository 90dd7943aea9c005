#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tent/bigfloat.hpp"
#include "tent/chain.hpp"
#include "tent/kneading.hpp"
#include "tent/symbolic.hpp"
#include "tent/tent_map.hpp"

namespace tent {

struct OmegaApprox {
  FiniteNet net;
  std::size_t burn_in = 0;
  std::size_t samples = 0;  ///< requested
  std::size_t collected = 0;
  double cluster_tol = 0.0;
  bool truncated = false;
  std::string warning;
};

/// Orbit points T^i(x), burn_in <= i < burn_in + samples, greedily clustered
/// so that kept points are at least cluster_tol/2 apart. The orbit is
/// followed with interval arithmetic; once an enclosure gets wider than
/// cluster_tol/4 the rest is dropped and `truncated` is set.
OmegaApprox omega_approx(const TentMap& T, const BigFloat& x, std::size_t burn_in,
                         std::size_t samples, double cluster_tol = 1e-3);

struct OmegaMembership {
  bool supported = true;
  bool preperiodic = false;        ///< x's itinerary looked eventually periodic
  std::size_t failing_length = 0;  ///< first l that failed
  Word failing_word;
  std::size_t occurrences = 0;
  std::size_t last_occurrence = 0;
  std::string clause;  ///< which itinerary of y was matched
};

/// Finite-depth test of y in omega(x) through recurrence of itinerary
/// segments. Throws Uncertified when the itineraries cannot be certified.
OmegaMembership omega_membership(const TentMap& T, const BigFloat& x, const BigFloat& y,
                                 std::size_t depth, std::size_t min_occurrences,
                                 std::size_t horizon);

struct Counterexample {
  std::size_t k = 0;
  TentMap map;
  SlopeResult slope;
  FiniteNet L;
  std::vector<EPSeq> sequences;  ///< one per point of L, before dedup
  std::vector<std::string> provenance;
  std::size_t jmax = 0, nmax = 0, depth = 0;
};

/// Kneading sequence 1 0^k (110)^inf.
EPSeq counterexample_kneading(std::size_t k);

/// Truncation of sigma^n(B^j C A B^inf), j <= jmax, n <= nmax, plus the
/// period-3 cycle, with A = 1 0^k and B = 110.
Counterexample build_counterexample(std::size_t k, std::size_t depth, std::size_t jmax,
                                    std::size_t nmax, int precision = kDefaultPrecision);

enum class NonOmegaVerdict { ParityViolation, NotInLanguage, ExcludedB };
const char* to_string(NonOmegaVerdict v);

struct NonOmegaCase {
  Word H;
  NonOmegaVerdict verdict = NonOmegaVerdict::ExcludedB;
  Word window;
  std::size_t shift = 0;  ///< discrepancy index for parity cases
  std::size_t scanned = 0;
  std::string evidence;
};

struct NonOmegaCertificate {
  std::size_t k = 0;
  std::size_t window_depth = 0;
  EPSeq kneading;
  std::vector<NonOmegaCase> cases;  ///< the 8 words of {0,1}^3 in order
};

NonOmegaCertificate non_omega_certificate(std::size_t k, std::size_t window_depth);

enum class AccessibleSide { Left, Right };
const char* to_string(AccessibleSide s);

struct CriticalData {
  std::size_t period_m = 0;
  BigFloat delta_T;
  AccessibleSide accessible = AccessibleSide::Left;
  std::vector<Interval> orbit;  ///< T^i(c), i < m
  BigFloat min_gap;
  Parity head_parity = Parity::Even;  ///< parity of K|_{m-1}
  bool parity_agrees = true;
  TentMap map;  ///< with the critical itinerary attached
};

/// Throws PreconditionFailed when c is not found periodic with m >= 3.
CriticalData critical_data(const TentMap& T, std::size_t max_period = 64);

struct PrecriticalPoint {
  BigFloat p;
  std::size_t n_p = 0;
  Word address;  ///< itin(p)|n_p
};

struct PrecriticalSet {
  std::vector<PrecriticalPoint> points;  ///< sorted by p
  std::size_t bound = 0;                 ///< n_p < bound
  bool capped = false;

  FiniteNet net() const;
};

/// Preimages of c with n_p < max(n, 2m), by breadth-first search.
PrecriticalSet precritical_set(const TentMap& T, std::size_t n, std::size_t period_m,
                               std::size_t cap = 1 << 16);
PrecriticalSet precritical_set(const TentMap& T, std::size_t n);

struct ExtensionCluster {
  BigFloat p;
  std::size_t n_p = 0;
  std::vector<BigFloat> points;
};

struct Extension {
  FiniteNet net;
  std::vector<BigFloat> seed;  ///< samples of D n A n closed ball(c, 2^-n delta_T)
  std::vector<ExtensionCluster> clusters;
};

/// D together with the pullbacks of D n A near c to each precritical p in D.
Extension extend_ict(const TentMap& T, const FiniteNet& D, std::size_t n,
                     const CriticalData& cd, const PrecriticalSet& P);

struct ConstructionOptions {
  std::size_t stages = 5;
  std::size_t burn_in = 1000;
  std::size_t samples = 10000;
  std::size_t trials = 8;
  std::size_t calibration_length = 200;
  std::uint64_t seed = 20240917;
  double cluster_tol = 1e-3;
  std::vector<double> epsilon_schedule;  ///< optional caps on eps_n
  std::size_t max_retries = 3;
};

struct Segment {
  char kind = 'c';  ///< 'c' through F_n, 'd' back to the anchor
  std::size_t stage = 0;
  std::vector<BigFloat> pseudo_orbit;
  std::size_t length = 0;  ///< J_n or K_n
  bool padded = false;
  OrbitCheck check = OrbitCheck::Valid;
  Interval enclosure;
  double shadow_error = 0.0;
  Word word;
};

struct StageRecord {
  std::size_t n = 0;
  std::size_t q = 0;
  std::vector<BigFloat> F;
  double epsilon = 0.0;
  double eta = 0.0;
  std::size_t retries = 0;
  std::size_t work_net_size = 0;
  std::size_t extension_points = 0;
  std::size_t precritical_count = 0;
  CalibrationResult calibration;
  std::vector<std::size_t> segments;  ///< indices into ConstructionTrace::segments
};

enum class ConstructionCase { Constructed, OrbitOfC, NoCriticalPoint, Zero };
const char* to_string(ConstructionCase c);

struct ConstructionTrace {
  ConstructionCase which = ConstructionCase::Constructed;
  std::string note;
  std::vector<StageRecord> stages;
  std::vector<Segment> segments;
  std::size_t repeats = 0;  ///< extra copies of the last stage's loop
  Word gamma;
  std::optional<AdmissibilityVerdict> gamma_admissible;
  std::size_t orbit_checks = 0;
  std::size_t orbit_check_failures = 0;
  std::optional<Interval> y;
  std::optional<OmegaApprox> omega;
  double hausdorff = 0.0;
  int y_precision = 0;
  BigFloat anchor;
};

/// Builds y with omega(y) close to D through staged pseudo-orbits and
/// shadowing. Throws StageFailed (with the stage index) or PreconditionFailed.
ConstructionTrace construct_omega_point(const TentMap& T, const FiniteNet& D,
                                        const ConstructionOptions& opt = {});

/// Net on [T^2(c), T(c)] with the given resolution.
FiniteNet core_net(const TentMap& T, double resolution);

}  // namespace tent
