#pragma once

// Score functions: the noise-invariant surprisal vector and Surprisal-based
// Score, their empirical estimates from review bundles, the baseline and
// SP-inspired benchmarks, the fully-general quadratic surprisal, and the
// pairwise comparison rule with baseline fallback.

#include <cmath>
#include <cstddef>
#include <string>

#include "surpcal/errors.hpp"
#include "surpcal/matrix.hpp"
#include "surpcal/model.hpp"
#include "surpcal/rng.hpp"

namespace surpcal {

enum class ScoreKind { NegInf, Finite, PosInf, Undefined };

// Why a score came out Undefined; drives user-facing diagnostics.
enum class UndefinedCause {
  None,
  MissingSignal,       // some signal has no reviewer, P_hat unconstructible
  NonPositiveDet,      // det(U_hat) <= 0, fractional power undefined
  SanityGate,          // binary gate P11 > P01 failed
  BadReconstruction,   // prior reconstruction from P_hat failed
};

struct CalibratedScore {
  ScoreKind kind = ScoreKind::Undefined;
  double value = 0.0;  // meaningful only when kind == Finite
  UndefinedCause cause = UndefinedCause::None;

  static CalibratedScore finite(double v) { return {ScoreKind::Finite, v, UndefinedCause::None}; }
  static CalibratedScore pos_inf() { return {ScoreKind::PosInf, 0.0, UndefinedCause::None}; }
  static CalibratedScore neg_inf() { return {ScoreKind::NegInf, 0.0, UndefinedCause::None}; }
  static CalibratedScore undefined(UndefinedCause c) { return {ScoreKind::Undefined, 0.0, c}; }

  bool is_undefined() const { return kind == ScoreKind::Undefined; }
};

// Total order on defined scores: NegInf < Finite(x) < PosInf.
// Returns -1 / 0 / +1. Comparing an Undefined score is a programming error.
inline int defined_score_cmp(const CalibratedScore& a, const CalibratedScore& b) {
  auto rank = [](ScoreKind k) {
    return k == ScoreKind::NegInf ? 0 : (k == ScoreKind::Finite ? 1 : 2);
  };
  if (a.is_undefined() || b.is_undefined())
    throw InvalidArgument("defined_score_cmp: undefined score");
  if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind) ? -1 : 1;
  if (a.kind != ScoreKind::Finite) return 0;
  if (a.value < b.value) return -1;
  return a.value > b.value ? 1 : 0;
}

enum class RankOutcome { FirstHigher, SecondHigher, Tie };

// det(U)^(-1/(2(d-1))) * (w - q).
inline Vec invariant_surprisal_vector(const StateVector& w, const JointMatrix& joint) {
  const std::size_t d = joint.dim();
  const double det = determinant(joint.u);
  if (det <= 0.0)
    throw NonPositiveDeterminant("invariant_surprisal_vector: det(U) <= 0");
  const double scale = std::pow(det, -1.0 / (2.0 * double(d - 1)));
  const Vec q = joint.marginal();
  Vec out(d);
  for (std::size_t s = 0; s < d; ++s) out[s] = scale * (w[s] - q[s]);
  return out;
}

// (E_w phi - E_q phi) * det(U)^(-1/(2(d-1))).
inline double surprisal_score(const StateVector& w, const JointMatrix& joint, const Vec& phi) {
  return dot(invariant_surprisal_vector(w, joint), phi);
}

// E_v phi, the average rating.
inline double baseline_score(const ReviewBundle& bundle) {
  return expected_score(frequency_vector(bundle), bundle.signals.phi);
}

namespace detail {
inline CalibratedScore binary_finite_score(double v1, const PredictionMatrix& phat) {
  // Binary reconstruction is closed-form and always Bayes-consistent:
  // q1 = P01 / (P01 + P10).
  const double p01 = phat.p(0, 1), p10 = phat.p(1, 0), p11 = phat.p(1, 1);
  const double denom = p01 + p10;
  if (denom <= 0.0) return CalibratedScore::undefined(UndefinedCause::BadReconstruction);
  const double q1 = p01 / denom;
  const double q0 = 1.0 - q1;
  const double gate = q0 * q1 * (p11 - p01);
  if (gate <= 0.0) return CalibratedScore::undefined(UndefinedCause::SanityGate);
  return CalibratedScore::finite((v1 - q1) / std::sqrt(gate));
}
}  // namespace detail

// Binary empirical score: +inf / -inf on unanimous votes, otherwise
// (v1 - q1) / sqrt(q0 q1 (P11 - P01)) from the reconstructed prior.
inline CalibratedScore empirical_score_binary(const ReviewBundle& bundle) {
  if (bundle.dim() != 2)
    throw InvalidArgument("empirical_score_binary: binary bundles only");
  const Vec v = frequency_vector(bundle);
  if (v[1] >= 1.0) return CalibratedScore::pos_inf();
  if (v[1] <= 0.0) return CalibratedScore::neg_inf();
  return detail::binary_finite_score(v[1], prediction_matrix_from_bundle(bundle));
}

// General empirical score: (E_v phi - E_q phi) * det(U_hat)^(-1/(2(d-1))).
// Missing signals, failed reconstruction, or det(U_hat) <= 0 yield Undefined.
inline CalibratedScore empirical_score_general(const ReviewBundle& bundle) {
  const std::size_t d = bundle.dim();
  try {
    const PredictionMatrix phat = prediction_matrix_from_bundle(bundle);
    const StateVector qhat = marginal_from_prediction(phat);
    const JointMatrix uhat = joint_from_prediction(phat);
    const double det = determinant(uhat.u);
    if (det <= 1e-12) return CalibratedScore::undefined(UndefinedCause::NonPositiveDet);
    const Vec v = frequency_vector(bundle);
    const double diff =
        expected_score(v, bundle.signals.phi) - expected_score(qhat.w, bundle.signals.phi);
    return CalibratedScore::finite(diff * std::pow(det, -1.0 / (2.0 * double(d - 1))));
  } catch (const MissingSignal&) {
    return CalibratedScore::undefined(UndefinedCause::MissingSignal);
  } catch (const InconsistentPrediction&) {
    return CalibratedScore::undefined(UndefinedCause::BadReconstruction);
  } catch (const InvalidArgument&) {
    return CalibratedScore::undefined(UndefinedCause::BadReconstruction);
  }
}

// SP-inspired benchmark: sum_s phi(s) v_s / q_s with q reconstructed from the
// predictions. Binary bundles use the phi(0) = -1, phi(1) = +1 convention.
inline CalibratedScore sp_inspired_score(const ReviewBundle& bundle) {
  const std::size_t d = bundle.dim();
  try {
    const PredictionMatrix phat = prediction_matrix_from_bundle(bundle);
    const Vec q = marginal_from_prediction(phat).w;
    const Vec v = frequency_vector(bundle);
    double score = 0.0;
    for (std::size_t s = 0; s < d; ++s) {
      const double phi = (d == 2) ? (s == 0 ? -1.0 : 1.0) : bundle.signals.phi[s];
      if (q[s] == 0.0) {
        if (v[s] > 0.0) return CalibratedScore::undefined(UndefinedCause::BadReconstruction);
        continue;
      }
      score += phi * v[s] / q[s];
    }
    return CalibratedScore::finite(score);
  } catch (const MissingSignal&) {
    return CalibratedScore::undefined(UndefinedCause::MissingSignal);
  } catch (const InconsistentPrediction&) {
    return CalibratedScore::undefined(UndefinedCause::BadReconstruction);
  } catch (const InvalidArgument&) {
    return CalibratedScore::undefined(UndefinedCause::BadReconstruction);
  }
}

// Pairwise ranking. If either calibrated score is Undefined the comparison
// degenerates to the baselines of BOTH papers. Exact equality is a Tie.
inline RankOutcome compare(const CalibratedScore& a, const CalibratedScore& b,
                           double baselineA, double baselineB) {
  int c;
  if (a.is_undefined() || b.is_undefined())
    c = baselineA < baselineB ? -1 : (baselineA > baselineB ? 1 : 0);
  else
    c = defined_score_cmp(a, b);
  if (c > 0) return RankOutcome::FirstHigher;
  if (c < 0) return RankOutcome::SecondHigher;
  return RankOutcome::Tie;
}

// Strict ranking: ties resolved by a fair coin from the caller's stream.
inline RankOutcome compare_strict(const CalibratedScore& a, const CalibratedScore& b,
                                  double baselineA, double baselineB, Rng& rng) {
  const RankOutcome r = compare(a, b, baselineA, baselineB);
  if (r != RankOutcome::Tie) return r;
  return rng.bernoulli(0.5) ? RankOutcome::FirstHigher : RankOutcome::SecondHigher;
}

// (w - q) U^-1 (w - q)^T; invariant to any invertible noise, not just the
// bias-mixture family.
inline double quadratic_surprisal(const StateVector& w, const JointMatrix& joint) {
  const std::size_t d = joint.dim();
  Matrix uinv(d);
  try {
    uinv = inverse(joint.u, 1e-10);
  } catch (const std::domain_error&) {
    throw SingularJoint("quadratic_surprisal: joint matrix not invertible");
  }
  const Vec q = joint.marginal();
  Vec diff(d);
  for (std::size_t s = 0; s < d; ++s) diff[s] = w[s] - q[s];
  return dot(diff * uinv, diff);
}

inline std::string to_string(const CalibratedScore& s) {
  switch (s.kind) {
    case ScoreKind::NegInf: return "-inf";
    case ScoreKind::PosInf: return "+inf";
    case ScoreKind::Undefined: return "undefined";
    case ScoreKind::Finite: break;
  }
  return std::to_string(s.value);
}

}  // namespace surpcal
