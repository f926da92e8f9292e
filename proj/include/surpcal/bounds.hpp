#pragma once

// Closed-form error-probability upper bounds for pairwise ranking by the
// empirical score. Values are reported unclipped; they can exceed 1 when the
// inputs make the bound vacuous.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

#include "surpcal/errors.hpp"
#include "surpcal/model.hpp"
#include "surpcal/noise.hpp"

namespace surpcal {

struct BoundInput {
  StateVector cleanA;
  StateVector cleanB;
  NoiseModel noiseA;
  NoiseModel noiseB;
  std::uint64_t nA;
  std::uint64_t nB;
  Vec phi;
  std::optional<JointMatrix> joint;  // required for the ideal-knowledge variant

  BoundInput(StateVector a, StateVector b, NoiseModel na, NoiseModel nb,
             std::uint64_t countA, std::uint64_t countB, Vec phi_,
             std::optional<JointMatrix> u = std::nullopt)
      : cleanA(std::move(a)),
        cleanB(std::move(b)),
        noiseA(std::move(na)),
        noiseB(std::move(nb)),
        nA(countA),
        nB(countB),
        phi(std::move(phi_)),
        joint(std::move(u)) {
    if (nA == 0 || nB == 0) throw InvalidArgument("BoundInput: reviewer counts must be >= 1");
    if (cleanA.dim() != cleanB.dim() || cleanA.dim() != phi.size())
      throw InvalidArgument("BoundInput: dimension mismatch");
    if (!(expected_score(cleanA.w, phi) < expected_score(cleanB.w, phi)))
      throw InvalidArgument("BoundInput: paper A must have strictly lower quality");
  }
};

namespace detail {
inline double hoeffding_denominator(const BoundInput& in) {
  const double la = 1.0 - in.noiseA.lambda, lb = 1.0 - in.noiseB.lambda;
  return 1.0 / (double(in.nA) * la * la) + 1.0 / (double(in.nB) * lb * lb);
}
}  // namespace detail

// Three-term binary bound: unanimous-vote terms plus the Hoeffding term.
inline double binary_error_bound(const BoundInput& in) {
  if (in.cleanA.dim() != 2) throw InvalidArgument("binary_error_bound: d must be 2");
  const double wa = apply_to_state(in.noiseA, in.cleanA)[1];
  const double wb = apply_to_state(in.noiseB, in.cleanB)[1];
  const double na = double(in.nA), nb = double(in.nB);
  const double allAccA = std::pow(wa, na), allAccB = std::pow(wb, nb);
  const double allRejA = std::pow(1.0 - wa, na), allRejB = std::pow(1.0 - wb, nb);
  const double gap = in.cleanB.w[1] - in.cleanA.w[1];
  const double expTerm = std::exp(-2.0 * gap * gap / detail::hoeffding_denominator(in));
  return allAccA + allRejB - 0.5 * (allAccA * allAccB + allRejA * allRejB) + expTerm;
}

// General-alphabet bound: per-signal missing-signal terms plus the
// range-normalized Hoeffding term.
inline double general_error_bound(const BoundInput& in) {
  const StateVector wa = apply_to_state(in.noiseA, in.cleanA);
  const StateVector wb = apply_to_state(in.noiseB, in.cleanB);
  double missing = 0.0;
  for (std::size_t s = 0; s < wa.dim(); ++s) {
    missing += std::pow(1.0 - wa[s], double(in.nA));
    missing += std::pow(1.0 - wb[s], double(in.nB));
  }
  const double gap = expected_score(in.cleanB.w, in.phi) - expected_score(in.cleanA.w, in.phi);
  const double range = *std::max_element(in.phi.begin(), in.phi.end()) -
                       *std::min_element(in.phi.begin(), in.phi.end());
  const double expTerm =
      std::exp(-2.0 * gap * gap / (range * range * detail::hoeffding_denominator(in)));
  return missing + expTerm;
}

// Ideal-knowledge Hoeffding term; the exponent carries the extra factor
// det(U)^(-1/(d-1)), so it is tighter than the plain concentration term
// whenever det(U) <= 1.
inline double lemma_ideal_bound(const BoundInput& in) {
  if (!in.joint) throw InvalidArgument("lemma_ideal_bound: joint matrix required");
  const double det = determinant(in.joint->u);
  if (det <= 0.0) throw NonPositiveDeterminant("lemma_ideal_bound: det(U) <= 0");
  const std::size_t d = in.cleanA.dim();
  const double gap = expected_score(in.cleanB.w, in.phi) - expected_score(in.cleanA.w, in.phi);
  const double range = *std::max_element(in.phi.begin(), in.phi.end()) -
                       *std::min_element(in.phi.begin(), in.phi.end());
  const double detFactor = std::pow(det, -1.0 / double(d - 1));
  return std::exp(-2.0 * gap * gap * detFactor /
                  (range * range * detail::hoeffding_denominator(in)));
}

}  // namespace surpcal
