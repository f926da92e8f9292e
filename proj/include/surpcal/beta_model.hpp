#pragma once

// Closed-form binary model under a Beta prior on w_1. With mu1 = E[w1] and
// mu2 = E[w1^2], the clean joint is
//   U = [[1 - 2 mu1 + mu2, mu1 - mu2], [mu1 - mu2, mu2]],
// which the noise maps to U_hat = M^T U M, q_hat = q M.

#include "surpcal/model.hpp"
#include "surpcal/noise.hpp"

namespace surpcal {

struct BetaNoisyModel {
  StateVector qhat;
  JointMatrix uhat;
  PredictionMatrix phat;
};

inline JointMatrix beta_clean_joint(const BetaPrior& prior) {
  const double ab = prior.alpha + prior.beta;
  const double mu1 = prior.alpha / ab;
  const double mu2 = prior.alpha * (prior.alpha + 1.0) / (ab * (ab + 1.0));
  return JointMatrix(Matrix(2, {1.0 - 2.0 * mu1 + mu2, mu1 - mu2, mu1 - mu2, mu2}));
}

inline BetaNoisyModel beta_noisy_model(const BetaPrior& prior, const NoiseModel& noise) {
  if (noise.bias.size() != 2)
    throw InvalidArgument("beta_noisy_model: binary only (d = 2)");
  const JointMatrix u = beta_clean_joint(prior);
  JointMatrix uhat = apply_to_joint(noise, u);
  StateVector qhat(uhat.marginal());
  PredictionMatrix phat = prediction_from_joint(uhat);
  return BetaNoisyModel{std::move(qhat), std::move(uhat), std::move(phat)};
}

}  // namespace surpcal
