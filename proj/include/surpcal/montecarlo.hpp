#pragma once

// Monte Carlo harness for the binary pairwise-ranking experiments: accuracy
// sweeps over paper B's noise level and empirical validation of the closed
// form error bounds. Trials are seeded from (masterSeed, gridIndex,
// trialIndex), so results are independent of the number of worker threads.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "surpcal/beta_model.hpp"
#include "surpcal/bounds.hpp"
#include "surpcal/model.hpp"
#include "surpcal/noise.hpp"
#include "surpcal/rng.hpp"
#include "surpcal/scoring.hpp"

namespace surpcal {

enum class BiasMode { Opposite, Same };

inline const char* to_string(BiasMode m) { return m == BiasMode::Opposite ? "opposite" : "same"; }

// Paper A keeps the positive bias [0,1]; paper B's bias depends on the mode.
inline Vec bias_a(BiasMode) { return {0.0, 1.0}; }
inline Vec bias_b(BiasMode m) {
  return m == BiasMode::Opposite ? Vec{1.0, 0.0} : Vec{0.0, 1.0};
}

inline std::vector<double> default_lambda_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 18; ++i) g.push_back(0.05 * i);
  return g;
}

struct ExperimentConfig {
  std::variant<BetaPrior, DiscretePrior> prior = BetaPrior(1.0, 1.0);
  std::size_t nReviewers = 3;
  double lambdaA = 0.0;
  std::vector<double> lambdaBGrid = default_lambda_grid();
  BiasMode biasMode = BiasMode::Opposite;
  std::uint64_t trials = 200000;
  std::uint64_t masterSeed = 1;

  void validate() const {
    if (trials == 0) throw InvalidArgument("ExperimentConfig: trials must be >= 1");
    if (nReviewers == 0) throw InvalidArgument("ExperimentConfig: nReviewers must be >= 1");
    if (lambdaBGrid.empty()) throw InvalidArgument("ExperimentConfig: empty lambda grid");
    if (!(lambdaA >= 0.0 && lambdaA < 1.0))
      throw InvalidArgument("ExperimentConfig: lambdaA out of range");
    for (double l : lambdaBGrid)
      if (!(l >= 0.0 && l < 1.0)) throw InvalidArgument("ExperimentConfig: lambdaB out of range");
    if (const auto* dp = std::get_if<DiscretePrior>(&prior); dp && dp->dim() != 2)
      throw InvalidArgument("ExperimentConfig: harness is binary, discrete prior must have d=2");
  }

  NoiseModel noise_a() const { return NoiseModel(lambdaA, bias_a(biasMode)); }
  NoiseModel noise_b(double lambdaB) const { return NoiseModel(lambdaB, bias_b(biasMode)); }

  JointMatrix clean_joint() const {
    if (const auto* bp = std::get_if<BetaPrior>(&prior)) return beta_clean_joint(*bp);
    return joint_from_discrete_prior(std::get<DiscretePrior>(prior));
  }
};

namespace detail {

// Everything the binary empirical score needs once the accept count is known:
// score = (v1 - q1) / c with c = sqrt(q0 q1 (P11 - P01)).
struct BinaryScoreModel {
  double q1;        // reconstructed noisy prior of "accept"
  double c;         // positive scale; shared by all bundles under this noise
  double spScale0;  // 1/q0 for the SP-inspired score
  double spScale1;  // 1/q1

  static BinaryScoreModel from_noisy_joint(const JointMatrix& uhat) {
    const PredictionMatrix phat = prediction_from_joint(uhat);
    const double p01 = phat.p(0, 1), p10 = phat.p(1, 0), p11 = phat.p(1, 1);
    const double q1 = p01 / (p01 + p10);
    const double q0 = 1.0 - q1;
    const double gate = q0 * q1 * (p11 - p01);
    if (gate <= 0.0)
      throw NonPositiveDeterminant("BinaryScoreModel: sanity gate failed for the model");
    return {q1, std::sqrt(gate), 1.0 / q0, 1.0 / q1};
  }

  CalibratedScore surprisal(std::size_t accepts, std::size_t n) const {
    if (accepts == n) return CalibratedScore::pos_inf();
    if (accepts == 0) return CalibratedScore::neg_inf();
    const double v1 = double(accepts) / double(n);
    return CalibratedScore::finite((v1 - q1) / c);
  }

  CalibratedScore sp(std::size_t accepts, std::size_t n) const {
    if (accepts == 0 || accepts == n)
      return CalibratedScore::undefined(UndefinedCause::MissingSignal);
    const double v1 = double(accepts) / double(n);
    return CalibratedScore::finite(v1 * spScale1 - (1.0 - v1) * spScale0);
  }
};

}  // namespace detail

// Per-grid-point model shared by every trial of that grid point.
struct GridPointModel {
  double lambdaA, lambdaB;
  Vec biasA, biasB;
  detail::BinaryScoreModel scoreA, scoreB;

  static GridPointModel build(const ExperimentConfig& cfg, double lambdaB) {
    const JointMatrix u = cfg.clean_joint();
    const NoiseModel ma = cfg.noise_a();
    const NoiseModel mb = cfg.noise_b(lambdaB);
    return {cfg.lambdaA,
            lambdaB,
            ma.bias,
            mb.bias,
            detail::BinaryScoreModel::from_noisy_joint(apply_to_joint(ma, u)),
            detail::BinaryScoreModel::from_noisy_joint(apply_to_joint(mb, u))};
  }
};

// Outcome weights in half-units: 2 = correct, 1 = tie, 0 = wrong.
struct TrialOutcome {
  unsigned surprisal;
  unsigned baseline;
  unsigned spInspired;
};

namespace detail {

inline double sample_quality(const ExperimentConfig& cfg, Rng& rng) {
  if (const auto* bp = std::get_if<BetaPrior>(&cfg.prior)) return rng.beta(bp->alpha, bp->beta);
  const auto& dp = std::get<DiscretePrior>(cfg.prior);
  return dp.states[rng.categorical(dp.probs)].w[1];
}

inline std::size_t sample_accept_count(double what1, std::size_t n, Rng& rng) {
  // Matches the categorical draw order used by sample_reviews.
  Vec w{1.0 - what1, what1};
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) k += rng.categorical(w);
  return k;
}

inline unsigned outcome_weight(RankOutcome r, bool bBetter) {
  if (r == RankOutcome::Tie) return 1;
  const bool rankedBHigher = (r == RankOutcome::SecondHigher);
  return rankedBHigher == bBetter ? 2 : 0;
}

}  // namespace detail

// One pairwise trial, fully determined by (masterSeed, gridIndex, trialIndex).
inline TrialOutcome run_trial(const ExperimentConfig& cfg, const GridPointModel& gp,
                              std::uint64_t gridIndex, std::uint64_t trialIndex) {
  Rng rng(cfg.masterSeed, gridIndex, trialIndex);
  const double w1A = detail::sample_quality(cfg, rng);
  double w1B = detail::sample_quality(cfg, rng);
  for (int attempt = 0; w1B == w1A; ++attempt) {  // resample exact quality ties
    if (attempt >= 1000)
      throw InvalidArgument("run_trial: prior admits no distinct paper qualities");
    w1B = detail::sample_quality(cfg, rng);
  }
  const bool bBetter = w1B > w1A;

  const std::size_t n = cfg.nReviewers;
  const double what1A = (1.0 - gp.lambdaA) * w1A + gp.lambdaA * gp.biasA[1];
  const double what1B = (1.0 - gp.lambdaB) * w1B + gp.lambdaB * gp.biasB[1];
  const std::size_t kA = detail::sample_accept_count(what1A, n, rng);
  const std::size_t kB = detail::sample_accept_count(what1B, n, rng);
  const double baseA = double(kA) / double(n), baseB = double(kB) / double(n);

  const RankOutcome surp = compare(gp.scoreA.surprisal(kA, n), gp.scoreB.surprisal(kB, n),
                                   baseA, baseB);
  const RankOutcome base = baseA > baseB   ? RankOutcome::FirstHigher
                           : baseA < baseB ? RankOutcome::SecondHigher
                                           : RankOutcome::Tie;
  const RankOutcome sp = compare(gp.scoreA.sp(kA, n), gp.scoreB.sp(kB, n), baseA, baseB);
  return {detail::outcome_weight(surp, bBetter), detail::outcome_weight(base, bBetter),
          detail::outcome_weight(sp, bBetter)};
}

struct AccuracyResult {
  std::string method;
  double lambdaA = 0.0;
  double lambdaB = 0.0;
  std::size_t nReviewers = 0;
  BiasMode biasMode = BiasMode::Opposite;
  double priorAlpha = 0.0;  // 0/0 for discrete priors
  double priorBeta = 0.0;
  std::uint64_t trials = 0;
  double accuracy = 0.0;
  double standardError = 0.0;
};

namespace detail {

inline std::size_t worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 4;
}

// Sums trial weights over [0, trials) for one grid point, chunked over
// threads; integer accumulation keeps the merge order-independent.
struct WeightSums {
  std::uint64_t surprisal = 0, baseline = 0, sp = 0;
};

inline WeightSums accumulate_grid_point(const ExperimentConfig& cfg, const GridPointModel& gp,
                                        std::uint64_t gridIndex, std::size_t threads) {
  const std::size_t nw = worker_count(threads);
  std::vector<WeightSums> partial(nw);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      WeightSums acc;
      for (std::uint64_t t = w; t < cfg.trials; t += nw) {
        const TrialOutcome o = run_trial(cfg, gp, gridIndex, t);
        acc.surprisal += o.surprisal;
        acc.baseline += o.baseline;
        acc.sp += o.spInspired;
      }
      partial[w] = acc;
    });
  }
  for (auto& th : pool) th.join();
  WeightSums total;
  for (const auto& p : partial) {
    total.surprisal += p.surprisal;
    total.baseline += p.baseline;
    total.sp += p.sp;
  }
  return total;
}

inline AccuracyResult make_result(const ExperimentConfig& cfg, double lambdaB,
                                  const std::string& method, std::uint64_t weightSum) {
  AccuracyResult r;
  r.method = method;
  r.lambdaA = cfg.lambdaA;
  r.lambdaB = lambdaB;
  r.nReviewers = cfg.nReviewers;
  r.biasMode = cfg.biasMode;
  if (const auto* bp = std::get_if<BetaPrior>(&cfg.prior)) {
    r.priorAlpha = bp->alpha;
    r.priorBeta = bp->beta;
  }
  r.trials = cfg.trials;
  r.accuracy = double(weightSum) / (2.0 * double(cfg.trials));
  r.standardError = std::sqrt(r.accuracy * (1.0 - r.accuracy) / double(cfg.trials));
  return r;
}

}  // namespace detail

// One AccuracyResult per (grid point x method). `gridIndexBase` offsets the
// seeding key so multiple scenarios under one master seed stay independent.
inline std::vector<AccuracyResult> estimate_accuracy(const ExperimentConfig& cfg,
                                                     std::size_t threads = 0,
                                                     std::uint64_t gridIndexBase = 0) {
  cfg.validate();
  std::vector<AccuracyResult> out;
  for (std::size_t g = 0; g < cfg.lambdaBGrid.size(); ++g) {
    const double lambdaB = cfg.lambdaBGrid[g];
    const GridPointModel gp = GridPointModel::build(cfg, lambdaB);
    const auto sums =
        detail::accumulate_grid_point(cfg, gp, gridIndexBase + g, threads);
    out.push_back(detail::make_result(cfg, lambdaB, "surprisal", sums.surprisal));
    out.push_back(detail::make_result(cfg, lambdaB, "baseline", sums.baseline));
    out.push_back(detail::make_result(cfg, lambdaB, "sp_inspired", sums.sp));
  }
  return out;
}

struct BoundValidation {
  double empiricalError;
  double standardError;
  double boundValue;
};

// Empirical error frequency (half-tie convention) for FIXED clean states vs
// the closed-form binary bound. Predictions come from the two-point uniform
// prior over {w^A, w^B}.
inline BoundValidation validate_bound(double w1A, double w1B, const NoiseModel& noiseA,
                                      const NoiseModel& noiseB, std::uint64_t nA,
                                      std::uint64_t nB, std::uint64_t trials,
                                      std::uint64_t seed, std::size_t threads = 0) {
  if (!(w1A < w1B)) throw InvalidArgument("validate_bound: need w1A < w1B");
  const StateVector stateA(Vec{1.0 - w1A, w1A});
  const StateVector stateB(Vec{1.0 - w1B, w1B});
  const DiscretePrior prior({stateA, stateB}, {0.5, 0.5});
  const JointMatrix u = joint_from_discrete_prior(prior);
  const auto scoreA = detail::BinaryScoreModel::from_noisy_joint(apply_to_joint(noiseA, u));
  const auto scoreB = detail::BinaryScoreModel::from_noisy_joint(apply_to_joint(noiseB, u));
  const double whatA = apply_to_state(noiseA, stateA)[1];
  const double whatB = apply_to_state(noiseB, stateB)[1];

  const std::size_t nw = detail::worker_count(threads);
  std::vector<std::uint64_t> partial(nw, 0);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      std::uint64_t errHalves = 0;
      for (std::uint64_t t = w; t < trials; t += nw) {
        Rng rng(seed, 0, t);
        const std::size_t kA = detail::sample_accept_count(whatA, nA, rng);
        const std::size_t kB = detail::sample_accept_count(whatB, nB, rng);
        const double baseA = double(kA) / double(nA), baseB = double(kB) / double(nB);
        const RankOutcome r = compare(scoreA.surprisal(kA, nA), scoreB.surprisal(kB, nB),
                                      baseA, baseB);
        // Error event: A (the worse paper) ranked higher; ties count half.
        if (r == RankOutcome::FirstHigher) errHalves += 2;
        else if (r == RankOutcome::Tie) errHalves += 1;
      }
      partial[w] = errHalves;
    });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (auto p : partial) total += p;

  const double err = double(total) / (2.0 * double(trials));
  const double se = std::sqrt(err * (1.0 - err) / double(trials));
  const BoundInput in(stateA, stateB, noiseA, noiseB, nA, nB, {0.0, 1.0});
  return {err, se, binary_error_bound(in)};
}

// CSV with the fixed column order; 6-decimal formatting keeps diffs stable.
inline std::string results_to_csv(const std::vector<AccuracyResult>& results) {
  std::ostringstream os;
  os << "prior_alpha,prior_beta,bias_mode,n_reviewers,lambda_A,lambda_B,method,"
        "trials,accuracy,std_error\n";
  os.setf(std::ios::fixed);
  os.precision(6);
  for (const auto& r : results) {
    os << r.priorAlpha << ',' << r.priorBeta << ',' << to_string(r.biasMode) << ','
       << r.nReviewers << ',' << r.lambdaA << ',' << r.lambdaB << ',' << r.method << ','
       << r.trials << ',' << r.accuracy << ',' << r.standardError << '\n';
  }
  return os.str();
}

}  // namespace surpcal
