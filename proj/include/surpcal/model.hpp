#pragma once

// The signal-prediction model: signal alphabets, states, priors, joint and
// prediction matrices, prior reconstruction from predictions, and sampling of
// reviewer bundles under the perfect-Bayesian assumption.

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "surpcal/errors.hpp"
#include "surpcal/matrix.hpp"
#include "surpcal/rng.hpp"

namespace surpcal {

namespace detail {
inline void check_probability_vector(const Vec& v, double tol, const char* what) {
  double sum = 0.0;
  for (double x : v) {
    if (x < -tol) throw InvalidArgument(std::string(what) + ": negative entry");
    sum += x;
  }
  if (std::fabs(sum - 1.0) > tol)
    throw InvalidArgument(std::string(what) + ": entries must sum to 1");
}
}  // namespace detail

// Ordered signal alphabet plus the score map phi: signal -> real.
struct SignalSet {
  std::vector<std::string> labels;
  Vec phi;

  SignalSet(std::vector<std::string> labels_, Vec phi_)
      : labels(std::move(labels_)), phi(std::move(phi_)) {
    if (labels.size() < 2) throw InvalidArgument("SignalSet: need at least 2 signals");
    if (phi.size() != labels.size())
      throw InvalidArgument("SignalSet: phi size mismatch");
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size())
      throw InvalidArgument("SignalSet: duplicate labels");
    if (std::set<double>(phi.begin(), phi.end()).size() != phi.size())
      throw InvalidArgument("SignalSet: phi must be injective");
  }

  static SignalSet binary() { return SignalSet({"reject", "accept"}, {0.0, 1.0}); }

  std::size_t size() const { return labels.size(); }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t s = 0; s < labels.size(); ++s)
      if (labels[s] == label) return s;
    throw InvalidArgument("SignalSet: unknown label '" + label + "'");
  }
};

// Per-signal emission probabilities of one paper.
struct StateVector {
  Vec w;
  explicit StateVector(Vec w_) : w(std::move(w_)) {
    detail::check_probability_vector(w, 1e-12, "StateVector");
  }
  std::size_t dim() const { return w.size(); }
  double operator[](std::size_t s) const { return w[s]; }
};

inline double expected_score(const Vec& weights, const Vec& phi) {
  return dot(weights, phi);
}

// Finite prior over states.
struct DiscretePrior {
  std::vector<StateVector> states;
  Vec probs;

  DiscretePrior(std::vector<StateVector> states_, Vec probs_)
      : states(std::move(states_)), probs(std::move(probs_)) {
    if (states.empty() || states.size() != probs.size())
      throw InvalidArgument("DiscretePrior: states/probs size mismatch");
    detail::check_probability_vector(probs, 1e-12, "DiscretePrior");
    for (const auto& st : states)
      if (st.dim() != states.front().dim())
        throw InvalidArgument("DiscretePrior: inconsistent state dimensions");
  }
  std::size_t dim() const { return states.front().dim(); }
};

// Binary-only continuous prior over w_1.
struct BetaPrior {
  double alpha;
  double beta;
  BetaPrior(double a, double b) : alpha(a), beta(b) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("BetaPrior: parameters must be > 0");
  }
};

// Joint distribution of two reviewers' signals; symmetric, sums to 1.
struct JointMatrix {
  Matrix u;
  explicit JointMatrix(Matrix m, double symTol = 1e-9) : u(std::move(m)) {
    const std::size_t d = u.dim();
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (u(i, j) < -1e-12) throw InvalidArgument("JointMatrix: negative entry");
        if (std::fabs(u(i, j) - u(j, i)) > symTol)
          throw InvalidArgument("JointMatrix: not symmetric");
        sum += u(i, j);
      }
    if (std::fabs(sum - 1.0) > 1e-9)
      throw InvalidArgument("JointMatrix: entries must sum to 1");
  }
  std::size_t dim() const { return u.dim(); }
  // Row sums q_s = sum_t U_{s,t}.
  Vec marginal() const {
    Vec q(dim(), 0.0);
    for (std::size_t s = 0; s < dim(); ++s)
      for (std::size_t t = 0; t < dim(); ++t) q[s] += u(s, t);
    return q;
  }
};

// Row-stochastic Bayesian posterior P_{s,t} = Pr[peer emits t | I emitted s].
struct PredictionMatrix {
  Matrix p;
  explicit PredictionMatrix(Matrix m, double rowTol = 1e-9) : p(std::move(m)) {
    const std::size_t d = p.dim();
    for (std::size_t s = 0; s < d; ++s) {
      double row = 0.0;
      for (std::size_t t = 0; t < d; ++t) {
        if (p(s, t) < -1e-12) throw InvalidArgument("PredictionMatrix: negative entry");
        row += p(s, t);
      }
      if (std::fabs(row - 1.0) > rowTol)
        throw InvalidArgument("PredictionMatrix: row must sum to 1");
    }
  }
  std::size_t dim() const { return p.dim(); }
};

// n reviewers' reported signals plus their posterior prediction vectors.
struct ReviewBundle {
  SignalSet signals;
  std::vector<std::size_t> ratings;
  std::vector<Vec> predictions;

  ReviewBundle(SignalSet sig, std::vector<std::size_t> ratings_,
               std::vector<Vec> predictions_)
      : signals(std::move(sig)),
        ratings(std::move(ratings_)),
        predictions(std::move(predictions_)) {
    if (ratings.empty()) throw InvalidArgument("ReviewBundle: need at least one reviewer");
    if (ratings.size() != predictions.size())
      throw InvalidArgument("ReviewBundle: ratings/predictions size mismatch");
    for (std::size_t r : ratings)
      if (r >= signals.size()) throw InvalidArgument("ReviewBundle: rating out of range");
    for (const Vec& p : predictions) {
      if (p.size() != signals.size())
        throw InvalidArgument("ReviewBundle: prediction vector size mismatch");
      detail::check_probability_vector(p, 1e-9, "ReviewBundle prediction");
    }
  }
  std::size_t reviewer_count() const { return ratings.size(); }
  std::size_t dim() const { return signals.size(); }
};

// Empirical rating frequencies v_s = #{i: rating_i = s} / n.
inline Vec frequency_vector(const ReviewBundle& bundle) {
  Vec v(bundle.dim(), 0.0);
  for (std::size_t r : bundle.ratings) v[r] += 1.0;
  for (double& x : v) x /= static_cast<double>(bundle.reviewer_count());
  return v;
}

// U_{s,t} = sum_k q_k w_k(s) w_k(t).
inline JointMatrix joint_from_discrete_prior(const DiscretePrior& prior) {
  const std::size_t d = prior.dim();
  Matrix u(d);
  for (std::size_t k = 0; k < prior.states.size(); ++k) {
    const Vec& w = prior.states[k].w;
    const double qk = prior.probs[k];
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t t = 0; t < d; ++t) u(s, t) += qk * w[s] * w[t];
  }
  return JointMatrix(std::move(u));
}

// P_{s,t} = U_{s,t} / q_s.
inline PredictionMatrix prediction_from_joint(const JointMatrix& joint) {
  const std::size_t d = joint.dim();
  const Vec q = joint.marginal();
  Matrix p(d);
  for (std::size_t s = 0; s < d; ++s) {
    if (q[s] <= 0.0) throw ZeroMarginal(s);
    for (std::size_t t = 0; t < d; ++t) p(s, t) = joint.u(s, t) / q[s];
  }
  return PredictionMatrix(std::move(p));
}

// Largest Bayes-consistency residual max_{s,t} |q_s P_{s,t} - q_t P_{t,s}|.
inline double prediction_symmetry_residual(const PredictionMatrix& pred, const Vec& q) {
  double res = 0.0;
  const std::size_t d = pred.dim();
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = s + 1; t < d; ++t)
      res = std::max(res, std::fabs(q[s] * pred.p(s, t) - q[t] * pred.p(t, s)));
  return res;
}

// Reconstructs the signal prior q from P via q_s = (sum_t P_{s,t}/P_{t,s})^-1
// with the 0/0 == 0 convention, then renormalizes to sum exactly 1.
inline StateVector marginal_from_prediction(const PredictionMatrix& pred,
                                            double consistencyTol = 1e-6) {
  const std::size_t d = pred.dim();
  Vec q(d, 0.0);
  for (std::size_t s = 0; s < d; ++s) {
    double sum = 0.0;
    for (std::size_t t = 0; t < d; ++t) {
      const double num = pred.p(s, t), den = pred.p(t, s);
      if (den == 0.0) {
        if (num != 0.0)
          throw InconsistentPrediction("marginal_from_prediction: P_{t,s}=0 but P_{s,t}>0");
        continue;  // 0/0 == 0
      }
      sum += num / den;
    }
    if (sum <= 0.0)
      throw InconsistentPrediction("marginal_from_prediction: empty reciprocal sum");
    q[s] = 1.0 / sum;
  }
  double total = 0.0;
  for (double x : q) total += x;
  for (double& x : q) x /= total;
  if (prediction_symmetry_residual(pred, q) > consistencyTol)
    throw InconsistentPrediction("marginal_from_prediction: Bayes consistency check failed");
  return StateVector(std::move(q));
}

// U_{s,t} = q_s P_{s,t} with q reconstructed from P.
inline JointMatrix joint_from_prediction(const PredictionMatrix& pred) {
  const StateVector q = marginal_from_prediction(pred);
  const std::size_t d = pred.dim();
  Matrix u(d);
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = 0; t < d; ++t) u(s, t) = q[s] * pred.p(s, t);
  // Symmetrize away the reconstruction round-off; residual is checked above.
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = s + 1; t < d; ++t) {
      const double avg = 0.5 * (u(s, t) + u(t, s));
      u(s, t) = u(t, s) = avg;
    }
  return JointMatrix(std::move(u));
}

// Ratings i.i.d. from the (noisy) state; reviewer i's prediction is row
// rating_i of the (noisy) prediction matrix, per the Bayesian assumption.
inline ReviewBundle sample_reviews(const SignalSet& signals, const StateVector& state,
                                   const PredictionMatrix& pred, std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidArgument("sample_reviews: n must be >= 1");
  if (state.dim() != signals.size() || pred.dim() != signals.size())
    throw InvalidArgument("sample_reviews: dimension mismatch");
  std::vector<std::size_t> ratings(n);
  std::vector<Vec> predictions(n);
  const std::size_t d = signals.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = rng.categorical(state.w);
    ratings[i] = s;
    Vec row(d);
    for (std::size_t t = 0; t < d; ++t) row[t] = pred.p(s, t);
    predictions[i] = std::move(row);
  }
  return ReviewBundle(signals, std::move(ratings), std::move(predictions));
}

// Row s = mean prediction vector of the reviewers who reported s,
// renormalized to exact row sums of 1.
inline PredictionMatrix prediction_matrix_from_bundle(const ReviewBundle& bundle) {
  const std::size_t d = bundle.dim();
  Matrix p(d);
  std::vector<std::size_t> counts(d, 0);
  for (std::size_t i = 0; i < bundle.reviewer_count(); ++i) {
    const std::size_t s = bundle.ratings[i];
    ++counts[s];
    for (std::size_t t = 0; t < d; ++t) p(s, t) += bundle.predictions[i][t];
  }
  for (std::size_t s = 0; s < d; ++s) {
    if (counts[s] == 0) throw MissingSignal(s);
    double row = 0.0;
    for (std::size_t t = 0; t < d; ++t) row += p(s, t);
    for (std::size_t t = 0; t < d; ++t) p(s, t) /= row;
  }
  return PredictionMatrix(std::move(p));
}

}  // namespace surpcal
