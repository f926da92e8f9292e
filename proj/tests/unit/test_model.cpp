#include <doctest.h>

#include <cmath>

#include "surpcal/bundle_json.hpp"
#include "surpcal/model.hpp"
#include "test_helpers.hpp"

using namespace surpcal;

namespace {
DiscretePrior three_state_prior() {
  return DiscretePrior({StateVector({0.8, 0.2}), StateVector({0.5, 0.5}),
                        StateVector({0.2, 0.8})},
                       {1.0 / 3, 1.0 / 3, 1.0 / 3});
}
}  // namespace

TEST_CASE("joint from the three-state prior") {
  const JointMatrix u = joint_from_discrete_prior(three_state_prior());
  CHECK(u.u(0, 0) == doctest::Approx(0.31).epsilon(1e-12));
  CHECK(u.u(0, 1) == doctest::Approx(0.19).epsilon(1e-12));
  CHECK(u.u(1, 0) == doctest::Approx(0.19).epsilon(1e-12));
  CHECK(u.u(1, 1) == doctest::Approx(0.31).epsilon(1e-12));
}

TEST_CASE("joint from a deterministic consensus prior") {
  const DiscretePrior prior({StateVector({1.0, 0.0})}, {1.0});
  const JointMatrix u = joint_from_discrete_prior(prior);
  CHECK(u.u(0, 0) == doctest::Approx(1.0));
  CHECK(u.u(0, 1) == doctest::Approx(0.0));
  CHECK(u.u(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("joint from a discretized uniform prior matches the Beta moments") {
  std::vector<StateVector> states;
  const std::size_t grid = 1001;
  for (std::size_t i = 0; i < grid; ++i) {
    const double w1 = double(i) / double(grid - 1);
    states.emplace_back(Vec{1.0 - w1, w1});
  }
  const DiscretePrior prior(std::move(states), Vec(grid, 1.0 / double(grid)));
  const JointMatrix u = joint_from_discrete_prior(prior);
  CHECK(u.u(1, 1) == doctest::Approx(1.0 / 3).epsilon(1e-3));
  CHECK(u.u(0, 1) == doctest::Approx(1.0 / 6).epsilon(1e-3));
  CHECK(u.u(0, 0) == doctest::Approx(1.0 / 3).epsilon(1e-3));
}

TEST_CASE("prediction from joint") {
  const PredictionMatrix p = prediction_from_joint(joint_from_discrete_prior(three_state_prior()));
  CHECK(p.p(0, 0) == doctest::Approx(0.62).epsilon(1e-12));
  CHECK(p.p(0, 1) == doctest::Approx(0.38).epsilon(1e-12));
  CHECK(p.p(1, 0) == doctest::Approx(0.38).epsilon(1e-12));
  CHECK(p.p(1, 1) == doctest::Approx(0.62).epsilon(1e-12));

  const PredictionMatrix diag = prediction_from_joint(JointMatrix(Matrix(2, {0.5, 0, 0, 0.5})));
  CHECK(diag.p(0, 0) == doctest::Approx(1.0));
  CHECK(diag.p(1, 1) == doctest::Approx(1.0));

  // Noisy worked example; the printed values round the second row.
  const JointMatrix uhat(Matrix(2, {0.5775, 0.1725, 0.1725, 0.0775}));
  const PredictionMatrix phat = prediction_from_joint(uhat);
  CHECK(phat.p(0, 0) == doctest::Approx(0.77).epsilon(0.013));
  CHECK(phat.p(0, 1) == doctest::Approx(0.23).epsilon(0.05));
  CHECK(phat.p(1, 0) == doctest::Approx(0.69).epsilon(0.013));
  CHECK(phat.p(1, 1) == doctest::Approx(0.31).epsilon(0.04));
}

TEST_CASE("prediction from joint rejects zero marginals") {
  CHECK_THROWS_AS(prediction_from_joint(JointMatrix(Matrix(2, {1, 0, 0, 0}))),
                  ZeroMarginal);
}

TEST_CASE("prior reconstruction from predictions") {
  const PredictionMatrix p(Matrix(2, {0.62, 0.38, 0.38, 0.62}));
  const StateVector q = marginal_from_prediction(p);
  CHECK(q[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q[1] == doctest::Approx(0.5).epsilon(1e-12));

  // Identity predictions: the 0/0 convention yields the uniform prior.
  const StateVector qi = marginal_from_prediction(PredictionMatrix(Matrix::identity(3)));
  for (std::size_t s = 0; s < 3; ++s) CHECK(qi[s] == doctest::Approx(1.0 / 3));

  const PredictionMatrix phat(Matrix(2, {0.77, 0.23, 0.69, 0.31}));
  const StateVector qhat = marginal_from_prediction(phat);
  CHECK(qhat[1] == doctest::Approx(0.23 / 0.92).epsilon(1e-12));
  CHECK(qhat[0] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("reconstruction rejects inconsistent predictions") {
  // P_{t,s}=0 with P_{s,t}>0 is ill-posed.
  CHECK_THROWS_AS(marginal_from_prediction(PredictionMatrix(Matrix(2, {0.5, 0.5, 0, 1}))),
                  InconsistentPrediction);
}

TEST_CASE("joint from prediction matches the worked examples") {
  const JointMatrix u = joint_from_prediction(PredictionMatrix(Matrix(2, {0.62, 0.38, 0.38, 0.62})));
  CHECK(u.u(0, 0) == doctest::Approx(0.31).epsilon(1e-12));
  CHECK(u.u(0, 1) == doctest::Approx(0.19).epsilon(1e-12));

  const JointMatrix ui = joint_from_prediction(PredictionMatrix(Matrix::identity(2)));
  CHECK(ui.u(0, 0) == doctest::Approx(0.5));
  CHECK(ui.u(0, 1) == doctest::Approx(0.0));

  const JointMatrix uhat = joint_from_prediction(PredictionMatrix(Matrix(2, {0.77, 0.23, 0.69, 0.31})));
  CHECK(uhat.u(0, 0) == doctest::Approx(0.5775).epsilon(0.005));
  CHECK(uhat.u(0, 1) == doctest::Approx(0.1725).epsilon(0.005));
  CHECK(uhat.u(1, 1) == doctest::Approx(0.0775).epsilon(0.05));
}

TEST_CASE("reconstruction round-trips over random priors") {
  Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t d = 2 + rep % 5;
    const DiscretePrior prior = testing::random_prior(d, rng);
    const JointMatrix u = joint_from_discrete_prior(prior);
    const Vec q = u.marginal();
    const PredictionMatrix p = prediction_from_joint(u);
    const StateVector qr = marginal_from_prediction(p);
    for (std::size_t s = 0; s < d; ++s) CHECK(qr[s] == doctest::Approx(q[s]).epsilon(1e-12));
    const JointMatrix u2 = joint_from_prediction(p);
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t t = 0; t < d; ++t)
        CHECK(u2.u(s, t) == doctest::Approx(u.u(s, t)).epsilon(1e-12));
  }
}

TEST_CASE("joints from priors are positive semi-definite") {
  Rng rng(11);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = 2 + rep % 5;
    const JointMatrix u = joint_from_discrete_prior(testing::random_prior(d, rng));
    for (double ev : symmetric_eigenvalues(u.u)) CHECK(ev >= -1e-12);
  }
}

TEST_CASE("sampled reviews follow the state and replay deterministically") {
  const SignalSet sig = SignalSet::binary();
  const PredictionMatrix p(Matrix(2, {0.62, 0.38, 0.38, 0.62}));

  SUBCASE("degenerate state forces unanimity") {
    Rng rng(1);
    const ReviewBundle b = sample_reviews(sig, StateVector({0.0, 1.0}), p, 3, rng);
    for (std::size_t r : b.ratings) CHECK(r == 1);
    for (const Vec& pred : b.predictions) CHECK(pred[1] == doctest::Approx(0.62));
  }

  SUBCASE("law of large numbers") {
    Rng rng(2);
    const ReviewBundle b = sample_reviews(sig, StateVector({0.6, 0.4}), p, 1000000, rng);
    CHECK(frequency_vector(b)[0] == doctest::Approx(0.6).epsilon(0.01));
  }

  SUBCASE("fixed seed replays bit-identically") {
    Rng rng1(77), rng2(77);
    const ReviewBundle a = sample_reviews(sig, StateVector({0.3, 0.7}), p, 50, rng1);
    const ReviewBundle b = sample_reviews(sig, StateVector({0.3, 0.7}), p, 50, rng2);
    CHECK(a.ratings == b.ratings);
    CHECK(a.predictions == b.predictions);
  }
}

TEST_CASE("prediction matrix from a bundle") {
  const SignalSet sig = SignalSet::binary();
  const ReviewBundle bundle(sig, {1, 1, 0},
                            {{0.69, 0.31}, {0.69, 0.31}, {0.77, 0.23}});
  const PredictionMatrix p = prediction_matrix_from_bundle(bundle);
  CHECK(p.p(0, 0) == doctest::Approx(0.77));
  CHECK(p.p(0, 1) == doctest::Approx(0.23));
  CHECK(p.p(1, 0) == doctest::Approx(0.69));
  CHECK(p.p(1, 1) == doctest::Approx(0.31));

  const ReviewBundle unanimous(sig, {1, 1}, {{0.6, 0.4}, {0.6, 0.4}});
  CHECK_THROWS_AS(prediction_matrix_from_bundle(unanimous), MissingSignal);

  const ReviewBundle twoRejects(sig, {0, 0, 1},
                                {{0.8, 0.2}, {0.6, 0.4}, {0.5, 0.5}});
  const PredictionMatrix p2 = prediction_matrix_from_bundle(twoRejects);
  CHECK(p2.p(0, 0) == doctest::Approx(0.7));
  CHECK(p2.p(0, 1) == doctest::Approx(0.3));
}

TEST_CASE("bundle JSON round-trip and validation") {
  const char* text = R"({
    "signals": ["reject", "accept"],
    "scores": [0, 1],
    "ratings": ["accept", "accept", "reject"],
    "predictions": [[0.69, 0.31], [0.69, 0.31], [0.77, 0.23]]
  })";
  const ReviewBundle b = bundle_from_json_text(text);
  CHECK(b.reviewer_count() == 3);
  CHECK(b.ratings == std::vector<std::size_t>{1, 1, 0});

  const ReviewBundle b2 = bundle_from_json(bundle_to_json(b));
  CHECK(b2.ratings == b.ratings);
  CHECK(b2.predictions == b.predictions);

  CHECK_THROWS_AS(bundle_from_json_text("{not json"), InvalidArgument);
  CHECK_THROWS_AS(bundle_from_json_text(R"({"signals":["a","b"],"scores":[0,1],
    "ratings":["a"],"predictions":[[0.5,0.3]]})"),
                  InvalidArgument);  // prediction row sums to 0.8
  CHECK_THROWS_AS(bundle_from_json_text(R"({"signals":["a","b"],"scores":[0,1],
    "ratings":["c"],"predictions":[[0.5,0.5]]})"),
                  InvalidArgument);  // unknown label
}

TEST_CASE("type invariants are enforced") {
  CHECK_THROWS_AS(SignalSet({"a"}, {0.0}), InvalidArgument);
  CHECK_THROWS_AS(SignalSet({"a", "b"}, {1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(StateVector({0.5, 0.6}), InvalidArgument);
  CHECK_THROWS_AS(BetaPrior(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(JointMatrix(Matrix(2, {0.5, 0.1, 0.3, 0.1})), InvalidArgument);
  CHECK_THROWS_AS(PredictionMatrix(Matrix(2, {0.5, 0.4, 0.5, 0.5})), InvalidArgument);
}
