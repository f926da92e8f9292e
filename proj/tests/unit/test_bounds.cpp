#include <doctest.h>

#include <cmath>

#include "surpcal/bounds.hpp"
#include "test_helpers.hpp"

using namespace surpcal;

namespace {
BoundInput symmetric_input(double lambdaA, double lambdaB, std::uint64_t nA, std::uint64_t nB,
                           Vec biasA = {0.0, 1.0}, Vec biasB = {1.0, 0.0}) {
  return BoundInput(StateVector({0.8, 0.2}), StateVector({0.2, 0.8}),
                    NoiseModel(lambdaA, std::move(biasA)), NoiseModel(lambdaB, std::move(biasB)),
                    nA, nB, {0.0, 1.0});
}
}  // namespace

TEST_CASE("binary bound worked value") {
  const double bound = binary_error_bound(symmetric_input(0.0, 0.0, 5, 5));
  // Term-by-term: 0.00032 + 0.00032 - 0.00032*0.32768 + e^{-1.8}.
  const double hand = 2 * 0.00032 - 0.00032 * 0.32768 + std::exp(-1.8);
  CHECK(bound == doctest::Approx(hand).epsilon(1e-14));
  CHECK(bound == doctest::Approx(0.1658340).epsilon(1e-6));
  CHECK(std::fabs(bound - 0.16584) < 1e-5);
}

TEST_CASE("binary bound limits") {
  // Many reviewers: the bound collapses to zero.
  CHECK(binary_error_bound(symmetric_input(0.0, 0.0, 1000000, 1000000)) < 1e-12);

  // Near-total noise: the exp term approaches 1, so the bound is vacuous.
  CHECK(binary_error_bound(symmetric_input(0.999, 0.999, 5, 5)) >= 1.0);
}

TEST_CASE("binary bound input validation") {
  CHECK_THROWS_AS(BoundInput(StateVector({0.2, 0.8}), StateVector({0.8, 0.2}),
                             NoiseModel(0.0, {0.0, 1.0}), NoiseModel(0.0, {0.0, 1.0}), 5, 5,
                             {0.0, 1.0}),
                  InvalidArgument);  // A must be strictly worse
  CHECK_THROWS_AS(BoundInput(StateVector({0.8, 0.2}), StateVector({0.2, 0.8}),
                             NoiseModel(0.0, {0.0, 1.0}), NoiseModel(0.0, {0.0, 1.0}), 0, 5,
                             {0.0, 1.0}),
                  InvalidArgument);
}

TEST_CASE("general bound reduces to the binary exp term when d = 2") {
  Rng rng(17);
  for (int rep = 0; rep < 100; ++rep) {
    const double la = 0.9 * rng.uniform(), lb = 0.9 * rng.uniform();
    const std::uint64_t na = 1 + rng.categorical(Vec(9, 1.0 / 9));
    const std::uint64_t nb = 1 + rng.categorical(Vec(9, 1.0 / 9));
    const BoundInput in = symmetric_input(la, lb, na, nb);
    const double gap = 0.6;
    const double expTerm = std::exp(-2.0 * gap * gap / detail::hoeffding_denominator(in));
    const StateVector wa = apply_to_state(in.noiseA, in.cleanA);
    const StateVector wb = apply_to_state(in.noiseB, in.cleanB);
    double missing = 0.0;
    for (std::size_t s = 0; s < 2; ++s)
      missing += std::pow(1 - wa[s], double(na)) + std::pow(1 - wb[s], double(nb));
    CHECK(general_error_bound(in) == doctest::Approx(missing + expTerm).epsilon(1e-12));
  }
}

TEST_CASE("general bound with one reviewer and a wide alphabet is vacuous") {
  const Vec a = {0.7, 0.1, 0.1, 0.1}, b = {0.1, 0.1, 0.1, 0.7};
  const Vec unbias(4, 0.25);
  const BoundInput in(StateVector(a), StateVector(b), NoiseModel(0.0, unbias),
                      NoiseModel(0.0, unbias), 1, 1, {-2, -1, 1, 2});
  CHECK(general_error_bound(in) > 1.0);
}

TEST_CASE("ideal-knowledge bound") {
  const JointMatrix u(Matrix(2, {0.31, 0.19, 0.19, 0.31}));
  BoundInput in(StateVector({0.8, 0.2}), StateVector({0.2, 0.8}), NoiseModel(0.0, {0.0, 1.0}),
                NoiseModel(0.0, {1.0, 0.0}), 5, 5, {0.0, 1.0}, u);
  // det(U) = 0.06, d = 2: the exponent gains a factor 1/0.06.
  const double expect = std::exp(-2.0 * 0.36 / (2.0 / 5.0) * (1.0 / 0.06));
  CHECK(lemma_ideal_bound(in) == doctest::Approx(expect).epsilon(1e-12));

  SUBCASE("never looser than the plain concentration term when det(U) <= 1") {
    Rng rng(19);
    for (int rep = 0; rep < 200; ++rep) {
      const JointMatrix uj = joint_from_discrete_prior(testing::random_prior(2, rng));
      if (determinant(uj.u) <= 1e-8) continue;
      const double la = 0.9 * rng.uniform(), lb = 0.9 * rng.uniform();
      const BoundInput bi(StateVector({0.8, 0.2}), StateVector({0.2, 0.8}),
                          NoiseModel(la, {0.0, 1.0}), NoiseModel(lb, {1.0, 0.0}), 5, 5,
                          {0.0, 1.0}, uj);
      const double expTerm = std::exp(-2.0 * 0.36 / detail::hoeffding_denominator(bi));
      CHECK(lemma_ideal_bound(bi) <= expTerm + 1e-15);
    }
  }

  SUBCASE("requires a joint with positive determinant") {
    CHECK_THROWS_AS(lemma_ideal_bound(symmetric_input(0.0, 0.0, 5, 5)), InvalidArgument);
    BoundInput bad(StateVector({0.8, 0.2}), StateVector({0.2, 0.8}), NoiseModel(0.0, {0.0, 1.0}),
                   NoiseModel(0.0, {1.0, 0.0}), 5, 5, {0.0, 1.0},
                   JointMatrix(Matrix(2, {0.25, 0.25, 0.25, 0.25})));
    CHECK_THROWS_AS(lemma_ideal_bound(bad), NonPositiveDeterminant);
  }
}

TEST_CASE("bounds shrink as reviewer counts grow") {
  double prevB = 10.0, prevG = 10.0;
  for (std::uint64_t n : {1, 2, 3, 5, 8, 13, 21, 50, 200}) {
    const BoundInput in = symmetric_input(0.2, 0.3, n, n);
    const double b = binary_error_bound(in);
    const double g = general_error_bound(in);
    CHECK(b <= prevB + 1e-15);
    CHECK(g <= prevG + 1e-15);
    prevB = b;
    prevG = g;
  }
}

TEST_CASE("bounds do not depend on the bias vectors") {
  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const double la = 0.9 * rng.uniform(), lb = 0.9 * rng.uniform();
    const Vec ba1 = testing::random_simplex(2, rng), bb1 = testing::random_simplex(2, rng);
    const Vec ba2 = testing::random_simplex(2, rng), bb2 = testing::random_simplex(2, rng);
    // The concentration term depends on the noise only through lambda; the
    // unanimity terms use the noisy states and therefore do involve the bias.
    const BoundInput i1 = symmetric_input(la, lb, 3, 7, ba1, bb1);
    const BoundInput i2 = symmetric_input(la, lb, 3, 7, ba2, bb2);
    CHECK(detail::hoeffding_denominator(i1) ==
          doctest::Approx(detail::hoeffding_denominator(i2)).epsilon(1e-15));
    CHECK(binary_error_bound(symmetric_input(0.0, 0.0, 3, 7, ba1, bb1)) ==
          doctest::Approx(binary_error_bound(symmetric_input(0.0, 0.0, 3, 7, ba2, bb2)))
              .epsilon(1e-15));  // at lambda = 0 the bias never enters
  }
}
