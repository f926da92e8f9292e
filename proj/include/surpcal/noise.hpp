#pragma once

// The bias-mixture noise family M_{lambda,b} = (1-lambda) I + lambda B,
// where every row of B equals the bias vector b.

#include <cmath>
#include <cstddef>
#include <utility>

#include "surpcal/errors.hpp"
#include "surpcal/matrix.hpp"
#include "surpcal/model.hpp"

namespace surpcal {

struct NoiseModel {
  double lambda;
  Vec bias;

  NoiseModel(double lambda_, Vec bias_) : lambda(lambda_), bias(std::move(bias_)) {
    if (!(lambda >= 0.0) || !(lambda < 1.0))
      throw InvalidArgument("NoiseModel: lambda must be in [0,1)");
    detail::check_probability_vector(bias, 1e-12, "NoiseModel bias");
  }

  static NoiseModel none(std::size_t d) { return NoiseModel(0.0, Vec(d, 1.0 / double(d))); }
};

inline Matrix noise_matrix(const NoiseModel& m) {
  const std::size_t d = m.bias.size();
  Matrix mat(d);
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t t = 0; t < d; ++t) mat(s, t) = m.lambda * m.bias[t];
    mat(s, s) += 1.0 - m.lambda;
  }
  return mat;
}

// w_hat = (1-lambda) w + lambda b.
inline StateVector apply_to_state(const NoiseModel& m, const StateVector& w) {
  if (w.dim() != m.bias.size()) throw InvalidArgument("apply_to_state: dimension mismatch");
  Vec out(w.dim());
  for (std::size_t s = 0; s < w.dim(); ++s)
    out[s] = (1.0 - m.lambda) * w[s] + m.lambda * m.bias[s];
  return StateVector(std::move(out));
}

// U_hat = M^T U M.
inline JointMatrix apply_to_joint(const NoiseModel& m, const JointMatrix& joint) {
  if (joint.dim() != m.bias.size()) throw InvalidArgument("apply_to_joint: dimension mismatch");
  const Matrix mat = noise_matrix(m);
  return JointMatrix(mat.transpose() * joint.u * mat);
}

// det(M_{lambda,b}) = (1-lambda)^(d-1), independent of b.
inline double noise_determinant(const NoiseModel& m, std::size_t d) {
  return std::pow(1.0 - m.lambda, static_cast<double>(d - 1));
}

// Recovers (lambda, b) from a 2x2 row-stochastic matrix with M11 > M01.
// At lambda = 0 the bias is unidentifiable; [0.5, 0.5] by convention.
inline NoiseModel decompose_binary(const Matrix& m) {
  if (m.dim() != 2) throw InvalidArgument("decompose_binary: need a 2x2 matrix");
  for (std::size_t s = 0; s < 2; ++s) {
    if (std::fabs(m(s, 0) + m(s, 1) - 1.0) > 1e-9 || m(s, 0) < -1e-12 || m(s, 1) < -1e-12)
      throw InvalidArgument("decompose_binary: matrix not row-stochastic");
  }
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (det == 0.0 || m(1, 1) <= m(0, 1))
    throw NotInFamily("decompose_binary: flipping or degenerate noise");
  const double lambda = 1.0 - m(1, 1) + m(0, 1);
  if (lambda == 0.0) return NoiseModel(0.0, {0.5, 0.5});
  const double b1 = m(0, 1) / lambda;
  return NoiseModel(lambda, {1.0 - b1, b1});
}

}  // namespace surpcal
