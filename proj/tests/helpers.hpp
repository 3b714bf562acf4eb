#pragma once

#include "fhnhopf/model.hpp"
#include "fhnhopf/spectral.hpp"

namespace fhn::testing {

inline ModelParams params_for(double p, std::size_t nx = 201, double d = 1.0, double epsilon = 0.1, double a = 1.0) {
  ModelParams params;
  params.p = p;
  params.nx = nx;
  params.d = d;
  params.epsilon = epsilon;
  params.a = a;
  return params;
}

struct Setup {
  ModelParams params;
  HeterogeneityProfile profile;
  StationaryState stationary;
  SpectralProblem problem;

  Setup(const ModelParams& p, const HeterogeneityProfile& prof)
      : params(p), profile(prof), stationary(stationary_state(p, prof)), problem(stationary, p, prof) {}
};

inline Setup polynomial_setup(double p, std::size_t nx = 201, double d = 1.0) {
  const auto params = params_for(p, nx, d);
  return Setup(params, HeterogeneityProfile::polynomial(p, params.a));
}

inline Setup constant_setup(double c0, std::size_t nx = 201, double d = 1.0) {
  const auto params = params_for(0.0, nx, d);
  return Setup(params, HeterogeneityProfile::constant(c0, params.a));
}

}  // namespace fhn::testing
