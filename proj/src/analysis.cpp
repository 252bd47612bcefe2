// Copyright 2026 The qpurify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpurify/analysis.hpp"

#include <cmath>
#include <numbers>

namespace qpurify {

namespace {

// Uniform doubles straight from the engine bits; keeps streams reproducible
// across standard library implementations.
double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

void normal_pair(std::mt19937_64& engine, double& z0, double& z1) {
  const double u1 = (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniform01(engine);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(t);
  z1 = r * std::sin(t);
}

}  // namespace

PureState haar_pure(std::mt19937_64& engine) {
  for (;;) {
    double x0, y0, x1, y1;
    normal_pair(engine, x0, y0);
    normal_pair(engine, x1, y1);
    const double n = std::sqrt(x0 * x0 + y0 * y0 + x1 * x1 + y1 * y1);
    if (n > 1e-12) {
      return PureState(Complex(x0, y0) / n, Complex(x1, y1) / n);
    }
  }
}

DensityMatrix random_density(std::mt19937_64& engine) {
  const PureState direction = haar_pure(engine);
  const BlochVector unit = to_bloch(direction.to_density());
  const double radius = std::cbrt(uniform01(engine));
  return from_bloch(BlochVector{radius * unit.a1, radius * unit.a2, radius * unit.a3});
}

PureState HaarSampler::at(std::uint64_t index) const {
  std::mt19937_64 engine = sweep_engine(seed_, index);
  return haar_pure(engine);
}

std::mt19937_64 sweep_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(seed ^ index);
}

FidelityReport analytic_fidelities(const PureState& psi, int k) {
  return analytic_fidelities(probabilities_from_state(psi, k));
}

FidelityReport analytic_fidelities(const MeasurementRecord& rec) {
  const int k = rec.k();
  FidelityReport rep{};
  rep.k = k;
  rep.bloch_norm = rec.bloch_norm_measured();
  switch (k) {
    case 1: {
      const double p1 = rec.prob(0);
      rep.f_mixed = p1 * p1 + (1.0 - p1) * (1.0 - p1);
      rep.f_protocol_a_avg = rep.f_mixed;
      rep.f_protocol_b = std::max(p1, 1.0 - p1);
      rep.f_maxent = rep.f_mixed;
      rep.degeneracy = std::abs(2.0 * p1 - 1.0) <= tol::degenerate;
      break;
    }
    case 2: {
      const double n2 = rep.bloch_norm * rep.bloch_norm;
      rep.f_mixed = (2.0 + n2) / 4.0;
      rep.f_protocol_a_avg = rep.f_mixed;
      rep.f_protocol_b = (1.0 + rep.bloch_norm) / 2.0;
      rep.f_maxent = (1.0 + n2) / 2.0;
      rep.degeneracy = rep.bloch_norm / 2.0 <= tol::degenerate;
      break;
    }
    default: {
      rep.f_mixed = 2.0 / 3.0;
      rep.f_protocol_a_avg = 2.0 / 3.0;
      rep.f_protocol_b = 1.0;
      rep.f_maxent = 1.0;
      rep.degeneracy = false;  // unbiased spectrum is always {2/3, 1/3}
      break;
    }
  }
  return rep;
}

FidelityReport empirical_fidelities(const PureState& psi, int k, int phase_grid) {
  if (phase_grid < 8) {
    throw Error(ErrorCode::invalid_argument, "phase grid needs at least 8 points");
  }
  const MeasurementRecord rec = probabilities_from_state(psi, k);
  const DensityMatrix rho_ini = psi.to_density();
  const DensityMatrix unb = unbiased_state(rec);
  const DensityMatrix mx = maxent_state(rec);
  const OrthogonalMixture mix = decompose(unb);
  const PurifyResult pb = purify_b(unb);

  FidelityReport rep{};
  rep.k = k;
  rep.bloch_norm = rec.bloch_norm_measured();
  rep.f_mixed = overlap(rho_ini, unb);
  rep.f_maxent = overlap(rho_ini, mx);
  rep.f_protocol_b = overlap(pb.state, rho_ini);
  rep.degeneracy = pb.degenerate;

  double acc = 0.0;
  for (int j = 0; j < phase_grid; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / phase_grid;
    const PureState a = purify_a(mix, ProjectionChoice::phase(phi));
    acc += overlap(a, rho_ini);
  }
  rep.f_protocol_a_avg = acc / phase_grid;
  return rep;
}

namespace {

// <s2| rho |s1>: the cross matrix element steering the optimal phase.
Complex cross_element(const OrthogonalMixture& mix, const DensityMatrix& rho) {
  const auto& s1 = mix.state1().amplitudes();
  const auto& s2 = mix.state2().amplitudes();
  Complex m = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m += std::conj(s2[i]) * rho(i, j) * s1[j];
  return m;
}

}  // namespace

double protocol_a_optimal_pair_average(const PureState& psi) {
  const MeasurementRecord rec = probabilities_from_state(psi, 2);
  const DensityMatrix rho_ini = psi.to_density();
  const OrthogonalMixture mix = decompose(unbiased_state(rec));
  const CompatibleStates candidates = compatible_initial_states(rec);

  double acc = 0.0;
  int count = 0;
  for (const PureState& cand : candidates.states) {
    const Complex m = cross_element(mix, cand.to_density());
    const double phi = std::abs(m) > 1e-15 ? -std::arg(m) : 0.0;
    acc += overlap(purify_a(mix, ProjectionChoice::phase(phi)), rho_ini);
    ++count;
  }
  return acc / count;
}

PhaseAverageAdjudication adjudicate_phase_average(const PureState& psi, int phase_grid) {
  if (phase_grid < 8) {
    throw Error(ErrorCode::invalid_argument, "phase grid needs at least 8 points");
  }
  const MeasurementRecord rec = probabilities_from_state(psi, 2);
  const DensityMatrix rho_ini = psi.to_density();
  const DensityMatrix unb = unbiased_state(rec);
  const OrthogonalMixture mix = decompose(unb);
  const double n = rec.bloch_norm_measured();

  PhaseAverageAdjudication adj{};
  adj.analytic_identity = (2.0 + n * n) / 4.0;
  adj.analytic_overlap = 0.5 + n * n / 8.0;
  adj.overlap_mixed_min = 1.0;
  adj.overlap_mixed_max = 0.0;

  double acc = 0.0;
  for (int j = 0; j < phase_grid; ++j) {
    const double beta = 2.0 * std::numbers::pi * j / phase_grid;
    const PureState a = purify_a(mix, ProjectionChoice::phase(beta));
    acc += overlap(a, rho_ini);
    const double ov = overlap(a, unb);
    adj.overlap_mixed_min = std::min(adj.overlap_mixed_min, ov);
    adj.overlap_mixed_max = std::max(adj.overlap_mixed_max, ov);
  }
  adj.beta_averaged_fidelity = acc / phase_grid;
  adj.beta_average_within_five_eighths = adj.beta_averaged_fidelity <= 0.625 + tol::mc_point;
  adj.overlap_within_five_eighths = adj.overlap_mixed_max <= 0.625 + tol::mc_point;
  adj.five_eighths_governs = "overlap_of_unbiased_with_protocol_a";
  return adj;
}

long ChainSummary::total_violations() const {
  long n = 0;
  for (const auto& link : links) n += link.violations;
  return n;
}

ChainSummary verify_inequality_chain(long samples, std::uint64_t seed, int phase_grid) {
  if (samples < 1) {
    throw Error(ErrorCode::invalid_argument, "need at least one sample");
  }
  ChainSummary sum{};
  sum.samples = samples;
  sum.phase_grid = phase_grid;
  sum.links = {ChainLink{"f_b(maxent) = f_b(unbiased)", true, 0, 1e300, -1e300},
               ChainLink{"f_b(unbiased) >= f(maxent)", false, 0, 1e300, -1e300},
               ChainLink{"f(maxent) = f_av_a(maxent)", true, 0, 1e300, -1e300},
               ChainLink{"f_av_a(maxent) >= f(unbiased)", false, 0, 1e300, -1e300},
               ChainLink{"f(unbiased) = f_av_a(unbiased)", true, 0, 1e300, -1e300}};

  HaarSampler sampler(seed);
  for (long i = 0; i < samples; ++i) {
    const PureState psi = sampler.at(static_cast<std::uint64_t>(i));
    const MeasurementRecord rec = probabilities_from_state(psi, 2);
    const DensityMatrix rho_ini = psi.to_density();
    const DensityMatrix unb = unbiased_state(rec);
    const DensityMatrix mx = maxent_state(rec);

    auto phase_average = [&](const DensityMatrix& mixed) {
      const OrthogonalMixture mix = decompose(mixed);
      double acc = 0.0;
      for (int j = 0; j < phase_grid; ++j) {
        const double beta = 2.0 * std::numbers::pi * j / phase_grid;
        acc += overlap(purify_a(mix, ProjectionChoice::phase(beta)), rho_ini);
      }
      return acc / phase_grid;
    };

    const double f_b_max = overlap(purify_b(mx).state, rho_ini);
    const double f_b_unb = overlap(purify_b(unb).state, rho_ini);
    const double f_max = overlap(rho_ini, mx);
    const double f_av_max = phase_average(mx);
    const double f_unb = overlap(rho_ini, unb);
    const double f_av_unb = phase_average(unb);

    const std::array<double, 5> slack{f_b_max - f_b_unb, f_b_unb - f_max, f_max - f_av_max,
                                      f_av_max - f_unb, f_unb - f_av_unb};
    for (std::size_t l = 0; l < 5; ++l) {
      ChainLink& link = sum.links[l];
      link.min_slack = std::min(link.min_slack, slack[l]);
      link.max_slack = std::max(link.max_slack, slack[l]);
      const bool bad = link.is_equality ? std::abs(slack[l]) > tol::ineq : slack[l] < -tol::ineq;
      if (bad) ++link.violations;
    }
  }
  return sum;
}

}  // namespace qpurify
