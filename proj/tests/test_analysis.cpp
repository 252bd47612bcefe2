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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qpurify/analysis.hpp"

using namespace qpurify;

TEST_CASE("haar sampler is reproducible and normalized") {
  // Regression pin: first two draws for seed 42.
  HaarSampler sampler(42);
  const PureState first = sampler.next();
  CHECK(std::abs(first.amp(0) - Complex(0.70460577183385853, 0.0)) <= 1e-12);
  CHECK(std::abs(first.amp(1) - Complex(-0.70949237892596362, 0.012299209096087227)) <= 1e-12);
  const PureState second = sampler.next();
  CHECK(std::abs(second.amp(0) - Complex(0.71289784293235736, 0.0)) <= 1e-12);
  CHECK(std::abs(second.amp(1) - Complex(0.51422021306075671, 0.47681677615426032)) <= 1e-12);
  CHECK(sampler.counter() == 2);

  // Indexed access replays the sequential stream.
  HaarSampler seq(99);
  HaarSampler idx(99);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const PureState a = seq.next();
    const PureState b = idx.at(i);
    CHECK(std::abs(a.amp(0) - b.amp(0)) == 0.0);
    CHECK(std::abs(a.amp(1) - b.amp(1)) == 0.0);
  }

  HaarSampler norms(7);
  for (int i = 0; i < 10000; ++i) {
    const PureState p = norms.next();
    CHECK(std::abs(std::norm(p.amp(0)) + std::norm(p.amp(1)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("haar samples cover the Bloch sphere uniformly") {
  HaarSampler sampler(1234);
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const BlochVector b = to_bloch(sampler.next().to_density());
    s1 += b.a1;
    s2 += b.a2;
    s3 += b.a3;
  }
  const double bound = 3.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(s1 / n) <= bound);
  CHECK(std::abs(s2 / n) <= bound);
  CHECK(std::abs(s3 / n) <= bound);
}

TEST_CASE("analytic fidelities at pinned points") {
  const FidelityReport k3 = analytic_fidelities(PureState::normalized(Complex(1), Complex(0, 1)), 3);
  CHECK(k3.f_mixed == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(k3.f_protocol_a_avg == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(k3.f_protocol_b == doctest::Approx(1.0));
  CHECK(k3.f_maxent == doctest::Approx(1.0));

  const FidelityReport k2 = analytic_fidelities(PureState(1, 0), 2);
  CHECK(k2.bloch_norm == doctest::Approx(1.0));
  CHECK(k2.f_mixed == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(k2.f_protocol_b == doctest::Approx(1.0));
  CHECK(k2.f_maxent == doctest::Approx(1.0));

  // p1 = 0.8 along z.
  const FidelityReport k1 =
      analytic_fidelities(PureState(std::sqrt(0.8), std::sqrt(0.2)), 1);
  CHECK(k1.f_mixed == doctest::Approx(0.68).epsilon(1e-14));
  CHECK(k1.f_protocol_a_avg == doctest::Approx(0.68).epsilon(1e-14));
  CHECK(k1.f_protocol_b == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(k1.f_maxent == doctest::Approx(0.68).epsilon(1e-14));
}

TEST_CASE("empirical fidelities match the closed forms") {
  HaarSampler sampler(555);
  double worst_point = 0.0, worst_grid = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (int i = 0; i < 200; ++i) {
      const PureState psi = sampler.next();
      const FidelityReport a = analytic_fidelities(psi, k);
      const FidelityReport e = empirical_fidelities(psi, k, 128);
      worst_point = std::max(worst_point, std::abs(a.f_mixed - e.f_mixed));
      worst_point = std::max(worst_point, std::abs(a.f_protocol_b - e.f_protocol_b));
      worst_point = std::max(worst_point, std::abs(a.f_maxent - e.f_maxent));
      worst_grid = std::max(worst_grid, std::abs(a.f_protocol_a_avg - e.f_protocol_a_avg));
      CHECK(e.f_protocol_b >= e.f_mixed - tol::ineq);
      for (const double f : {e.f_mixed, e.f_protocol_a_avg, e.f_protocol_b, e.f_maxent}) {
        CHECK(f >= -tol::mc_point);
        CHECK(f <= 1.0 + tol::mc_point);
      }
    }
  }
  CHECK(worst_point <= tol::mc_point);
  CHECK(worst_grid <= tol::mc_grid);

  CHECK_THROWS_AS(empirical_fidelities(PureState(1, 0), 2, 4), Error);

  // Pinned empirical values.
  const FidelityReport e3 =
      empirical_fidelities(PureState::normalized(Complex(1), Complex(0, 1)), 3, 64);
  CHECK(std::abs(e3.f_mixed - 2.0 / 3.0) <= 1e-10);
  const FidelityReport e2 = empirical_fidelities(PureState(1, 0), 2, 64);
  CHECK(std::abs(e2.f_protocol_b - 1.0) <= 1e-10);
}

TEST_CASE("complete-measurement fidelity is constant over the sphere") {
  HaarSampler sampler(777);
  long n = 0;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const PureState psi = sampler.next();
    const double f = overlap(psi.to_density(), unbiased_state(probabilities_from_state(psi, 3)));
    ++n;
    const double d = f - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (f - mean);
  }
  const double stddev = std::sqrt(m2 / static_cast<double>(n - 1));
  CHECK(std::abs(mean - 2.0 / 3.0) <= 1e-12);
  CHECK(stddev < 1e-10);
}

TEST_CASE("both protocol-A averaging conventions give the mixture fidelity") {
  HaarSampler sampler(888);
  double worst_uniform = 0.0, worst_pair = 0.0;
  for (int i = 0; i < 500; ++i) {
    const PureState psi = sampler.next();
    const FidelityReport a = analytic_fidelities(psi, 2);
    const FidelityReport e = empirical_fidelities(psi, 2, 256);
    worst_uniform = std::max(worst_uniform, std::abs(e.f_protocol_a_avg - a.f_mixed));
    worst_pair = std::max(worst_pair, std::abs(protocol_a_optimal_pair_average(psi) - a.f_mixed));
  }
  CHECK(worst_uniform <= 1e-12);
  CHECK(worst_pair <= 1e-12);
}

TEST_CASE("phase-average adjudication separates the two bounded quantities") {
  HaarSampler sampler(999);
  double worst_identity = 0.0, worst_overlap = 0.0, max_overlap = 0.0;
  for (int i = 0; i < 200; ++i) {
    const PureState psi = sampler.next();
    const PhaseAverageAdjudication adj = adjudicate_phase_average(psi, 1000);
    worst_identity = std::max(worst_identity,
                              std::abs(adj.beta_averaged_fidelity - adj.analytic_identity));
    worst_overlap = std::max(worst_overlap,
                             std::abs(adj.overlap_mixed_max - adj.analytic_overlap));
    worst_overlap = std::max(worst_overlap,
                             std::abs(adj.overlap_mixed_min - adj.analytic_overlap));
    max_overlap = std::max(max_overlap, adj.overlap_mixed_max);
    CHECK(adj.overlap_within_five_eighths);
  }
  CHECK(worst_identity <= 1e-8);
  CHECK(worst_overlap <= 1e-10);
  CHECK(max_overlap <= 0.625 + 1e-10);

  // At |A| = 1 the beta-averaged fidelity reaches 3/4, above 5/8; the overlap
  // with the mixture sits exactly at 5/8. The 5/8 bound belongs to the
  // overlap, not the fidelity average.
  const PhaseAverageAdjudication top = adjudicate_phase_average(PureState(1, 0), 1000);
  CHECK(top.beta_averaged_fidelity == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_FALSE(top.beta_average_within_five_eighths);
  CHECK(top.overlap_mixed_max == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(top.overlap_within_five_eighths);
  CHECK(std::string(top.five_eighths_governs) == "overlap_of_unbiased_with_protocol_a");
}

TEST_CASE("fidelity ordering chain holds over a Haar sweep") {
  const ChainSummary sum = verify_inequality_chain(10000, 4242, 64);
  CHECK(sum.total_violations() == 0);
  for (const auto& link : sum.links) {
    if (link.is_equality) {
      CHECK(std::abs(link.min_slack) <= tol::ineq);
      CHECK(std::abs(link.max_slack) <= tol::ineq);
    } else {
      CHECK(link.min_slack >= -tol::ineq);
    }
  }
}

TEST_CASE("chain values at the pinned extremes") {
  // |A| = 1: every quantity is either 1 or 3/4.
  const PureState zplus(1, 0);
  const DensityMatrix rho_ini = zplus.to_density();
  const MeasurementRecord rec = probabilities_from_state(zplus, 2);
  const DensityMatrix unb = unbiased_state(rec);
  const DensityMatrix mx = maxent_state(rec);
  CHECK(overlap(purify_b(mx).state, rho_ini) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap(purify_b(unb).state, rho_ini) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap(rho_ini, mx) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap(rho_ini, unb) == doctest::Approx(0.75).epsilon(1e-12));
  const FidelityReport e = empirical_fidelities(zplus, 2, 64);
  CHECK(e.f_protocol_a_avg == doctest::Approx(0.75).epsilon(1e-12));

  // A1 = A2 = 0 (an x eigenstate): every link collapses to 1/2.
  const PureState xplus = PureState::normalized(1, 1);
  const DensityMatrix rho_x = xplus.to_density();
  const MeasurementRecord rec_x = probabilities_from_state(xplus, 2);
  const DensityMatrix unb_x = unbiased_state(rec_x);
  const DensityMatrix mx_x = maxent_state(rec_x);
  const FidelityReport e_x = empirical_fidelities(xplus, 2, 64);
  CHECK(std::abs(overlap(purify_b(mx_x).state, rho_x) - 0.5) <= tol::ineq);
  CHECK(std::abs(overlap(purify_b(unb_x).state, rho_x) - 0.5) <= tol::ineq);
  CHECK(std::abs(overlap(rho_x, mx_x) - 0.5) <= tol::ineq);
  CHECK(std::abs(overlap(rho_x, unb_x) - 0.5) <= tol::ineq);
  CHECK(std::abs(e_x.f_protocol_a_avg - 0.5) <= tol::ineq);
  CHECK(e_x.degeneracy);
}

TEST_CASE("single-measurement protocol-B improvement on a probability grid") {
  for (int i = 0; i <= 1000; ++i) {
    const double p1 = static_cast<double>(i) / 1000.0;
    const double f_mixed = p1 * p1 + (1.0 - p1) * (1.0 - p1);
    const double f_b = std::max(p1, 1.0 - p1);
    CHECK(f_b >= f_mixed - 1e-15);
  }

  // Improvement also holds empirically below p1 = 1/2.
  const PureState low(std::sqrt(0.3), std::sqrt(0.7));
  const FidelityReport rep = empirical_fidelities(low, 1, 64);
  CHECK(rep.f_protocol_b == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(rep.f_protocol_b >= rep.f_mixed);
}

TEST_CASE("random densities stay in the Bloch ball") {
  std::mt19937_64 engine(31337);
  for (int i = 0; i < 5000; ++i) {
    const DensityMatrix rho = random_density(engine);
    CHECK(to_bloch(rho).norm() <= 1.0 + 1e-12);
    CHECK(determinant(rho) >= -1e-15);
  }
}
