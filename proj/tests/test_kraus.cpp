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

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "qpurify/analysis.hpp"
#include "qpurify/kraus.hpp"

using namespace qpurify;

namespace {

Mat2 mat(Complex a, Complex b, Complex c, Complex d) {
  Mat2 m;
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

PurificationBasis random_basis(std::mt19937_64& engine) {
  return PurificationBasis::from_b0(haar_pure(engine), haar_pure(engine));
}

// Term-by-term expansion of the dilation sum, as an oracle for the packed
// implementation: U = sum_s |psi,s><b_s,0e| + |xi,s><b_s,1e|.
Mat4 dilation_oracle(const PurificationBasis& pb) {
  Mat4 u = Mat4::zero();
  const std::array<const PureState*, 2> sys_ket{&pb.target(), &pb.complement()};
  const std::array<const PureState*, 2> bras{&pb.b0(), &pb.b1()};
  for (int s = 0; s < 2; ++s) {
    for (int env_col = 0; env_col < 2; ++env_col) {
      const PureState& ket = *sys_ket[static_cast<std::size_t>(env_col)];
      const PureState& bra = *bras[static_cast<std::size_t>(s)];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          u(2 * i + s, 2 * j + env_col) += ket.amp(i) * std::conj(bra.amp(j));
    }
  }
  return u;
}

}  // namespace

TEST_CASE("channel validation reports both operator orderings") {
  // The purifying channel for target |0>: complete in the standard ordering,
  // unbounded in the swapped one.
  const KrausChannel ch = KrausChannel::make({mat(1, 0, 0, 0), mat(0, 1, 0, 0)});
  CHECK(ch.nonselective());
  CHECK(ch.completeness_residual() <= 1e-15);
  CHECK(ch.trace_nonincreasing_dag_a());
  CHECK_FALSE(ch.trace_nonincreasing_a_dag());

  const KrausChannel id = KrausChannel::make({Mat2::identity()});
  CHECK(id.nonselective());
  CHECK(id.trace_nonincreasing_dag_a());
  CHECK(id.trace_nonincreasing_a_dag());

  // A single projector is a valid selective operation in both orderings.
  const KrausChannel sel = KrausChannel::make({mat(1, 0, 0, 0)});
  CHECK_FALSE(sel.nonselective());
  CHECK(sel.trace_nonincreasing_dag_a());
  CHECK(sel.trace_nonincreasing_a_dag());

  CHECK_THROWS_AS(KrausChannel::make({2.0 * Mat2::identity()}), Error);
  CHECK_THROWS_AS(KrausChannel::make({}), Error);
}

TEST_CASE("apply_channel") {
  const DensityMatrix mixed = from_bloch(BlochVector{0, 0, 0});
  const KrausChannel id = KrausChannel::make({Mat2::identity()});
  const ChannelApplication same = apply_channel(id, mixed);
  CHECK(same.normalized);
  CHECK(max_abs(same.output - mixed.matrix()) <= 1e-15);

  // Selective branch: a single projector halves the trace of I/2.
  const KrausChannel sel = KrausChannel::make({mat(1, 0, 0, 0)});
  const ChannelApplication cut = apply_channel(sel, mixed);
  CHECK_FALSE(cut.normalized);
  CHECK(cut.trace == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(cut.as_density(), Error);
}

TEST_CASE("purifying channel maps everything to the target") {
  const PurificationBasis comp = PurificationBasis::from_b0(PureState(1, 0), PureState(1, 0));
  const KrausChannel ch = purifying_channel(comp);
  CHECK(max_abs(ch.operators()[0] - mat(1, 0, 0, 0)) <= 1e-15);
  CHECK(max_abs(ch.operators()[1] - mat(0, 1, 0, 0)) <= 1e-15);

  const DensityMatrix mixed = from_bloch(BlochVector{0, 0, 0});
  CHECK(max_abs(apply_channel(ch, mixed).output - mat(1, 0, 0, 0)) <= 1e-15);

  // Direct evaluation of sum A rho A^dag with Eigen as the oracle.
  std::mt19937_64 engine(11);
  const PureState plus = PureState::normalized(1, 1);
  const PurificationBasis pb = PurificationBasis::from_b0(haar_pure(engine), plus);
  const KrausChannel cp = purifying_channel(pb);
  const DensityMatrix rho = random_density(engine);
  Eigen::Matrix2cd erho, acc = Eigen::Matrix2cd::Zero();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      erho(r, c) = rho(r, c);
  for (const Mat2& op : cp.operators()) {
    Eigen::Matrix2cd eop;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        eop(r, c) = op(r, c);
    acc += eop * erho * eop.adjoint();
  }
  const Mat2 out = apply_channel(cp, rho).output;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      CHECK(std::abs(out(r, c) - acc(r, c)) <= 1e-14);
  CHECK(max_abs(out - mat(0.5, 0.5, 0.5, 0.5)) <= 1e-12);

  // Independence from the input over a sweep.
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PurificationBasis b = random_basis(engine);
    const KrausChannel c = purifying_channel(b);
    const DensityMatrix r = random_density(engine);
    const Mat2 expect = outer(b.target().amplitudes(), b.target().amplitudes());
    worst = std::max(worst, max_abs(apply_channel(c, r).output - expect));
    CHECK(c.completeness_residual() <= 1e-12);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("dilation unitary: pinned permutation, unitarity, extraction") {
  const PurificationBasis comp = PurificationBasis::from_b0(PureState(1, 0), PureState(1, 0));
  const Mat4 u = dilation_unitary(comp);

  // For psi=|0>, xi=|1> and the computational basis the dilation permutes
  // |0,0>->|0,0>, |1,0>->|0,1>, |0,1>->|1,0>, |1,1>->|1,1>.
  Mat4 perm = Mat4::zero();
  perm(0, 0) = 1;
  perm(1, 2) = 1;
  perm(2, 1) = 1;
  perm(3, 3) = 1;
  CHECK(max_abs(u - perm) <= 1e-15);
  CHECK(max_abs(u - dilation_oracle(comp)) <= 1e-15);

  std::mt19937_64 engine(22);
  double worst_unitary = 0.0, worst_extract = 0.0, worst_oracle = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PurificationBasis pb = random_basis(engine);
    const Mat4 d = dilation_unitary(pb);
    worst_unitary = std::max(worst_unitary, max_abs(adjoint(d) * d - Mat4::identity()));
    worst_unitary = std::max(worst_unitary, max_abs(d * adjoint(d) - Mat4::identity()));
    worst_oracle = std::max(worst_oracle, max_abs(d - dilation_oracle(pb)));

    const auto extracted = kraus_from_unitary(d);
    const KrausChannel ch = purifying_channel(pb);
    worst_extract = std::max(worst_extract, max_abs(extracted[0] - ch.operators()[0]));
    worst_extract = std::max(worst_extract, max_abs(extracted[1] - ch.operators()[1]));
  }
  CHECK(worst_unitary <= 1e-12);
  CHECK(worst_extract <= 1e-12);
  CHECK(worst_oracle <= 1e-14);
}

TEST_CASE("partial traces of product states") {
  std::mt19937_64 engine(33);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix sys = random_density(engine);
    const DensityMatrix env = random_density(engine);
    const CompositeState cs = CompositeState::make(kron(sys.matrix(), env.matrix()));
    CHECK(max_abs(partial_trace_env(cs).matrix() - sys.matrix()) <= 1e-14);
    CHECK(max_abs(partial_trace_sys(cs).matrix() - env.matrix()) <= 1e-14);
    CHECK(product_residual(cs) <= 1e-14);
  }
}

TEST_CASE("composite validation") {
  Mat4 bad = Mat4::identity();
  CHECK_THROWS_AS(CompositeState::make(bad), Error);  // trace 4
  Mat4 nonherm = Mat4::zero();
  nonherm(0, 0) = 1;
  nonherm(0, 3) = Complex(0, 0.5);
  CHECK_THROWS_AS(CompositeState::make(nonherm), Error);
}

TEST_CASE("evolution keeps system and environment disentangled") {
  // Diagonal state in the computational purification basis: the environment
  // inherits the matrix elements untouched.
  const PurificationBasis comp = PurificationBasis::from_b0(PureState(1, 0), PureState::normalized(1, 1));
  const DensityMatrix diag = DensityMatrix::make(mat(2.0 / 3.0, 0, 0, 1.0 / 3.0));
  const CompositeState evolved = evolve_composite(comp, diag);
  const DensityMatrix env = partial_trace_sys(evolved);
  CHECK(max_abs(env.matrix() - diag.matrix()) <= 1e-14);
  const DensityMatrix sys = partial_trace_env(evolved);
  const Mat2 target_proj = outer(comp.target().amplitudes(), comp.target().amplitudes());
  CHECK(max_abs(sys.matrix() - target_proj) <= 1e-14);

  // Pure input in its own eigenbasis: environment ends in |0e>.
  const PureState psi = PureState::normalized(Complex(0.6), Complex(0, 0.8));
  const PurificationBasis own = PurificationBasis::from_b0(psi, psi);
  const CompositeState ev2 = evolve_composite(own, psi.to_density());
  CHECK(max_abs(partial_trace_sys(ev2).matrix() - mat(1, 0, 0, 0)) <= 1e-14);

  std::mt19937_64 engine(44);
  double worst_swap = 0.0, worst_product = 0.0, worst_udrift = 0.0, worst_rank = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PurificationBasis pb = random_basis(engine);
    const DensityMatrix rho0 = random_density(engine);
    const CompositeState ev = evolve_composite(pb, rho0);
    worst_swap = std::max(worst_swap,
                          std::abs(von_neumann_entropy(partial_trace_sys(ev)) -
                                   von_neumann_entropy(rho0)));
    worst_product = std::max(worst_product, product_residual(ev));
    // The system reduction stays rank one.
    worst_rank = std::max(worst_rank, std::abs(spectral(partial_trace_env(ev)).lambda_minus));
    // Unitary conjugation permutes the composite spectrum.
    Mat2 env0 = Mat2::zero();
    env0(0, 0) = 1;
    const CompositeState before = CompositeState::make(kron(rho0.matrix(), env0));
    worst_udrift = std::max(worst_udrift,
                            std::abs(von_neumann_entropy(ev) - von_neumann_entropy(before)));
  }
  CHECK(worst_swap <= 1e-10);
  CHECK(worst_product <= 1e-10);
  CHECK(worst_udrift <= 1e-10);
  CHECK(worst_rank <= 1e-10);
}

TEST_CASE("environment projection dephases in the purification basis") {
  const PurificationBasis comp = PurificationBasis::from_b0(PureState(1, 0), PureState(1, 0));

  const DensityMatrix diag = DensityMatrix::make(mat(2.0 / 3.0, 0, 0, 1.0 / 3.0));
  const DensityMatrix env_diag = project_environment(evolve_composite(comp, diag));
  CHECK(max_abs(env_diag.matrix() - diag.matrix()) <= 1e-14);
  CHECK(std::abs(von_neumann_entropy(env_diag) - von_neumann_entropy(diag)) <= 1e-14);

  const DensityMatrix sym = DensityMatrix::make(mat(0.5, 0.5, 0.5, 0.5));
  const DensityMatrix env_sym = project_environment(evolve_composite(comp, sym));
  CHECK(max_abs(env_sym.matrix() - mat(0.5, 0, 0, 0.5)) <= 1e-14);
  CHECK(von_neumann_entropy(sym) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(env_sym) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("entropy audit: equality cases and growth bound") {
  const PurificationBasis comp = PurificationBasis::from_b0(PureState(1, 0), PureState(1, 0));

  const EntropyAudit diag = entropy_audit(comp, DensityMatrix::make(mat(2.0 / 3.0, 0, 0, 1.0 / 3.0)));
  CHECK(diag.basis_diagonalizes);
  CHECK(diag.s_env_final == doctest::Approx(diag.s_before).epsilon(1e-15));
  CHECK(diag.det_after == doctest::Approx(diag.det_before).epsilon(1e-15));

  const EntropyAudit sym = entropy_audit(comp, DensityMatrix::make(mat(0.5, 0.5, 0.5, 0.5)));
  CHECK(sym.s_before == doctest::Approx(0.0));
  CHECK(sym.s_env_final == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(sym.det_before == doctest::Approx(0.0));
  CHECK(sym.det_after == doctest::Approx(0.25).epsilon(1e-15));

  // The fully mixed state is basis-independent.
  std::mt19937_64 engine(55);
  for (int i = 0; i < 50; ++i) {
    const EntropyAudit mixed = entropy_audit(random_basis(engine), from_bloch(BlochVector{0, 0, 0}));
    CHECK(std::abs(mixed.s_before - std::log(2.0)) <= 1e-12);
    CHECK(std::abs(mixed.s_env_final - std::log(2.0)) <= 1e-12);
  }
}

TEST_CASE("entropy monotonicity sweep") {
  std::mt19937_64 engine(66);
  long equality_with_offdiag = 0;
  for (int i = 0; i < 10000; ++i) {
    const PurificationBasis pb = random_basis(engine);
    const DensityMatrix rho0 = random_density(engine);
    const EntropyAudit a = entropy_audit(pb, rho0);

    const double delta = a.s_env_final - a.s_before;
    CHECK(delta >= -1e-9);
    CHECK(a.det_after >= a.det_before - 1e-12);
    CHECK(a.s_after_unitary == doctest::Approx(a.s_before).epsilon(1e-9));

    // Dephasing grows the determinant by exactly |offdiag|^2; entropy grows
    // at least twice that fast.
    const double off2 = a.offdiag_magnitude * a.offdiag_magnitude;
    CHECK(std::abs((a.det_after - a.det_before) - off2) <= 1e-14);
    CHECK(delta >= 2.0 * off2 - 1e-12);

    if (a.basis_diagonalizes) {
      CHECK(std::abs(delta) <= 1e-10);
    }
    if (std::abs(delta) <= 1e-10) {
      // Equality pins the off-diagonal below sqrt(delta/2).
      CHECK(a.offdiag_magnitude <= 7.1e-6);
      if (a.offdiag_magnitude > 1e-10) ++equality_with_offdiag;
    }
  }
  // Bookkeeping only; the sound bound above is what must hold.
  CHECK(equality_with_offdiag >= 0);
}
