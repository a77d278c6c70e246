// Copyright 2026 The eprw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "eprw/errors.hpp"
#include "eprw/fock.hpp"
#include "eprw/gaussian.hpp"
#include "eprw/witness.hpp"

using namespace eprw;

namespace {

FockDensityMatrix pure(int cutoff, const std::vector<std::pair<std::pair<int, int>, double>> &amps) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cutoff) * cutoff);
  for (const auto &[occ, a] : amps) psi(occ.first * cutoff + occ.second) = a;
  return FockDensityMatrix(cutoff, 2, psi * psi.adjoint());
}

}  // namespace

TEST_CASE("density matrix shape checks") {
  CHECK_THROWS_AS(FockDensityMatrix(3, 2, Eigen::MatrixXcd::Identity(3, 3)), DomainError);
  CHECK_THROWS_AS(FockDensityMatrix(0, 1, Eigen::MatrixXcd(0, 0)), DomainError);
  CHECK_THROWS_AS(FockDensityMatrix(2, 3, Eigen::MatrixXcd::Identity(8, 8)), DomainError);
  const FockDensityMatrix rho(3, 2, Eigen::MatrixXcd::Identity(9, 9) / 9.0);
  CHECK(rho.index(2, 1) == 7);
  CHECK(rho.trace_deficit() == doctest::Approx(0.0));
}

TEST_CASE("squeezed thermal parameters reproduce the moments") {
  for (const auto &[n, m] : {std::pair{0.5, 0.8}, std::pair{1.0, -0.3}, std::pair{2.0, 0.0},
                             std::pair{1.0, std::sqrt(2.0)}}) {
    const SqueezedThermalParams p = squeezed_thermal_params(n, m);
    CHECK(p.nu >= 0.0);
    CHECK((p.nu + 0.5) * std::cosh(2 * p.r) - 0.5 == doctest::Approx(n).epsilon(1e-12));
    CHECK(-(p.nu + 0.5) * std::sinh(2 * p.r) == doctest::Approx(m).epsilon(1e-12));
  }
  CHECK(squeezed_thermal_params(1.0, std::sqrt(2.0)).nu == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(squeezed_thermal_params(0.1, 1.0), UnphysicalStateError);
}

TEST_CASE("single-mode states carry the requested moments") {
  for (const auto &[n, m] : {std::pair{0.5, 0.8}, std::pair{0.3, -0.2}, std::pair{1.0, 0.0}}) {
    const FockDensityMatrix rho = build_single_mode_state(n, m, 60, 1e-9);
    CHECK(rho.trace_deficit() < 1e-9);
    CHECK(rho.hermiticity_error() < 1e-13);
    CHECK(rho.min_eigenvalue() > -1e-12);
    CHECK(expect(rho, ops::number(0)).real() == doctest::Approx(n).epsilon(1e-9));
    CHECK(std::abs(expect(rho, ops::a(0) * ops::a(0)) - cplx(-m, 0.0)) < 1e-9);
  }
  CHECK_THROWS_AS(build_single_mode_state(2.0, 0.0, 4), TruncationError);
}

TEST_CASE("EPR states carry the requested moments") {
  for (const auto &[n, m] : {std::pair{0.5, 0.8}, std::pair{1.0, 0.0}, std::pair{0.7, -0.4},
                             std::pair{0.5, std::sqrt(0.75)}}) {
    const FockDensityMatrix rho = build_epr_state(n, m, 40, 1e-9);
    CHECK(rho.hermiticity_error() < 1e-13);
    CHECK(expect(rho, ops::number(0)).real() == doctest::Approx(n).epsilon(1e-9));
    CHECK(expect(rho, ops::number(1)).real() == doctest::Approx(n).epsilon(1e-9));
    CHECK(std::abs(expect(rho, ops::a(0) * ops::a(1)) - cplx(-m, 0.0)) < 1e-9);
    CHECK(std::abs(expect(rho, ops::adag(0) * ops::a(1))) < 1e-12);
    CHECK(std::abs(expect(rho, ops::a(0) * ops::a(0))) < 1e-12);
  }
  CHECK(build_epr_state(0.4, 0.3, 12, 1e-3).min_eigenvalue() > -1e-12);
  CHECK_THROWS_AS(build_epr_state(2.0, 1.0, 8), TruncationError);
  CHECK_THROWS_AS(build_epr_state(0.5, 0.1, 128), DomainError);
}

TEST_CASE("direct EPR builder matches the beam-splitter route") {
  const int d = 26;
  for (const auto &[n, m] : {std::pair{0.3, 0.4}, std::pair{0.25, 0.1}}) {
    const FockDensityMatrix bs = apply_beam_splitter(
        tensor_product(build_single_mode_state(n, m, d, 1e-9), build_single_mode_state(n, -m, d, 1e-9)),
        1e-6);
    const FockDensityMatrix direct = build_epr_state(n, m, d, 1e-9);
    // Compare on states with n_c + n_d < d, where the input box holds every preimage.
    double worst = 0.0;
    for (int i0 = 0; i0 < d; ++i0)
      for (int i1 = 0; i0 + i1 < d / 2; ++i1)
        for (int j0 = 0; j0 < d; ++j0)
          for (int j1 = 0; j0 + j1 < d / 2; ++j1)
            worst = std::max(worst, std::abs(bs.matrix()(bs.index(i0, i1), bs.index(j0, j1)) -
                                             direct.matrix()(direct.index(i0, i1), direct.index(j0, j1))));
    CHECK(worst < 1e-7);
    CHECK(witness_trace(bs) == doctest::Approx(witness_trace(direct)).epsilon(1e-6));
  }
}

TEST_CASE("single photon on the beam splitter") {
  const FockDensityMatrix out = apply_beam_splitter(pure(3, {{{1, 0}, 1.0}}));
  const double h = 0.5;
  CHECK(out.matrix()(out.index(1, 0), out.index(1, 0)).real() == doctest::Approx(h));
  CHECK(out.matrix()(out.index(0, 1), out.index(0, 1)).real() == doctest::Approx(h));
  CHECK(out.matrix()(out.index(1, 0), out.index(0, 1)).real() == doctest::Approx(h));
  CHECK(out.trace() == doctest::Approx(1.0));
}

TEST_CASE("Hong-Ou-Mandel: two photons never leave in separate ports") {
  const FockDensityMatrix out = apply_beam_splitter(pure(4, {{{1, 1}, 1.0}}));
  CHECK(std::abs(out.matrix()(out.index(1, 1), out.index(1, 1))) < 1e-14);
  CHECK(out.matrix()(out.index(2, 0), out.index(2, 0)).real() == doctest::Approx(0.5));
  CHECK(out.matrix()(out.index(0, 2), out.index(0, 2)).real() == doctest::Approx(0.5));
}

TEST_CASE("beam splitter is an involution on complete photon-number blocks") {
  const int d = 6;
  const FockDensityMatrix in = pure(d, {{{0, 0}, 0.5}, {{2, 1}, 0.5}, {{0, 5}, 0.5}, {{3, 2}, -0.5}});
  const FockDensityMatrix twice = apply_beam_splitter(apply_beam_splitter(in, 1e-12), 1e-12);
  CHECK((twice.matrix() - in.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(apply_beam_splitter(build_single_mode_state(0.1, 0.0, 8, 1e-3)), DomainError);
}

TEST_CASE("displacement") {
  const cplx alpha(0.6, -0.4);
  const FockDensityMatrix rho = apply_displacement(build_epr_state(0.3, 0.2, 30, 1e-9), alpha, 1, 1e-8);
  CHECK(std::abs(expect(rho, ops::a(1)) - alpha) < 1e-9);
  CHECK(std::abs(expect(rho, ops::a(0))) < 1e-12);
  CHECK(expect(rho, ops::number(1)).real() == doctest::Approx(0.3 + std::norm(alpha)).epsilon(1e-9));
  CHECK(std::abs(expect(rho, ops::a(0) * ops::a(1)) - cplx(-0.2, 0.0)) < 1e-9);

  const FockDensityMatrix one = apply_displacement(build_single_mode_state(0.0, 0.0, 20), alpha, 0);
  const double mean = std::norm(alpha);
  for (int n = 0; n < 5; ++n) {
    const double poisson = std::exp(-mean) * std::pow(mean, n) / std::tgamma(n + 1.0);
    CHECK(one.matrix()(n, n).real() == doctest::Approx(poisson).epsilon(1e-12));
  }
  CHECK_THROWS_AS(apply_displacement(one, cplx(2.0, 0.0), 0), TruncationError);
  CHECK_THROWS_AS(apply_displacement(one, alpha, 1), DomainError);
}

TEST_CASE("expect agrees with the trace against the operator matrix") {
  const FockDensityMatrix rho =
      apply_displacement(build_epr_state(0.4, 0.5, 12, 1e-2), cplx(0.2, 0.1), 0, 1e-2);
  for (const auto &op : {ops::hbt_numerator(), ops::stokes_y() * ops::stokes_x(), ops::a(1),
                         ops::adag(0) * ops::a(0) * ops::a(1)}) {
    const Eigen::MatrixXcd o = operator_matrix(op, 12, 2);
    CHECK(std::abs((rho.matrix() * o).trace() - expect(rho, op)) < 1e-13);
  }
  CHECK_THROWS_AS(expect(build_single_mode_state(0.1, 0.0, 8, 1e-3), ops::a(1)), DomainError);
}

TEST_CASE("Stokes commutator on interior blocks") {
  const int d = 10;
  const Eigen::MatrixXcd sx = operator_matrix(ops::stokes_x(), d, 2);
  const Eigen::MatrixXcd sy = operator_matrix(ops::stokes_y(), d, 2);
  const Eigen::MatrixXcd sz = operator_matrix(ops::stokes_z(), d, 2);
  const Eigen::MatrixXcd diff = sx * sy - sy * sx - cplx(0.0, 1.0) * sz;
  for (int i0 = 0; i0 < d; ++i0)
    for (int i1 = 0; i0 + i1 < d; ++i1)
      for (int j0 = 0; j0 < d; ++j0)
        for (int j1 = 0; j0 + j1 < d; ++j1)
          CHECK(std::abs(diff(i0 * d + i1, j0 * d + j1)) < 1e-12);
}

TEST_CASE("NOPA state and the pure beam-splitter output") {
  const double n = 0.2, m = std::sqrt(n * (n + 1.0));
  const int d = 24;
  const Eigen::VectorXcd psi = nopa_state(n, d);
  CHECK(psi.norm() == doctest::Approx(1.0));
  const FockDensityMatrix bs = apply_beam_splitter(
      tensor_product(build_single_mode_state(n, -m, d, 1e-10), build_single_mode_state(n, m, d, 1e-10)),
      1e-8);
  CHECK(fidelity(bs, psi) > 1.0 - 1e-8);
  CHECK(fidelity(build_epr_state(n, -m, d, 1e-10), psi) > 1.0 - 1e-10);
  CHECK(fidelity(build_epr_state(n, m, d, 1e-10), psi) < 0.9);
  CHECK_THROWS_AS(fidelity(bs, Eigen::VectorXcd::Ones(3)), DomainError);
}

TEST_CASE("witness trace") {
  const FockDensityMatrix rho = build_epr_state(1.0, std::sqrt(2.0), 48, 1e-9);
  CHECK(witness_trace(rho) == doctest::Approx(-0.1).epsilon(1e-8));
  CHECK_THROWS_AS(witness_trace(build_epr_state(0.0, 0.0, 4)), DegenerateInputError);
}

TEST_CASE("convergence sweep") {
  const ConvergenceReport vac = convergence_check(0.0, 0.0, 1e-6);
  CHECK(vac.cutoff == 1);
  CHECK(vac.trace_deficit == 0.0);
  for (const auto &[n, m] : {std::pair{0.5, 0.8}, std::pair{2.0, 0.0}, std::pair{2.0, std::sqrt(6.0)}}) {
    const ConvergenceReport r = convergence_check(n, m, 1e-7);
    CHECK(r.cutoff <= 64);
    CHECK(r.trace_deficit < 1e-7);
    CHECK(r.witness_change < 1e-7);
    const FockDensityMatrix rho = build_epr_state(n, m, r.cutoff, 1e-7);
    CHECK(witness_trace(rho) == doctest::Approx(hbt_witness_value(n, m).value).epsilon(1e-6));
  }
  CHECK_THROWS_AS(convergence_check(2.0, 0.0, 1e-7, 16), ConvergenceError);
  CHECK_THROWS_AS(convergence_check(0.5, 0.1, 0.0), DomainError);
  CHECK_THROWS_AS(convergence_check(0.1, 1.0, 1e-6), UnphysicalStateError);
}

TEST_CASE("CSV dump") {
  std::ostringstream os;
  dump_csv(FockDensityMatrix(2, 1, Eigen::MatrixXcd::Identity(2, 2) * 0.5), os, 0.1);
  CHECK(os.str() == "row,col,re,im\r\n0,0,0.5,0\r\n1,1,0.5,0\r\n");
}
