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

#include "eprw/fock.hpp"
#include "eprw/ladder.hpp"

using namespace eprw;

namespace {

double matrix_distance(const LadderExpr &x, const LadderExpr &y, int cutoff) {
  const Eigen::MatrixXcd a = operator_matrix(x, cutoff, 2);
  const Eigen::MatrixXcd b = operator_matrix(y, cutoff, 2);
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("adjoint reverses words and conjugates coefficients") {
  const LadderExpr e = cplx(2.0, 3.0) * (ops::adag(0) * ops::a(1));
  const LadderExpr adj = e.adjoint();
  REQUIRE(adj.terms().size() == 1);
  CHECK(adj.terms()[0].coeff == cplx(2.0, -3.0));
  CHECK(adj.terms()[0].word == std::vector<Ladder>{{1, true}, {0, false}});
}

TEST_CASE("normal ordering moves creators left and keeps relative order") {
  const LadderExpr e = ops::a(0) * ops::adag(1) * ops::a(1) * ops::adag(0);
  const LadderExpr n = e.normal_ordered();
  REQUIRE(n.terms().size() == 1);
  CHECK(n.terms()[0].word == std::vector<Ladder>{{1, true}, {0, true}, {0, false}, {1, false}});
}

TEST_CASE("simplified merges equal words and drops cancelled terms") {
  const LadderExpr e = ops::number(0) + ops::number(0) - 2.0 * ops::number(0) + ops::a(1);
  const LadderExpr s = e.simplified();
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].word == std::vector<Ladder>{{1, false}});
}

TEST_CASE("degree and max_mode") {
  CHECK(ops::hbt_numerator().degree() == 4);
  CHECK(ops::hbt_numerator().max_mode() == 1);
  CHECK(ops::identity().max_mode() == -1);
  CHECK(ops::number(0).max_mode() == 0);
}

TEST_CASE("Stokes operators are Hermitian") {
  for (const auto &s : {ops::stokes_0(), ops::stokes_x(), ops::stokes_y(), ops::stokes_z()})
    CHECK(matrix_distance(s, s.adjoint(), 6) == doctest::Approx(0.0));
}

TEST_CASE("HBT numerator is four times the normally ordered S_x squared") {
  const LadderExpr sx = ops::stokes_x();
  const LadderExpr four_sx2 = 4.0 * (sx * sx).normal_ordered();
  CHECK(matrix_distance(ops::hbt_numerator(), four_sx2, 7) < 1e-13);
}

TEST_CASE("HBT denominator is the normally ordered total number squared") {
  const LadderExpr n0 = ops::number(0), n1 = ops::number(1);
  const LadderExpr expected = ops::adag(0) * ops::adag(0) * ops::a(0) * ops::a(0) +
                              ops::adag(1) * ops::adag(1) * ops::a(1) * ops::a(1) +
                              2.0 * (ops::adag(0) * ops::adag(1) * ops::a(0) * ops::a(1));
  CHECK(matrix_distance(ops::hbt_denominator(), expected, 7) < 1e-13);
}

TEST_CASE("rotated quadrature at phi and phi + pi/2") {
  const double s = 1.0 / std::sqrt(2.0);
  const LadderExpr x = ops::rotated_quadrature(0, 0.0);
  const LadderExpr p = ops::rotated_quadrature(0, 0.5 * M_PI);
  CHECK(matrix_distance(x, s * (ops::a(0) + ops::adag(0)), 5) < 1e-15);
  CHECK(matrix_distance(p, cplx(0.0, -s) * (ops::a(0) - ops::adag(0)), 5) < 1e-15);
}

TEST_CASE("boson commutator holds below the cutoff") {
  const int d = 6;
  const Eigen::MatrixXcd comm =
      operator_matrix(ops::a(0) * ops::adag(0) - ops::adag(0) * ops::a(0), d, 1);
  CHECK((comm - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-14);
}
