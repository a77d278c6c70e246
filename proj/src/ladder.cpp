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

#include "eprw/ladder.hpp"

#include <algorithm>
#include <cmath>

namespace eprw {

LadderExpr::LadderExpr(LadderTerm term) { terms_.push_back(std::move(term)); }

LadderExpr LadderExpr::scalar(cplx c) { return LadderExpr(LadderTerm{c, {}}); }

LadderExpr LadderExpr::annihilate(int mode) {
  return LadderExpr(LadderTerm{1.0, {Ladder{mode, false}}});
}

LadderExpr LadderExpr::create(int mode) {
  return LadderExpr(LadderTerm{1.0, {Ladder{mode, true}}});
}

int LadderExpr::max_mode() const {
  int result = -1;
  for (const auto &t : terms_)
    for (const auto &l : t.word) result = std::max(result, l.mode);
  return result;
}

std::size_t LadderExpr::degree() const {
  std::size_t result = 0;
  for (const auto &t : terms_) result = std::max(result, t.word.size());
  return result;
}

LadderExpr LadderExpr::adjoint() const {
  LadderExpr out;
  out.terms_.reserve(terms_.size());
  for (const auto &t : terms_) {
    LadderTerm adj{std::conj(t.coeff), {}};
    adj.word.reserve(t.word.size());
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it)
      adj.word.push_back(Ladder{it->mode, !it->dagger});
    out.terms_.push_back(std::move(adj));
  }
  return out;
}

LadderExpr LadderExpr::normal_ordered() const {
  LadderExpr out = *this;
  for (auto &t : out.terms_)
    std::stable_partition(t.word.begin(), t.word.end(),
                          [](const Ladder &l) { return l.dagger; });
  return out.simplified();
}

LadderExpr LadderExpr::simplified() const {
  LadderExpr out;
  for (const auto &t : terms_) {
    auto hit = std::find_if(out.terms_.begin(), out.terms_.end(),
                            [&](const LadderTerm &u) { return u.word == t.word; });
    if (hit == out.terms_.end())
      out.terms_.push_back(t);
    else
      hit->coeff += t.coeff;
  }
  std::erase_if(out.terms_, [](const LadderTerm &t) { return std::abs(t.coeff) == 0.0; });
  return out;
}

LadderExpr &LadderExpr::operator+=(const LadderExpr &rhs) {
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  return *this;
}

LadderExpr &LadderExpr::operator-=(const LadderExpr &rhs) {
  for (auto t : rhs.terms_) {
    t.coeff = -t.coeff;
    terms_.push_back(std::move(t));
  }
  return *this;
}

LadderExpr &LadderExpr::operator*=(cplx s) {
  for (auto &t : terms_) t.coeff *= s;
  return *this;
}

LadderExpr operator*(const LadderExpr &lhs, const LadderExpr &rhs) {
  LadderExpr out;
  out.terms_.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const auto &l : lhs.terms_)
    for (const auto &r : rhs.terms_) {
      LadderTerm t{l.coeff * r.coeff, l.word};
      t.word.insert(t.word.end(), r.word.begin(), r.word.end());
      out.terms_.push_back(std::move(t));
    }
  return out;
}

namespace ops {

LadderExpr a(int mode) { return LadderExpr::annihilate(mode); }
LadderExpr adag(int mode) { return LadderExpr::create(mode); }
LadderExpr number(int mode) { return adag(mode) * a(mode); }
LadderExpr identity() { return LadderExpr::scalar(1.0); }

LadderExpr rotated_quadrature(int mode, double phi) {
  const cplx phase = std::polar(1.0, phi);
  return (1.0 / std::sqrt(2.0)) * (std::conj(phase) * a(mode) + phase * adag(mode));
}

LadderExpr stokes_0() { return 0.5 * (number(0) + number(1)); }

LadderExpr stokes_x() { return 0.5 * (adag(0) * a(1) + adag(1) * a(0)); }

LadderExpr stokes_y() {
  return cplx(0.0, -0.5) * (adag(0) * a(1) - adag(1) * a(0));
}

LadderExpr stokes_z() { return 0.5 * (number(0) - number(1)); }

LadderExpr hbt_numerator() {
  return 2.0 * (adag(0) * adag(1) * a(0) * a(1)) + adag(1) * adag(1) * a(0) * a(0) +
         adag(0) * adag(0) * a(1) * a(1);
}

LadderExpr hbt_denominator() {
  const LadderExpr total = number(0) + number(1);
  return (total * total).normal_ordered();
}

}  // namespace ops

}  // namespace eprw
