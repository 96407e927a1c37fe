// Copyright 2026 The Polynash Authors
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

#ifndef POLYNASH_MVP_HPP_
#define POLYNASH_MVP_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "polynash/common.hpp"
#include "polynash/game.hpp"
#include "polynash/polynomial.hpp"

namespace polynash {

inline constexpr double kDefaultNegTol = 1e-6;

// The polyomial encoding of the regularized-equilibrium conditions in the
// substituted variables v = x^tau (one variable per player action, flattened
// player-major). Its nonnegative real roots map back to equilibria of the
// regularized game via x = v^(1/tau).
template <typename Scalar>
struct PolynomialSystemT {
  std::vector<PolynomialT<Scalar>> polys;
  int n_vars = 0;                  // sum_i |A_i|
  std::vector<int> action_counts;  // per player
  std::vector<int> var_offsets;    // player i's block starts at var_offsets[i]
  TsallisParams params;
  std::vector<int> degrees;        // per equation

  // gamma_tilde < 1 voids the interiority guarantee; payoffs outside (0, 1]
  // void Assumption-style positivity of gradients. Both are warnings, not
  // errors, so experiments can proceed.
  bool interiority_warning = false;
  bool payoff_range_warning = false;

  int var_index(int player, int action) const { return var_offsets[player] + action; }
  int num_equations() const { return static_cast<int>(polys.size()); }
  int max_degree() const {
    int d = 0;
    for (int de : degrees) d = std::max(d, de);
    return d;
  }
};

using PolynomialSystem = PolynomialSystemT<double>;

// Builds the equilibrium system for a game under Tsallis regularization.
//
// Per player i with m = |A_i| actions and weight gamma = gamma_tilde * m:
//   - the first m-1 rows of the mean-subtracted zero-gradient condition
//     (the payoff tensor contracted with opponents' v^tau_inv blocks, minus
//     gamma v_i); the last row is dropped since the projection rows sum to
//     zero,
//   - one simplex-sum equation sum_a v_{i,a}^tau_inv - 1 = 0.
//
// Nonnegativity of v is not encoded as equations; it is enforced when
// candidates are filtered.
template <typename Scalar>
PolynomialSystemT<Scalar> build_ne_mvp(const GameT<Scalar>& game, const TsallisParams& params) {
  game.validate();
  PolynomialSystemT<Scalar> sys;
  sys.params = params;
  sys.action_counts = game.action_counts;
  sys.var_offsets.resize(game.num_players);
  int off = 0;
  for (int i = 0; i < game.num_players; ++i) {
    sys.var_offsets[i] = off;
    off += game.action_counts[i];
  }
  sys.n_vars = off;
  sys.interiority_warning = params.gamma_tilde < 1.0;
  for (const auto& u : game.payoffs) {
    if (u.minCoeff() <= Scalar(0) || u.maxCoeff() > Scalar(1)) sys.payoff_range_warning = true;
  }

  const int n = game.num_players;
  const int tau_inv = params.tau_inv;
  for (int i = 0; i < n; ++i) {
    const int m = game.action_counts[i];
    const Scalar gamma = Scalar(params.gamma_for(m));

    // Raw zero-gradient rows: one term per opponent joint action plus the
    // linear -gamma v_{i,a} term.
    std::vector<std::vector<std::pair<Scalar, Monomial>>> rows(m);
    std::vector<int> joint(n, 0);
    const Index total = game.total_joint_actions();
    for (Index f = 0; f < total; ++f) {
      Monomial mono(sys.n_vars);
      for (int j = 0; j < n; ++j) {
        if (j != i) mono.exponents[sys.var_index(j, joint[j])] += tau_inv;
      }
      rows[joint[i]].emplace_back(game.payoffs[i][f], mono);
      for (int j = n - 1; j >= 0; --j) {
        if (++joint[j] < game.action_counts[j]) break;
        joint[j] = 0;
      }
    }
    for (int a = 0; a < m; ++a) {
      Monomial lin(sys.n_vars);
      lin.exponents[sys.var_index(i, a)] = 1;
      rows[a].emplace_back(-gamma, lin);
    }

    // Mean-subtract and keep the first m-1 rows.
    for (int a = 0; a < m - 1; ++a) {
      std::vector<std::pair<Scalar, Monomial>> terms;
      for (int b = 0; b < m; ++b) {
        const Scalar w = (b == a ? Scalar(1) : Scalar(0)) - Scalar(1) / Scalar(m);
        for (const auto& [c, mono] : rows[b]) terms.emplace_back(w * c, mono);
      }
      sys.polys.emplace_back(sys.n_vars, std::move(terms));
      sys.degrees.push_back((n - 1) * tau_inv);
    }

    std::vector<std::pair<Scalar, Monomial>> sum_terms;
    for (int a = 0; a < m; ++a) {
      Monomial mono(sys.n_vars);
      mono.exponents[sys.var_index(i, a)] = tau_inv;
      sum_terms.emplace_back(Scalar(1), mono);
    }
    sum_terms.emplace_back(Scalar(-1), Monomial(sys.n_vars));
    sys.polys.emplace_back(sys.n_vars, std::move(sum_terms));
    sys.degrees.push_back(tau_inv);
  }
  return sys;
}

// Maps a root of the system back to strategy space: x_{i,a} = v_{i,a}^tau_inv.
// Entries in (-neg_tol, 0) are clamped to zero; anything more negative is a
// rejection. Does not renormalize.
template <typename Scalar>
std::optional<StrategyProfileT<Scalar>> try_recover_strategy(const VectorX<Scalar>& v,
                                                             const PolynomialSystemT<Scalar>& system,
                                                             Scalar neg_tol = Scalar(kDefaultNegTol)) {
  if (v.size() != system.n_vars) throw std::invalid_argument("recover_strategy: dimension mismatch");
  if (v.minCoeff() < -neg_tol) return std::nullopt;
  StrategyProfileT<Scalar> profile;
  const int n = static_cast<int>(system.action_counts.size());
  profile.strategies.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int m = system.action_counts[i];
    VectorX<Scalar> x(m);
    for (int a = 0; a < m; ++a) {
      const Scalar va = std::max(v[system.var_index(i, a)], Scalar(0));
      Scalar xa = Scalar(1);
      for (int t = 0; t < system.params.tau_inv; ++t) xa *= va;
      x[a] = xa;
    }
    profile.strategies.push_back(std::move(x));
  }
  return profile;
}

template <typename Scalar>
StrategyProfileT<Scalar> recover_strategy(const VectorX<Scalar>& v,
                                          const PolynomialSystemT<Scalar>& system,
                                          Scalar neg_tol = Scalar(kDefaultNegTol)) {
  auto p = try_recover_strategy(v, system, neg_tol);
  if (!p) throw std::domain_error("recover_strategy: negative entry beyond tolerance");
  return *p;
}

// Evaluates every equation at v.
template <typename Scalar>
VectorX<Scalar> system_residual(const PolynomialSystemT<Scalar>& system, const VectorX<Scalar>& v) {
  if (v.size() != system.n_vars) throw std::invalid_argument("system_residual: dimension mismatch");
  VectorX<Scalar> r(system.num_equations());
  for (int e = 0; e < system.num_equations(); ++e) r[e] = eval_poly(system.polys[e], v);
  return r;
}

}  // namespace polynash

#endif  // POLYNASH_MVP_HPP_
