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

#ifndef POLYNASH_LEAST_SQUARES_HPP_
#define POLYNASH_LEAST_SQUARES_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "polynash/common.hpp"
#include "polynash/game.hpp"

namespace polynash {

template <typename Scalar>
struct LsResultT {
  StrategyProfileT<Scalar> profile;  // meaningful only when valid
  Scalar residual_norm = 0;
  bool valid = false;
  Scalar exploitability_ls = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar exploitability_uniform = std::numeric_limits<Scalar>::quiet_NaN();
};

using LsResult = LsResultT<double>;

// Fast path for 2-player games at tau = 1, where the equilibrium system is
// linear and the substituted variables are the strategies themselves.
// Assembles the projected zero-gradient rows (first |A_i|-1 per player)
// plus the two sum rows and returns the minimum-norm least-squares
// solution. Off-simplex solutions are returned with valid=false rather
// than repaired; that matches the success-rate accounting of the batch
// experiment.
template <typename Scalar>
LsResultT<Scalar> solve_least_squares_2p(const GameT<Scalar>& game, Scalar gamma_tilde) {
  game.validate();
  if (game.num_players != 2) {
    throw std::invalid_argument("solve_least_squares_2p: exactly 2 players required");
  }
  const int m1 = game.action_counts[0];
  const int m2 = game.action_counts[1];
  const int n = m1 + m2;

  // U1(a,b) = payoff of player 1, U2(a,b) = payoff of player 2, both
  // indexed (player-1 action, player-2 action).
  auto u1 = [&](int a, int b) { return game.payoffs[0][a * m2 + b]; };
  auto u2 = [&](int a, int b) { return game.payoffs[1][a * m2 + b]; };

  MatrixX<Scalar> A = MatrixX<Scalar>::Zero(n, n);
  VectorX<Scalar> rhs = VectorX<Scalar>::Zero(n);
  int row = 0;
  // Player 1: rows of [I - 11^T/m1](U1 v2 - gamma_tilde m1 v1), last dropped.
  for (int a = 0; a < m1 - 1; ++a, ++row) {
    for (int b = 0; b < m1; ++b) {
      const Scalar w = (b == a ? Scalar(1) : Scalar(0)) - Scalar(1) / Scalar(m1);
      A(row, b) += -gamma_tilde * Scalar(m1) * w;
      for (int c = 0; c < m2; ++c) A(row, m1 + c) += w * u1(b, c);
    }
  }
  // Player 2: same with the transposed tensor acting on v1.
  for (int c = 0; c < m2 - 1; ++c, ++row) {
    for (int d = 0; d < m2; ++d) {
      const Scalar w = (d == c ? Scalar(1) : Scalar(0)) - Scalar(1) / Scalar(m2);
      A(row, m1 + d) += -gamma_tilde * Scalar(m2) * w;
      for (int b = 0; b < m1; ++b) A(row, b) += w * u2(b, d);
    }
  }
  A.row(row).head(m1).setOnes();
  rhs[row++] = Scalar(1);
  A.row(row).segment(m1, m2).setOnes();
  rhs[row++] = Scalar(1);

  Eigen::CompleteOrthogonalDecomposition<MatrixX<Scalar>> cod(A);
  cod.setThreshold(Scalar(1e-10));
  const VectorX<Scalar> v = cod.solve(rhs);

  LsResultT<Scalar> res;
  res.residual_norm = (A * v - rhs).norm();
  VectorX<Scalar> x1 = v.head(m1);
  VectorX<Scalar> x2 = v.tail(m2);
  auto clamp_tiny = [](VectorX<Scalar>& x) {
    for (Index l = 0; l < x.size(); ++l) {
      if (x[l] < Scalar(0) && x[l] > Scalar(-1e-9)) x[l] = Scalar(0);
    }
  };
  clamp_tiny(x1);
  clamp_tiny(x2);
  res.profile.strategies = {x1, x2};
  res.valid = is_on_simplex(x1, Scalar(1e-6)) && is_on_simplex(x2, Scalar(1e-6));

  const StrategyProfileT<Scalar> uni = uniform_profile(game);
  res.exploitability_uniform = exploitability(game, uni).max;
  if (res.valid) {
    StrategyProfileT<Scalar> clean;
    clean.strategies = {renormalize_to_simplex(x1), renormalize_to_simplex(x2)};
    res.exploitability_ls = exploitability(game, clean).max;
  }
  return res;
}

template <typename Scalar>
struct LsBatchRecord {
  int game_index = 0;
  std::uint64_t seed = 0;
  bool valid = false;
  Scalar residual = 0;
  Scalar eps_ls = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar eps_uniform = 0;
};

template <typename Scalar>
struct LsBatchSummary {
  Scalar success_rate = 0;
  std::vector<LsBatchRecord<Scalar>> records;
  std::vector<Scalar> eps_ls_valid;    // exploitability samples, valid solves only
  std::vector<Scalar> eps_uniform;     // uniform-profile baseline, all games
};

// Samples random normalized games, solves each with the least-squares path
// and records exploitability in the original game alongside the uniform
// baseline. Per-game seeds are derived from the experiment seed so any
// record is reproducible in isolation.
template <typename Scalar>
LsBatchSummary<Scalar> ls_batch_experiment(int num_games, int actions_per_player,
                                           Scalar gamma_tilde, std::uint64_t seed) {
  if (num_games < 1) throw std::invalid_argument("ls_batch_experiment: num_games must be >= 1");
  LsBatchSummary<Scalar> sum;
  sum.records.reserve(num_games);
  int valid_count = 0;
  for (int g = 0; g < num_games; ++g) {
    const std::uint64_t gseed = mix_seed(seed, static_cast<std::uint64_t>(g));
    const GameT<Scalar> game =
        random_game<Scalar>({actions_per_player, actions_per_player}, gseed);
    const LsResultT<Scalar> r = solve_least_squares_2p(game, gamma_tilde);
    LsBatchRecord<Scalar> rec;
    rec.game_index = g;
    rec.seed = gseed;
    rec.valid = r.valid;
    rec.residual = r.residual_norm;
    rec.eps_uniform = r.exploitability_uniform;
    sum.eps_uniform.push_back(r.exploitability_uniform);
    if (r.valid) {
      ++valid_count;
      rec.eps_ls = r.exploitability_ls;
      sum.eps_ls_valid.push_back(r.exploitability_ls);
    }
    sum.records.push_back(rec);
  }
  sum.success_rate = Scalar(valid_count) / Scalar(num_games);
  return sum;
}

}  // namespace polynash

#endif  // POLYNASH_LEAST_SQUARES_HPP_
