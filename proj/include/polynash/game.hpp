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

#ifndef POLYNASH_GAME_HPP_
#define POLYNASH_GAME_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polynash/common.hpp"

namespace polynash {

// A finite normal-form game: one dense payoff tensor per player over the
// joint action space. Tensors are stored flat in row-major order, i.e. the
// last player's action index varies fastest.
template <typename Scalar>
struct GameT {
  int num_players = 0;
  std::vector<int> action_counts;
  std::vector<VectorX<Scalar>> payoffs;

  Index total_joint_actions() const {
    Index n = 1;
    for (int m : action_counts) n *= m;
    return n;
  }

  // Flat offset of a joint action (a_1, ..., a_N).
  Index flat_index(const std::vector<int>& joint) const {
    Index idx = 0;
    for (int i = 0; i < num_players; ++i) idx = idx * action_counts[i] + joint[i];
    return idx;
  }

  Scalar payoff(int player, const std::vector<int>& joint) const {
    return payoffs[player][flat_index(joint)];
  }

  void validate() const {
    if (num_players < 1) throw std::invalid_argument("game: num_players < 1");
    if (static_cast<int>(action_counts.size()) != num_players ||
        static_cast<int>(payoffs.size()) != num_players) {
      throw std::invalid_argument("game: field sizes disagree with num_players");
    }
    for (int m : action_counts) {
      if (m < 1) throw std::invalid_argument("game: nonpositive action count");
    }
    const Index total = total_joint_actions();
    for (const auto& u : payoffs) {
      if (u.size() != total) throw std::invalid_argument("game: payoff tensor size mismatch");
    }
  }
};

using Game = GameT<double>;

// One mixed strategy (simplex vector) per player.
template <typename Scalar>
struct StrategyProfileT {
  std::vector<VectorX<Scalar>> strategies;
};

using StrategyProfile = StrategyProfileT<double>;

// Default simplex tolerance for exact contexts. Solver candidates are
// screened with a much looser sum tolerance carried in their own configs.
inline constexpr double kSimplexTol = 1e-8;

template <typename Scalar>
void validate_profile(const GameT<Scalar>& game, const StrategyProfileT<Scalar>& profile,
                      Scalar tol = Scalar(kSimplexTol)) {
  if (static_cast<int>(profile.strategies.size()) != game.num_players) {
    throw std::invalid_argument("profile: player count mismatch");
  }
  for (int i = 0; i < game.num_players; ++i) {
    const auto& x = profile.strategies[i];
    if (x.size() != game.action_counts[i]) {
      throw std::invalid_argument("profile: strategy length mismatch for player " + std::to_string(i));
    }
    if (!is_on_simplex(x, tol)) {
      throw std::invalid_argument("profile: strategy off simplex for player " + std::to_string(i));
    }
  }
}

template <typename Scalar>
StrategyProfileT<Scalar> uniform_profile(const GameT<Scalar>& game) {
  StrategyProfileT<Scalar> p;
  p.strategies.reserve(game.num_players);
  for (int m : game.action_counts) {
    p.strategies.push_back(VectorX<Scalar>::Constant(m, Scalar(1) / Scalar(m)));
  }
  return p;
}

// Tsallis regularization parameters. The inverse temperature 1/tau is kept
// as an integer so the equilibrium conditions stay polynomial after the
// variable substitution, and the weight is exposed in normalized form
// gamma_tilde = gamma / |A_i| so each player's effective weight scales with
// its action count.
struct TsallisParams {
  int tau_inv = 1;
  double gamma_tilde = 1.0;

  TsallisParams() = default;
  TsallisParams(int tau_inv_in, double gamma_tilde_in)
      : tau_inv(tau_inv_in), gamma_tilde(gamma_tilde_in) {
    if (tau_inv < 1) throw std::invalid_argument("TsallisParams: tau_inv must be >= 1");
    if (!(gamma_tilde > 0.0 && gamma_tilde <= 1.0)) {
      throw std::invalid_argument("TsallisParams: gamma_tilde must lie in (0, 1]");
    }
  }

  double tau() const { return 1.0 / static_cast<double>(tau_inv); }
  double gamma_for(int num_actions) const { return gamma_tilde * num_actions; }
};

// --- expected utility and gradients -------------------------------------

// Contraction of player i's payoff tensor with all opponents' strategies.
// Entry a is the expected payoff of pure action a against the opponents'
// mixed play.
template <typename Scalar>
VectorX<Scalar> gradient(const GameT<Scalar>& game, const StrategyProfileT<Scalar>& profile,
                         int player) {
  game.validate();
  if (player < 0 || player >= game.num_players) {
    throw std::out_of_range("gradient: player index out of range");
  }
  validate_profile(game, profile, Scalar(kSimplexTol));
  const int n = game.num_players;
  const auto& u = game.payoffs[player];
  VectorX<Scalar> grad = VectorX<Scalar>::Zero(game.action_counts[player]);

  std::vector<int> joint(n, 0);
  const Index total = game.total_joint_actions();
  for (Index f = 0; f < total; ++f) {
    Scalar w = Scalar(1);
    for (int j = 0; j < n; ++j) {
      if (j != player) w *= profile.strategies[j][joint[j]];
    }
    grad[joint[player]] += u[f] * w;
    // advance odometer (last player fastest)
    for (int j = n - 1; j >= 0; --j) {
      if (++joint[j] < game.action_counts[j]) break;
      joint[j] = 0;
    }
  }
  return grad;
}

template <typename Scalar>
Scalar expected_utility(const GameT<Scalar>& game, const StrategyProfileT<Scalar>& profile,
                        int player) {
  return gradient(game, profile, player).dot(profile.strategies[player]);
}

// Component of g in the tangent space of the simplex: subtracts the mean.
// Idempotent; output sums to zero.
template <typename Scalar>
VectorX<Scalar> project_tangent(const VectorX<Scalar>& g) {
  if (g.size() == 0) throw std::invalid_argument("project_tangent: empty vector");
  return g.array() - g.mean();
}

// --- Tsallis entropy, gradients and best responses ----------------------

// H(x) = gamma / (tau + 1) * (1 - sum_l x_l^(tau+1)). Nonnegative on the
// simplex; zero exactly at pure strategies.
template <typename Scalar>
Scalar tsallis_entropy(const VectorX<Scalar>& x, Scalar tau, Scalar gamma) {
  if (!(tau > Scalar(0) && tau <= Scalar(1))) {
    throw std::invalid_argument("tsallis_entropy: tau must lie in (0, 1]");
  }
  if (gamma <= Scalar(0)) throw std::invalid_argument("tsallis_entropy: gamma must be positive");
  if (!is_on_simplex(x, Scalar(kSimplexTol))) {
    throw std::invalid_argument("tsallis_entropy: x off simplex");
  }
  Scalar s = 0;
  for (Index l = 0; l < x.size(); ++l) {
    s += std::pow(std::max(x[l], Scalar(0)), tau + Scalar(1));
  }
  return gamma / (tau + Scalar(1)) * (Scalar(1) - s);
}

// Gradient of u_i + H(x_i) in x_i under weight gamma = gamma_tilde * |A_i|.
// Requires a strictly positive strategy so x^tau is well defined for all
// tau in (0, 1].
template <typename Scalar>
VectorX<Scalar> tsallis_gradient(const GameT<Scalar>& game, const StrategyProfileT<Scalar>& profile,
                                 int player, const TsallisParams& params) {
  const auto& x = profile.strategies[player];
  if (x.size() > 0 && x.minCoeff() <= Scalar(0)) {
    throw std::domain_error("tsallis_gradient: strategy must be strictly positive");
  }
  const Scalar tau = Scalar(params.tau());
  const Scalar gamma = Scalar(params.gamma_for(game.action_counts[player]));
  VectorX<Scalar> g = gradient(game, profile, player);
  for (Index l = 0; l < g.size(); ++l) {
    g[l] -= gamma * std::pow(x[l], tau);
  }
  return g;
}

// Best response under Tsallis bonuses at the weight that zeroes the
// regularized gradient: proportional to the gradient raised to 1/tau.
// Interior whenever the gradient is strictly positive.
template <typename Scalar>
VectorX<Scalar> tsallis_best_response_from_gradient(const VectorX<Scalar>& grad, Scalar tau) {
  if (!(tau > Scalar(0) && tau <= Scalar(1))) {
    throw std::invalid_argument("tsallis_best_response: tau must lie in (0, 1]");
  }
  if (grad.size() == 0 || grad.minCoeff() <= Scalar(0)) {
    throw std::domain_error("tsallis_best_response: gradient entries must be strictly positive");
  }
  VectorX<Scalar> p(grad.size());
  for (Index l = 0; l < grad.size(); ++l) p[l] = std::pow(grad[l], Scalar(1) / tau);
  return p / p.sum();
}

template <typename Scalar>
VectorX<Scalar> tsallis_best_response(const GameT<Scalar>& game,
                                      const StrategyProfileT<Scalar>& profile, int player,
                                      Scalar tau) {
  return tsallis_best_response_from_gradient(gradient(game, profile, player), tau);
}

// Best response under a fixed weight gamma: argmax_x <x, grad> + H(x).
// Solved by the water-filling condition grad - gamma x^tau = c 1 on the
// support, with the offset c found by bisection.
template <typename Scalar>
VectorX<Scalar> regularized_best_response_from_gradient(const VectorX<Scalar>& grad, Scalar tau,
                                                        Scalar gamma) {
  if (!(tau > Scalar(0) && tau <= Scalar(1))) {
    throw std::invalid_argument("regularized_best_response: tau must lie in (0, 1]");
  }
  if (gamma <= Scalar(0)) {
    throw std::invalid_argument("regularized_best_response: gamma must be positive");
  }
  const Index m = grad.size();
  auto mass = [&](Scalar c) {
    Scalar s = 0;
    for (Index l = 0; l < m; ++l) {
      if (grad[l] > c) s += std::pow((grad[l] - c) / gamma, Scalar(1) / tau);
    }
    return s;
  };
  Scalar lo = grad.minCoeff() - gamma;  // mass >= 1 here
  Scalar hi = grad.maxCoeff();          // mass = 0 here
  for (int it = 0; it < 200; ++it) {
    const Scalar mid = (lo + hi) / Scalar(2);
    if (mass(mid) >= Scalar(1)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Scalar c = (lo + hi) / Scalar(2);
  VectorX<Scalar> x(m);
  for (Index l = 0; l < m; ++l) {
    x[l] = grad[l] > c ? std::pow((grad[l] - c) / gamma, Scalar(1) / tau) : Scalar(0);
  }
  return renormalize_to_simplex(x);
}

template <typename Scalar>
VectorX<Scalar> regularized_best_response(const GameT<Scalar>& game,
                                          const StrategyProfileT<Scalar>& profile, int player,
                                          const TsallisParams& params) {
  return regularized_best_response_from_gradient(
      gradient(game, profile, player), Scalar(params.tau()),
      Scalar(params.gamma_for(game.action_counts[player])));
}

// --- exploitability ------------------------------------------------------

template <typename Scalar>
struct ExploitabilityResult {
  VectorX<Scalar> per_player;
  Scalar max = Scalar(0);
};

// eps_i = max(grad_i) - u_i(x): the gain available to player i from a best
// pure deviation. Nonnegative on every valid profile; zero at a Nash
// equilibrium.
template <typename Scalar>
ExploitabilityResult<Scalar> exploitability(const GameT<Scalar>& game,
                                            const StrategyProfileT<Scalar>& profile) {
  ExploitabilityResult<Scalar> r;
  r.per_player.resize(game.num_players);
  for (int i = 0; i < game.num_players; ++i) {
    const VectorX<Scalar> g = gradient(game, profile, i);
    r.per_player[i] = g.maxCoeff() - g.dot(profile.strategies[i]);
  }
  r.max = r.per_player.maxCoeff();
  return r;
}

// Exploitability measured in the regularized game u_i + H(x_i) with weight
// gamma = gamma_tilde * |A_i|.
template <typename Scalar>
ExploitabilityResult<Scalar> regularized_exploitability(const GameT<Scalar>& game,
                                                        const StrategyProfileT<Scalar>& profile,
                                                        const TsallisParams& params) {
  ExploitabilityResult<Scalar> r;
  r.per_player.resize(game.num_players);
  const Scalar tau = Scalar(params.tau());
  for (int i = 0; i < game.num_players; ++i) {
    const Scalar gamma = Scalar(params.gamma_for(game.action_counts[i]));
    const VectorX<Scalar> g = gradient(game, profile, i);
    const VectorX<Scalar> br = regularized_best_response_from_gradient(g, tau, gamma);
    const Scalar best = g.dot(br) + tsallis_entropy(br, tau, gamma);
    const Scalar cur = g.dot(profile.strategies[i]) +
                       tsallis_entropy(renormalize_to_simplex(profile.strategies[i]), tau, gamma);
    r.per_player[i] = best - cur;
  }
  r.max = r.per_player.maxCoeff();
  return r;
}

template <typename Scalar>
struct ExploitabilityBound {
  VectorX<Scalar> tight_per_player;
  VectorX<Scalar> loose_per_player;
  Scalar tight = Scalar(0);
  Scalar loose = Scalar(0);
};

// Certified upper bounds on per-player exploitability in the original game
// from quantities measured at an interior profile. Only tau is taken from
// params: the bound derivation fixes the regularization weight at
// gamma = |A_i| (gamma_tilde = 1), so that is what is used here regardless
// of params.gamma_tilde.
//
//   tight_i = H(x_i) + tau H(BR_i) + sqrt(2) ||proj grad_i||
//   loose_i = tau |A_i| ln|A_i|    + sqrt(2) ||proj grad_i||
template <typename Scalar>
ExploitabilityBound<Scalar> exploitability_bound(const GameT<Scalar>& game,
                                                 const StrategyProfileT<Scalar>& profile,
                                                 const TsallisParams& params) {
  for (int i = 0; i < game.num_players; ++i) {
    if (profile.strategies[i].minCoeff() <= Scalar(0)) {
      throw std::domain_error("exploitability_bound: profile must be strictly interior");
    }
  }
  const Scalar tau = Scalar(params.tau());
  ExploitabilityBound<Scalar> b;
  b.tight_per_player.resize(game.num_players);
  b.loose_per_player.resize(game.num_players);
  for (int i = 0; i < game.num_players; ++i) {
    const int m = game.action_counts[i];
    const Scalar gamma = Scalar(m);
    const auto& x = profile.strategies[i];
    const VectorX<Scalar> g = gradient(game, profile, i);

    VectorX<Scalar> gt = g;
    for (Index l = 0; l < gt.size(); ++l) gt[l] -= gamma * std::pow(x[l], tau);
    const Scalar pn = project_tangent(gt).norm();

    const VectorX<Scalar> br = regularized_best_response_from_gradient(g, tau, gamma);
    const Scalar hx = tsallis_entropy(renormalize_to_simplex(x), tau, gamma);
    const Scalar hbr = tsallis_entropy(br, tau, gamma);

    b.tight_per_player[i] = hx + tau * hbr + Scalar(std::sqrt(2.0)) * pn;
    b.loose_per_player[i] =
        tau * Scalar(m) * Scalar(std::log(double(m))) + Scalar(std::sqrt(2.0)) * pn;
  }
  b.tight = b.tight_per_player.maxCoeff();
  b.loose = b.loose_per_player.maxCoeff();
  return b;
}

// Largest tau for which the entropy penalty term |A|(1 - |A|^-tau) stays
// below epsilon: tau = 1 - log_|A|(|A| - epsilon).
inline double tau_for_target_epsilon(int num_actions, double epsilon) {
  if (num_actions < 2) throw std::invalid_argument("tau_for_target_epsilon: need >= 2 actions");
  if (epsilon < 0.0 || epsilon >= static_cast<double>(num_actions)) {
    throw std::invalid_argument("tau_for_target_epsilon: epsilon out of range");
  }
  const double m = static_cast<double>(num_actions);
  return 1.0 - std::log(m - epsilon) / std::log(m);
}

// --- payoff normalization & generators -----------------------------------

template <typename Scalar>
struct NormalizedGame {
  GameT<Scalar> game;
  bool degenerate = false;  // constant payoffs: everything mapped to hi
};

// Joint affine rescale of all players' tensors so the global minimum and
// maximum payoffs land on [lo, hi]. A constant game cannot be rescaled; it
// is mapped to all-hi and flagged so batch experiments keep running.
template <typename Scalar>
NormalizedGame<Scalar> normalize_payoffs(const GameT<Scalar>& game, Scalar lo = Scalar(0.001),
                                         Scalar hi = Scalar(1.0)) {
  game.validate();
  Scalar gmin = std::numeric_limits<Scalar>::max();
  Scalar gmax = std::numeric_limits<Scalar>::lowest();
  for (const auto& u : game.payoffs) {
    gmin = std::min(gmin, u.minCoeff());
    gmax = std::max(gmax, u.maxCoeff());
  }
  NormalizedGame<Scalar> out;
  out.game = game;
  if (gmax <= gmin) {
    for (auto& u : out.game.payoffs) u.setConstant(hi);
    out.degenerate = true;
    return out;
  }
  const Scalar a = (hi - lo) / (gmax - gmin);
  for (auto& u : out.game.payoffs) {
    u = ((u.array() - gmin) * a + lo).matrix();
  }
  return out;
}

template <typename Scalar = double>
GameT<Scalar> make_two_player(const std::vector<std::vector<Scalar>>& u1,
                              const std::vector<std::vector<Scalar>>& u2) {
  GameT<Scalar> g;
  g.num_players = 2;
  const int m1 = static_cast<int>(u1.size());
  const int m2 = static_cast<int>(u1[0].size());
  g.action_counts = {m1, m2};
  VectorX<Scalar> f1(m1 * m2), f2(m1 * m2);
  for (int a = 0; a < m1; ++a) {
    for (int b = 0; b < m2; ++b) {
      f1[a * m2 + b] = u1[a][b];
      f2[a * m2 + b] = u2[a][b];
    }
  }
  g.payoffs = {f1, f2};
  return g;
}

// Chicken: first action swerves, second goes straight.
inline Game make_chicken() {
  return make_two_player<double>({{0.7527, 0.505}, {1.0, 0.01}},
                                 {{0.7527, 1.0}, {0.505, 0.01}});
}

// Battle-of-the-sexes payoffs: each player prefers a different coordination
// point; the second tensor is the 180-degree rotation of the first.
inline Game make_bach_stravinsky() {
  return make_two_player<double>({{1.0, 0.01}, {0.01, 0.67}},
                                 {{0.67, 0.01}, {0.01, 1.0}});
}

inline Game make_stag_hunt() {
  return make_two_player<double>({{1.0, 0.01}, {0.67, 0.67}},
                                 {{1.0, 0.67}, {0.01, 0.67}});
}

// I.i.d. uniform payoff entries, then joint normalization to [0.001, 1].
template <typename Scalar = double>
GameT<Scalar> random_game(const std::vector<int>& action_counts, std::uint64_t seed) {
  GameT<Scalar> g;
  g.num_players = static_cast<int>(action_counts.size());
  g.action_counts = action_counts;
  Rng rng(seed);
  const Index total = [&] {
    Index n = 1;
    for (int m : action_counts) n *= m;
    return n;
  }();
  for (int i = 0; i < g.num_players; ++i) {
    VectorX<Scalar> u(total);
    for (Index f = 0; f < total; ++f) u[f] = Scalar(rng.uniform01());
    g.payoffs.push_back(std::move(u));
  }
  return normalize_payoffs(g).game;
}

// --- Gumbel equivalence check --------------------------------------------

// Draws argmax_l(tau g_l + log grad_l) with g ~ Gumbel(0,1) i.i.d. and
// returns the total-variation distance between the empirical action
// distribution and the closed-form Tsallis best response at the same tau.
template <typename Scalar>
Scalar gumbel_br_check(const GameT<Scalar>& game, const StrategyProfileT<Scalar>& profile,
                       int player, Scalar tau, std::int64_t num_samples, std::uint64_t seed) {
  if (num_samples < 1) throw std::invalid_argument("gumbel_br_check: num_samples must be >= 1");
  const VectorX<Scalar> g = gradient(game, profile, player);
  const VectorX<Scalar> br = tsallis_best_response_from_gradient(g, tau);
  const Index m = g.size();
  VectorX<Scalar> logg(m);
  for (Index l = 0; l < m; ++l) logg[l] = std::log(g[l]);

  Rng rng(seed);
  VectorX<Scalar> counts = VectorX<Scalar>::Zero(m);
  for (std::int64_t s = 0; s < num_samples; ++s) {
    Index best = 0;
    Scalar best_val = std::numeric_limits<Scalar>::lowest();
    for (Index l = 0; l < m; ++l) {
      const Scalar val = tau * Scalar(rng.gumbel()) + logg[l];
      if (val > best_val) {
        best_val = val;
        best = l;
      }
    }
    counts[best] += Scalar(1);
  }
  counts /= Scalar(num_samples);
  return total_variation(counts, br);
}

}  // namespace polynash

#endif  // POLYNASH_GAME_HPP_
