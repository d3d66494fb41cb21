#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "otp/error.hpp"
#include "otp/graph.hpp"

namespace otp {

// ---------------------------------------------------------------------------
// Complete graph.
//
// On K_N only the counts matter: p nodes linked to + only, q to - only, r to
// both. Every node of a class shares one opinion, which reduces the
// equilibrium to a 4x4 system with the solution below.

struct CompleteConfig {
  int n = 0;
  int p = 0;
  int q = 0;
  int r = 0;
};

/// Mean opinion on K_N: (N+2)(p-q) / ((N+2)(p+q) + 2(N+1) r).
template <typename Scalar = double>
Scalar complete_objective(const CompleteConfig& cfg) {
  if (cfg.p < 0 || cfg.q < 0 || cfg.r < 0 || cfg.p + cfg.q + cfg.r > cfg.n) {
    throw InvalidArgument("complete config needs nonnegative counts with p+q+r <= N");
  }
  if (cfg.p + cfg.q + cfg.r == 0) throw InvalidArgument("no strategic attachment");
  const Scalar n(cfg.n);
  const Scalar num = (n + Scalar(2)) * Scalar(cfg.p - cfg.q);
  const Scalar den = (n + Scalar(2)) * Scalar(cfg.p + cfg.q) + Scalar(2) * (n + Scalar(1)) * Scalar(cfg.r);
  return num / den;
}

template <typename Scalar = double>
struct CompleteOtpSolution {
  int p1 = 0;  ///< new targets among unlinked nodes
  int r1 = 0;  ///< new targets among nodes linked to - only (blocking)
  Scalar objective{};
};

/// Optimal use of k new + links on K_N given the initial counts p0, q0, r0.
///
/// p - q = p0 - q0 + k holds for every split, so the sign of the objective is
/// fixed by k versus q0 - p0 and only the denominator moves, shrinking by 2
/// per blocked node. A positive objective is maximized by blocking as much as
/// possible; a negative one by blocking nothing.
template <typename Scalar = double>
CompleteOtpSolution<Scalar> complete_otp(int n, int p0, int q0, int r0, int k) {
  if (n < 1 || p0 < 0 || q0 < 0 || r0 < 0 || k < 0 || p0 + q0 + r0 > n) {
    throw InvalidArgument("invalid complete OTP parameters");
  }
  const int unlinked = n - p0 - q0 - r0;
  if (k > unlinked + q0) {
    throw InvalidArgument("budget " + std::to_string(k) + " exceeds the " +
                          std::to_string(unlinked + q0) + " untargeted nodes");
  }
  CompleteOtpSolution<Scalar> s;
  if (k > q0 - p0) {
    s.r1 = std::min(k, q0);
    s.p1 = k - s.r1;
  } else {
    s.p1 = std::min(k, unlinked);
    s.r1 = k - s.p1;
  }
  s.objective = complete_objective<Scalar>({n, p0 + s.p1, q0 - s.r1, r0 + s.r1});
  return s;
}

// ---------------------------------------------------------------------------
// Line graph 1 - 2 - ... - N, positions 1-based, - agent at ell.

struct LineConfig {
  int n = 0;
  int ell = 1;
};

/// Mean opinion with the + agent at position k:
/// (k - ell)(N + 1 - k - ell) / (N (|k - ell| + 2)).
template <typename Scalar = double>
Scalar line_objective(const LineConfig& cfg, int k) {
  if (cfg.ell < 1 || cfg.ell > cfg.n || k < 1 || k > cfg.n) {
    throw InvalidArgument("line positions must lie in [1, N]");
  }
  // Integer numerator and denominator make equal rationals round identically.
  const long long num = -1LL * k * k + 1LL * (cfg.n + 1) * k - 1LL * (cfg.n + 1) * cfg.ell +
                        1LL * cfg.ell * cfg.ell;
  const long long den = 1LL * cfg.n * (std::abs(k - cfg.ell) + 2);
  return Scalar(num) / Scalar(den);
}

template <typename Scalar = double>
struct LineOptimum {
  int k = 1;
  Scalar objective{};
};

/// Continuous maximizer of the objective: ell - 2 + sqrt(2N + 6 - 4 ell) to the
/// right when ell < (N+1)/2, otherwise its mirror ell + 2 - sqrt(4 ell + 2 - 2N)
/// to the left.
inline double line_continuous_optimum(const LineConfig& cfg) {
  const double n = cfg.n;
  const double ell = cfg.ell;
  if (2.0 * ell < n + 1.0) return ell - 2.0 + std::sqrt(2.0 * n + 6.0 - 4.0 * ell);
  return ell + 2.0 - std::sqrt(4.0 * ell + 2.0 - 2.0 * n);
}

/// Best integer position: the better of floor and ceil of the continuous
/// optimum, both clamped to [1, N]; ties go to the smaller k.
template <typename Scalar = double>
LineOptimum<Scalar> line_optimal_k(const LineConfig& cfg) {
  if (cfg.n < 1 || cfg.ell < 1 || cfg.ell > cfg.n) throw InvalidArgument("invalid line config");
  const double khat = line_continuous_optimum(cfg);
  const int lo = std::clamp(static_cast<int>(std::floor(khat)), 1, cfg.n);
  const int hi = std::clamp(static_cast<int>(std::ceil(khat)), 1, cfg.n);
  const Scalar f_lo = line_objective<Scalar>(cfg, lo);
  const Scalar f_hi = line_objective<Scalar>(cfg, hi);
  if (f_hi > f_lo) return {hi, f_hi};
  return {lo, f_lo};
}

// ---------------------------------------------------------------------------
// Trees.

/// Mean opinion on a tree with the - agent at the root of `t` and the + agent
/// at k. Only the path root = p_1, ..., p_L = k carries a voltage drop:
/// V(p_i) = 2i/(L+1) - 1, and every off-path node takes the voltage of the
/// path node it hangs from.
double tree_path_objective(const TreeView& t, Node k);

}  // namespace otp
