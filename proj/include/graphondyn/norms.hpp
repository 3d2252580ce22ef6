#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphondyn/matrix.hpp"
#include "graphondyn/space.hpp"

namespace graphondyn {

/// sum_j mu_j |u_j - v_j|.
double l1_distance(const IndexSpace& space, std::span<const double> u, std::span<const double> v);

/// sum_ij mu_i mu_j |D_ij|.
double weighted_l1_norm(const IndexSpace& space, const SquareMatrix& d);

/// sum_ij mu_i mu_j D_ij f_i g_j.
double bilinear_form(const IndexSpace& space, const SquareMatrix& d, std::span<const int> f,
                     std::span<const int> g);

enum class NormMethod { exact_bruteforce, greedy_alternation };
std::string to_string(NormMethod m);

/// ||D||_{inf->1} = sup over f, g in [-1,1]^n of |sum_ij mu_i mu_j D_ij f_i g_j|,
/// attained at sign vectors. `value` equals |bilinear_form| at the witness.
struct NormResult {
  double value = 0.0;
  NormMethod method = NormMethod::exact_bruteforce;
  std::vector<int> f;
  std::vector<int> g;
};

inline constexpr std::size_t kExactNormMaxNodes = 24;

/// Enumerates g in {-1,1}^n (g_0 = +1 by the g -> -g symmetry) in Gray-code
/// order and sets f_i = sign(sum_j mu_j D_ij g_j), ties to +1. n <= 24.
/// Throws SizeLimit above that.
NormResult inf_to_one_norm_exact(const IndexSpace& space, const SquareMatrix& d);

/// Lower bound by alternating sign improvement from `restarts` seeded random
/// starts. restarts == 0 returns value 0 with empty witnesses.
NormResult inf_to_one_norm_lower(const IndexSpace& space, const SquareMatrix& d, std::size_t restarts,
                                 std::uint64_t seed);

/// (d0 + 2 t ||W - U||) e^{2t}: L1 distance bound between Kuramoto flows.
double gronwall_bound(double d0, double norm_wu, double t);

/// 2 (d0 + 2 t ||W_n - W||) e^{2t}: bound on ||phi^* u_n(t) - u_n(t)||_1.
double ghost_bound(double d0, double norm_wu, double t);

}  // namespace graphondyn
