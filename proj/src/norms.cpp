#include "graphondyn/norms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "graphondyn/errors.hpp"
#include "graphondyn/parallel.hpp"
#include "graphondyn/random.hpp"

namespace graphondyn {

namespace {

void check_sizes(const IndexSpace& space, const SquareMatrix& d, const char* who) {
  if (d.size() != space.size()) {
    throw InvalidArgument(std::string(who) + ": matrix is " + std::to_string(d.size()) + "x" +
                          std::to_string(d.size()) + " but the space has " + std::to_string(space.size()) +
                          " nodes");
  }
}

int sign_of(double x) { return x < 0.0 ? -1 : 1; }

// Best response: f_i = sign(sum_j mu_j D_ij g_j).
std::vector<int> best_rows(const IndexSpace& space, const SquareMatrix& d, const std::vector<int>& g) {
  const std::size_t n = d.size();
  std::vector<int> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j) r += space.weight(j) * d(i, j) * g[j];
    f[i] = sign_of(r);
  }
  return f;
}

// Best response on the other side: g_j = sign(sum_i mu_i D_ij f_i).
std::vector<int> best_cols(const IndexSpace& space, const SquareMatrix& d, const std::vector<int>& f) {
  const std::size_t n = d.size();
  std::vector<int> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += space.weight(i) * d(i, j) * f[i];
    g[j] = sign_of(r);
  }
  return g;
}

// Incremental Gray-code sums drift by rounding, so the scan keeps every
// index within this relative window of its running best and the winner is
// chosen by exact re-evaluation.
constexpr double kCandidateWindow = 1e-10;
constexpr std::size_t kMaxCandidates = 256;

struct BlockBest {
  double value = -1.0;
  std::vector<std::pair<double, std::uint64_t>> candidates;
};

std::vector<int> gray_signs(std::uint64_t index, std::size_t n) {
  std::vector<int> g(n, 1);
  const std::uint64_t gray = index ^ (index >> 1);
  for (std::size_t j = 1; j < n; ++j) g[j] = ((gray >> (j - 1)) & 1u) ? -1 : 1;
  return g;
}

// Scans Gray-code indices [begin, end) of the free bits g_1..g_{n-1}.
BlockBest scan_block(const IndexSpace& space, const SquareMatrix& d, std::uint64_t begin, std::uint64_t end) {
  const std::size_t n = d.size();
  std::vector<int> g = gray_signs(begin, n);
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i] += space.weight(j) * d(i, j) * g[j];
  }
  BlockBest best;
  for (std::uint64_t k = begin;;) {
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) value += space.weight(i) * std::abs(r[i]);
    const double tol = kCandidateWindow * std::max(1e-300, std::abs(best.value));
    if (value > best.value + tol) {
      best.value = value;
      std::erase_if(best.candidates, [&](const auto& c) { return c.first < value - tol; });
      best.candidates.emplace_back(value, k);
    } else if (value >= best.value - tol && best.candidates.size() < kMaxCandidates) {
      best.value = std::max(best.value, value);
      best.candidates.emplace_back(value, k);
    }
    if (++k >= end) break;
    const std::size_t j = static_cast<std::size_t>(std::countr_zero(k)) + 1;
    g[j] = -g[j];
    const double delta = 2.0 * space.weight(j) * g[j];
    for (std::size_t i = 0; i < n; ++i) r[i] += delta * d(i, j);
  }
  return best;
}

}  // namespace

double l1_distance(const IndexSpace& space, std::span<const double> u, std::span<const double> v) {
  if (u.size() != space.size() || v.size() != space.size()) {
    throw InvalidArgument("l1_distance: states must have one entry per node");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += space.weight(j) * std::abs(u[j] - v[j]);
  return s;
}

double weighted_l1_norm(const IndexSpace& space, const SquareMatrix& d) {
  check_sizes(space, d, "weighted_l1_norm");
  double s = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) s += space.weight(i) * space.weight(j) * std::abs(d(i, j));
  }
  return s;
}

double bilinear_form(const IndexSpace& space, const SquareMatrix& d, std::span<const int> f,
                     std::span<const int> g) {
  check_sizes(space, d, "bilinear_form");
  if (f.size() != d.size() || g.size() != d.size()) throw InvalidArgument("bilinear_form: test vector size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) r += space.weight(j) * d(i, j) * g[j];
    s += space.weight(i) * f[i] * r;
  }
  return s;
}

std::string to_string(NormMethod m) {
  return m == NormMethod::exact_bruteforce ? "exact_bruteforce" : "greedy_alternation";
}

NormResult inf_to_one_norm_exact(const IndexSpace& space, const SquareMatrix& d) {
  check_sizes(space, d, "inf_to_one_norm_exact");
  const std::size_t n = d.size();
  if (n > kExactNormMaxNodes) {
    throw SizeLimit("inf_to_one_norm_exact: n = " + std::to_string(n) + " exceeds " +
                    std::to_string(kExactNormMaxNodes) + "; use inf_to_one_norm_lower");
  }
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  // Fixed block layout: the reduction below is independent of thread count.
  const std::uint64_t blocks = std::min<std::uint64_t>(total, 64);
  const std::uint64_t per_block = (total + blocks - 1) / blocks;
  std::vector<BlockBest> results(blocks);
  parallel_for(blocks, 1, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const std::uint64_t lo = k * per_block;
      const std::uint64_t hi = std::min(total, lo + per_block);
      if (lo < hi) results[k] = scan_block(space, d, lo, hi);
    }
  });
  double top = -1.0;
  for (const auto& r : results) top = std::max(top, r.value);
  const double tol = kCandidateWindow * std::max(1e-300, std::abs(top));
  // Exact re-evaluation of the near-best candidates, in index order so ties
  // resolve to the smallest index.
  NormResult out;
  out.method = NormMethod::exact_bruteforce;
  out.value = -1.0;
  for (const auto& r : results) {
    for (const auto& [approx, index] : r.candidates) {
      if (approx < top - tol) continue;
      std::vector<int> g = gray_signs(index, n);
      std::vector<int> f = best_rows(space, d, g);
      const double v = std::abs(bilinear_form(space, d, f, g));
      if (v > out.value) {
        out.value = v;
        out.f = std::move(f);
        out.g = std::move(g);
      }
    }
  }
  return out;
}

NormResult inf_to_one_norm_lower(const IndexSpace& space, const SquareMatrix& d, std::size_t restarts,
                                 std::uint64_t seed) {
  check_sizes(space, d, "inf_to_one_norm_lower");
  const std::size_t n = d.size();
  NormResult best;
  best.method = NormMethod::greedy_alternation;
  constexpr int kMaxSweeps = 100;
  for (std::size_t r = 0; r < restarts; ++r) {
    PhiloxStream rng(seed, static_cast<std::uint32_t>(r));
    std::vector<int> g(n);
    for (auto& x : g) x = (rng.bits() >> 63) ? -1 : 1;
    std::vector<int> f = best_rows(space, d, g);
    double value = std::abs(bilinear_form(space, d, f, g));
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      const std::vector<int> g_next = best_cols(space, d, f);
      const std::vector<int> f_next = best_rows(space, d, g_next);
      const double v = std::abs(bilinear_form(space, d, f_next, g_next));
      if (!(v > value)) break;
      value = v;
      f = f_next;
      g = g_next;
    }
    if (best.f.empty() || value > best.value) {
      best.value = value;
      best.f = f;
      best.g = g;
    }
  }
  return best;
}

double gronwall_bound(double d0, double norm_wu, double t) {
  if (d0 < 0.0 || norm_wu < 0.0 || t < 0.0) {
    throw InvalidArgument("gronwall_bound: d0, norm and t must be nonnegative");
  }
  return (d0 + 2.0 * t * norm_wu) * std::exp(2.0 * t);
}

double ghost_bound(double d0, double norm_wu, double t) { return 2.0 * gronwall_bound(d0, norm_wu, t); }

}  // namespace graphondyn
