#include "ringq/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ringq/errors.hpp"
#include "ringq/quadrature.hpp"

namespace ringq {

double ring_modulus_exact(double r1, double r2, int n) {
  if (!(r1 > 0.0) || !(r1 < r2))
    throw std::invalid_argument("ring_modulus_exact: need 0 < r1 < r2");
  return omega(n) * std::pow(std::log(r2 / r1), 1 - n);
}

double capacity_upper_bound(double F_val, double I_val, int n) {
  if (!(I_val > 0.0))
    throw std::invalid_argument("capacity_upper_bound: need I > 0");
  return F_val / std::pow(I_val, n);
}

double capacity_lower_bound(double h_image, double h_complement, int n,
                                 double lambda_n) {
  if (!(h_image > 0.0) || h_image > 1.0 || !(h_complement > 0.0) ||
      h_complement > 1.0)
    throw std::invalid_argument(
        "capacity_lower_bound: chordal diameters must lie in (0, 1]");
  if (lambda_n < 4.0 || lambda_n >= 2.0 * std::exp(n - 1.0))
    throw std::invalid_argument(
        "capacity_lower_bound: lambda outside [4, 2e^{n-1})");
  const double arg = 2.0 * lambda_n * lambda_n / (h_image * h_complement);
  return omega(n) / std::pow(std::log(arg), n - 1);
}

namespace {

struct Grid {
  int n;
  int res;
  double lo, hi;
  double h() const { return (hi - lo) / (res - 1); }
  std::size_t node_count() const {
    std::size_t c = 1;
    for (int d = 0; d < n; ++d) c *= res;
    return c;
  }
  void node_pos(std::size_t flat, double* out) const {
    const double step = h();
    for (int d = 0; d < n; ++d) {
      out[d] = lo + step * (flat % res);
      flat /= res;
    }
  }
};

struct Raster {
  std::vector<std::uint8_t> state;
  // Edge length scale 1/theta per (dimension, base node); 1 away from
  // Dirichlet boundaries. theta is the fraction of the edge between a free
  // node and the actual set boundary (Shortley-Weller style correction).
  std::vector<float> edge_scale[3];
};

Raster rasterize(const Grid& grid, const NodeClassifier& classify) {
  Raster raster;
  const std::size_t count = grid.node_count();
  raster.state.resize(count);
  std::vector<float> cl_one(count), cl_zero(count);
  const double h = grid.h();
  double pos[3];
  for (std::size_t i = 0; i < count; ++i) {
    grid.node_pos(i, pos);
    const NodeInfo info = classify(std::span<const double>(pos, grid.n), h);
    raster.state[i] = static_cast<std::uint8_t>(info.state);
    cl_one[i] = static_cast<float>(info.clearance_one);
    cl_zero[i] = static_cast<float>(info.clearance_zero);
  }

  std::size_t stride = 1;
  for (int d = 0; d < grid.n; ++d) {
    auto& scale = raster.edge_scale[d];
    scale.assign(count, 1.0f);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t axis_index = (i / stride) % grid.res;
      if (axis_index + 1 >= static_cast<std::size_t>(grid.res)) continue;
      const std::size_t j = i + stride;
      const std::uint8_t sa = raster.state[i], sb = raster.state[j];
      const bool a_free = sa == 0, b_free = sb == 0;
      if (a_free == b_free) continue;
      const std::size_t free_node = a_free ? i : j;
      const std::size_t fixed_node = a_free ? j : i;
      const std::uint8_t fixed_state = raster.state[fixed_node];
      if (fixed_state == 3) continue;
      const auto& cl = fixed_state == 1 ? cl_one : cl_zero;
      const double cf = cl[free_node];
      const double cp = cl[fixed_node];
      if (!std::isfinite(cf) || !std::isfinite(cp)) continue;
      if (!(cf > 0.0) || !(cp <= 0.0)) continue;
      const double theta =
          std::clamp(cf / std::max(cf - cp, 1e-300), 0.1, 1.0);
      scale[i] = static_cast<float>(1.0 / theta);
    }
    stride *= grid.res;
  }
  return raster;
}

// Discrete energy sum_cells |grad u|^p h^{n-p}, with the squared gradient
// of a cell taken as the average of the forward-difference estimates at its
// 2^n corners; each cell edge then carries weight 2/2^n. Edge differences
// next to Dirichlet sets are steepened by the boundary-crossing scale.
template <int N>
struct Kernel {
  int res;
  double p;
  double hpow;  // h^{N-p}
  const std::uint8_t* state;
  const float* scale[3];
  bool has_inactive;

  static constexpr int kEdges = (N == 2) ? 4 : 12;
  static constexpr double kEdgeWeight = (N == 2) ? 0.5 : 0.25;  // 2/2^n

  bool cell_active(std::size_t base, std::size_t sx, std::size_t sy,
                   std::size_t sz) const {
    if (state[base] == 3 || state[base + sx] == 3 || state[base + sy] == 3 ||
        state[base + sx + sy] == 3)
      return false;
    if constexpr (N == 3) {
      for (std::size_t o : {std::size_t{0}, sx, sy, sx + sy})
        if (state[base + o + sz] == 3) return false;
    }
    return true;
  }

  template <bool WithGrad>
  double sweep(const double* u, double* g, double* diag = nullptr) const {
    const std::size_t sx = 1, sy = res,
                      sz = static_cast<std::size_t>(res) * res;
    std::size_t from[kEdges], to[kEdges];
    int dim_of[kEdges];
    int ne = 0;
    auto add_edge = [&](std::size_t a, std::size_t b, int dim) {
      from[ne] = a;
      to[ne] = b;
      dim_of[ne] = dim;
      ++ne;
    };
    if constexpr (N == 2) {
      add_edge(0, sx, 0);
      add_edge(sy, sx + sy, 0);
      add_edge(0, sy, 1);
      add_edge(sx, sx + sy, 1);
    } else {
      for (std::size_t o : {std::size_t{0}, sy, sz, sy + sz})
        add_edge(o, o + sx, 0);
      for (std::size_t o : {std::size_t{0}, sx, sz, sx + sz})
        add_edge(o, o + sy, 1);
      for (std::size_t o : {std::size_t{0}, sx, sy, sx + sy})
        add_edge(o, o + sz, 2);
    }

    double energy = 0.0;
    const int rm1 = res - 1;
    const int kmax = (N == 3) ? rm1 : 1;
    double d[kEdges], sc[kEdges];
    for (int k = 0; k < kmax; ++k) {
      for (int j = 0; j < rm1; ++j) {
        std::size_t base = static_cast<std::size_t>(j) * sy +
                           static_cast<std::size_t>(k) * sz;
        for (int i = 0; i < rm1; ++i, ++base) {
          if (has_inactive && !cell_active(base, sx, sy, sz)) continue;
          double s = 0.0;
          for (int e = 0; e < kEdges; ++e) {
            const double scl = scale[dim_of[e]][base + from[e]];
            sc[e] = scl;
            d[e] = (u[base + to[e]] - u[base + from[e]]) * scl;
            s += d[e] * d[e];
          }
          s *= kEdgeWeight;
          double w, coef;
          if (p == 2.0) {
            w = s * hpow;
            coef = 2.0 * hpow * kEdgeWeight;
          } else if (p == 3.0) {
            const double rs = std::sqrt(s);
            w = s * rs * hpow;
            coef = 3.0 * rs * hpow * kEdgeWeight;
          } else {
            w = (s > 0.0) ? std::pow(s, 0.5 * p) * hpow : 0.0;
            coef = (s > 0.0)
                       ? p * std::pow(s, 0.5 * p - 1.0) * hpow * kEdgeWeight
                       : 0.0;
          }
          energy += w;
          if constexpr (WithGrad) {
            for (int e = 0; e < kEdges; ++e) {
              const double gd = coef * d[e] * sc[e];
              g[base + to[e]] += gd;
              g[base + from[e]] -= gd;
            }
            if (diag != nullptr) {
              for (int e = 0; e < kEdges; ++e) {
                const double dc = coef * sc[e] * sc[e];
                diag[base + to[e]] += dc;
                diag[base + from[e]] += dc;
              }
            }
          }
        }
      }
    }
    return energy;
  }
};

struct LevelOutcome {
  double energy = 0.0;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
};

template <int N>
LevelOutcome minimize_level(const Grid& grid, const Raster& raster,
                            std::vector<double>& u, double p,
                            const SolveOptions& options, bool record) {
  const std::size_t count = u.size();
  const auto& state = raster.state;
  Kernel<N> kernel;
  kernel.res = grid.res;
  kernel.p = p;
  kernel.hpow = std::pow(grid.h(), N - p);
  kernel.state = state.data();
  for (int d = 0; d < N; ++d) kernel.scale[d] = raster.edge_scale[d].data();
  kernel.has_inactive =
      std::find(state.begin(), state.end(), std::uint8_t{3}) != state.end();

  std::vector<double> g(count, 0.0), u_new(count), g_new(count);
  std::vector<double> diag(count, 0.0), prec(count, 1.0);
  auto grad = [&](const double* uu, double* gg) {
    std::fill(gg, gg + count, 0.0);
    std::fill(diag.begin(), diag.end(), 0.0);
    const double e = kernel.template sweep<true>(uu, gg, diag.data());
    for (std::size_t i = 0; i < count; ++i)
      if (state[i] != 0) gg[i] = 0.0;
    return e;
  };

  // Diagonal preconditioner from the local Hessian weights of the latest
  // gradient sweep; for p > 2 the spike regions otherwise dominate the
  // spectrum and stall the descent.
  auto refresh_prec = [&]() {
    double top = 0.0;
    for (std::size_t i = 0; i < count; ++i) top = std::max(top, diag[i]);
    const double floor = std::max(top * 1e-8, 1e-300);
    for (std::size_t i = 0; i < count; ++i)
      prec[i] = 1.0 / std::max(diag[i], floor);
  };
  auto pg_norm = [&](const double* uu, const double* gg) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      if (state[i] != 0) continue;
      double v = gg[i];
      if (uu[i] <= 0.0 && v > 0.0) v = 0.0;
      if (uu[i] >= 1.0 && v < 0.0) v = 0.0;
      s += v * v;
    }
    return std::sqrt(s);
  };

  LevelOutcome out;
  double energy = grad(u.data(), g.data());
  refresh_prec();
  double pg = pg_norm(u.data(), g.data());
  double alpha = 0.25 / (p * N);
  if (record) out.history.push_back(energy);

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    out.residual = pg / (1.0 + std::abs(energy));
    if (out.residual <= options.tol) break;

    double alpha_try = alpha;
    double energy_new = energy;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      double decrease = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        if (state[i] != 0) {
          u_new[i] = u[i];
          continue;
        }
        const double v =
            std::clamp(u[i] - alpha_try * prec[i] * g[i], 0.0, 1.0);
        u_new[i] = v;
        decrease += g[i] * (u[i] - v);
      }
      if (decrease <= 0.0) break;  // projected step is null
      energy_new = kernel.template sweep<false>(u_new.data(), nullptr);
      if (energy_new <= energy - 1e-4 * decrease) {
        moved = true;
        break;
      }
      alpha_try *= 0.5;
    }
    if (!moved) break;

    // Barzilai-Borwein step in the preconditioned metric.
    const double energy_next = grad(u_new.data(), g_new.data());
    if (iter % 10 == 9) refresh_prec();
    double duu = 0.0, dug = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double du = u_new[i] - u[i];
      duu += du * du / prec[i];
      dug += du * (g_new[i] - g[i]);
    }
    alpha =
        (dug > 1e-300) ? std::clamp(duu / dug, 1e-12, 1e8) : alpha_try * 2.0;
    u.swap(u_new);
    g.swap(g_new);
    energy = energy_next;
    (void)energy_new;
    pg = pg_norm(u.data(), g.data());
    if (record) out.history.push_back(energy);
  }
  out.energy = energy;
  out.iterations = iter;
  out.residual = pg / (1.0 + std::abs(energy));
  return out;
}

// Multilinear interpolation of the coarse solution onto the fine grid.
std::vector<double> prolong(const Grid& coarse, const std::vector<double>& uc,
                            const Grid& fine) {
  std::vector<double> uf(fine.node_count(), 0.0);
  const int n = fine.n;
  const double hc = coarse.h();
  double pos[3];
  int idx[3];
  double frac[3];
  for (std::size_t f = 0; f < uf.size(); ++f) {
    fine.node_pos(f, pos);
    for (int d = 0; d < n; ++d) {
      const double s = (pos[d] - coarse.lo) / hc;
      int i0 = static_cast<int>(std::floor(s));
      i0 = std::clamp(i0, 0, coarse.res - 2);
      idx[d] = i0;
      frac[d] = std::clamp(s - i0, 0.0, 1.0);
    }
    double value = 0.0;
    const int corners = 1 << n;
    for (int c = 0; c < corners; ++c) {
      double w = 1.0;
      std::size_t flat = 0, stride = 1;
      for (int d = 0; d < n; ++d) {
        const int bit = (c >> d) & 1;
        w *= bit ? frac[d] : 1.0 - frac[d];
        flat += stride * static_cast<std::size_t>(idx[d] + bit);
        stride *= coarse.res;
      }
      value += w * uc[flat];
    }
    uf[f] = value;
  }
  return uf;
}

void enforce_state(const std::vector<std::uint8_t>& state,
                   std::vector<double>& u) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (state[i] == 1)
      u[i] = 1.0;
    else if (state[i] == 2)
      u[i] = 0.0;
    else
      u[i] = std::clamp(u[i], 0.0, 1.0);
  }
}

// Chebyshev-adjacency scan between two node states.
bool states_adjacent(const Grid& grid, const std::vector<std::uint8_t>& state,
                     std::uint8_t a, std::uint8_t b) {
  const int res = grid.res;
  const int n = grid.n;
  const std::size_t sz = static_cast<std::size_t>(res) * res;
  auto at = [&](int i, int j, int k) {
    return state[static_cast<std::size_t>(i) +
                 static_cast<std::size_t>(res) * j + (n == 3 ? sz * k : 0)];
  };
  const int kmax = n == 3 ? res : 1;
  for (int k = 0; k < kmax; ++k)
    for (int j = 0; j < res; ++j)
      for (int i = 0; i < res; ++i) {
        if (at(i, j, k) != a) continue;
        for (int dk = (n == 3 ? -1 : 0); dk <= (n == 3 ? 1 : 0); ++dk)
          for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) {
              const int ii = i + di, jj = j + dj, kk = k + dk;
              if (ii < 0 || jj < 0 || kk < 0 || ii >= res || jj >= res ||
                  (n == 3 && kk >= res))
                continue;
              if (at(ii, jj, n == 3 ? kk : 0) == b) return true;
            }
      }
  return false;
}

}  // namespace

CapacityResult solve_capacity_cube(int n, double lo, double hi, int res,
                                   const NodeClassifier& classify,
                                   const SolveOptions& options) {
  if (n != 2 && n != 3)
    throw std::invalid_argument(
        "solve_capacity_cube: grid solver supports n in {2, 3}");
  if (res < 8) throw std::invalid_argument("solve_capacity_cube: res >= 8");
  if (!(lo < hi)) throw std::invalid_argument("solve_capacity_cube: lo < hi");
  const double p = options.p > 0.0 ? options.p : static_cast<double>(n);
  if (p < 2.0)
    throw std::invalid_argument("solve_capacity_cube: exponent p must be >= 2");

  std::vector<int> levels{res};
  if (options.multilevel) {
    while (levels.back() / 2 >= options.min_coarse_resolution)
      levels.push_back(levels.back() / 2);
    std::reverse(levels.begin(), levels.end());
  }

  std::vector<double> u;
  Grid prev{};
  LevelOutcome outcome;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const Grid grid{n, levels[li], lo, hi};
    const Raster raster = rasterize(grid, classify);
    std::vector<double> u_level;
    if (li == 0) {
      u_level.assign(grid.node_count(), 0.5);
    } else {
      u_level = prolong(prev, u, grid);
    }
    enforce_state(raster.state, u_level);
    const bool record = options.record_energy && li + 1 == levels.size();
    outcome =
        (n == 2) ? minimize_level<2>(grid, raster, u_level, p, options, record)
                 : minimize_level<3>(grid, raster, u_level, p, options, record);
    u = std::move(u_level);
    prev = grid;
  }

  if (outcome.residual > options.tol)
    throw ConvergenceError("solve_capacity_cube: iteration cap reached",
                           outcome.energy, outcome.residual,
                           outcome.iterations);

  CapacityResult result;
  result.value = outcome.energy;
  result.iterations = outcome.iterations;
  result.residual = outcome.residual;
  result.resolution = res;
  result.n = n;
  result.lo = lo;
  result.hi = hi;
  result.field = std::move(u);
  result.energy_history = std::move(outcome.history);
  return result;
}

CapacityResult capacity_numeric(const Condenser& condenser, double tol,
                                SolveOptions options) {
  if (!(tol > 0.0)) throw std::invalid_argument("capacity_numeric: tol > 0");
  if (condenser.C.empty())
    throw std::invalid_argument("capacity_numeric: C must be nonempty");
  options.tol = tol;
  const auto [lo, hi] = region_cube(condenser.A, condenser.n);
  const Region A = condenser.A;
  const CompactSet C = condenser.C;
  const double diag = 0.5 * std::sqrt(static_cast<double>(condenser.n));
  NodeClassifier classify = [A, C, diag](std::span<const double> pos,
                                         double h) {
    NodeInfo info;
    info.clearance_zero = region_clearance(A, pos);  // zero set: outside A
    info.clearance_one = signed_clearance(C, pos, diag * h);
    if (info.clearance_zero <= 0.0)
      info.state = NodeState::kPlateZero;
    else if (info.clearance_one <= 0.0)
      info.state = NodeState::kPlateOne;
    return info;
  };

  // Validate the finest rasterization: nonempty plate, C strictly inside A.
  {
    const Grid grid{condenser.n, condenser.resolution, lo, hi};
    const Raster raster = rasterize(grid, classify);
    const auto& st = raster.state;
    if (std::find(st.begin(), st.end(), std::uint8_t{1}) == st.end())
      throw std::invalid_argument(
          "capacity_numeric: C resolves to no grid nodes");
    if (states_adjacent(grid, st, 1, 2))
      throw std::invalid_argument(
          "capacity_numeric: C touches the boundary of A on the grid");
  }

  return solve_capacity_cube(condenser.n, lo, hi, condenser.resolution,
                             classify, options);
}

double modulus_connecting(const CompactSet& E, const CompactSet& F,
                          const Region& domain, double tol, int resolution,
                          SolveOptions options) {
  if (E.n != F.n)
    throw std::invalid_argument("modulus_connecting: dimension mismatch");
  options.tol = tol;
  const int n = E.n;
  const auto [lo, hi] = region_cube(domain, n);
  const Region dom = domain;
  const double diag = 0.5 * std::sqrt(static_cast<double>(n));
  NodeClassifier classify = [dom, E, F, diag](std::span<const double> pos,
                                              double h) {
    NodeInfo info;
    info.clearance_one = signed_clearance(E, pos, diag * h);
    info.clearance_zero = signed_clearance(F, pos, diag * h);
    const bool inE = info.clearance_one <= 0.0;
    const bool inF = info.clearance_zero <= 0.0;
    if (inE && inF)
      throw std::invalid_argument("modulus_connecting: E and F overlap");
    if (inE)
      info.state = NodeState::kPlateOne;
    else if (inF)
      info.state = NodeState::kPlateZero;
    else if (!region_contains(dom, pos))
      info.state = NodeState::kInactive;
    return info;
  };

  const Grid grid{n, resolution, lo, hi};
  const Raster raster = rasterize(grid, classify);
  const auto& st = raster.state;
  const bool hasE = std::find(st.begin(), st.end(), std::uint8_t{1}) != st.end();
  const bool hasF = std::find(st.begin(), st.end(), std::uint8_t{2}) != st.end();
  if (!hasE || !hasF) return 0.0;  // empty curve family
  if (states_adjacent(grid, st, 1, 2))
    return std::numeric_limits<double>::infinity();

  return solve_capacity_cube(n, lo, hi, resolution, classify, options).value;
}

void write_field_csv(const CapacityResult& result, std::ostream& out) {
  out << "n,resolution,lo,hi\n"
      << result.n << ',' << result.resolution << ',' << result.lo << ','
      << result.hi << '\n';
  const int res = result.resolution;
  const std::size_t rows = result.field.size() / res;
  for (std::size_t r = 0; r < rows; ++r) {
    for (int c = 0; c < res; ++c) {
      if (c) out << ',';
      out << result.field[r * res + c];
    }
    out << '\n';
  }
}

void write_field_binary(const CapacityResult& result, std::ostream& out) {
  out.write(reinterpret_cast<const char*>(result.field.data()),
            static_cast<std::streamsize>(result.field.size() * sizeof(double)));
}

}  // namespace ringq
