#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "ringq/shapes.hpp"

namespace ringq {

/// Exact conformal modulus of the curve family joining the boundary spheres
/// of the ring r1 < |x - x0| < r2 (equals the spherical condenser capacity):
/// omega_{n-1} (log(r2/r1))^{1-n}.
double ring_modulus_exact(double r1, double r2, int n);

/// Lemma-style capacity upper bound F / I^n.
double capacity_upper_bound(double F_val, double I_val, int n);

/// Capacity lower bound through chordal diameters:
/// omega_{n-1} / log^{n-1}(2 lambda_n^2 / (h_image h_complement)).
double capacity_lower_bound(double h_image, double h_complement, int n,
                                 double lambda_n);

enum class NodeState : std::uint8_t {
  kFree = 0,
  kPlateOne = 1,  // u = 1
  kPlateZero = 2, // u = 0
  kInactive = 3,  // outside the domain; cells touching it carry no energy
};

/// Node classification plus signed clearances to the two Dirichlet sets
/// (negative inside). The clearances drive boundary-crossing corrections:
/// an edge between a free node and a plate node is shortened to the actual
/// boundary distance, which removes the staircase bias of the rasterized
/// sets. Leave a clearance at +infinity to skip the correction.
struct NodeInfo {
  NodeState state = NodeState::kFree;
  double clearance_one = std::numeric_limits<double>::infinity();
  double clearance_zero = std::numeric_limits<double>::infinity();
};

/// Classifies a grid node from its position and the level's node spacing
/// (thin plates are thickened by half a cell diagonal at each level).
using NodeClassifier = std::function<NodeInfo(std::span<const double>, double)>;

struct SolveOptions {
  double tol = 1e-5;
  int max_iterations = 20000;
  double p = 0.0;  // energy exponent; 0 selects p = n
  double infinity_cap = 1e12;
  bool multilevel = true;
  int min_coarse_resolution = 33;
  bool record_energy = false;
};

struct CapacityResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
  int resolution = 0;
  int n = 0;
  double lo = 0.0, hi = 0.0;          // grid cube
  std::vector<double> field;          // node-major grid function
  std::vector<double> energy_history; // finest level, when recorded
};

/// Minimizes the discrete energy sum |grad u|^p * cellvolume over the cube
/// grid with the node constraints given by the classifier. Projected
/// gradient descent with backtracking; energy never increases across
/// accepted iterations.
CapacityResult solve_capacity_cube(int n, double lo, double hi, int res,
                                   const NodeClassifier& classify,
                                   const SolveOptions& options = {});

struct Condenser {
  Region A;
  CompactSet C;
  int n = 0;
  int resolution = 64;
};

/// Discrete capacity of the condenser (A, C): u = 1 on C, u = 0 on and
/// outside the boundary of A.
CapacityResult capacity_numeric(const Condenser& condenser, double tol,
                                SolveOptions options = {});

/// Discrete modulus of the family of curves joining E and F inside the
/// domain: u = 1 on E, u = 0 on F, natural boundary on the domain edge.
/// Touching plates report an infinite modulus.
double modulus_connecting(const CompactSet& E, const CompactSet& F,
                          const Region& domain, double tol, int resolution,
                          SolveOptions options = {});

/// Grid field export: CSV with a dimension header, or raw little-endian
/// doubles in node-major order.
void write_field_csv(const CapacityResult& result, std::ostream& out);
void write_field_binary(const CapacityResult& result, std::ostream& out);

}  // namespace ringq
