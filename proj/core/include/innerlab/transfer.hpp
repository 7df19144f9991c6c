#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "innerlab/boundary_function.hpp"
#include "innerlab/circle.hpp"
#include "innerlab/inner_function.hpp"

namespace innerlab {

struct TransferOptions {
  double tail_tol = 1e-4;            // Clark mass per atom branch left to the tail estimate
  double endpoint_exclusion = 1e-6;  // pullbacks this close to an endpoint of I are dropped
  std::size_t grid_size = 0;         // output samples; 0 keeps the input size
  unsigned workers = 0;              // 0 = hardware concurrency
};

/// (T_f g)(zeta) for zeta in I and g supported on T \ I.  `leak` accumulates
/// the weight of pullbacks dropped next to the endpoints of I.
double transfer_at(const InnerFunction& f, const Arc& arc, const BoundaryFunction& g, double zeta,
                   const TransferOptions& opt = {}, double* leak = nullptr);

/// T_f g sampled on I.  Throws UnivalenceNotCertified, SupportOverlap.
BoundaryFunction apply_T(const InnerFunction& f, const Arc& arc, const BoundaryFunction& g,
                         const TransferOptions& opt = {}, double* leak = nullptr);

/// The composite 1_{T+} T_theta 1_{T-} T_phi on functions on T+.
BoundaryFunction apply_transfer(const InnerFunction& theta, const InnerFunction& phi,
                                const BoundaryFunction& f, const TransferOptions& opt = {},
                                double* leak = nullptr);

/// Lambda(E) = phi^{-1}(phi(theta^{-1}(theta(E)) & T-)) & T+.  Neighbourhoods
/// of singular atoms of radius `exclusion` are dropped, and gaps of the
/// intermediate image shorter than `min_gap` are filled.
ArcSet lambda_set(const InnerFunction& theta, const InnerFunction& phi, const ArcSet& e,
                  double exclusion = 1e-5, double min_gap = 1e-10);

struct AdjointResidual {
  double residual;
  double lhs;  // <T f, 1_E>
  double rhs;  // <f, 1_{Lambda(E)}>
  double quadrature_bound;
};

AdjointResidual adjoint_identity_residual(const InnerFunction& theta, const InnerFunction& phi,
                                          const BoundaryFunction& f, const ArcSet& e,
                                          const TransferOptions& opt = {});

/// Ulam discretization of the dynamics on T+ (cells of width pi/n).
struct UlamOperator {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;  // (column, weight)
  std::vector<double> leak;                                       // per row

  double cell_width() const noexcept;
  double midpoint(std::size_t i) const noexcept;
  double row_sum(std::size_t i) const;
  /// density push-forward: (v U)_j = sum_i v_i U_ij
  std::vector<double> push(const std::vector<double>& v) const;
  /// dense copy, row major
  std::vector<double> dense() const;
};

UlamOperator ulam_matrix(const InnerFunction& theta, const InnerFunction& phi, std::size_t n,
                         std::size_t samples_per_cell = 64, double exclusion = 1e-6,
                         unsigned workers = 0);

struct InvariantDensity {
  std::vector<double> density;  // L1 normalized cell values
  double residual;              // || U rho / g - rho ||_1
  double growth;                // || U rho ||_1 for the final rho
  double leak_per_iterate;      // fraction of mass with no image
  std::size_t iterations;
  /// rows: cell_midpoint_angle,density,residual
  std::string to_csv() const;
};

InvariantDensity invariant_density(const UlamOperator& u, std::size_t max_iterations = 5000,
                                   double tol = 1e-10);

/// a_N = (1/N) sum_{j<N} <T^j 1, test_fn> for N = 1..n_max, iterated on the Ulam grid.
std::vector<double> cesaro_sequence(const UlamOperator& u, const std::function<double(double)>& test_fn,
                                    std::size_t n_max);
std::vector<double> cesaro_sequence(const InnerFunction& theta, const InnerFunction& phi,
                                    const std::function<double(double)>& test_fn, std::size_t n_max,
                                    std::size_t grid = 2048);
/// rows: N,average
std::string cesaro_csv(const std::vector<double>& averages);

/// | T f(zeta) - |lambda'(zeta)| f(lambda(zeta)) |  for f supported in lambda(J).
/// Throws EndpointStructureUnavailable when theta(1) != theta(-1) or phi(1) != phi(-1).
double endpoint_expansion_residual(const InnerFunction& theta, const InnerFunction& phi,
                                   const BoundaryFunction& f, double zeta,
                                   const TransferOptions& opt = {});

}  // namespace innerlab
