#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "innerlab/circle.hpp"
#include "innerlab/inner_function.hpp"

namespace innerlab {

/// Margins within this distance of zero count as zero.
inline constexpr double kMarginSlack = 1e-10;

struct UnivalenceCheck {
  bool univalent;
  double margin;  // 2pi - increase of arg f over the arc; -inf if an atom is inside
  std::string reason;
};

UnivalenceCheck univalent_on_arc(const InnerFunction& f, const Arc& arc);

struct PartitionSearch {
  std::optional<Arc> arc;
  double margin_theta = -std::numeric_limits<double>::infinity();
  double margin_phi = -std::numeric_limits<double>::infinity();
  /// max over grid arcs of min(margin_theta, margin_phi)
  double best_margin = -std::numeric_limits<double>::infinity();
  bool refined = false;  // found by continuous refinement rather than on the grid
  /// best margin for each left endpoint a_i = 2 pi i / grid
  std::vector<double> margin_map;
};

/// Arc I with theta univalent on I, phi univalent on T \ closure(I), and both
/// endpoints away from the singular sets.
PartitionSearch find_partition_arc(const InnerFunction& theta, const InnerFunction& phi,
                                   std::size_t grid = 2048);

struct SymmetricArcMargin {
  double a;             // I = (a, 2pi - a)
  double margin_theta;  // theta on I
  double margin_phi;    // phi on (-a, a)
};

std::vector<SymmetricArcMargin> symmetric_arc_scan(const InnerFunction& theta,
                                                   const InnerFunction& phi, std::size_t grid);

enum class Verdict { Complete, NotCertified, DegreeTooSmall };
std::string to_string(Verdict v);

struct CertificateCheck {
  std::string name;
  bool pass;
  double margin;
};

struct Certificate {
  Verdict verdict = Verdict::NotCertified;
  std::optional<Arc> arc_found;
  std::vector<CertificateCheck> checks;
  std::optional<double> lambda_prime_at_1;  // when theta(1) = theta(-1) and phi(1) = phi(-1)
  std::vector<std::string> flags;
  /// set when the phi margin is exactly zero: the verdict under the strict
  /// reading of univalence on the complement of the closed arc
  std::optional<Verdict> alternative_verdict;
  std::string note;
};

Certificate certify_pair(const InnerFunction& theta, const InnerFunction& phi,
                         std::size_t grid = 2048);

/// |lambda'(1)|.  Throws EndpointStructureUnavailable.
double neutral_derivative_report(const InnerFunction& theta, const InnerFunction& phi);

struct LogDivergence {
  std::vector<double> iterates;      // h^n(t0), n = 1..N
  std::vector<double> partial_sums;  // S_N
  double fitted_c;                   // S_N ~ C log N + D
  double intercept;
  long j;  // iterates dominate 1/(j + n K)
  long k;
  bool bound_holds;
};

/// Throws NotIncreasing, WrongFixedPointDerivative, PreconditionFailed (h(0) != 0).
LogDivergence log_divergence_check(const std::function<double(double)>& h, double t0,
                                   std::size_t n);

struct EndpointMap {
  std::function<double(double)> h;   // h(t) = arg lambda(e^{it}) on [0, beta)
  std::function<double(double)> dh;  // |lambda'(e^{it})|
  double beta;
  double h_prime_at_0;
  bool maps_into_itself;  // h([0, beta)) within [0, beta) on samples
  bool neutral;           // |h'(0) - 1| < 1e-6, so the log-divergence argument applies
};

EndpointMap endpoint_map_h(const InnerFunction& theta, const InnerFunction& phi,
                           double beta = 0.25);

}  // namespace innerlab
