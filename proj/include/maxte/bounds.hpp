#pragma once

#include <ostream>
#include <vector>

namespace maxte {

// Inputs of the explicit stability estimates. eps is the boundary data
// error, k the wavenumber, alpha the Sobolev smoothness exponent, M1 the
// a-priori regularity bound on the conductivity, D the diameter of the
// domain, Vol its 3-volume, Vol2 the largest cross-section area, C2 the
// trace constant of the TE estimate.
struct StabilityParams {
  double eps = 0.1;
  double k = 1.0;
  double alpha = 1.0;
  double M1 = 1.0;
  double D = 1.0;
  double Vol = 1.0;
  double Vol2 = 1.0;
  double C2 = 1.0;
};

// One evaluated estimate split into its three mechanisms: the term driven
// by the data error squared, the Hoelder correction active in the
// low-frequency regime, and the logarithmic tail controlled by M1.
struct BoundBreakdown {
  double E_log = 0.0;  // -ln eps
  int chi = 0;         // 1 when E_log >= k (low-frequency regime)
  double term_lipschitz = 0.0;
  double term_holder = 0.0;
  double term_log = 0.0;
  double total = 0.0;
};

// Full Maxwell estimate for the squared L2 norm of the conductivity.
BoundBreakdown bound_maxwell(const StabilityParams& p);

// Planar TE estimate; corollary = true pins the trace constant C2 to 1.
BoundBreakdown bound_te(const StabilityParams& p, bool corollary = false);

// Maxwell estimate for a ball of diameter D with the volume factors already
// substituted (Vol = pi D^3/6, Vol2 = pi D^2/4 give D^6/27 and D^3/64).
// Independent route used to cross-check the substitution identity.
BoundBreakdown bound_maxwell_ball(const StabilityParams& p);

// Columns: eps,k,alpha,chi,term1,term2,term3,total.
void write_csv(std::ostream& os, const std::vector<StabilityParams>& params,
               const std::vector<BoundBreakdown>& rows);

}  // namespace maxte
