#pragma once

#include <string>
#include <vector>

#include "fraclab/constants.hpp"
#include "fraclab/params.hpp"
#include "fraclab/report.hpp"
#include "fraclab/sampling.hpp"

namespace fraclab {

/// Outcome of one named invariant check: `value` is the measured quantity and
/// `bound` the limit it is compared against.
struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double bound = 0.0;
  std::string detail{};

  FlatRecord to_record() const;
};

bool all_pass(const std::vector<CheckResult>& checks);

/// (-Delta)^s on cos(2 pi k . x / L) for 10 single modes against |xi|^{2s}
/// times the mode (max relative error <= 1e-12), and s = 1 against the
/// spectral Laplacian. The multiplier under test is scaled by
/// (1 + perturbation); 0 tests the real one.
CheckResult check_multiplier_exactness(const GridPtr<double>& grid, double s,
                                       double perturbation = 0.0);

/// Directional derivatives of J from `gradient` against central differences
/// (step 1e-5) on `directions` unit directions at `bases` positive base points;
/// max relative error <= 1e-6.
CheckResult check_gradient_fidelity(const GridPtr<double>& grid, const SystemParams& params, Rng& rng,
                                    int directions = 20, int bases = 5);

/// hessian_quadform at `samples` random (u, v) with ||(u, v)|| <= 0.95 r and
/// random directions: positive, and at least
/// hessian_lower_bound_factor * ||(phi, psi)||^2.
CheckResult check_hessian_positivity(const GridPtr<double>& grid, const SystemParams& params,
                                     double s_scalar, Rng& rng, int samples = 200);

/// Measured S_vector / S_scalar within 2% of ratio_formula.
CheckResult check_lemma_ratio(const GridPtr<double>& grid, const SystemParams& params,
                              const MinimizeOpts& opts);

/// coercivity_lhs > 2 over sweep_pairs(p, count) with formula ratios, for
/// gamma = 1 at p = alpha + beta and gamma = 0 at p = 2*_s. value is the
/// smallest margin coercivity_lhs - 2.
CheckResult check_coercivity_sweep(const SystemParams& params, int count = 50);

/// J(t b, t b) < 0 at t = 1e-3 and > 0 at t = -1e-3 with f = g = b, b a
/// nonnegative Gaussian bump.
CheckResult check_sign_scan(const GridPtr<double>& grid, const SystemParams& params);

}  // namespace fraclab
