#pragma once

// Printed closed forms for the Werner family rho_eps = (1 - eps) 1/4 + eps psi_s.
// Scalar arithmetic only: these are the second route the sweeps compare the
// matrix pipeline against, so nothing here touches a density matrix.

namespace realitykit::werner {

/// Scalar q-logarithm (x^{1-q} - 1)/(1 - q), ln x at q = 1.
double ln_q(double x, double q);

/// ln 2 - ln[((1-eps)^a + (1+3eps)^a)/(4(1+eps)^{a-1}) + (1-eps)/2]^{1/(a-1)}.
double renyi_down(double eps, double alpha);
/// alpha -> 0 limit: ln 2 for eps < 1, 0 at eps = 1.
double renyi_down_alpha0(double eps);
/// alpha -> infinity limit: ln 2 - ln((1+3eps)/(1+eps)).
double renyi_down_alpha_inf(double eps);

/// chi with (1-eps)^alpha in the bracket; consistent with Tr_E(v^alpha) = phi_A(rho^alpha).
double chi_derived(double eps, double alpha);
/// chi exactly as printed, (1+eps)^alpha in the bracket.
double chi_printed(double eps, double alpha);
/// ln 2 - (alpha/(alpha-1)) ln chi.
double renyi_up_derived(double eps, double alpha);
double renyi_up_printed(double eps, double alpha);

/// ln_q 2 - [(1-eps)^q - 2(1+eps)^q + (1+3eps)^q] / [4(q-1)(2(1+eps))^{q-1}].
double tsallis(double eps, double q);

}  // namespace realitykit::werner
