#include "realitykit/werner.hpp"

#include <cmath>

namespace realitykit::werner {

namespace {

double up_from_chi(double chi, double alpha) { return std::log(2.0) - alpha / (alpha - 1.0) * std::log(chi); }

double chi_with(double first, double eps, double alpha) {
  const double bracket = (std::pow(first, alpha) + std::pow(1.0 + 3.0 * eps, alpha)) /
                         std::pow(2.0, alpha + 1.0);
  return (1.0 - eps) / 2.0 + std::pow(bracket, 1.0 / alpha);
}

}  // namespace

double ln_q(double x, double q) {
  if (q == 1.0) return std::log(x);
  return (std::pow(x, 1.0 - q) - 1.0) / (1.0 - q);
}

double renyi_down(double eps, double alpha) {
  const double inner = (std::pow(1.0 - eps, alpha) + std::pow(1.0 + 3.0 * eps, alpha)) /
                           (4.0 * std::pow(1.0 + eps, alpha - 1.0)) +
                       (1.0 - eps) / 2.0;
  return std::log(2.0) - std::log(inner) / (alpha - 1.0);
}

double renyi_down_alpha0(double eps) { return eps < 1.0 ? std::log(2.0) : 0.0; }

double renyi_down_alpha_inf(double eps) {
  return std::log(2.0) - std::log((1.0 + 3.0 * eps) / (1.0 + eps));
}

double chi_derived(double eps, double alpha) { return chi_with(1.0 - eps, eps, alpha); }
double chi_printed(double eps, double alpha) { return chi_with(1.0 + eps, eps, alpha); }

double renyi_up_derived(double eps, double alpha) { return up_from_chi(chi_derived(eps, alpha), alpha); }
double renyi_up_printed(double eps, double alpha) { return up_from_chi(chi_printed(eps, alpha), alpha); }

double tsallis(double eps, double q) {
  const double numerator = std::pow(1.0 - eps, q) - 2.0 * std::pow(1.0 + eps, q) +
                           std::pow(1.0 + 3.0 * eps, q);
  const double denominator = 4.0 * (q - 1.0) * std::pow(2.0 * (1.0 + eps), q - 1.0);
  return ln_q(2.0, q) - numerator / denominator;
}

}  // namespace realitykit::werner
