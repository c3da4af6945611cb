#include "dsscap/secrecy.hpp"

#include "dsscap/errors.hpp"

#include <algorithm>

namespace dsscap {

Rational homogeneous_secrecy_bound(const Rational& alpha, const Rational& gamma,
                                   int k, int d, int ell) {
  if (alpha < 0 || gamma < 0)
    throw DssError(ErrorCode::NegativeValue, "alpha and gamma must be >= 0");
  if (k < 1 || k > d)
    throw DssError(ErrorCode::ParamViolation,
                   "need 1 <= k <= d, got k=" + std::to_string(k) +
                       " d=" + std::to_string(d));
  if (ell < 0 || ell > k)
    throw DssError(ErrorCode::ParamViolation,
                   "need 0 <= ell <= k, got ell=" + std::to_string(ell) +
                       " k=" + std::to_string(k));
  Rational total = 0;
  for (int i = ell + 1; i <= k; ++i) {
    const Rational download = Rational(d - i + 1) * gamma / d;
    total += std::min(alpha, download);
  }
  return total;
}

Rational secrecy_upper_bound(const DssConfig& config, int ell) {
  auto [alpha_bar, gamma_bar] = system_averages(config);
  return homogeneous_secrecy_bound(alpha_bar, gamma_bar, config.params.k,
                                   config.params.d, ell);
}

}  // namespace dsscap
