#pragma once

#include "dsscap/config.hpp"
#include "dsscap/rational.hpp"

namespace dsscap {

// Upper bounds on how much data the system can deliver while leaking nothing
// to a passive eavesdropper that observes ell nodes. These are bounds only;
// no operation here claims to compute the secrecy capacity itself.

/// Homogeneous symmetric-repair bound: the capacity sum with the first ell
/// terms removed. Empty sum (ell = k) is 0.
Rational homogeneous_secrecy_bound(const Rational& alpha, const Rational& gamma,
                                   int k, int d, int ell);

/// Heterogeneous bound via average resources: the homogeneous bound applied
/// to (mean storage, mean repair bandwidth).
Rational secrecy_upper_bound(const DssConfig& config, int ell);

}  // namespace dsscap
