#pragma once

#include <span>

namespace rsb {

/// Entropic certainty equivalent (1/gamma) ln sum_x p(x) exp(gamma v(x)).
///
/// Evaluated in max-centred form with expm1/log1p, so it stays accurate both
/// for |gamma| * span(v) in the hundreds and for gamma near 0. The gamma == 0
/// branch (the plain expectation) is taken only for an exact zero. Entries
/// with p(x) == 0 are ignored. The result is clamped to the support range of v.
///
/// Throws std::invalid_argument on mismatched lengths or non-finite input.
double entropic_ce(double gamma, std::span<const double> probs, std::span<const double> values);

/// Same as entropic_ce without argument validation, for inner loops whose
/// inputs are already known to be consistent.
double entropic_ce_unchecked(double gamma, std::span<const double> probs,
                             std::span<const double> values);

}  // namespace rsb
