#include "rsb/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsb {

double entropic_ce_unchecked(double gamma, std::span<const double> probs,
                             std::span<const double> values) {
    const std::size_t n = probs.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        if (probs[i] > 0.0) {
            lo = std::min(lo, values[i]);
            hi = std::max(hi, values[i]);
        }
    }
    if (hi == lo) return hi;

    if (gamma == 0.0) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += probs[i] * values[i];
        return std::clamp(mean, lo, hi);
    }

    // Centre on the value maximising gamma * v so that every exponent is <= 0.
    const double centre = gamma > 0.0 ? hi : lo;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (probs[i] > 0.0) s += probs[i] * std::expm1(gamma * (values[i] - centre));
    }
    return std::clamp(centre + std::log1p(s) / gamma, lo, hi);
}

double entropic_ce(double gamma, std::span<const double> probs, std::span<const double> values) {
    if (probs.size() != values.size()) {
        throw std::invalid_argument("entropic_ce: probability and value vectors differ in length");
    }
    if (!std::isfinite(gamma)) throw std::invalid_argument("entropic_ce: gamma is not finite");
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!std::isfinite(probs[i]) || !std::isfinite(values[i])) {
            throw std::invalid_argument("entropic_ce: non-finite input");
        }
    }
    return entropic_ce_unchecked(gamma, probs, values);
}

}  // namespace rsb
