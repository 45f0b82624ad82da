#include "rsb/entropic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

using rsb::entropic_ce;

namespace {

struct Case {
    double gamma;
    std::vector<double> p;
    std::vector<double> v;
};

Case random_case(std::mt19937_64& rng, double gamma_scale) {
    std::uniform_int_distribution<int> size(1, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> value(-20.0, 20.0);
    Case c;
    const int n = size(rng);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        // Some zero-probability entries exercise the support handling.
        const double w = unit(rng) < 0.15 ? 0.0 : unit(rng) + 1e-3;
        c.p.push_back(w);
        c.v.push_back(value(rng));
        total += w;
    }
    if (total == 0.0) {
        c.p[0] = 1.0;
        total = 1.0;
    }
    for (double& w : c.p) w /= total;
    c.gamma = gamma_scale * (2.0 * unit(rng) - 1.0);
    return c;
}

std::pair<double, double> support_range(const Case& c) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < c.p.size(); ++i) {
        if (c.p[i] > 0.0) {
            lo = std::min(lo, c.v[i]);
            hi = std::max(hi, c.v[i]);
        }
    }
    return {lo, hi};
}

/// Reference value in long double, direct formula.
long double direct_ce(const Case& c) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < c.p.size(); ++i)
        s += static_cast<long double>(c.p[i]) *
             std::exp(static_cast<long double>(c.gamma) * static_cast<long double>(c.v[i]));
    return std::log(s) / static_cast<long double>(c.gamma);
}

}  // namespace

TEST_CASE("entropic: zero gamma is the expectation") {
    const std::vector<double> p{0.25, 0.75}, v{4.0, 8.0};
    CHECK(entropic_ce(0.0, p, v) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("entropic: point mass returns the value exactly") {
    const std::vector<double> p{0.0, 1.0, 0.0}, v{-100.0, 3.5, 100.0};
    for (double g : {-50.0, -1.0, 0.0, 1e-9, 2.0, 700.0}) CHECK(entropic_ce(g, p, v) == 3.5);
}

TEST_CASE("entropic: two-point closed form") {
    // (1/g) ln(0.5 + 0.5 e^{8g}) from the example chain.
    const std::vector<double> p{0.5, 0.5}, v{0.0, 8.0};
    for (double g : {-3.0, -0.2, 0.4, 1.0, 5.0}) {
        const double expected = std::log(0.5 + 0.5 * std::exp(8.0 * g)) / g;
        CHECK(entropic_ce(g, p, v) == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("entropic: extreme risk parameters stay finite and bounded") {
    const std::vector<double> p{0.1, 0.9}, v{0.0, 1000.0};
    const double hi = entropic_ce(1e4, p, v);
    const double lo = entropic_ce(-1e4, p, v);
    CHECK(std::isfinite(hi));
    CHECK(std::isfinite(lo));
    CHECK(hi == doctest::Approx(1000.0 + std::log(0.9) / 1e4));
    CHECK(lo == doctest::Approx(-std::log(0.1) / 1e4).epsilon(1e-10));
}

TEST_CASE("entropic: invalid inputs are rejected") {
    const std::vector<double> p{0.5, 0.5}, v{1.0};
    CHECK_THROWS_AS(entropic_ce(1.0, p, v), std::invalid_argument);
    const std::vector<double> bad{1.0, std::nan("")};
    CHECK_THROWS_AS(entropic_ce(1.0, p, bad), std::invalid_argument);
    const std::vector<double> w{1.0, 2.0};
    CHECK_THROWS_AS(entropic_ce(std::numeric_limits<double>::infinity(), p, w),
                    std::invalid_argument);
}

TEST_CASE("entropic: agrees with a long-double direct evaluation") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Case c = random_case(rng, 2.0);
        if (c.gamma == 0.0) continue;
        const double got = entropic_ce(c.gamma, c.p, c.v);
        CHECK(std::abs(got - static_cast<double>(direct_ce(c))) <= 1e-11);
    }
}

TEST_CASE("entropic: randomized property suite") {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int failures = 0;
    for (int i = 0; i < 10000; ++i) {
        const Case c = random_case(rng, i % 2 == 0 ? 5.0 : 0.05);
        const auto [lo, hi] = support_range(c);
        const double ce = entropic_ce(c.gamma, c.p, c.v);
        const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});

        if (!(ce >= lo - 1e-12 * scale && ce <= hi + 1e-12 * scale)) ++failures;

        std::vector<double> raised = c.v;
        for (double& x : raised) x += 3.0 * unit(rng);
        if (entropic_ce(c.gamma, c.p, raised) < ce - 1e-12 * scale) ++failures;

        const double g2 = c.gamma + unit(rng);
        if (entropic_ce(g2, c.p, c.v) < ce - 1e-12 * scale) ++failures;

        const double k = 50.0 * (2.0 * unit(rng) - 1.0);
        std::vector<double> shifted = c.v;
        for (double& x : shifted) x += k;
        if (std::abs(entropic_ce(c.gamma, c.p, shifted) - (ce + k)) > 1e-11 * (scale + 50.0))
            ++failures;

        // Second-order expansion ce = mean + gamma var / 2 + O(gamma^2); the
        // remainder is bounded by gamma^2 span^3 for |gamma| span <= 1.
        double mean = 0.0;
        for (std::size_t j = 0; j < c.p.size(); ++j) mean += c.p[j] * c.v[j];
        double var = 0.0;
        for (std::size_t j = 0; j < c.p.size(); ++j) var += c.p[j] * (c.v[j] - mean) * (c.v[j] - mean);
        const double span = hi - lo;
        const double small_gamma = (2.0 * unit(rng) - 1.0) / std::max(span, 1.0) * 0.5;
        const double approx = mean + 0.5 * small_gamma * var;
        const double remainder = std::abs(entropic_ce(small_gamma, c.p, c.v) - approx);
        if (remainder > small_gamma * small_gamma * span * span * span + 1e-12 * scale) ++failures;
    }
    CHECK(failures == 0);
}
