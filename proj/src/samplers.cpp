#include "cbcop/samplers.hpp"

#include <cmath>
#include <stdexcept>

#include "cbcop/errors.hpp"
#include "cbcop/special.hpp"

namespace cbcop {

CopulaFamily CopulaFamily::independence() { return {Tag::independence, 0.0}; }

CopulaFamily CopulaFamily::clayton(double theta) {
    if (!(theta > 0.0))
        throw std::domain_error("clayton copula: theta must be positive");
    return {Tag::clayton, theta};
}

CopulaFamily CopulaFamily::gaussian(double r) {
    if (!(r > -1.0 && r < 1.0))
        throw std::domain_error("gaussian copula: correlation must lie in (-1, 1)");
    return {Tag::gaussian, r};
}

double clayton_theta_from_tau(double tau) {
    if (!(tau > 0.0 && tau < 1.0))
        throw std::domain_error("tau conversion: tau must lie in (0, 1)");
    return 2.0 * tau / (1.0 - tau);
}

double gaussian_r_from_tau(double tau) {
    if (!(tau > 0.0 && tau < 1.0))
        throw std::domain_error("tau conversion: tau must lie in (0, 1)");
    return std::sin(1.5707963267948966192 * tau);
}

CopulaFamily CopulaFamily::from_tau(Tag tag, double tau) {
    switch (tag) {
    case Tag::independence:
        return independence();
    case Tag::clayton:
        return clayton(clayton_theta_from_tau(tau));
    case Tag::gaussian:
        return gaussian(gaussian_r_from_tau(tau));
    }
    throw std::domain_error("tau conversion: unknown family");
}

std::vector<double> sample_copula(const CopulaFamily& family, std::size_t n, RngStream stream) {
    std::vector<double> pairs(2 * n);
    switch (family.tag()) {
    case CopulaFamily::Tag::independence:
        for (std::size_t i = 0; i < n; ++i) {
            pairs[2 * i] = stream.uniform();
            pairs[2 * i + 1] = stream.uniform();
        }
        break;
    case CopulaFamily::Tag::clayton: {
        // Conditional inversion: V | U = u has cdf w -> (1 + u^-theta (w^(-theta/(1+theta)) - 1))^(-1/theta)
        // inverted in closed form.
        const double theta = family.parameter();
        for (std::size_t i = 0; i < n; ++i) {
            const double u = stream.uniform();
            const double w = stream.uniform();
            const double v =
                std::pow((std::pow(w, -theta / (1.0 + theta)) - 1.0) * std::pow(u, -theta) + 1.0,
                         -1.0 / theta);
            pairs[2 * i] = u;
            pairs[2 * i + 1] = v;
        }
        break;
    }
    case CopulaFamily::Tag::gaussian: {
        const double r = family.parameter();
        const double rperp = std::sqrt(1.0 - r * r);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = stream.uniform();
            const double z1 = normal_quantile(u);
            const double z2 = r * z1 + rperp * stream.normal();
            pairs[2 * i] = u;
            pairs[2 * i + 1] = normal_cdf(z2);
        }
        break;
    }
    }
    return pairs;
}

std::vector<double> discretize(std::span<const double> pairs, const DiscreteMargin& margin1,
                               const DiscreteMargin& margin2) {
    if (pairs.size() % 2 != 0)
        throw validation_error("discretize: need an even number of coordinates");
    std::vector<double> out(pairs.size());
    for (std::size_t i = 0; i * 2 < pairs.size(); ++i) {
        const double u = pairs[2 * i];
        const double v = pairs[2 * i + 1];
        if (!(u > 0.0 && u < 1.0) || !(v > 0.0 && v < 1.0))
            throw validation_error("discretize: coordinates must lie in (0, 1)");
        out[2 * i] = margin1.support_at(margin1.quantile(u));
        out[2 * i + 1] = margin2.support_at(margin2.quantile(v));
    }
    return out;
}

} // namespace cbcop
