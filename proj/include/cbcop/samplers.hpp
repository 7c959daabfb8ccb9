#pragma once

// Bivariate copula samplers (independence, Clayton, Gaussian) and the
// quantile discretization that turns uniform pairs into count data for the
// simulation harness.

#include <cstddef>
#include <span>
#include <vector>

#include "cbcop/margin.hpp"
#include "cbcop/rng.hpp"

namespace cbcop {

class CopulaFamily {
public:
    enum class Tag { independence, clayton, gaussian };

    static CopulaFamily independence();
    static CopulaFamily clayton(double theta);  // theta > 0
    static CopulaFamily gaussian(double r);     // |r| < 1

    // Parameterize by Kendall's tau in (0, 1):
    // clayton theta = 2 tau / (1 - tau), gaussian r = sin(pi tau / 2).
    static CopulaFamily from_tau(Tag tag, double tau);

    Tag tag() const { return tag_; }
    double parameter() const { return parameter_; }

private:
    CopulaFamily(Tag tag, double parameter) : tag_(tag), parameter_(parameter) {}

    Tag tag_;
    double parameter_;
};

double clayton_theta_from_tau(double tau);
double gaussian_r_from_tau(double tau);

// n pairs with uniform margins, flat row-major (u1, v1, u2, v2, ...).
// Deterministic given the stream.
std::vector<double> sample_copula(const CopulaFamily& family, std::size_t n, RngStream stream);

// Componentwise marginal pseudo-inverse: flat n x 2 matrix of support values.
std::vector<double> discretize(std::span<const double> pairs, const DiscreteMargin& margin1,
                               const DiscreteMargin& margin2);

} // namespace cbcop
