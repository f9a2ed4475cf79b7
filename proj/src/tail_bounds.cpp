#include "banditlab/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "banditlab/errors.hpp"

namespace banditlab::linalg {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

TailBoundPair gaussian_tail_sandwich(double z) {
    if (z < 0.0) throw DomainError("gaussian_tail_sandwich: z must be >= 0");
    // erfc(x) sandwich at x = z/sqrt(2):
    //   2/sqrt(pi) * e^{-x^2} / (x + sqrt(x^2 + 2))      <= erfc(x)
    //   2/sqrt(pi) * e^{-x^2} / (x + sqrt(x^2 + 4/pi))   >= erfc(x)
    double x = z / std::numbers::sqrt2;
    double c = (2.0 / kSqrtPi) * std::exp(-0.5 * z * z);
    double lower = c / (x + std::sqrt(x * x + 2.0));
    double upper = c / (x + std::sqrt(x * x + 4.0 / std::numbers::pi));
    return {lower, std::min(upper, 1.0)};
}

TailBoundPair gaussian_tail_simplified(double z) {
    if (z < 1.0) throw DomainError("gaussian_tail_simplified: stated for z >= 1");
    double e = std::exp(-0.5 * z * z);
    return {e / (2.0 * kSqrtPi * z), e / (kSqrtPi * z)};
}

double anti_concentration_floor(double z) {
    if (z < 0.0 || z > 1.0) {
        throw DomainError("anti_concentration_floor: z must lie in [0, 1]");
    }
    return std::exp(-z * z) / (4.0 * kSqrtPi);
}

double anti_concentration_constant() { return anti_concentration_floor(1.0); }

}  // namespace banditlab::linalg
