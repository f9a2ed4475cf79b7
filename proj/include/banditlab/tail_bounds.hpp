#pragma once

namespace banditlab::linalg {

struct TailBoundPair {
    double lower;
    double upper;
};

// Two-sided Gaussian tail sandwich for Pr(|Z - m| > z*sigma), from the
// Abramowitz & Stegun 7.1.13 erfc inequalities. Valid for all z >= 0; the
// upper member is clamped to 1. This is the default, exact variant.
TailBoundPair gaussian_tail_sandwich(double z);

// The simplified pair (1/(2*sqrt(pi)*z)) e^{-z^2/2} <= tail <=
// (1/(sqrt(pi)*z)) e^{-z^2/2}, stated for z >= 1. Exposed for reference only:
// the upper member is NOT a valid two-sided bound for moderate z (it drops
// below the true tail at z = 2), so nothing downstream depends on it.
TailBoundPair gaussian_tail_simplified(double z);

// Lower bound (1/(4*sqrt(pi))) e^{-z^2} on the one-sided tail
// Pr(Z - m > z*sigma), valid for z in [0, 1]. At z = 1 this is the
// anti-concentration constant 1/(4e*sqrt(pi)). Outside [0,1] -> DomainError.
double anti_concentration_floor(double z);

// 1/(4e*sqrt(pi)) = anti_concentration_floor(1).
double anti_concentration_constant();

}  // namespace banditlab::linalg
