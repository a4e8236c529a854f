#pragma once

#include <functional>

namespace qglab {

// C-infinity step built from the exp(-1/x) mollifier:
// 0 for x <= 0, 1 for x >= 1, strictly increasing in between,
// with smoothstep(x) + smoothstep(1-x) == 1.
double smoothstep(double x);
double smoothstep_d1(double x);
double smoothstep_d2(double x);

enum class CutoffKind { Bump, Plateau };

// Smooth function supported in [a, b]. Bump: positive on (a, b), all
// one-sided derivatives vanish at the endpoints. Plateau: identically 1 on
// the middle half [a + (b-a)/4, b - (b-a)/4].
std::function<double(double)> cutoff_factory(double a, double b, CutoffKind kind);

}  // namespace qglab
