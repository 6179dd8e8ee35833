#pragma once

#include <vector>

namespace afeg {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

GaussRule gauss_legendre(int n);

// Cached rules used throughout the solver.
const GaussRule& gauss12();
const GaussRule& gauss8();

}  // namespace afeg
