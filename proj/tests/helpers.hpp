#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "delone/generators.hpp"

namespace delone::test {

inline constexpr double kPhi = std::numbers::phi;

inline Box interval(double lo, double hi) { return Box{make_point({lo}), make_point({hi})}; }

inline Box square(double lo, double hi, int dim = 2) {
  return Box{Point::Constant(dim, lo), Point::Constant(dim, hi)};
}

inline PointSet integers(double lo, double hi, double margin) {
  return generate(LatticeSpec::integer(1), interval(lo, hi), margin);
}

inline PointSet fibonacci(double lo, double hi, double margin) {
  return generate(CutAndProjectSpec{"fibonacci", {}}, interval(lo, hi), margin);
}

inline PointSet ammann_beenker(double half, double margin) {
  return generate(CutAndProjectSpec{"ammann-beenker", {}}, square(-half, half), margin);
}

// (1/4 + 2ℤ) ∪ (3/4 + 2ℤ)
inline LatticeSpec two_motif() {
  LatticeSpec s{Eigen::MatrixXd::Constant(1, 1, 2.0), {make_point({0.25}), make_point({0.75})}};
  return s;
}

inline std::vector<double> gaps(const PointSet& ps) {
  std::vector<double> g;
  for (std::size_t i = 1; i < ps.size(); ++i) g.push_back(ps[i](0) - ps[i - 1](0));
  return g;
}

inline Point random_point(std::mt19937_64& rng, int dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point p(dim);
  for (int i = 0; i < dim; ++i) p(i) = u(rng);
  return p;
}

}  // namespace delone::test
