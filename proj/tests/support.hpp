#pragma once

#include <gnlab/calculus.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace test_support {

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

/// Ball field from a jet profile, no range or boundary checks.
template <class F>
gnlab::RadialField free_field(F f, int n, double r_in, double r_out, const std::string& name) {
  gnlab::FieldOptions opt;
  opt.dirichlet = false;
  opt.check_range = false;
  return gnlab::RadialField(gnlab::Profile(f), n, r_in, r_out, gnlab::kInfinity, name, opt);
}

}  // namespace test_support
