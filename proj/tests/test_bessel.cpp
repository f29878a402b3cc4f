#include <doctest.h>

#include <cmath>

#include "torlab/bessel.hpp"

using namespace torlab;

// reference values frozen from a 30-digit arbitrary-precision evaluation
TEST_CASE("bessel_j0 against high-precision references") {
  struct Ref { double x, j0; };
  const Ref refs[] = {
      {0.0, 1.0},
      {0.5, 0.93846980724081290423},
      {1.0, 0.76519768655796655145},
      {2.5, -0.048383776468197996327},
      {5.0, -0.17759677131433830435},
      {8.0, 0.17165080713755390609},
      {11.0, -0.17119030040719608835},
      {12.0, 0.047689310796833536624},
      {13.0, 0.206926102377067811},
      {20.0, 0.16702466434058315473},
      {50.25, 0.078144836044191634203},
      {123.456, -0.071030062418370693597},
      {500.0, -0.034100556880731998265},
      {1570.796, 0.014229466000247910547},
      {6283.185307, 0.0071174825426832919355},
  };
  for (const auto& r : refs) CHECK(std::abs(bessel_j0(r.x) - r.j0) < 1e-10);
}

TEST_CASE("bessel_j0 branch match at the series/asymptotic switch") {
  // both branches must agree across the x=12 seam
  CHECK(std::abs(bessel_j0(11.9999) - 0.047666965754871073692) < 1e-10);
  CHECK(std::abs(bessel_j0(12.0001) - 0.047711655175696971875) < 1e-10);
  CHECK(std::abs(bessel_j0(12.0001) - bessel_j0(11.9999)) < 1e-4);
}

TEST_CASE("bessel_j0 basic properties") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j0(-7.5) == bessel_j0(7.5));  // even function
  for (double x = 0.1; x < 300; x *= 1.7) CHECK(std::abs(bessel_j0(x)) <= 1.0);
  // large-argument envelope sqrt(2/(pi x))
  for (double x = 20; x < 5000; x *= 2.1)
    CHECK(std::abs(bessel_j0(x)) <= std::sqrt(2.0 / (3.14159 * x)) * 1.01);
}
