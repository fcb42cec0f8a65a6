#include <doctest.h>

#include "approx.hpp"

#include <cmath>

#include "casimir/reflection.hpp"

using namespace casimir;

TEST_CASE("vacuum is reflectionless") {
  for (double zeta : {0.0, 0.5, 3.0})
    for (double y : {3.0, 4.0, 50.0}) {
      const auto r = fresnel(zeta, y, 1.0);
      CHECK(r.r_tm == 0.0);
      CHECK(r.r_te == 0.0);
    }
}

TEST_CASE("static Fresnel coefficients are independent of y") {
  for (double y : {1e-6, 0.1, 1.0, 10.0, 59.0}) {
    const auto r = fresnel(0.0, y, 16.2);
    CHECK(r.r_tm == approx(15.2 / 17.2).epsilon(1e-15));
    CHECK(r.r_te == 0.0);
  }
}

TEST_CASE("Fresnel at the lower integration limit") {
  // s = y sqrt(eps) when y = zeta; mpmath value.
  const auto r = fresnel(2.0, 2.0, 16.2);
  CHECK(r.r_tm == approx(0.6019839000658393).epsilon(1e-14));
  const double s = std::sqrt(16.2);
  CHECK(r.r_te == approx((1.0 - s) / (1.0 + s)).epsilon(1e-14));
}

TEST_CASE("Fresnel bounds and signs over a grid") {
  for (double eps : {1.0, 1.1, 4.0, 16.2, 1e3})
    for (double zeta : {0.0, 0.3, 2.0, 20.0})
      for (double dy : {0.0, 0.01, 1.0, 30.0}) {
        const double y = zeta + dy;
        if (y == 0.0) continue;
        const auto r = fresnel(zeta, y, eps);
        CHECK(r.r_tm >= 0.0);
        CHECK(r.r_tm <= 1.0);
        CHECK(r.r_te <= 0.0);
        CHECK(r.r_te >= -1.0);
      }
}

TEST_CASE("perfect-conductor limit") {
  const auto r = fresnel(1.5, 2.0, 1e8);
  CHECK(r.r_tm == approx(1.0).epsilon(1e-3));
  CHECK(r.r_te == approx(-1.0).epsilon(1e-3));
}

TEST_CASE("zero-frequency coefficients per model") {
  const Geometry g{1e-6};
  const double r0 = 15.2 / 17.2;
  for (double y : {0.01, 1.0, 10.0}) {
    const auto neg = zero_frequency(y, make_model(ModelKind::neglected), g);
    CHECK(neg.r_tm == approx(r0).epsilon(1e-15));
    CHECK(neg.r_te == 0.0);
    const auto drude = zero_frequency(y, make_model(ModelKind::drude), g);
    CHECK(drude.r_tm == 1.0);
    CHECK(drude.r_te == 0.0);
  }
  // Reduced plasma frequencies sum to 4.266e-5 at a = 1 um; mpmath value of r_TE(y=1).
  const auto pl = zero_frequency(1.0, make_model(ModelKind::plasma), g);
  CHECK(pl.r_tm == 1.0);
  CHECK(pl.r_te == approx(-1.066531147970883e-5).epsilon(1e-10));
}

TEST_CASE("unscreened diffusion model equals the neglected-carrier model") {
  MaterialParameters p = MaterialParameters::germanium();
  p.electrons.density = 0.0;
  p.holes.density = 0.0;
  const Geometry g{0.6e-6};
  for (double y : {1e-3, 0.5, 5.0}) {
    const auto d = zero_frequency(y, make_model(ModelKind::diffusion, p), g);
    const auto n = zero_frequency(y, make_model(ModelKind::neglected, p), g);
    CHECK(d.r_tm == approx(n.r_tm).epsilon(1e-15));
    CHECK(d.r_te == n.r_te);
  }
}

TEST_CASE("screened static coefficient interpolates between dielectric and metal") {
  const double eps0 = 16.2;
  const double r0 = (eps0 - 1.0) / (eps0 + 1.0);
  for (double y : {0.05, 0.5, 2.0, 8.0}) {
    CHECK(screened_static(y, eps0, 0.0).r_tm == approx(r0).epsilon(1e-15));
    CHECK(screened_static(y, eps0, 1e9).r_tm == approx(1.0).epsilon(1e-9));
    double prev = screened_static(y, eps0, 0.0).r_tm;
    for (double k = 1e-3; k < 1e4; k *= 1.7) {
      const double r = screened_static(y, eps0, k).r_tm;
      CHECK(r >= prev);
      prev = r;
    }
  }
}

TEST_CASE("static TM ordering behind the sandwich claim") {
  const Geometry g{0.8e-6};
  for (double y : {0.01, 0.3, 1.0, 3.0, 20.0}) {
    const double neg = zero_frequency(y, make_model(ModelKind::neglected), g).r_tm;
    const double dif = zero_frequency(y, make_model(ModelKind::diffusion), g).r_tm;
    const double dru = zero_frequency(y, make_model(ModelKind::drude), g).r_tm;
    const double pla = zero_frequency(y, make_model(ModelKind::plasma), g).r_tm;
    CHECK(neg < dif);
    CHECK(dif < dru);
    CHECK(dru == pla);
  }
}
