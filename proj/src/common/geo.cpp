#include "navsim/common/geo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace navsim {
namespace {

// WGS-84 ellipsoid.
constexpr double kA = 6378137.0;
constexpr double kF = 1.0 / 298.257223563;
constexpr double kK0 = 0.9996;
constexpr double kFalseEasting = 500000.0;
constexpr double kFalseNorthingSouth = 10000000.0;

constexpr double kN = kF / (2.0 - kF);  // third flattening

// Rectifying radius, series in the third flattening.
const double kRectA = kA / (1.0 + kN) *
                      (1.0 + kN * kN / 4.0 + std::pow(kN, 4) / 64.0 +
                       std::pow(kN, 6) / 256.0);

struct Series {
  double alpha[6];
  double beta[6];
  double delta[6];
};

// Sixth-order Krueger series coefficients for the transverse Mercator
// projection: alpha maps conformal to projected coordinates, beta is the
// inverse, delta recovers geodetic from conformal latitude.
Series make_series() {
  const double n = kN, n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n,
               n6 = n5 * n;
  Series s{};
  s.alpha[0] = n / 2 - 2 * n2 / 3 + 5 * n3 / 16 + 41 * n4 / 180 -
               127 * n5 / 288 + 7891 * n6 / 37800;
  s.alpha[1] = 13 * n2 / 48 - 3 * n3 / 5 + 557 * n4 / 1440 + 281 * n5 / 630 -
               1983433 * n6 / 1935360;
  s.alpha[2] = 61 * n3 / 240 - 103 * n4 / 140 + 15061 * n5 / 26880 +
               167603 * n6 / 181440;
  s.alpha[3] = 49561 * n4 / 161280 - 179 * n5 / 168 + 6601661 * n6 / 7257600;
  s.alpha[4] = 34729 * n5 / 80640 - 3418889 * n6 / 1995840;
  s.alpha[5] = 212378941 * n6 / 319334400;

  s.beta[0] = n / 2 - 2 * n2 / 3 + 37 * n3 / 96 - n4 / 360 - 81 * n5 / 512 +
              96199 * n6 / 604800;
  s.beta[1] = n2 / 48 + n3 / 15 - 437 * n4 / 1440 + 46 * n5 / 105 -
              1118711 * n6 / 3870720;
  s.beta[2] = 17 * n3 / 480 - 37 * n4 / 840 - 209 * n5 / 4480 +
              5569 * n6 / 90720;
  s.beta[3] = 4397 * n4 / 161280 - 11 * n5 / 504 - 830251 * n6 / 7257600;
  s.beta[4] = 4583 * n5 / 161280 - 108847 * n6 / 3991680;
  s.beta[5] = 20648693 * n6 / 638668800;

  s.delta[0] = 2 * n - 2 * n2 / 3 - 2 * n3 + 116 * n4 / 45 + 26 * n5 / 45 -
               2854 * n6 / 675;
  s.delta[1] = 7 * n2 / 3 - 8 * n3 / 5 - 227 * n4 / 45 + 2704 * n5 / 315 +
               2323 * n6 / 945;
  s.delta[2] = 56 * n3 / 15 - 136 * n4 / 35 - 1262 * n5 / 105 +
               73814 * n6 / 2835;
  s.delta[3] = 4279 * n4 / 630 - 332 * n5 / 35 - 399572 * n6 / 14175;
  s.delta[4] = 4174 * n5 / 315 - 144838 * n6 / 6237;
  s.delta[5] = 601676 * n6 / 22275;
  return s;
}

const Series& series() {
  static const Series s = make_series();
  return s;
}

double central_meridian_deg(int zone) { return (zone - 1) * 6.0 - 180.0 + 3.0; }

void validate_zone(int zone) {
  if (zone < 1 || zone > 60)
    throw std::invalid_argument("UTM zone out of range: " +
                                std::to_string(zone));
}

}  // namespace

int utm_zone_for(double lon_deg) {
  if (lon_deg >= 180.0) lon_deg -= 360.0;
  int zone = static_cast<int>(std::floor((lon_deg + 180.0) / 6.0)) + 1;
  if (zone < 1) zone = 1;
  if (zone > 60) zone = 60;
  return zone;
}

UtmCoord geo_to_utm(const GeoPoint& p) {
  return geo_to_utm(p, utm_zone_for(p.lon), p.lat < 0.0);
}

UtmCoord geo_to_utm(const GeoPoint& p, int zone, bool south) {
  validate_zone(zone);
  if (!(std::abs(p.lat) <= 84.0))
    throw std::invalid_argument("latitude outside UTM validity: " +
                                std::to_string(p.lat));
  if (!(p.lon >= -180.0 && p.lon <= 180.0))
    throw std::invalid_argument("longitude out of range: " +
                                std::to_string(p.lon));

  const double phi = p.lat * std::numbers::pi / 180.0;
  const double dlam = (p.lon - central_meridian_deg(zone)) * std::numbers::pi / 180.0;

  const double en = 2.0 * std::sqrt(kN) / (1.0 + kN);
  const double t = std::sinh(std::atanh(std::sin(phi)) -
                             en * std::atanh(en * std::sin(phi)));
  const double xip = std::atan2(t, std::cos(dlam));
  const double etap = std::atanh(std::sin(dlam) / std::sqrt(1.0 + t * t));

  const Series& s = series();
  double xi = xip, eta = etap;
  for (int j = 1; j <= 6; ++j) {
    xi += s.alpha[j - 1] * std::sin(2.0 * j * xip) * std::cosh(2.0 * j * etap);
    eta += s.alpha[j - 1] * std::cos(2.0 * j * xip) * std::sinh(2.0 * j * etap);
  }

  UtmCoord out;
  out.zone = zone;
  out.south = south;
  out.easting = kFalseEasting + kK0 * kRectA * eta;
  out.northing = (south ? kFalseNorthingSouth : 0.0) + kK0 * kRectA * xi;
  return out;
}

GeoPoint utm_to_geo(const UtmCoord& c) {
  validate_zone(c.zone);

  const double xi =
      (c.northing - (c.south ? kFalseNorthingSouth : 0.0)) / (kK0 * kRectA);
  const double eta = (c.easting - kFalseEasting) / (kK0 * kRectA);

  const Series& s = series();
  double xip = xi, etap = eta;
  for (int j = 1; j <= 6; ++j) {
    xip -= s.beta[j - 1] * std::sin(2.0 * j * xi) * std::cosh(2.0 * j * eta);
    etap -= s.beta[j - 1] * std::cos(2.0 * j * xi) * std::sinh(2.0 * j * eta);
  }

  const double chi = std::asin(std::sin(xip) / std::cosh(etap));
  double phi = chi;
  for (int j = 1; j <= 6; ++j)
    phi += s.delta[j - 1] * std::sin(2.0 * j * chi);

  const double dlam = std::atan2(std::sinh(etap), std::cos(xip));

  GeoPoint out;
  out.lat = phi * 180.0 / std::numbers::pi;
  out.lon = central_meridian_deg(c.zone) + dlam * 180.0 / std::numbers::pi;
  out.alt = 0.0;
  return out;
}

}  // namespace navsim
