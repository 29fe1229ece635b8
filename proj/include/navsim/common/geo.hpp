#pragma once

namespace navsim {

/// WGS-84 geodetic coordinate. lat/lon in degrees, alt in meters.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
  double alt = 0.0;
};

/// UTM coordinate. easting includes the 500 km false easting; northing
/// includes the 10,000 km false northing on the southern hemisphere.
struct UtmCoord {
  double easting = 0.0;
  double northing = 0.0;
  int zone = 0;       // 1..60
  bool south = false;
};

/// Standard UTM zone for a longitude in degrees.
int utm_zone_for(double lon_deg);

/// Projects a WGS-84 coordinate to UTM using a transverse Mercator series
/// accurate to well under a millimeter inside the zone.
/// Throws std::invalid_argument outside |lat| <= 84 deg or lon outside
/// [-180, 180].
UtmCoord geo_to_utm(const GeoPoint& p);

/// Same projection with the zone forced, for points near a zone boundary
/// that must stay in one plane.
UtmCoord geo_to_utm(const GeoPoint& p, int zone, bool south);

/// Inverse projection. alt of the result is 0.
GeoPoint utm_to_geo(const UtmCoord& c);

}  // namespace navsim
