#pragma once

#include <cmath>
#include <vector>

namespace tlf {

struct LatLon {
    double lat = 0;
    double lon = 0;

    bool operator==(const LatLon&) const = default;
};

using Polyline = std::vector<LatLon>;

constexpr double kEarthRadiusM = 6371000.0;
constexpr double kMileM = 1609.34;
constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }

// Great-circle distance in meters.
inline double haversine_m(LatLon a, LatLon b) {
    double dlat = deg2rad(b.lat - a.lat);
    double dlon = deg2rad(b.lon - a.lon);
    double s = std::sin(dlat / 2), t = std::sin(dlon / 2);
    double h = s * s + std::cos(deg2rad(a.lat)) * std::cos(deg2rad(b.lat)) * t * t;
    return 2 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

struct XY {
    double x = 0;  // meters east of origin
    double y = 0;  // meters north of origin
};

// Equirectangular local projection anchored at a fixed origin. Adequate at
// metropolitan scale; the grid only needs cell-level fidelity.
struct LocalProjection {
    LatLon origin;
    double m_per_deg_lat = 0;
    double m_per_deg_lon = 0;

    static LocalProjection around(LatLon origin) {
        LocalProjection p;
        p.origin = origin;
        p.m_per_deg_lat = kEarthRadiusM * kPi / 180.0;
        p.m_per_deg_lon = p.m_per_deg_lat * std::cos(deg2rad(origin.lat));
        return p;
    }

    XY to_xy(LatLon ll) const {
        return XY{(ll.lon - origin.lon) * m_per_deg_lon, (ll.lat - origin.lat) * m_per_deg_lat};
    }
};

}  // namespace tlf
