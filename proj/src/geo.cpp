// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/geo.hpp>

#include <kgval/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kgval {

bool isValidGeo(const GeoPoint& p) noexcept {
    return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
           p.lon >= -180.0 && p.lon <= 180.0;
}

double haversineMeters(const GeoPoint& a, const GeoPoint& b) {
    if (!isValidGeo(a) || !isValidGeo(b)) {
        throw RangeError("coordinate out of range");
    }
    constexpr double kDeg = std::numbers::pi / 180.0;
    const double phi1 = a.lat * kDeg;
    const double phi2 = b.lat * kDeg;
    const double dPhi = (b.lat - a.lat) * kDeg;
    const double dLambda = (b.lon - a.lon) * kDeg;
    const double s1 = std::sin(dPhi / 2.0);
    const double s2 = std::sin(dLambda / 2.0);
    double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(h));
}

} // namespace kgval
