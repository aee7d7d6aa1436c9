// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

namespace kgval {

inline constexpr double kEarthRadiusMeters = 6371000.0;

struct GeoPoint {
    double lat = 0.0; // degrees, [-90, 90]
    double lon = 0.0; // degrees, [-180, 180]

    bool operator==(const GeoPoint&) const = default;
};

bool isValidGeo(const GeoPoint& p) noexcept;

/// Great-circle distance in meters on a sphere of radius kEarthRadiusMeters.
/// Throws RangeError when either point lies outside the valid ranges.
double haversineMeters(const GeoPoint& a, const GeoPoint& b);

} // namespace kgval
