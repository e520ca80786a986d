// angles.hpp - angle type with degree-exact trigonometry.
//
// Steering math keys off sin(theta). Configurations specify angles in
// degrees, and the hardware-facing delay tables are rounded to integer
// nanoseconds, so sin(30 deg) must come out as exactly 0.5 or the rounded
// tables flip on .5 boundaries. Angle therefore reduces degree arguments
// exactly and returns exact values at the multiples of 30 and 45 degrees,
// like the degree-trig functions in MATLAB and Julia.

#pragma once

#include <cmath>

namespace tmafh {

inline constexpr double kPi = 3.141592653589793238462643383279;

// sin of an angle given in degrees, exact at multiples of 30 and 45.
inline double sin_degrees(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0)
        r += 360.0;
    // sin has period 360 and sin(x) = -sin(x - 180): fold into [0, 180).
    double sign = 1.0;
    if (r >= 180.0) {
        r -= 180.0;
        sign = -1.0;
    }
    if (r > 90.0)
        r = 180.0 - r; // sin(x) = sin(180 - x), exact in degrees
    if (r == 0.0)
        return sign * 0.0;
    if (r == 30.0)
        return sign * 0.5;
    if (r == 45.0)
        return sign * 0.70710678118654752440; // sqrt(1/2)
    if (r == 60.0)
        return sign * 0.86602540378443864676; // sqrt(3)/2
    if (r == 90.0)
        return sign * 1.0;
    return sign * std::sin(r * (kPi / 180.0));
}

inline double cos_degrees(double deg) { return sin_degrees(90.0 - deg); }

// An angle remembering the unit it was constructed in, so degree-specified
// steering directions keep their exact sines through the pipeline.
class Angle {
public:
    static Angle from_degrees(double deg) { return Angle(deg, true); }
    static Angle from_radians(double rad) { return Angle(rad, false); }

    double degrees() const { return is_degrees_ ? value_ : value_ * (180.0 / kPi); }
    double radians() const { return is_degrees_ ? value_ * (kPi / 180.0) : value_; }

    double sin() const { return is_degrees_ ? sin_degrees(value_) : std::sin(value_); }
    double cos() const { return is_degrees_ ? cos_degrees(value_) : std::cos(value_); }

private:
    Angle(double v, bool deg) : value_(v), is_degrees_(deg) {}

    double value_;
    bool is_degrees_;
};

} // namespace tmafh
