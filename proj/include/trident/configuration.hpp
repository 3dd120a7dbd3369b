#ifndef TRIDENT_CONFIGURATION_HPP
#define TRIDENT_CONFIGURATION_HPP

#include <cmath>

#include "trident/types.hpp"

namespace trident {

/// A point of the configuration space, tagged with the chart its coordinates belong to.
class Configuration
{
public:
  Configuration(Chart chart, const Vector7& coords) : chart_(chart), coords_(coords) {}

  static Configuration original(double x, double y, double theta, double phi, double l1, double l2, double l3)
  {
    Vector7 q;
    q << x, y, theta, phi, l1, l2, l3;
    return {Chart::original, q};
  }

  static Configuration adapted(double x, double l1, double l2, double l3, double y1, double y2, double y3)
  {
    Vector7 q;
    q << x, l1, l2, l3, y1, y2, y3;
    return {Chart::adapted, q};
  }

  Chart chart() const { return chart_; }
  const Vector7& coords() const { return coords_; }
  double operator[](int i) const { return coords_(i); }

  /// Leg lengths (l1, l2, l3), wherever the chart stores them.
  Eigen::Vector3d legs() const { return chart_ == Chart::original ? coords_.segment<3>(4) : coords_.segment<3>(1); }

  /// Every leg has positive length. Not enforced at construction.
  bool mechanically_valid() const { return (legs().array() > 0.0).all(); }

private:
  Chart chart_;
  Vector7 coords_;
};

/// The reference configuration (0, 0, pi/2, 0, 1, 1, 1) used throughout the analysis.
inline Configuration reference_configuration() { return Configuration::original(0.0, 0.0, M_PI / 2.0, 0.0, 1.0, 1.0, 1.0); }

}  // namespace trident

#endif  // TRIDENT_CONFIGURATION_HPP
