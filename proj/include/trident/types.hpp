#ifndef TRIDENT_TYPES_HPP
#define TRIDENT_TYPES_HPP

#include <array>
#include <string_view>

#include <Eigen/Core>

namespace trident {

using Vector7 = Eigen::Matrix<double, 7, 1>;
using Matrix7 = Eigen::Matrix<double, 7, 7>;

/// Coordinate chart of the 7-dimensional configuration space.
///
///   original: (x, y, theta, phi, l1, l2, l3)
///   adapted:  (x, l1, l2, l3, y1, y2, y3)
enum class Chart
{
  original,
  adapted,
};

inline constexpr std::array<std::string_view, 7> kOriginalNames{"x", "y", "theta", "phi", "l1", "l2", "l3"};
inline constexpr std::array<std::string_view, 7> kAdaptedNames{"x", "l1", "l2", "l3", "y1", "y2", "y3"};

inline constexpr const std::array<std::string_view, 7>& coordinate_names(Chart chart)
{
  return chart == Chart::original ? kOriginalNames : kAdaptedNames;
}

inline constexpr std::string_view chart_name(Chart chart)
{
  return chart == Chart::original ? "original" : "adapted";
}

}  // namespace trident

#endif  // TRIDENT_TYPES_HPP
