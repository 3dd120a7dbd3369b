#ifndef TRIDENT_IO_HPP
#define TRIDENT_IO_HPP

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "trident/mechanism.hpp"
#include "trident/nilpotent.hpp"
#include "trident/pmp.hpp"
#include "trident/symmetry.hpp"

namespace trident {

/// Shortest decimal text with 17 significant digits; parses back to the same double.
std::string format_double(double value);

/// Header `t,x,y,theta,phi,l1,l2,l3[,h1..h7][,u1..u4]`. Adapted-chart
/// trajectories are converted to the original chart on the way out.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// Reads the format written by write_trajectory_csv (original chart).
/// Throws InvalidArgument on malformed input.
Trajectory read_trajectory_csv(std::istream& in);

/// Wheel and vertex traces as `t,w1x,w1y,w2x,w2y,w3x,w3y,v1x,v1y,v2x,v2y,v3x,v3y`.
void write_mechanism_trace_csv(std::ostream& out, const BracketMotionResult& motion);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GroupElement& g);
GroupElement group_element_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Configuration& q);
Configuration configuration_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SolutionConstants& c);
SolutionConstants solution_constants_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ControllabilityResult& r);
nlohmann::json to_json(const SignatureResult& r);
nlohmann::json to_json(const DynamicPairResult& r);
nlohmann::json to_json(const IntegrationDiagnostics& d);
nlohmann::json to_json(const SymmetryReport& r);
nlohmann::json to_json(const InvarianceReport& r);
nlohmann::json to_json(const TransitiveAlgebraReport& r);

}  // namespace trident

#endif  // TRIDENT_IO_HPP
