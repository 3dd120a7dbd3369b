#include "trident/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "trident/errors.hpp"

namespace trident {

namespace {

const char* const kBaseColumns[] = {"t", "x", "y", "theta", "phi", "l1", "l2", "l3"};

double parse_double(const std::string& text)
{
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw InvalidArgument("not a number: '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& line)
{
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

std::vector<std::string> header_for(bool momenta, bool controls)
{
  std::vector<std::string> header(std::begin(kBaseColumns), std::end(kBaseColumns));
  if (momenta)
    for (int i = 1; i <= 7; ++i) header.push_back("h" + std::to_string(i));
  if (controls)
    for (int i = 1; i <= 4; ++i) header.push_back("u" + std::to_string(i));
  return header;
}

Vector7 vector7_from_json(const nlohmann::json& j)
{
  if (!j.is_array() || j.size() != 7) throw InvalidArgument("expected an array of 7 numbers");
  Vector7 v;
  for (int i = 0; i < 7; ++i) v(i) = j.at(static_cast<std::size_t>(i)).get<double>();
  return v;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Chart chart_from_string(const std::string& name)
{
  if (name == "original") return Chart::original;
  if (name == "adapted") return Chart::adapted;
  throw InvalidArgument("unknown chart '" + name + "'");
}

}  // namespace

std::string format_double(double value)
{
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("could not format a double");
  return std::string(buffer, ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory)
{
  const std::vector<std::string> header = header_for(trajectory.has_momenta(), trajectory.has_controls());
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (std::size_t r = 0; r < trajectory.size(); ++r) {
    const Vector7 q = trajectory.chart == Chart::original ? trajectory.q[r]
                                                          : from_adapted(AdaptedPoint{trajectory.q[r]}).coords();
    out << format_double(trajectory.t[r]);
    for (int i = 0; i < 7; ++i) out << ',' << format_double(q(i));
    if (trajectory.has_momenta())
      for (int i = 0; i < 7; ++i) out << ',' << format_double(trajectory.h[r](i));
    if (trajectory.has_controls())
      for (int i = 0; i < 4; ++i) out << ',' << format_double(trajectory.u[r](i));
    out << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in)
{
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty trajectory CSV");
  const std::vector<std::string> header = split(line);
  bool momenta = false;
  bool controls = false;
  if (header.size() == 8 + 7 + 4) {
    momenta = controls = true;
  } else if (header.size() == 8 + 7) {
    momenta = true;
  } else if (header.size() == 8 + 4) {
    controls = true;
  } else if (header.size() != 8) {
    throw InvalidArgument("unexpected trajectory CSV header");
  }
  if (header != header_for(momenta, controls)) throw InvalidArgument("unexpected trajectory CSV header");

  Trajectory trajectory;
  trajectory.chart = Chart::original;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line);
    if (fields.size() != header.size()) throw InvalidArgument("trajectory CSV row has the wrong number of fields");
    std::size_t col = 0;
    trajectory.t.push_back(parse_double(fields[col++]));
    Vector7 q;
    for (int i = 0; i < 7; ++i) q(i) = parse_double(fields[col++]);
    trajectory.q.push_back(q);
    if (momenta) {
      FibreState h;
      for (int i = 0; i < 7; ++i) h(i) = parse_double(fields[col++]);
      trajectory.h.push_back(h);
    }
    if (controls) {
      Eigen::Vector4d u;
      for (int i = 0; i < 4; ++i) u(i) = parse_double(fields[col++]);
      trajectory.u.push_back(u);
    }
  }
  return trajectory;
}

void write_mechanism_trace_csv(std::ostream& out, const BracketMotionResult& motion)
{
  out << "t,w1x,w1y,w2x,w2y,w3x,w3y,v1x,v1y,v2x,v2y,v3x,v3y\n";
  for (std::size_t r = 0; r < motion.trajectory.size(); ++r) {
    out << format_double(motion.trajectory.t[r]);
    for (const auto& p : motion.wheels[r]) out << ',' << format_double(p.x()) << ',' << format_double(p.y());
    for (const auto& p : motion.vertices[r]) out << ',' << format_double(p.x()) << ',' << format_double(p.y());
    out << '\n';
  }
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m)
{
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return {{"shape", {m.rows(), m.cols()}}, {"data", data}};
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j)
{
  const auto shape = j.at("shape").get<std::vector<Eigen::Index>>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (shape.size() != 2 || shape[0] < 0 || shape[1] < 0 ||
      static_cast<std::size_t>(shape[0] * shape[1]) != data.size())
    throw InvalidArgument("matrix JSON shape does not match its data");
  Eigen::MatrixXd m(shape[0], shape[1]);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = data[static_cast<std::size_t>(r * m.cols() + c)];
  return m;
}

nlohmann::json to_json(const GroupElement& g) { return {{"chart", "adapted"}, {"coords", vector_to_json(g.coords)}}; }

GroupElement group_element_from_json(const nlohmann::json& j)
{
  if (j.at("chart").get<std::string>() != "adapted") throw ChartMismatch("group elements live in the adapted chart");
  return GroupElement{vector7_from_json(j.at("coords"))};
}

nlohmann::json to_json(const Configuration& q)
{
  return {{"chart", std::string(chart_name(q.chart()))}, {"coords", vector_to_json(q.coords())}};
}

Configuration configuration_from_json(const nlohmann::json& j)
{
  return {chart_from_string(j.at("chart").get<std::string>()), vector7_from_json(j.at("coords"))};
}

nlohmann::json to_json(const SolutionConstants& c)
{
  return {{"C5", c.C5},   {"C6", c.C6},   {"C7", c.C7},   {"C11", c.C11},
          {"C12", c.C12}, {"C13", c.C13}, {"C14", c.C14}, {"C15", c.C15}};
}

SolutionConstants solution_constants_from_json(const nlohmann::json& j)
{
  SolutionConstants c;
  c.C5 = j.at("C5").get<double>();
  c.C6 = j.at("C6").get<double>();
  c.C7 = j.at("C7").get<double>();
  c.C11 = j.at("C11").get<double>();
  c.C12 = j.at("C12").get<double>();
  c.C13 = j.at("C13").get<double>();
  c.C14 = j.at("C14").get<double>();
  c.C15 = j.at("C15").get<double>();
  return c;
}

nlohmann::json to_json(const ControllabilityResult& r)
{
  return {{"growth", {r.d1, r.d2}},
          {"detG", r.det_gbar},
          {"detG_nonzero", r.det_nonzero},
          {"bracket_method", r.method == BracketMethod::symbolic_slice ? "symbolic" : "finite_difference"},
          {"gbar", matrix_to_json(r.gbar)}};
}

nlohmann::json to_json(const SignatureResult& r)
{
  return {{"signature", {r.positive, r.negative}},
          {"tolerance", r.tolerance},
          {"eigenvalues", vector_to_json(r.eigenvalues)}};
}

nlohmann::json to_json(const DynamicPairResult& r)
{
  return {{"rank_v0", r.rank_v0}, {"rank_v1", r.rank_v1}, {"transversal", r.transversal}};
}

nlohmann::json to_json(const IntegrationDiagnostics& d)
{
  return {{"energy_drift", d.energy_drift},
          {"energy_drift_rate", d.energy_drift_rate},
          {"casimir_drift", d.casimir_drift},
          {"dt", d.dt},
          {"step_too_large", d.step_too_large}};
}

nlohmann::json to_json(const SymmetryReport& r)
{
  nlohmann::json j = {{"field", r.field_name},
                      {"passed", r.passed()},
                      {"commutes_with_N1", r.commutes_with_n1},
                      {"preserves_V", r.preserves_v},
                      {"constant_coefficients", r.constant_coefficients},
                      {"antisymmetric", r.antisymmetric},
                      {"action", matrix_to_json(r.action)},
                      {"residual_norm", r.residual_norm}};
  if (!r.passed()) j["residual"] = to_string(r.residual);
  return j;
}

nlohmann::json to_json(const InvarianceReport& r)
{
  return {{"passed", r.passed}, {"max_residual", r.max_residual}, {"samples", r.samples}};
}

nlohmann::json to_json(const TransitiveAlgebraReport& r)
{
  return {{"passed", r.passed()},
          {"closes", r.closes},
          {"commutes_with_frame", r.commutes_with_frame},
          {"min_rank", r.min_rank}};
}

}  // namespace trident
