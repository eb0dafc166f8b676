#include "fournls/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fournls/error.hpp"

namespace fournls {
namespace {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_coeffs(const FourierState& s) {
  std::string out = "[";
  bool first = true;
  for (const Complex& c : s.coeffs()) {
    if (!first) out += ',';
    first = false;
    out += '[';
    out += format_double(c.real());
    out += ',';
    out += format_double(c.imag());
    out += ']';
  }
  out += ']';
  return out;
}

FourierState parse_coeffs(const json& arr, int n_max, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": \"coeffs\" is not an array");
  if (arr.size() != static_cast<std::size_t>(2 * n_max + 1))
    throw ParseError(where + ": expected " + std::to_string(2 * n_max + 1) +
                     " amplitudes, found " + std::to_string(arr.size()));
  std::vector<Complex> coeffs;
  coeffs.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& pair = arr[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw ParseError(where + ": amplitude " + std::to_string(i) + " is not [re,im]");
    coeffs.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  try {
    return FourierState(n_max, std::move(coeffs));
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

void check_format(const json& doc, const char* expected, const std::string& where) {
  if (!doc.contains("format") || !doc["format"].is_string())
    throw ParseError(where + ": missing \"format\"");
  const auto fmt = doc["format"].get<std::string>();
  if (fmt != expected)
    throw VersionError(where + ": unsupported format \"" + fmt + "\", expected \"" + expected +
                       "\"");
}

int read_n_max(const json& doc, const std::string& where) {
  if (!doc.contains("n_max") || !doc["n_max"].is_number_integer() || doc["n_max"].get<int>() < 0)
    throw ParseError(where + ": \"n_max\" must be a nonnegative integer");
  return doc["n_max"].get<int>();
}

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace

std::string state_to_json(const FourierState& state) {
  return std::string("{\"format\":\"") + kStateFormat + "\",\"n_max\":" +
         std::to_string(state.n_max()) + ",\"coeffs\":" + format_coeffs(state) + "}";
}

FourierState state_from_json(const std::string& text) {
  const json doc = parse_json(text, "state");
  check_format(doc, kStateFormat, "state");
  const int n_max = read_n_max(doc, "state");
  if (!doc.contains("coeffs")) throw ParseError("state: missing \"coeffs\"");
  return parse_coeffs(doc["coeffs"], n_max, "state");
}

void save_state(const FourierState& state, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << state_to_json(state) << '\n';
}

FourierState load_state(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return state_from_json(ss.str());
}

void write_trajectory(const Trajectory& traj, std::ostream& os) {
  if (traj.states.empty()) throw PreconditionError("refusing to save an empty trajectory");
  traj.validate();
  os << "{\"format\":\"" << kTrajectoryFormat << "\",\"n_max\":" << traj.n_max()
     << ",\"t0\":" << format_double(traj.t0) << ",\"dt\":" << format_double(traj.dt) << "}\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k)
    os << "{\"k\":" << k << ",\"coeffs\":" << format_coeffs(traj.states[k]) << "}\n";
}

Trajectory read_trajectory(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("trajectory header: empty file");
  const json header = parse_json(line, "trajectory header");
  check_format(header, kTrajectoryFormat, "trajectory header");
  const int n_max = read_n_max(header, "trajectory header");
  Trajectory traj;
  for (const char* key : {"t0", "dt"}) {
    if (!header.contains(key) || !header[key].is_number())
      throw ParseError(std::string("trajectory header: \"") + key + "\" must be a number");
  }
  traj.t0 = header["t0"].get<double>();
  traj.dt = header["dt"].get<double>();
  std::size_t expected = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::string where = "trajectory record " + std::to_string(expected);
    const json rec = parse_json(line, where);
    if (!rec.contains("k") || !rec["k"].is_number_integer() ||
        rec["k"].get<long long>() != static_cast<long long>(expected))
      throw ParseError(where + ": missing or out-of-order \"k\"");
    if (!rec.contains("coeffs")) throw ParseError(where + ": missing \"coeffs\"");
    traj.states.push_back(parse_coeffs(rec["coeffs"], n_max, where));
    ++expected;
  }
  if (traj.states.empty()) throw ParseError("trajectory: no state records");
  try {
    traj.validate();
  } catch (const std::exception& e) {
    throw ParseError(std::string("trajectory header: ") + e.what());
  }
  return traj;
}

void save_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
  if (traj.states.empty()) throw PreconditionError("refusing to save an empty trajectory");
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_trajectory(traj, os);
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return read_trajectory(is);
}

}  // namespace fournls
