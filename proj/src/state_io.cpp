#include "entanglekit/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace entanglekit {

namespace {

using json = nlohmann::json;

std::string number_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_real(values[i]);
  }
  return out + "]";
}

std::string document(const char* kind, BipartiteDims dims, const std::vector<double>& re,
                     const std::vector<double>& im) {
  std::ostringstream os;
  os << "{\n  \"kind\": \"" << kind << "\",\n  \"dims\": [" << dims.n_a << ", " << dims.n_b << "],\n"
     << "  \"re\": " << number_array(re) << ",\n  \"im\": " << number_array(im) << "\n}\n";
  return os.str();
}

std::vector<double> read_numbers(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw Error(ErrorKind::MalformedInput, std::string("missing numeric array \"") + key + "\"");
  }
  std::vector<double> out;
  for (const auto& v : doc[key]) {
    if (!v.is_number()) throw Error(ErrorKind::MalformedInput, std::string("non-numeric entry in \"") + key + "\"");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string state_to_json(const PureState& psi) {
  std::vector<double> re, im;
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    re.push_back(psi.amplitudes()(i).real());
    im.push_back(psi.amplitudes()(i).imag());
  }
  return document("pure", psi.dims(), re, im);
}

std::string state_to_json(const DensityMatrix& rho) {
  std::vector<double> re, im;
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return document("density", rho.dims(), re, im);
}

std::string state_to_json(const AnyState& state) {
  return std::visit([](const auto& s) { return state_to_json(s); }, state);
}

AnyState state_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::MalformedInput, "state document must be a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    throw Error(ErrorKind::MalformedInput, "missing string field \"kind\"");
  }
  if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].size() != 2 ||
      !doc["dims"][0].is_number_integer() || !doc["dims"][1].is_number_integer()) {
    throw Error(ErrorKind::MalformedInput, "\"dims\" must be a pair of integers");
  }
  const BipartiteDims dims{doc["dims"][0].get<int>(), doc["dims"][1].get<int>()};
  const std::vector<double> re = read_numbers(doc, "re");
  const std::vector<double> im = read_numbers(doc, "im");
  if (re.size() != im.size()) throw Error(ErrorKind::MalformedInput, "\"re\" and \"im\" differ in length");

  const std::string kind = doc["kind"].get<std::string>();
  const auto d = static_cast<std::size_t>(dims.total());
  if (kind == "pure") {
    if (re.size() != d) throw Error(ErrorKind::DimensionMismatch, "pure state needs " + std::to_string(d) + " amplitudes");
    ComplexVector v(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = cplx(re[i], im[i]);
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
      throw Error(ErrorKind::InvalidState, "normalization violated: |psi| = " + format_real(norm));
    }
    return PureState::from_amplitudes(dims, v);
  }
  if (kind == "density") {
    if (re.size() != d * d) {
      throw Error(ErrorKind::DimensionMismatch, "density matrix needs " + std::to_string(d * d) + " entries");
    }
    ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cplx(re[i * d + j], im[i * d + j]);
    return DensityMatrix::from_matrix(dims, m);
  }
  throw Error(ErrorKind::MalformedInput, "unknown state kind \"" + kind + "\"");
}

AnyState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

void write_state_file(const std::string& path, const AnyState& state) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MalformedInput, "cannot write " + path);
  out << state_to_json(state);
}

DensityMatrix as_density(const AnyState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return DensityMatrix::from_pure(*psi);
  return std::get<DensityMatrix>(state);
}

}  // namespace entanglekit
