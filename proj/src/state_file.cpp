#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qdisc/qstate.hpp"

namespace qdisc {

namespace {

std::vector<double> number_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw StateFileError(std::string("state file: missing \"") + key + "\" field");
  const auto& arr = doc.at(key);
  if (!arr.is_array()) throw StateFileError(std::string("state file: \"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw StateFileError(std::string("state file: \"") + key + "\" must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

DensityMatrix parse_state_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StateFileError(std::string("state file: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw StateFileError("state file: top level must be an object");

  Dims dims;
  for (double d : number_array(doc, "dims")) {
    if (d < 1 || d != static_cast<double>(static_cast<int>(d)))
      throw StateFileError("state file: dims must be positive integers");
    dims.push_back(static_cast<int>(d));
  }
  if (dims.empty()) throw StateFileError("state file: dims must be nonempty");
  const std::size_t n = total_dim(dims);
  const auto re = number_array(doc, "re");
  const auto im = number_array(doc, "im");
  if (re.size() != n * n || im.size() != n * n) {
    std::ostringstream msg;
    msg << "state file: expected " << n * n << " row-major entries in \"re\" and \"im\" for dims product " << n;
    throw StateFileError(msg.str());
  }

  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex(re[i * n + j], im[i * n + j]);

  try {
    return DensityMatrix(std::move(dims), std::move(m));
  } catch (const ContractViolation& e) {
    throw StateFileError(std::string("state file: ") + e.what());
  }
}

std::string to_state_json(const DensityMatrix& rho) {
  nlohmann::json doc;
  doc["dims"] = rho.dims();
  std::vector<double> re;
  std::vector<double> im;
  const auto n = static_cast<Eigen::Index>(rho.dim());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      re.push_back(rho.matrix()(i, j).real());
      im.push_back(rho.matrix()(i, j).imag());
    }
  doc["re"] = re;
  doc["im"] = im;
  return doc.dump();
}

DensityMatrix load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StateFileError("state file: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

void save_state_file(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StateFileError("state file: cannot write " + path);
  out << to_state_json(rho) << '\n';
}

}  // namespace qdisc
