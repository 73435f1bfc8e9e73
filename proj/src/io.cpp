#include "qbasis/io.hpp"

#include <cmath>
#include <fstream>

namespace qbasis {
namespace {

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return doc;
}

Complex parse_complex_pair(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

int parse_half_integer(const nlohmann::json& j) {
  if (j.is_number()) {
    const double v = j.get<double>();
    const double doubled = 2.0 * v;
    const double rounded = std::round(doubled);
    if (std::abs(doubled - rounded) > 1e-9 || rounded < 1.0) {
      throw ParseError("j must be a positive half-integer");
    }
    return static_cast<int>(rounded);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        return 2 * std::stoi(s);
      }
      const int num = std::stoi(s.substr(0, slash));
      const int den = std::stoi(s.substr(slash + 1));
      if (den == 2) return num;
      if (den == 1) return 2 * num;
    } catch (const std::exception&) {
    }
    throw ParseError("cannot parse half-integer j from '" + s + "'");
  }
  throw ParseError("j must be a number or a 'p/2' string");
}

nlohmann::json half_integer_to_json(int two_j) {
  if (two_j % 2 == 0) return two_j / 2;
  return std::to_string(two_j) + "/2";
}

nlohmann::json basis_to_json(const BasisFileContent& content) {
  nlohmann::json doc;
  doc["j"] = half_integer_to_json(content.two_j);
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < content.matrix.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < content.matrix.cols(); ++c) {
      row.push_back({content.matrix(r, c).real(), content.matrix(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  doc["meta"] = content.meta.is_null() ? nlohmann::json::object() : content.meta;
  return doc;
}

BasisFileContent basis_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("j") || !doc.contains("matrix")) {
    throw ParseError("basis document needs 'j' and 'matrix'");
  }
  BasisFileContent content;
  content.two_j = parse_half_integer(doc["j"]);
  const int n = content.two_j + 1;
  const auto& rows = doc["matrix"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw ParseError("matrix must have 2j+1 rows");
  }
  content.matrix.resize(n, n);
  for (int r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n) {
      throw ParseError("matrix row " + std::to_string(r) + " must have 2j+1 entries");
    }
    for (int c = 0; c < n; ++c) content.matrix(r, c) = parse_complex_pair(rows[r][c]);
  }
  if (doc.contains("meta")) content.meta = doc["meta"];
  return content;
}

nlohmann::json constellation_to_json(const ConstellationFileContent& content) {
  nlohmann::json doc;
  doc["j"] = half_integer_to_json(content.two_j);
  nlohmann::json states = nlohmann::json::array();
  for (const auto& entry : content.states) {
    nlohmann::json stars = nlohmann::json::array();
    for (const auto& s : entry.stars.stars()) {
      stars.push_back({{"theta", s.theta}, {"phi", s.phi}});
    }
    states.push_back({{"label", entry.label}, {"stars", std::move(stars)}});
  }
  doc["states"] = std::move(states);
  return doc;
}

ConstellationFileContent constellation_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("j") || !doc.contains("states")) {
    throw ParseError("constellation document needs 'j' and 'states'");
  }
  ConstellationFileContent content;
  content.two_j = parse_half_integer(doc["j"]);
  if (!doc["states"].is_array()) throw ParseError("'states' must be an array");
  for (const auto& entry : doc["states"]) {
    if (!entry.is_object() || !entry.contains("stars")) throw ParseError("state entry needs 'stars'");
    LabeledConstellation lc;
    lc.label = entry.value("label", "");
    std::vector<Star> stars;
    for (const auto& s : entry["stars"]) {
      if (!s.contains("theta") || !s.contains("phi")) throw ParseError("star needs 'theta' and 'phi'");
      stars.push_back({s["theta"].get<double>(), s["phi"].get<double>()});
    }
    if (static_cast<int>(stars.size()) != content.two_j) {
      throw ParseError("state '" + lc.label + "' must carry exactly 2j stars");
    }
    lc.stars = StarConstellation(std::move(stars));
    content.states.push_back(std::move(lc));
  }
  return content;
}

BasisFileContent read_basis_file(const std::filesystem::path& path) {
  return basis_from_json(load_json(path));
}

void write_basis_file(const std::filesystem::path& path, const BasisFileContent& content) {
  write_file_atomic(path, basis_to_json(content).dump(2) + "\n");
}

ConstellationFileContent read_constellation_file(const std::filesystem::path& path) {
  return constellation_from_json(load_json(path));
}

void write_constellation_file(const std::filesystem::path& path, const ConstellationFileContent& content) {
  write_file_atomic(path, constellation_to_json(content).dump(2) + "\n");
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << text;
    if (!out.good()) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qbasis
