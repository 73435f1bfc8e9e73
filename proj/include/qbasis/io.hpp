#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qbasis/types.hpp"

namespace qbasis {

/// Thrown on malformed input documents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Basis document: { "j": "5/2" or number, "matrix": N x N array of [re, im],
/// "meta": free-form object }. Unitarity is the caller's policy.
struct BasisFileContent {
  int two_j = 0;
  Eigen::MatrixXcd matrix;
  nlohmann::json meta = nlohmann::json::object();
};

/// Constellation document: { "j": ..., "states": [ { "label": ...,
/// "stars": [ {"theta":..., "phi":...} ] } ] }.
struct LabeledConstellation {
  std::string label;
  StarConstellation stars;
};

struct ConstellationFileContent {
  int two_j = 0;
  std::vector<LabeledConstellation> states;
};

int parse_half_integer(const nlohmann::json& j);
nlohmann::json half_integer_to_json(int two_j);

nlohmann::json basis_to_json(const BasisFileContent& content);
BasisFileContent basis_from_json(const nlohmann::json& doc);

nlohmann::json constellation_to_json(const ConstellationFileContent& content);
ConstellationFileContent constellation_from_json(const nlohmann::json& doc);

BasisFileContent read_basis_file(const std::filesystem::path& path);
void write_basis_file(const std::filesystem::path& path, const BasisFileContent& content);

ConstellationFileContent read_constellation_file(const std::filesystem::path& path);
void write_constellation_file(const std::filesystem::path& path, const ConstellationFileContent& content);

/// Writes text to path via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace qbasis
