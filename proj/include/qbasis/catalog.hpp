#pragma once

#include <map>
#include <optional>

#include "qbasis/types.hpp"

namespace qbasis {

enum class Provenance { kClosedForm, kAppendixFixture, kRegenerated };

struct ExpectedValue {
  double value = 0.0;
  double tol = 0.0;
};

struct CatalogEntry {
  std::string name;
  Basis basis;
  Provenance provenance = Provenance::kClosedForm;
  /// Keys: "B1".."B4", "mean_wehrl", "mean_qmax".
  std::map<std::string, ExpectedValue> expected;
};

/// Names: u3_classical, u3_quantum, u4_classical, u4_quantum, u5_classical,
/// u5_quantum, u6_classical, u6_quantum_symmetric, u7_quantum, jm_basis_3..7.
/// Entries are built lazily and cached. Throws std::out_of_range for
/// unknown names.
const CatalogEntry& catalog_get(const std::string& name);

std::vector<std::string> catalog_names();

struct VerifyCheck {
  std::string measure;
  double expected = 0.0;
  double actual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string name;
  std::vector<VerifyCheck> checks;
  bool pass = true;
};

/// Recomputes every expected measure of the entry and compares within its
/// tolerance. Never throws on mismatch; failures are carried in the report.
VerifyReport catalog_verify(const std::string& name);

struct U5ClassicalFit {
  double r2 = 0.0;
  double phi = 0.0;
  double b1 = 0.0;
  Eigen::MatrixXcd basis;
};

/// One-parameter minimization of B_1 over the symmetric two-class family in
/// N = 5, with orthogonality enforced by construction.
U5ClassicalFit constrained_refine_u5_classical();

/// Seven mutually orthogonal rotated copies of the octahedral state
/// (|3,-2> + |3,2>)/sqrt(2), found by least-squares rotation fitting.
Eigen::MatrixXcd regenerate_u7_quantum(std::uint64_t seed = 20240718);

/// Directory holding fixture files: QB_DATA_DIR when set, otherwise the
/// repository data directory compiled in at build time.
std::string data_dir();

/// Reference vertex sets on the unit sphere.
StarConstellation octahedron_vertices();
StarConstellation cuboctahedron_vertices();
StarConstellation dodecahedron_vertices();
StarConstellation tetrahedron_vertices();

}  // namespace qbasis
