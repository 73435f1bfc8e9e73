// Regenerates the shipped fixture files under data/. The N = 7 octahedral
// basis has no closed form; it is produced by the rotation least-squares fit
// and frozen here together with its provenance record.

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "qbasis/catalog.hpp"
#include "qbasis/io.hpp"
#include "qbasis/measures.hpp"

int main(int argc, char** argv) {
  using namespace qbasis;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240718ULL;
  const std::filesystem::path dir = argc > 2 ? argv[2] : "data";
  std::filesystem::create_directories(dir);

  const Eigen::MatrixXcd u7 = regenerate_u7_quantum(seed);
  const double residual = orthonormality_residual(u7);

  BasisFileContent content;
  content.two_j = 6;
  content.matrix = u7;
  content.meta = {{"name", "u7_quantum"},
                  {"generator", "qbasis_make_fixtures"},
                  {"seed", seed},
                  {"orthonormality_residual", residual}};
  write_basis_file(dir / "u7_quantum.json", content);

  const Basis basis(6, u7, 1e-6);
  std::ostringstream prov;
  prov << "u7_quantum.json\n"
       << "Generated by tools/make_fixtures.cpp (target qbasis_make_fixtures), seed " << seed << ".\n"
       << "Seven columns, each a Wigner-rotated copy of the octahedral state\n"
       << "(|3,-2> + |3,2>)/sqrt(2), with the relative rotations fitted by\n"
       << "Levenberg-Marquardt so that all pairwise overlaps vanish.\n"
       << "Orthonormality residual sum |U^dag U - I|: " << residual << "\n"
       << "B_1 = " << basis_quantumness(basis, 1) << "\n"
       << "B_2 = " << basis_quantumness(basis, 2) << "\n"
       << "B_3 = " << basis_quantumness(basis, 3) << "\n"
       << "B_4 = " << basis_quantumness(basis, 4) << "\n";
  write_file_atomic(dir / "u7_quantum.provenance.txt", prov.str());

  std::printf("wrote %s (residual %.3e)\n", (dir / "u7_quantum.json").c_str(), residual);
  return 0;
}
