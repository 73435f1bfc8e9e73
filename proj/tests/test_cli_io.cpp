#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qbasis/catalog.hpp"
#include "qbasis/io.hpp"
#include "qbasis/measures.hpp"
#include "qbasis/stellar.hpp"

using namespace qbasis;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "qbasis_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  const fs::path out_file = temp_dir() / "cmd_output.txt";
  const std::string cmd = std::string(QBASIS_BIN) + " " + args + " > " + out_file.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

fs::path write_catalog_basis(const std::string& name, const std::string& filename) {
  const Basis& basis = catalog_get(name).basis;
  BasisFileContent content;
  content.two_j = basis.two_j();
  content.matrix = basis.matrix();
  content.meta = {{"name", name}};
  const fs::path path = temp_dir() / filename;
  write_basis_file(path, content);
  return path;
}

// Minimal structural validator for the shipped JSON schemas: checks "type",
// "required" and per-property types recursively.
bool matches_schema(const json& value, const json& schema) {
  if (schema.contains("type")) {
    const std::string type = schema["type"];
    if (type == "object" && !value.is_object()) return false;
    if (type == "array" && !value.is_array()) return false;
    if (type == "string" && !value.is_string()) return false;
    if (type == "number" && !value.is_number()) return false;
    if (type == "integer" && !value.is_number_integer()) return false;
    if (type == "boolean" && !value.is_boolean()) return false;
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!value.contains(key.get<std::string>())) return false;
    }
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (value.contains(key) && !matches_schema(value[key], sub)) return false;
    }
  }
  if (schema.contains("items") && value.is_array()) {
    for (const auto& item : value) {
      if (!matches_schema(item, schema["items"])) return false;
    }
  }
  return true;
}

json load_schema(const std::string& name) {
  std::ifstream in(fs::path(QBASIS_SOURCE_DIR) / "data" / "schemas" / name);
  REQUIRE(in.good());
  json doc;
  in >> doc;
  return doc;
}

}  // namespace

TEST_CASE("half-integer parsing") {
  CHECK(parse_half_integer(json(1)) == 2);
  CHECK(parse_half_integer(json(1.5)) == 3);
  CHECK(parse_half_integer(json("3/2")) == 3);
  CHECK(parse_half_integer(json("2")) == 4);
  CHECK_THROWS_AS(parse_half_integer(json(0.3)), ParseError);
  CHECK_THROWS_AS(parse_half_integer(json("x/2")), ParseError);
  CHECK(half_integer_to_json(3) == json("3/2"));
  CHECK(half_integer_to_json(4) == json(2));
}

TEST_CASE("basis file roundtrip is bit exact") {
  std::mt19937_64 rng(2718);
  const Eigen::MatrixXcd u = sample_cue(4, rng);
  BasisFileContent content;
  content.two_j = 3;
  content.matrix = u;
  content.meta = {{"note", "roundtrip"}};
  const fs::path path = temp_dir() / "roundtrip.json";
  write_basis_file(path, content);
  const BasisFileContent back = read_basis_file(path);
  CHECK(back.two_j == 3);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(back.matrix(r, c).real() == u(r, c).real());
      CHECK(back.matrix(r, c).imag() == u(r, c).imag());
    }
  }
  CHECK(back.meta["note"] == "roundtrip");
}

TEST_CASE("constellation file roundtrip") {
  ConstellationFileContent content;
  content.two_j = 2;
  content.states.push_back({"a", StarConstellation({{0.3, 1.2}, {2.2, 4.4}})});
  const fs::path path = temp_dir() / "constellation.json";
  write_constellation_file(path, content);
  const ConstellationFileContent back = read_constellation_file(path);
  REQUIRE(back.states.size() == 1);
  CHECK(back.states[0].label == "a");
  CHECK(back.states[0].stars.stars()[0].theta == doctest::Approx(0.3).epsilon(1e-15));

  // Wrong cardinality is rejected.
  ConstellationFileContent bad;
  bad.two_j = 3;
  bad.states.push_back({"b", StarConstellation({{0.3, 1.2}})});
  const fs::path bad_path = temp_dir() / "bad_constellation.json";
  write_constellation_file(bad_path, bad);
  CHECK_THROWS_AS(read_constellation_file(bad_path), ParseError);
}

TEST_CASE("cli measure") {
  const fs::path f3 = write_catalog_basis("u3_classical", "f3.json");
  std::string out;
  CHECK(run_cli("--json measure " + f3.string() + " --t 1", &out) == 0);
  const json doc = json::parse(out);
  CHECK(std::abs(doc["B"]["1"].get<double>() - 1.0 / 9.0) < 1e-10);
  CHECK(matches_schema(doc, load_schema("measure_report.schema.json")));

  // Identity basis of dimension 6: B_1 = 8/15.
  const fs::path jm6 = write_catalog_basis("jm_basis_6", "jm6.json");
  CHECK(run_cli("--json measure " + jm6.string() + " --t 1", &out) == 0);
  CHECK(std::abs(json::parse(out)["B"]["1"].get<double>() - 8.0 / 15.0) < 1e-12);

  // Corrupted JSON exits 2.
  const fs::path broken = temp_dir() / "broken.json";
  std::ofstream(broken) << "{ not json";
  CHECK(run_cli("measure " + broken.string()) == 2);

  // Non-unitary input exits 3.
  json doc_bad;
  doc_bad["j"] = 1;
  doc_bad["matrix"] = {{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}},
                       {{1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}},
                       {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}};
  const fs::path nonunitary = temp_dir() / "nonunitary.json";
  std::ofstream(nonunitary) << doc_bad.dump();
  CHECK(run_cli("measure " + nonunitary.string()) == 3);
}

TEST_CASE("cli catalog") {
  std::string out;
  CHECK(run_cli("catalog --list", &out) == 0);
  CHECK(out.find("u5_quantum") != std::string::npos);
  CHECK(run_cli("--json catalog --verify u3_classical", &out) == 0);
  const json doc = json::parse(out);
  CHECK(doc[0]["pass"].get<bool>());
  CHECK(run_cli("catalog --verify u99_mystery") == 4);
}

TEST_CASE("cli cue-average") {
  std::string out;
  CHECK(run_cli("--json cue-average --dim 4 --t 1 --samples 300 --seed 5", &out) == 0);
  const json doc = json::parse(out);
  CHECK(matches_schema(doc, load_schema("cue_average.schema.json")));
  CHECK(std::abs(doc["exact"].get<double>() - 2.0 / 3.0) < 1e-14);
  CHECK(std::abs(doc["mean"].get<double>() - 2.0 / 3.0) < 4.0 * doc["stderr"].get<double>() + 1e-12);

  // Determinism across runs.
  std::string out2;
  CHECK(run_cli("--json cue-average --dim 4 --t 1 --samples 300 --seed 5", &out2) == 0);
  CHECK(out == out2);
}

TEST_CASE("cli rotate preserves measures") {
  const fs::path u4 = write_catalog_basis("u4_quantum", "u4q.json");
  const fs::path rotated = temp_dir() / "u4q_rot.json";
  CHECK(run_cli("rotate " + u4.string() + " --alpha 0.4 --beta 1.1 --gamma 2.2 --out " +
                rotated.string()) == 0);
  std::string before, after;
  CHECK(run_cli("--json measure " + u4.string() + " --t 1,2", &before) == 0);
  CHECK(run_cli("--json measure " + rotated.string() + " --t 1,2", &after) == 0);
  for (const char* t : {"1", "2"}) {
    CHECK(std::abs(json::parse(before)["B"][t].get<double>() -
                   json::parse(after)["B"][t].get<double>()) < 1e-10);
  }
}

TEST_CASE("cli certify") {
  const fs::path u3q = write_catalog_basis("u3_quantum", "u3q.json");
  std::string out;
  CHECK(run_cli("--json certify " + u3q.string() + " --t 1", &out) == 0);
  const json doc = json::parse(out);
  CHECK(doc["classification"] == "local_max");
  CHECK(matches_schema(doc, load_schema("certificate.schema.json")));
}

TEST_CASE("cli search writes artifacts") {
  const fs::path prefix = temp_dir() / "searchrun";
  std::string out;
  const std::string args = "--json search --dim 3 --objective max-b1 --seed 11 --restarts 1 "
                           "--inner-steps 150 --halvings 25 --out " +
                           prefix.string();
  CHECK(run_cli(args, &out) == 0);
  const json doc = json::parse(out);
  CHECK(doc["B1"].get<double>() >= 1.0 - 1e-6);
  CHECK(fs::exists(prefix.string() + ".basis.json"));
  CHECK(fs::exists(prefix.string() + ".constellation.json"));
  CHECK(fs::exists(prefix.string() + ".trace.csv"));
  CHECK(matches_schema(read_basis_file(prefix.string() + ".basis.json").meta.is_object()
                           ? json::parse(std::ifstream(prefix.string() + ".basis.json"))
                           : json(),
                       load_schema("basis.schema.json")));
  CHECK(run_cli("search --dim 3 --objective maximize-hope") == 4);
}

TEST_CASE("cli export-plot") {
  // Constellation of the dimension-3 quantum basis: 6 points, 3 antipodal pairs.
  const Basis& u3q = catalog_get("u3_quantum").basis;
  ConstellationFileContent content;
  content.two_j = 2;
  for (int i = 0; i < 3; ++i) {
    content.states.push_back({"state_" + std::to_string(i), stars_from_state(u3q.column(i))});
  }
  const fs::path cpath = temp_dir() / "u3q_constellation.json";
  write_constellation_file(cpath, content);

  const fs::path svg = temp_dir() / "u3q.svg";
  CHECK(run_cli("export-plot " + cpath.string() + " --format svg --projection mercator --out " +
                svg.string()) == 0);
  std::stringstream svg_text;
  svg_text << std::ifstream(svg).rdbuf();
  const std::string svg_str = svg_text.str();
  CHECK(svg_str.find("<svg") != std::string::npos);
  // Three distinct state colors appear.
  CHECK(svg_str.find("#e41a1c") != std::string::npos);
  CHECK(svg_str.find("#377eb8") != std::string::npos);
  CHECK(svg_str.find("#4daf4a") != std::string::npos);

  const fs::path csv = temp_dir() / "u3q.csv";
  CHECK(run_cli("export-plot " + cpath.string() + " --format csv --projection orthographic --out " +
                csv.string()) == 0);
  std::stringstream csv_text;
  csv_text << std::ifstream(csv).rdbuf();
  CHECK(std::count(csv_text.str().begin(), csv_text.str().end(), '\n') == 7);  // header + 6 points

  // Empty constellation still produces a valid plot.
  ConstellationFileContent empty;
  empty.two_j = 2;
  const fs::path epath = temp_dir() / "empty.json";
  write_constellation_file(epath, empty);
  const fs::path esvg = temp_dir() / "empty.svg";
  CHECK(run_cli("export-plot " + epath.string() + " --format svg --projection mercator --out " +
                esvg.string()) == 0);
  std::stringstream esvg_text;
  esvg_text << std::ifstream(esvg).rdbuf();
  CHECK(esvg_text.str().find("</svg>") != std::string::npos);
}

TEST_CASE("cli husimi-max and wehrl") {
  std::string out;
  CHECK(run_cli("--json husimi-max --j 1 --amplitudes \"0,0;1,0;0,0\"", &out) == 0);
  CHECK(std::abs(json::parse(out)["states"][0]["q_max"].get<double>() - 0.5) < 1e-8);

  const fs::path jm3 = write_catalog_basis("jm_basis_3", "jm3.json");
  CHECK(run_cli("--json wehrl " + jm3.string(), &out) == 0);
  CHECK(std::abs(json::parse(out)["mean_wehrl"].get<double>() - (1.0 - std::log(2.0) / 3.0)) < 1e-6);
}
