// qbasis: quantumness measures, extremal-basis search and verification for
// spin-j orthonormal bases.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbasis/catalog.hpp"
#include "qbasis/io.hpp"
#include "qbasis/measures.hpp"
#include "qbasis/optimizer.hpp"
#include "qbasis/phase_space.hpp"
#include "qbasis/rotations.hpp"
#include "qbasis/stellar.hpp"

namespace {

using nlohmann::json;
using namespace qbasis;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitUnitarity = 3;
constexpr int kExitUsage = 4;
constexpr int kExitVerifyFail = 5;

constexpr double kWarnResidual = 1e-6;
constexpr double kRejectResidual = 1e-3;

const char* kPalette[8] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                           "#ff7f00", "#a65628", "#f781bf", "#17becf"};

Basis load_basis_checked(const std::string& path) {
  const BasisFileContent content = read_basis_file(path);
  const double residual = orthonormality_residual(content.matrix);
  if (residual > kRejectResidual) {
    throw UnitarityError("basis in " + path + " is not unitary (residual " + std::to_string(residual) + ")",
                         residual);
  }
  if (residual > kWarnResidual) {
    std::cerr << "warning: basis residual " << residual << " exceeds " << kWarnResidual << "\n";
  }
  return Basis(content.two_j, content.matrix, 2.0 * kRejectResidual);
}

void emit(const json& doc, bool as_json, const std::function<void()>& human) {
  if (as_json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    human();
  }
}

int run_measure(const std::string& path, std::vector<int> t_list, bool as_json) {
  const Basis basis = load_basis_checked(path);
  if (t_list.empty()) t_list = {1};
  const QuantumnessReport report = measure_basis(basis, t_list, 2.0 * kRejectResidual);

  json doc;
  doc["j"] = half_integer_to_json(basis.two_j());
  doc["residual"] = report.orthonormality_residual;
  for (const auto& [t, b] : report.b) {
    doc["B"][std::to_string(t)] = b;
    doc["A"][std::to_string(t)] = report.per_vector_a.at(t);
  }
  emit(doc, as_json, [&] {
    std::printf("j = %g, orthonormality residual = %.3e\n", 0.5 * basis.two_j(),
                report.orthonormality_residual);
    for (const auto& [t, b] : report.b) {
      std::printf("B_%d = %.12f\n", t, b);
      std::printf("  A_%d per vector:", t);
      for (double a : report.per_vector_a.at(t)) std::printf(" %.12f", a);
      std::printf("\n");
    }
  });
  return kExitOk;
}

json certificate_to_json(const ExtremumCertificate& cert) {
  json doc;
  doc["gradient_norm"] = cert.gradient_norm;
  doc["gauge_null_count"] = cert.gauge_null_count;
  doc["classification"] = extremum_class_name(cert.classification);
  doc["null_tol"] = cert.null_tol;
  doc["grad_tol"] = cert.grad_tol;
  std::vector<double> spectrum(cert.hessian_spectrum.data(),
                               cert.hessian_spectrum.data() + cert.hessian_spectrum.size());
  doc["hessian_spectrum"] = spectrum;
  return doc;
}

ConstellationFileContent constellation_of_basis(const Basis& basis) {
  ConstellationFileContent content;
  content.two_j = basis.two_j();
  for (int i = 0; i < basis.dim(); ++i) {
    content.states.push_back({"state_" + std::to_string(i), stars_from_state(basis.column(i))});
  }
  return content;
}

int run_search(int dim, const std::string& objective_name_arg, std::uint64_t seed, int restarts,
               const std::string& out_prefix, int inner_steps, int halvings, double step, bool as_json) {
  const auto objective = objective_from_name(objective_name_arg);
  if (!objective) {
    std::cerr << "error: unknown objective '" << objective_name_arg << "'\n";
    return kExitUsage;
  }
  SearchConfig config;
  config.n = dim;
  config.objective = *objective;
  config.seed = seed;
  config.inner_steps = inner_steps;
  config.halvings = halvings;
  config.initial_step = step;
  const SearchResult result = multi_start_search(config, restarts);

  const Basis best(dim - 1, result.basis, 1e-8);
  BasisFileContent basis_out;
  basis_out.two_j = dim - 1;
  basis_out.matrix = result.basis;
  basis_out.meta = {{"objective", objective_name_arg},
                    {"seed", result.seed},
                    {"objective_value", result.objective_value}};
  write_basis_file(out_prefix + ".basis.json", basis_out);
  write_constellation_file(out_prefix + ".constellation.json", constellation_of_basis(best));

  std::ostringstream trace;
  trace << "step,objective\n";
  for (std::size_t i = 0; i < result.trace.size(); ++i) trace << i << "," << result.trace[i] << "\n";
  write_file_atomic(out_prefix + ".trace.csv", trace.str());

  json doc;
  doc["objective"] = objective_name_arg;
  doc["objective_value"] = result.objective_value;
  doc["B1"] = result.b1;
  doc["B2"] = result.b2;
  doc["seed"] = result.seed;
  doc["restarts"] = restarts;
  doc["proposals"] = result.proposals;
  doc["accepted"] = result.accepted;
  doc["files"] = {out_prefix + ".basis.json", out_prefix + ".constellation.json", out_prefix + ".trace.csv"};
  if (result.certificate) doc["certificate"] = certificate_to_json(*result.certificate);
  emit(doc, as_json, [&] {
    std::printf("objective %s: value %.12f (B1 = %.9f, B2 = %.9f)\n", objective_name_arg.c_str(),
                result.objective_value, result.b1, result.b2);
    std::printf("seed %llu, %ld proposals, %ld accepted\n",
                static_cast<unsigned long long>(result.seed), result.proposals, result.accepted);
    if (result.certificate) {
      std::printf("certificate: %s (|grad| = %.3e, %d null directions)\n",
                  extremum_class_name(result.certificate->classification),
                  result.certificate->gradient_norm, result.certificate->gauge_null_count);
    }
    std::printf("wrote %s.basis.json, %s.constellation.json, %s.trace.csv\n", out_prefix.c_str(),
                out_prefix.c_str(), out_prefix.c_str());
  });
  return kExitOk;
}

int run_certify(const std::string& path, std::vector<int> t_list, double null_tol, double grad_tol,
                bool as_json) {
  const Basis basis = load_basis_checked(path);
  if (t_list.empty()) t_list = {1};
  const ExtremumCertificate cert = certify_extremum(basis, t_list, null_tol, grad_tol);
  json doc = certificate_to_json(cert);
  doc["t"] = t_list;
  emit(doc, as_json, [&] {
    std::printf("classification: %s\n", extremum_class_name(cert.classification));
    std::printf("gradient norm: %.6e\n", cert.gradient_norm);
    std::printf("gauge null directions: %d\n", cert.gauge_null_count);
    std::printf("hessian spectrum (ascending):");
    for (int i = 0; i < cert.hessian_spectrum.size(); ++i) std::printf(" %.3e", cert.hessian_spectrum(i));
    std::printf("\n");
  });
  return kExitOk;
}

int run_catalog(bool list, const std::string& verify, bool as_json) {
  if (list) {
    json doc = json::array();
    for (const auto& name : catalog_names()) doc.push_back(name);
    emit(doc, as_json, [&] {
      for (const auto& name : catalog_names()) std::printf("%s\n", name.c_str());
    });
    return kExitOk;
  }
  std::vector<std::string> names;
  if (verify == "all") {
    names = catalog_names();
  } else {
    names.push_back(verify);
  }
  bool all_pass = true;
  json doc = json::array();
  for (const auto& name : names) {
    const VerifyReport report = catalog_verify(name);
    all_pass = all_pass && report.pass;
    json entry;
    entry["name"] = report.name;
    entry["pass"] = report.pass;
    for (const auto& check : report.checks) {
      entry["checks"].push_back({{"measure", check.measure},
                                 {"expected", check.expected},
                                 {"actual", check.actual},
                                 {"tol", check.tol},
                                 {"pass", check.pass}});
    }
    doc.push_back(entry);
    if (!as_json) {
      std::printf("%s: %s\n", report.name.c_str(), report.pass ? "PASS" : "FAIL");
      for (const auto& check : report.checks) {
        std::printf("  %-10s expected %.10g  actual %.10g  tol %.1e  %s\n", check.measure.c_str(),
                    check.expected, check.actual, check.tol, check.pass ? "ok" : "FAIL");
      }
    }
  }
  if (as_json) std::cout << doc.dump(2) << "\n";
  return all_pass ? kExitOk : kExitVerifyFail;
}

int run_cue_average(int dim, int t, int samples, std::uint64_t seed, bool as_json) {
  const CueEstimate est = cue_average_estimate(dim, t, samples, seed);
  const double exact = haar_average_exact(dim, t);
  json doc;
  doc["dim"] = dim;
  doc["t"] = t;
  doc["samples"] = est.samples;
  doc["mean"] = est.mean;
  doc["stderr"] = est.stderr_mean;
  doc["exact"] = exact;
  doc["sigma_distance"] = est.stderr_mean > 0.0 ? std::abs(est.mean - exact) / est.stderr_mean : 0.0;
  emit(doc, as_json, [&] {
    std::printf("<B_%d> over CUE(%d), %d samples: %.6f +- %.6f (exact %.6f)\n", t, dim, est.samples,
                est.mean, est.stderr_mean, exact);
  });
  return kExitOk;
}

int run_wehrl(const std::string& path, int n_theta, int n_phi, bool as_json) {
  const Basis basis = load_basis_checked(path);
  QuadratureSpec quad;
  quad.n_theta = n_theta;
  quad.n_phi = n_phi;
  json doc;
  doc["j"] = half_integer_to_json(basis.two_j());
  double mean = 0.0;
  std::vector<double> values;
  for (int i = 0; i < basis.dim(); ++i) {
    values.push_back(wehrl_entropy(basis.column(i), quad));
    mean += values.back();
  }
  mean /= basis.dim();
  doc["wehrl"] = values;
  doc["mean_wehrl"] = mean;
  doc["haar_mean"] = mean_wehrl_haar(basis.dim());
  emit(doc, as_json, [&] {
    for (std::size_t i = 0; i < values.size(); ++i) std::printf("S_W(psi_%zu) = %.9f\n", i, values[i]);
    std::printf("mean S_W = %.9f (Haar mean %.9f)\n", mean, mean_wehrl_haar(basis.dim()));
  });
  return kExitOk;
}

SpinState parse_state_flags(double j, const std::string& amplitudes) {
  const int two_j = static_cast<int>(std::lround(2.0 * j));
  std::vector<Complex> amps;
  std::stringstream ss(amplitudes);
  std::string part;
  while (std::getline(ss, part, ';')) {
    const auto comma = part.find(',');
    if (comma == std::string::npos) throw ParseError("amplitudes must be 're,im;re,im;...'");
    amps.emplace_back(std::stod(part.substr(0, comma)), std::stod(part.substr(comma + 1)));
  }
  Eigen::VectorXcd z(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k) z(k) = amps[k];
  return SpinState(two_j, std::move(z));
}

int run_husimi_max(const std::string& path, double j, const std::string& amplitudes, bool as_json) {
  std::vector<SpinState> states;
  if (!path.empty()) {
    const Basis basis = load_basis_checked(path);
    for (int i = 0; i < basis.dim(); ++i) states.push_back(basis.column(i));
  } else if (!amplitudes.empty()) {
    states.push_back(parse_state_flags(j, amplitudes));
  } else {
    std::cerr << "error: pass a basis file or --j with --amplitudes\n";
    return kExitUsage;
  }
  json doc = json::array();
  double mean = 0.0;
  for (const auto& state : states) {
    const HusimiExtremum ext = husimi_max(state);
    mean += ext.q_max;
    doc.push_back({{"q_max", ext.q_max}, {"theta", ext.theta}, {"phi", ext.phi}, {"d_fs", ext.d_fs}});
  }
  mean /= static_cast<double>(states.size());
  json out;
  out["states"] = doc;
  out["mean_qmax"] = mean;
  emit(out, as_json, [&] {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      std::printf("Q_max(psi_%zu) = %.9f at (theta, phi) = (%.6f, %.6f), D_FS = %.6f\n", i,
                  doc[i]["q_max"].get<double>(), doc[i]["theta"].get<double>(),
                  doc[i]["phi"].get<double>(), doc[i]["d_fs"].get<double>());
    }
    std::printf("mean Q_max = %.9f\n", mean);
  });
  return kExitOk;
}

int run_rotate(const std::string& path, double alpha, double beta, double gamma, const std::string& out,
               bool as_json) {
  const BasisFileContent content = read_basis_file(path);
  const double residual = orthonormality_residual(content.matrix);
  if (residual > kRejectResidual) {
    throw UnitarityError("basis is not unitary (residual " + std::to_string(residual) + ")", residual);
  }
  const Eigen::MatrixXcd rotated =
      wigner_d(content.two_j, EulerAngles{alpha, beta, gamma}) * content.matrix;
  BasisFileContent out_content;
  out_content.two_j = content.two_j;
  out_content.matrix = rotated;
  out_content.meta = content.meta;
  out_content.meta["rotation"] = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
  if (!out.empty()) {
    write_basis_file(out, out_content);
    if (as_json) {
      std::cout << json{{"written", out}}.dump(2) << "\n";
    } else {
      std::printf("wrote %s\n", out.c_str());
    }
  } else {
    std::cout << basis_to_json(out_content).dump(2) << "\n";
  }
  return kExitOk;
}

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  bool clipped = false;  // beyond the Mercator latitude cut
  int state = 0;
  std::string label;
  double theta = 0.0;
  double phi = 0.0;
  bool front = true;  // orthographic hemisphere
};

int run_export_plot(const std::string& path, const std::string& format, const std::string& projection,
                    const std::string& out) {
  const ConstellationFileContent content = read_constellation_file(path);
  const double lat_cut = 85.0 * kPi / 180.0;
  const double mercator_ymax = std::log(std::tan(kPi / 4.0 + lat_cut / 2.0));

  std::vector<PlotPoint> points;
  for (std::size_t s = 0; s < content.states.size(); ++s) {
    for (const auto& star : content.states[s].stars.stars()) {
      PlotPoint p;
      p.state = static_cast<int>(s);
      p.label = content.states[s].label;
      p.theta = star.theta;
      p.phi = star.phi;
      if (projection == "mercator") {
        const double lat = kPi / 2.0 - star.theta;
        p.x = star.phi;
        if (std::abs(lat) > lat_cut) {
          p.clipped = true;
          p.y = lat > 0.0 ? mercator_ymax : -mercator_ymax;
        } else {
          p.y = std::log(std::tan(kPi / 4.0 + lat / 2.0));
        }
      } else {  // orthographic, viewed from +x
        const Eigen::Vector3d v = to_unit_vector(star);
        p.x = v.y();
        p.y = v.z();
        p.front = v.x() >= 0.0;
      }
      points.push_back(std::move(p));
    }
  }

  if (format == "csv") {
    std::ostringstream csv;
    csv << "label,theta,phi,x,y\n";
    for (const auto& p : points) {
      csv << p.label << "," << p.theta << "," << p.phi << "," << p.x << "," << p.y << "\n";
    }
    write_file_atomic(out, csv.str());
    std::printf("wrote %s (%zu points)\n", out.c_str(), points.size());
    return kExitOk;
  }

  const int width = 880, height = 560, margin = 40;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (projection == "mercator") {
    const auto px = [&](double phi) {
      return margin + phi / kTwoPi * (width - 2.0 * margin);
    };
    const auto py = [&](double y) {
      return height / 2.0 - y / mercator_ymax * (height / 2.0 - margin);
    };
    for (int deg = 0; deg <= 360; deg += 30) {
      const double x = px(deg * kPi / 180.0);
      svg << "<line x1=\"" << x << "\" y1=\"" << margin << "\" x2=\"" << x << "\" y2=\""
          << height - margin << "\" stroke=\"#cccccc\" stroke-width=\"0.6\"/>\n";
    }
    for (int deg = -60; deg <= 60; deg += 30) {
      const double y = py(std::log(std::tan(kPi / 4.0 + deg * kPi / 360.0)));
      svg << "<line x1=\"" << margin << "\" y1=\"" << y << "\" x2=\"" << width - margin << "\" y2=\"" << y
          << "\" stroke=\"#cccccc\" stroke-width=\"0.6\"/>\n";
    }
    svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
        << "\" height=\"" << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& p : points) {
      const char* color = kPalette[p.state % 8];
      if (p.clipped) {
        // Poles are flagged on the frame edge.
        const double x = px(p.x), y = py(p.y);
        svg << "<path d=\"M " << x - 6 << " " << y << " L " << x + 6 << " " << y << " L " << x << " "
            << (p.y > 0 ? y - 10 : y + 10) << " Z\" fill=\"" << color << "\"/>\n";
      } else {
        svg << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"5\" fill=\"" << color
            << "\" stroke=\"black\" stroke-width=\"0.7\"/>\n";
      }
    }
  } else {
    const double r = height / 2.0 - margin;
    const double cx = width / 2.0, cy = height / 2.0;
    svg << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int deg = -60; deg <= 60; deg += 30) {
      const double z = std::sin(deg * kPi / 180.0);
      const double rr = std::sqrt(1.0 - z * z) * r;
      svg << "<ellipse cx=\"" << cx << "\" cy=\"" << cy - z * r << "\" rx=\"" << rr
          << "\" ry=\"" << rr * 0.12 << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.6\"/>\n";
    }
    for (const auto& p : points) {
      const char* color = kPalette[p.state % 8];
      svg << "<circle cx=\"" << cx + p.x * r << "\" cy=\"" << cy - p.y * r << "\" r=\"5\" fill=\""
          << (p.front ? color : "none") << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    }
  }
  svg << "</svg>\n";
  write_file_atomic(out, svg.str());
  std::printf("wrote %s (%zu points)\n", out.c_str(), points.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantumness measures and extremal bases of spin states"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit JSON instead of tables");

  // measure
  auto* measure = app.add_subcommand("measure", "anticoherence measures of a basis file");
  std::string measure_file;
  std::vector<int> measure_t;
  measure->add_option("file", measure_file, "basis JSON file")->required();
  measure->add_option("--t", measure_t, "anticoherence orders")->delimiter(',');

  // search
  auto* search = app.add_subcommand("search", "random-walk search for extremal bases");
  int search_dim = 3, search_restarts = 10, search_inner = 500, search_halvings = 47;
  std::string search_objective = "max-b1", search_out = "search";
  std::uint64_t search_seed = 1;
  double search_step = 0.1;
  search->add_option("--dim", search_dim, "Hilbert space dimension N")->required();
  search->add_option("--objective", search_objective,
                     "max-b1 | min-b1 | max-b1b2-sum | lex-b1-b2 | max-wehrl | min-wehrl");
  search->add_option("--seed", search_seed, "master seed");
  search->add_option("--restarts", search_restarts, "independent restarts");
  search->add_option("--out", search_out, "output file prefix");
  search->add_option("--inner-steps", search_inner, "proposals per step size");
  search->add_option("--halvings", search_halvings, "number of step halvings");
  search->add_option("--step", search_step, "initial step size");

  // certify
  auto* certify = app.add_subcommand("certify", "gradient/Hessian certificate of a basis file");
  std::string certify_file;
  std::vector<int> certify_t;
  double certify_null_tol = 1e-6, certify_grad_tol = 1e-6;
  certify->add_option("file", certify_file, "basis JSON file")->required();
  certify->add_option("--t", certify_t, "orders whose B_t sum is certified")->delimiter(',');
  certify->add_option("--null-tol", certify_null_tol, "gauge eigenvalue threshold");
  certify->add_option("--grad-tol", certify_grad_tol, "gradient norm threshold");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "catalog of reference bases");
  bool catalog_list = false;
  std::string catalog_verify_name;
  catalog->add_flag("--list", catalog_list, "list entries");
  catalog->add_option("--verify", catalog_verify_name, "verify an entry (or 'all')");

  // cue-average
  auto* cue = app.add_subcommand("cue-average", "Monte Carlo Haar average of B_t");
  int cue_dim = 3, cue_t = 1, cue_samples = 10000;
  std::uint64_t cue_seed = 1;
  cue->add_option("--dim", cue_dim, "dimension N")->required();
  cue->add_option("--t", cue_t, "order t");
  cue->add_option("--samples", cue_samples, "sample count");
  cue->add_option("--seed", cue_seed, "seed");

  // wehrl
  auto* wehrl = app.add_subcommand("wehrl", "Wehrl entropies of a basis file");
  std::string wehrl_file;
  int wehrl_ntheta = 64, wehrl_nphi = 128;
  wehrl->add_option("file", wehrl_file, "basis JSON file")->required();
  wehrl->add_option("--n-theta", wehrl_ntheta, "base Gauss-Legendre nodes");
  wehrl->add_option("--n-phi", wehrl_nphi, "base azimuthal nodes");

  // husimi-max
  auto* hmax = app.add_subcommand("husimi-max", "maxima of the Husimi function");
  std::string hmax_file, hmax_amplitudes;
  double hmax_j = 0.0;
  hmax->add_option("file", hmax_file, "basis JSON file");
  hmax->add_option("--j", hmax_j, "spin of an explicit state");
  hmax->add_option("--amplitudes", hmax_amplitudes, "state as 're,im;re,im;...'");

  // rotate
  auto* rotate = app.add_subcommand("rotate", "apply a Wigner rotation to a basis file");
  std::string rotate_file, rotate_out;
  double rot_alpha = 0.0, rot_beta = 0.0, rot_gamma = 0.0;
  rotate->add_option("file", rotate_file, "basis JSON file")->required();
  rotate->add_option("--alpha", rot_alpha, "Euler angle alpha");
  rotate->add_option("--beta", rot_beta, "Euler angle beta");
  rotate->add_option("--gamma", rot_gamma, "Euler angle gamma");
  rotate->add_option("--out", rotate_out, "output file (stdout when omitted)");

  // export-plot
  auto* plot = app.add_subcommand("export-plot", "plot a constellation file");
  std::string plot_file, plot_format = "svg", plot_projection = "mercator", plot_out = "constellation.svg";
  plot->add_option("file", plot_file, "constellation JSON file")->required();
  plot->add_option("--format", plot_format, "svg | csv")->check(CLI::IsMember({"svg", "csv"}));
  plot->add_option("--projection", plot_projection, "mercator | orthographic")
      ->check(CLI::IsMember({"mercator", "orthographic"}));
  plot->add_option("--out", plot_out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (measure->parsed()) return run_measure(measure_file, measure_t, as_json);
    if (search->parsed()) {
      return run_search(search_dim, search_objective, search_seed, search_restarts, search_out,
                        search_inner, search_halvings, search_step, as_json);
    }
    if (certify->parsed()) {
      return run_certify(certify_file, certify_t, certify_null_tol, certify_grad_tol, as_json);
    }
    if (catalog->parsed()) {
      if (!catalog_list && catalog_verify_name.empty()) {
        std::cerr << "error: pass --list or --verify\n";
        return kExitUsage;
      }
      return run_catalog(catalog_list, catalog_verify_name, as_json);
    }
    if (cue->parsed()) return run_cue_average(cue_dim, cue_t, cue_samples, cue_seed, as_json);
    if (wehrl->parsed()) return run_wehrl(wehrl_file, wehrl_ntheta, wehrl_nphi, as_json);
    if (hmax->parsed()) return run_husimi_max(hmax_file, hmax_j, hmax_amplitudes, as_json);
    if (rotate->parsed()) {
      return run_rotate(rotate_file, rot_alpha, rot_beta, rot_gamma, rotate_out, as_json);
    }
    if (plot->parsed()) return run_export_plot(plot_file, plot_format, plot_projection, plot_out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnitarityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnitarity;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
