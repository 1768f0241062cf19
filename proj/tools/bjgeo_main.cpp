// Command-line surface: norms, orthogonality verdicts, bilinear operator
// norms and attainment sets, and the randomized verification suites.
//
// Exit codes: 0 all checks passed, 1 a check failed or a computation was
// rejected, 2 usage or parse error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bjgeo/bjgeo.hpp"

namespace {

using bjgeo::BilinearOperator;
using bjgeo::Decision;
using bjgeo::RunConfig;
using bjgeo::Space;
using bjgeo::Tolerances;
using bjgeo::Vector;
using ojson = nlohmann::ordered_json;

Vector parse_vector(const std::string& text) {
  Vector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty vector literal: " + text);
  return out;
}

BilinearOperator parse_operator(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("empty operator");
  if (text[first] == '{') return BilinearOperator::from_json(nlohmann::json::parse(text));
  return BilinearOperator::builtin(text);
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

ojson decision_json(const Decision& d) {
  return {{"verdict", bjgeo::to_string(d.verdict)}, {"margin", d.margin}, {"note", d.note}};
}

struct Output {
  std::string path;  // empty = stdout
  void write(const std::string& line) const {
    if (path.empty()) {
      std::cout << line << "\n";
    } else {
      std::ofstream f(path, std::ios::app);
      f << line << "\n";
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of finite-dimensional Banach spaces and bilinear operators"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string output_path;
  bool no_timestamp = false;
  app.add_option("--seed", cfg.seed, "Run seed")->envname("BB_SEED");
  app.add_option("--eps-zero", cfg.tol.eps_zero, "Zero-vector threshold");
  app.add_option("--eps-eq", cfg.tol.eps_eq, "Equality threshold");
  app.add_option("--eps-band", cfg.tol.eps_band, "Marginal band");
  app.add_option("--eps-attain", cfg.tol.eps_attain, "Attainment slack");
  app.add_option("--starts", cfg.starts, "Multi-start count")->check(CLI::PositiveNumber);
  app.add_option("--output", output_path, "Write report lines to a file instead of stdout");
  app.add_flag("--no-timestamp", no_timestamp, "Omit volatile fields for byte-identical reports");

  // norm ----------------------------------------------------------------
  auto* cmd_norm = app.add_subcommand("norm", "Norm of a vector in a space");
  std::string norm_space, norm_x;
  cmd_norm->add_option("--space", norm_space, "Space descriptor")->required();
  cmd_norm->add_option("--x", norm_x, "Vector, comma separated")->required();

  // orth ----------------------------------------------------------------
  auto* cmd_orth = app.add_subcommand("orth", "Birkhoff-James orthogonality verdict");
  std::string orth_space, orth_x, orth_y;
  bool orth_oracle = false;
  cmd_orth->add_option("--space", orth_space, "Space descriptor")->required();
  cmd_orth->add_option("--x", orth_x, "Anchor vector")->required();
  cmd_orth->add_option("--y", orth_y, "Direction vector")->required();
  cmd_orth->add_flag("--oracle", orth_oracle, "Add the golden-section cross-check");

  // opnorm / attain -------------------------------------------------------
  auto* cmd_opnorm = app.add_subcommand("opnorm", "Norm of a bilinear operator");
  std::string opnorm_operator;
  cmd_opnorm->add_option("--operator", opnorm_operator, "Operator JSON or builtin name")->required();

  auto* cmd_attain = app.add_subcommand("attain", "Norm attainment set of a bilinear operator");
  std::string attain_operator;
  cmd_attain->add_option("--operator", attain_operator, "Operator JSON or builtin name")->required();

  // verify ----------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "Run a named verification suite");
  std::string suite;
  bool strict = false;
  cmd_verify->add_option("suite", suite, "Suite name or 'all'")->required();
  cmd_verify->add_flag("--strict", strict, "Treat inconclusive checks as failures");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const Output out{output_path};
  try {
    if (*cmd_norm) {
      const Space S = Space::parse(norm_space);
      std::cout << format_number(S.norm(parse_vector(norm_x))) << "\n";
      return 0;
    }
    if (*cmd_orth) {
      const Space S = Space::parse(orth_space);
      const Vector x = parse_vector(orth_x);
      const Vector y = parse_vector(orth_y);
      const auto d = bjgeo::one_sided_derivatives(S, x, y, cfg.tol);
      const Decision verdict = bjgeo::is_bj_orthogonal(S, x, y, cfg.tol);
      ojson j;
      j["verdict"] = bjgeo::to_string(verdict.verdict);
      j["d_plus"] = d.d_plus;
      j["d_minus"] = d.d_minus;
      j["margin"] = verdict.margin;
      if (orth_oracle) j["oracle"] = decision_json(bjgeo::bj_oracle(S, x, y, cfg.tol));
      out.write(j.dump());
      return 0;
    }
    if (*cmd_opnorm) {
      const BilinearOperator T = parse_operator(opnorm_operator);
      const auto nr = bjgeo::bilinear_norm(T, cfg.starts, cfg.seed, cfg.tol);
      ojson j;
      j["value"] = nr.value;
      j["exact"] = nr.exact;
      out.write(j.dump());
      return 0;
    }
    if (*cmd_attain) {
      const BilinearOperator T = parse_operator(attain_operator);
      const auto M = bjgeo::norm_attainment_set(T, cfg.starts, cfg.seed, cfg.tol);
      ojson j;
      j["value"] = M.value;
      j["exact"] = M.exact;
      j["orbits"] = ojson::array();
      for (const auto& [x, y] : M.orbits) j["orbits"].push_back({{"x", x}, {"y", y}});
      out.write(j.dump());
      return 0;
    }
    if (*cmd_verify) {
      cfg.strict = strict;
      const auto reports = bjgeo::run_suites(suite, cfg);
      bool all_passed = true;
      long long checks = 0, passed = 0, inconclusive = 0;
      for (const auto& r : reports) {
        for (const auto& c : r.checks) {
          ojson line = bjgeo::check_to_json(c, cfg.tol, !no_timestamp);
          line["suite"] = r.suite;
          out.write(line.dump());
          ++checks;
          if (c.verdict == "inconclusive") ++inconclusive;
          if (c.passed(cfg.strict)) ++passed;
          else all_passed = false;
        }
      }
      ojson summary;
      summary["summary"] = all_passed ? "pass" : "fail";
      summary["suites"] = reports.size();
      summary["checks"] = checks;
      summary["passed"] = passed;
      summary["inconclusive"] = inconclusive;
      summary["seed"] = cfg.seed;
      out.write(summary.dump());
      return all_passed ? 0 : 1;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
