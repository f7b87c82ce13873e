#include "koszulkit/errors.hpp"
#include "koszulkit/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw koszulkit::ParseError("cannot open input file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const koszulkit::RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  std::string raw = slurp(cfg.input_path);
  koszulkit::Presentation p = koszulkit::parse_presentation(raw);
  if (!cfg.field_override.empty()) {
    if (cfg.field_override == "Q") {
      p.field = koszulkit::FieldSpec::rationals();
    } else if (cfg.field_override.rfind("Fp:", 0) == 0) {
      p.field = koszulkit::FieldSpec::prime(std::stoll(cfg.field_override.substr(3)));
    } else {
      throw koszulkit::ParseError("--field must be Q or Fp:<prime>");
    }
  }

  nlohmann::json report = koszulkit::run_report(p, raw);
  std::string body = cfg.format == "text" ? koszulkit::render_text(report)
                                          : report.dump(2) + "\n";
  if (cfg.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw koszulkit::EngineError("cannot write '" + cfg.out_path + "'");
    out << body;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cerr << "koszulkit: completed in " << ms << " ms\n";
  return 0;
}

int validate(const std::string& path) {
  std::string raw = slurp(path);
  koszulkit::Presentation p = koszulkit::parse_presentation(raw);
  koszulkit::validate_homogeneity(p);
  std::cout << "ok: " << p.quiver.vertices.size() << " vertices, "
            << p.quiver.arrows.size() << " arrows, " << p.relations.size()
            << " relations, " << p.tasks.size() << " tasks\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certificates for graded quiver algebras"};
  app.require_subcommand(1);

  koszulkit::RunConfig cfg;
  CLI::App* runc = app.add_subcommand("run", "execute the tasks of an input file");
  runc->add_option("--input", cfg.input_path, "presentation file")->required();
  runc->add_option("--format", cfg.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  runc->add_option("--out", cfg.out_path, "write the report to a file");
  runc->add_option("--threads", cfg.threads, "worker cap (engines are sequential)")
      ->check(CLI::PositiveNumber);
  runc->add_option("--field", cfg.field_override, "override the scalar field: Q or Fp:<p>");

  std::string validate_path;
  CLI::App* val = app.add_subcommand("validate", "parse and check an input file");
  val->add_option("--input", validate_path, "presentation file")->required();

  try {
    app.parse(argc, argv);
    if (runc->parsed()) return run(cfg);
    return validate(validate_path);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const koszulkit::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const koszulkit::DependencyError& e) {
    std::cerr << "dependency error: " << e.what() << "\n";
    return 4;
  } catch (const koszulkit::EngineError& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
