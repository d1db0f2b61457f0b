#include <chrono>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gcw/bredon.hpp"
#include "gcw/errors.hpp"
#include "gcw/fixtures.hpp"
#include "gcw/gcw_io.hpp"
#include "gcw/homology.hpp"
#include "gcw/report.hpp"
#include "gcw/subdivide.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

gcw::EquivariantComplex fixture_by_name(const std::string& name, int n) {
  if (name == "square") return gcw::make_square();
  if (name == "simplex") return gcw::make_simplex(n);
  if (name == "polygon") return gcw::make_polygon(n);
  if (name == "t1") return gcw::make_modular_tree(gcw::ModularTreeVariant::T1);
  if (name == "t2") return gcw::make_modular_tree(gcw::ModularTreeVariant::T2);
  throw gcw::InputError("unknown fixture: " + name +
                        " (available: square, simplex, polygon, t1, t2)");
}

void print_homology(const std::vector<gcw::HomologyGroup>& groups) {
  for (const gcw::HomologyGroup& h : groups) {
    std::cout << "H_" << h.degree << " = " << gcw::render_homology_group(h) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant CW complex rigidification and Bredon homology"};
  app.require_subcommand(1);

  std::string file, out, method_str = "rfs", fixture_name;
  long long prime = 2;
  int fixture_n = 2;
  bool no_fallback = false;
  int jobs = 1;

  CLI::App* cmd_info = app.add_subcommand("info", "dimensions, counts and rigidity");
  cmd_info->add_option("file", file)->required();

  CLI::App* cmd_subdivide = app.add_subcommand("subdivide", "rigidify a complex");
  cmd_subdivide->add_option("file", file)->required();
  cmd_subdivide->add_option("--method", method_str, "rfs|vss|hybrid|barycentric");
  cmd_subdivide->add_option("-o,--output", out, "output gcw-1 file");
  cmd_subdivide->add_flag("--no-fallback", no_fallback,
                          "fail instead of substituting VSS when RFS hypotheses fail");
  cmd_subdivide->add_option("--jobs", jobs, "intra-dimension parallelism");

  CLI::App* cmd_homology = app.add_subcommand("homology", "integral homology of the space");
  cmd_homology->add_option("file", file)->required();

  CLI::App* cmd_euler = app.add_subcommand("euler", "Euler characteristics");
  cmd_euler->add_option("file", file)->required();

  CLI::App* cmd_bredon = app.add_subcommand("bredon", "Bredon homology with R_C coefficients");
  cmd_bredon->add_option("file", file)->required();

  CLI::App* cmd_torsion = app.add_subcommand("torsion", "l-torsion subcomplex");
  cmd_torsion->add_option("file", file)->required();
  cmd_torsion->add_option("--prime", prime)->required();
  cmd_torsion->add_option("-o,--output", out);

  CLI::App* cmd_census = app.add_subcommand("census", "stabilizer census");
  cmd_census->add_option("file", file)->required();

  CLI::App* cmd_fixture = app.add_subcommand("fixture", "write a built-in complex");
  cmd_fixture->add_option("name", fixture_name)->required();
  cmd_fixture->add_option("--n", fixture_n, "size parameter for simplex/polygon");
  cmd_fixture->add_option("-o,--output", out)->required();

  CLI::App* cmd_bench = app.add_subcommand("bench", "compare all four subdivision methods");
  cmd_bench->add_option("file", file)->required();
  cmd_bench->add_option("--jobs", jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are input errors; --help is not
  }

  try {
    if (cmd_info->parsed()) {
      gcw::EquivariantComplex x = gcw::load_complex(file);
      std::cout << gcw::info_report(x);
    } else if (cmd_subdivide->parsed()) {
      gcw::EquivariantComplex x = gcw::load_complex(file);
      gcw::SubdivisionMethod method = gcw::method_from_name(method_str);
      gcw::SubdivisionOptions opts;
      opts.allow_fallback = !no_fallback;
      opts.jobs = jobs;
      Clock::time_point start = Clock::now();
      gcw::SubdivisionResult result = gcw::rigidify(x, method, opts);
      double dt = seconds_since(start);
      for (const std::string& warning : result.warnings) {
        std::cerr << "warning: " << warning << "\n";
      }
      std::cout << gcw::method_report(method, result);
      std::cerr << "duration: " << dt << " s\n";
      if (!out.empty()) gcw::save_complex(result.complex, out);
    } else if (cmd_homology->parsed()) {
      gcw::EquivariantComplex x = gcw::load_complex(file);
      print_homology(gcw::homology(gcw::chain_complex_of_space(x).chain));
    } else if (cmd_euler->parsed()) {
      gcw::EquivariantComplex x = gcw::load_complex(file);
      std::cout << "chi = " << gcw::euler_characteristic(x) << "\n";
      std::cout << "chi_Gamma = " << gcw::equivariant_euler_characteristic(x) << "\n";
    } else if (cmd_bredon->parsed()) {
      gcw::EquivariantComplex x = gcw::load_complex(file);
      print_homology(gcw::bredon_homology(x));
    } else if (cmd_torsion->parsed()) {
      gcw::EquivariantComplex x = gcw::load_complex(file);
      std::string warning;
      gcw::EquivariantComplex sub = gcw::torsion_subcomplex(x, prime, &warning);
      if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
      std::cout << gcw::counts_report(gcw::orbit_counts(sub), gcw::cell_counts(sub));
      if (!out.empty()) gcw::save_complex(sub, out);
    } else if (cmd_census->parsed()) {
      gcw::EquivariantComplex x = gcw::load_complex(file);
      std::cout << gcw::render_census(gcw::stabilizer_census(x));
    } else if (cmd_fixture->parsed()) {
      gcw::save_complex(fixture_by_name(fixture_name, fixture_n), out);
    } else if (cmd_bench->parsed()) {
      gcw::EquivariantComplex x = gcw::load_complex(file);
      gcw::SubdivisionOptions opts;
      opts.jobs = jobs;
      std::vector<std::pair<gcw::SubdivisionMethod, double>> durations;
      for (gcw::SubdivisionMethod method :
           {gcw::SubdivisionMethod::RFS, gcw::SubdivisionMethod::VSS,
            gcw::SubdivisionMethod::Hybrid, gcw::SubdivisionMethod::Barycentric}) {
        Clock::time_point start = Clock::now();
        gcw::SubdivisionResult result = gcw::rigidify(x, method, opts);
        durations.push_back({method, seconds_since(start)});
        std::cout << gcw::method_report(method, result);
      }
      double fastest = durations[0].second;
      for (const auto& [m, dt] : durations) fastest = std::min(fastest, dt);
      for (const auto& [m, dt] : durations) {
        std::cerr << gcw::method_name(m) << " duration: " << dt << " s ("
                  << (fastest > 0 ? dt / fastest : 1.0) << "x)\n";
      }
    }
  } catch (const gcw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
