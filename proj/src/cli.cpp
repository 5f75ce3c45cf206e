#include "horosark/cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "horosark/report.hpp"
#include "horosark/svg.hpp"

namespace horosark {

namespace {

Strip strip_of(const FixtureFile& fx, const TwoParamFamily& f) {
  return fx.strip ? *fx.strip : default_strip(f);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"horosark: exact polyhedral engine for the horospherical Sarkisov program"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON output");

  std::string path, delta_s = "0", eps_s = "0", out_path;

  auto* cmd_check = app.add_subcommand("check", "validate a fixture and test genericity");
  cmd_check->add_option("fixture", path)->required();
  auto* cmd_decomp = app.add_subcommand("decompose", "cell/wall/point decomposition report");
  cmd_decomp->add_option("fixture", path)->required();
  auto* cmd_mmp = app.add_subcommand("mmp", "minimal model program with scaling along a vertical line");
  cmd_mmp->add_option("fixture", path)->required();
  cmd_mmp->add_option("--delta", delta_s, "delta as p/q")->required();
  auto* cmd_sark = app.add_subcommand("sarkisov", "full Sarkisov program report");
  cmd_sark->add_option("fixture", path)->required();
  auto* cmd_classify = app.add_subcommand("classify", "classify a parameter point");
  cmd_classify->add_option("fixture", path)->required();
  cmd_classify->add_option("--delta", delta_s)->required();
  cmd_classify->add_option("--epsilon", eps_s)->required();
  auto* cmd_plot = app.add_subcommand("plot", "emit an SVG figure of the decomposition");
  cmd_plot->add_option("fixture", path)->required();
  cmd_plot->add_option("--out", out_path, "output SVG path")->required();

  std::vector<const char*> argv;
  std::string prog = "horosark";
  argv.push_back(prog.c_str());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "argument error: " << e.what() << "\n";
    return 2;
  }

  try {
    FixtureFile fx = load_fixture_file(path);
    TwoParamFamily f = family_of(fx);
    if (cmd_check->parsed()) {
      GenericityReport gr = check_genericity(f);
      out << report_check(fx, f, as_json);
      return gr.pass ? 0 : 3;
    }
    if (cmd_classify->parsed()) {
      ParamPoint q{Rat::parse(delta_s), Rat::parse(eps_s)};
      out << report_classify(f, q, as_json);
      return 0;
    }
    if (cmd_decomp->parsed()) {
      Decomposition dec = decompose(f, strip_of(fx, f));
      out << report_decompose(fx, f, dec, as_json);
      return 0;
    }
    if (cmd_mmp->parsed()) {
      HmmpRun run = run_hmmp(f, Rat::parse(delta_s));
      out << report_mmp(fx, f, run, as_json);
      return 0;
    }
    if (cmd_sark->parsed()) {
      SarkisovProgram prog_r = run_sarkisov(f);
      out << report_sarkisov(fx, f, prog_r, as_json);
      return 0;
    }
    if (cmd_plot->parsed()) {
      Decomposition dec = decompose(f, strip_of(fx, f));
      std::string svg = emit_svg(fx, f, dec);
      std::ofstream ofs(out_path);
      if (!ofs) throw validation_error("cannot open output file: " + out_path);
      ofs << svg;
      out << "wrote " << out_path << "\n";
      return 0;
    }
    err << "no subcommand\n";
    return 2;
  } catch (const genericity_error& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const validation_error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace horosark
