// jjgate: design, verify and benchmark two-qubit diagonal-gate pulse programs
// for a coupled pair of SQUID-controlled Josephson junctions.

#include "jjgate/cli.hpp"

#include <CLI11.hpp>

#include <fstream>

namespace {

void add_common(CLI::App* cmd, jjgate::RunConfig& cfg, std::string& lambda_frac,
                std::string& config_path, std::vector<double>& spin,
                std::vector<double>& t_points) {
  cmd->add_option("--config", config_path, "JSON config file mirroring the run configuration");
  cmd->add_option("--lambda", [&cfg](const std::vector<std::string>& v) {
        try {
          size_t used = 0;
          cfg.lambda_kl = std::stod(v.front(), &used);
          return used == v.front().size();
        } catch (const std::exception&) {
          return false;
        }
      }, "target gate angle lambda_kl in radians");
  cmd->add_option("--lambda-frac-pi", lambda_frac,
                  "target angle as a fraction of pi, e.g. 1/2 for pi/2");
  cmd->add_option("--m", [&cfg](const std::vector<std::string>& v) {
        try {
          size_t used = 0;
          cfg.m = std::stoi(v.front(), &used);
          return used == v.front().size();
        } catch (const std::exception&) {
          return false;
        }
      }, "nonzero integer fixing gamma = (2m+1)/(2m)");
  cmd->add_option("--omega-k", spin[0], "one-qubit frequency Omega_k");
  cmd->add_option("--omega-l", spin[1], "one-qubit frequency Omega_l");
  cmd->add_option("--j-coupling", spin[2], "coupling constant J_kl (the coupling is pi*J_kl)");
  cmd->add_option("--t-points", t_points, "evolution times for scans")->delimiter(',');
  cmd->add_option("--out", cfg.output_path, "report output path");
  cmd->add_flag("--strict", cfg.strict, "use the strict tolerance profile");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit diagonal gate synthesis for coupled Josephson junctions"};
  app.require_subcommand(1);

  jjgate::RunConfig cfg;
  std::string lambda_frac, config_path, design_path, sequence_path;
  std::vector<double> spin = {std::nan(""), std::nan(""), std::nan("")};
  std::vector<double> t_points;

  CLI::App* design = app.add_subcommand("design", "solve for (mu, nu, t_p) realizing G_kl(lambda)");
  CLI::App* verify = app.add_subcommand("verify", "re-verify a design, sequence or parameter set");
  CLI::App* bch = app.add_subcommand("bch-scan", "measure the refocused-sequence error scaling");
  CLI::App* xorc = app.add_subcommand("xor", "end-to-end XOR (CNOT) construction demo");
  CLI::App* rec = app.add_subcommand("reconcile",
                                     "run the historic example values against the solver's");

  std::string sequence_out;
  for (CLI::App* cmd : {design, verify, bch, xorc, rec})
    add_common(cmd, cfg, lambda_frac, config_path, spin, t_points);
  verify->add_option("--design", design_path, "serialized design JSON to re-verify");
  verify->add_option("--sequence", sequence_path, "serialized pulse-sequence JSON to re-verify");
  design->add_option("--emit-sequence", sequence_out,
                     "also write the certified echo program as pulse-sequence JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "cannot open config file " << config_path << "\n";
        return 2;
      }
      jjgate::RunConfig file_cfg = jjgate::run_config_from_json(nlohmann::json::parse(in));
      // flags already parsed into cfg override the file
      if (!cfg.lambda_kl) cfg.lambda_kl = file_cfg.lambda_kl;
      if (!cfg.m) cfg.m = file_cfg.m;
      if (!cfg.spin_params) cfg.spin_params = file_cfg.spin_params;
      if (!cfg.junction_params) cfg.junction_params = file_cfg.junction_params;
      if (!cfg.sequence_out) cfg.sequence_out = file_cfg.sequence_out;
      if (cfg.output_path == "jjgate_report.json") cfg.output_path = file_cfg.output_path;
      if (t_points.empty()) cfg.t_points = file_cfg.t_points;
      cfg.strict = cfg.strict || file_cfg.strict;
      if (!cfg.design_path) cfg.design_path = file_cfg.design_path;
      if (!cfg.sequence_path) cfg.sequence_path = file_cfg.sequence_path;
    }

    if (design->parsed()) cfg.command = jjgate::Command::design;
    if (verify->parsed()) cfg.command = jjgate::Command::verify;
    if (bch->parsed()) cfg.command = jjgate::Command::bch_scan;
    if (xorc->parsed()) cfg.command = jjgate::Command::xor_gate;
    if (rec->parsed()) cfg.command = jjgate::Command::reconcile;

    if (!lambda_frac.empty()) cfg.lambda_kl = jjgate::lambda_from_pi_fraction(lambda_frac);
    if (!t_points.empty()) cfg.t_points = t_points;
    if (!design_path.empty()) cfg.design_path = design_path;
    if (!sequence_path.empty()) cfg.sequence_path = sequence_path;
    if (!sequence_out.empty()) cfg.sequence_out = sequence_out;
    if (!std::isnan(spin[0]) || !std::isnan(spin[1]) || !std::isnan(spin[2])) {
      if (std::isnan(spin[0]) || std::isnan(spin[1]) || std::isnan(spin[2])) {
        std::cerr << "--omega-k, --omega-l and --j-coupling must be given together\n";
        return 2;
      }
      cfg.spin_params = jjgate::SpinParams{spin[0], spin[1], spin[2], 0.0, 0.0};
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  return jjgate::run(cfg);
}
