#include <catch2/catch.hpp>

#include "jjgate/cli.hpp"
#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace jjgate;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "jjgate_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("pi-fraction parsing") {
  CHECK(lambda_from_pi_fraction("1/2") == Approx(std::numbers::pi / 2));
  CHECK(lambda_from_pi_fraction("-3/4") == Approx(-0.75 * std::numbers::pi));
  CHECK(lambda_from_pi_fraction("2") == Approx(2.0 * std::numbers::pi));
  CHECK_THROWS_AS(lambda_from_pi_fraction("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(lambda_from_pi_fraction("abc"), std::invalid_argument);
}

TEST_CASE("sequence JSON round trip preserves the evaluated unitary") {
  const DesignSolution d = testsupport::analytic_design_solution(std::numbers::pi / 3, 1);
  const SpinParams sd = spin_params_for(d);
  const PulseSequence seq =
      build_echo_sequence(sd, solve_angles(sd, Branch::plus), d.t_p);

  JsonWriter w;
  write(w, seq);
  const PulseSequence back = sequence_from_json(nlohmann::json::parse(w.str()));
  REQUIRE(back.steps.size() == seq.steps.size());
  CHECK(max_abs(evaluate(back) - evaluate(seq)) < 1e-12);

  // wire format details
  const auto j = nlohmann::json::parse(w.str());
  CHECK(j.at("steps").at(0).at("kind") == "rotation");
  CHECK(j.at("steps").at(0).at("generator") == "I_kx");
  CHECK(j.at("steps").at(3).at("kind") == "free_evolution");
  CHECK(j.at("steps").at(3).at("hamiltonian_tag") == "H_rotated");
}

TEST_CASE("sequence parser rejects two-qubit rotation generators") {
  const std::string text = R"({
    "context": {"omega_k": 1.0, "omega_l": 1.0, "j_kl": 0.3},
    "steps": [{"kind": "rotation", "generator": "I_kz I_lz", "angle": 1.0}]
  })";
  CHECK_THROWS_WITH(sequence_from_json(nlohmann::json::parse(text)),
                    Catch::Contains("one-qubit"));
}

TEST_CASE("design JSON round trip") {
  DesignSolution d = testsupport::analytic_design_solution(std::numbers::pi / 2, 1);
  d.valid = true;
  JsonWriter w;
  write(w, d);
  const auto j = nlohmann::json::parse(w.str());
  CHECK(j.at("gamma").at("num") == 3);
  CHECK(j.at("gamma").at("den") == 2);
  const DesignSolution back = design_from_json(j);
  CHECK(back.mu == d.mu);
  CHECK(back.nu == d.nu);
  CHECK(back.t_p == d.t_p);
  CHECK(back.m == d.m);
}

TEST_CASE("design command writes a passing deterministic report") {
  RunConfig cfg;
  cfg.command = Command::design;
  cfg.lambda_kl = std::numbers::pi / 2;
  cfg.m = 1;
  cfg.output_path = temp_file("design.json").string();
  std::ostringstream log;
  REQUIRE(run(cfg, log) == 0);
  const std::string first = slurp(cfg.output_path);
  REQUIRE(run(cfg, log) == 0);
  CHECK(first == slurp(cfg.output_path));  // byte-identical re-run

  const auto j = nlohmann::json::parse(first);
  CHECK(j.at("pass") == true);
  CHECK(j.at("design").at("valid") == true);
  CHECK(j.at("gate_report").at("fidelity").get<double>() >= 1.0 - 1e-9);
  // fixed top-level key order: the keys appear in sequence in the raw text
  size_t cursor = 0;
  for (const std::string key :
       {"config", "design", "diagonalization", "gate_report", "scan", "notes", "pass"}) {
    const size_t at = first.find("\"" + key + "\":", cursor);
    REQUIRE(at != std::string::npos);
    cursor = at;
  }
}

TEST_CASE("design command requires lambda and m") {
  RunConfig cfg;
  cfg.command = Command::design;
  cfg.output_path = temp_file("unused.json").string();
  std::ostringstream log;
  CHECK(run(cfg, log) == 2);
}

TEST_CASE("verify command re-verifies a serialized design and flags a detuned one") {
  const DesignSolution d = design_numeric(std::numbers::pi / 3, 1);

  const fs::path good = temp_file("good_design.json");
  {
    JsonWriter w;
    write(w, d);
    std::ofstream(good) << w.str();
  }
  RunConfig cfg;
  cfg.command = Command::verify;
  cfg.design_path = good.string();
  cfg.output_path = temp_file("verify_good.json").string();
  std::ostringstream log;
  CHECK(run(cfg, log) == 0);

  DesignSolution bad = d;
  bad.t_p *= 1.01;
  const fs::path badp = temp_file("bad_design.json");
  {
    JsonWriter w;
    write(w, bad);
    std::ofstream(badp) << w.str();
  }
  cfg.design_path = badp.string();
  cfg.output_path = temp_file("verify_bad.json").string();
  CHECK(run(cfg, log) == 1);  // report still written, nonzero exit
  const auto j = nlohmann::json::parse(slurp(cfg.output_path));
  CHECK(j.at("pass") == false);
  CHECK(j.at("gate_report").at("fidelity").get<double>() < 1.0 - 1e-4);
}

TEST_CASE("verify command checks spin parameters on both branches") {
  RunConfig cfg;
  cfg.command = Command::verify;
  cfg.spin_params = SpinParams{1.0, 2.0, 0.5};
  cfg.output_path = temp_file("verify_spin.json").string();
  std::ostringstream log;
  CHECK(run(cfg, log) == 0);
  const auto j = nlohmann::json::parse(slurp(cfg.output_path));
  CHECK(j.at("diagonalization").at("branch") == "plus");
  CHECK(j.at("pass") == true);
}

TEST_CASE("bch-scan command reports a cubic exponent on the default parameters") {
  RunConfig cfg;
  cfg.command = Command::bch_scan;
  cfg.t_points = {0.2, 0.1, 0.05};
  cfg.output_path = temp_file("scan.json").string();
  std::ostringstream log;
  CHECK(run(cfg, log) == 0);
  const auto j = nlohmann::json::parse(slurp(cfg.output_path));
  const double expnt = j.at("scan").at("exponent").get<double>();
  CHECK(expnt >= 2.6);
  CHECK(expnt <= 3.4);
  CHECK(j.at("scan").at("points").size() == 3);
}

TEST_CASE("xor command passes end to end") {
  RunConfig cfg;
  cfg.command = Command::xor_gate;
  cfg.output_path = temp_file("xor.json").string();
  std::ostringstream log;
  CHECK(run(cfg, log) == 0);
  const auto j = nlohmann::json::parse(slurp(cfg.output_path));
  CHECK(j.at("gate_report").at("target_name") == "CNOT");
  CHECK(j.at("gate_report").at("fidelity").get<double>() >= 1.0 - 1e-9);
}

TEST_CASE("reconcile reports both value sets and certifies the solver's") {
  RunConfig cfg;
  cfg.command = Command::reconcile;
  cfg.output_path = temp_file("reconcile.json").string();
  std::ostringstream log;
  CHECK(run(cfg, log) == 0);
  const auto j = nlohmann::json::parse(slurp(cfg.output_path));
  CHECK(j.at("pass") == true);
  bool saw_paper = false, saw_solver = false;
  for (const auto& note : j.at("notes")) {
    const std::string n = note.get<std::string>();
    if (n.rfind("paper values", 0) == 0) saw_paper = true;
    if (n.rfind("solver values", 0) == 0) saw_solver = true;
  }
  CHECK(saw_paper);
  CHECK(saw_solver);
}

TEST_CASE("junction parameters in the config derive spin parameters with the frame note") {
  RunConfig cfg;
  cfg.command = Command::verify;
  cfg.junction_params = JunctionParams{1.0, 0.5, 2.0, 3.0, 4.0};
  cfg.output_path = temp_file("verify_junction.json").string();
  std::ostringstream log;
  CHECK(run(cfg, log) == 0);
  const auto j = nlohmann::json::parse(slurp(cfg.output_path));
  CHECK(j.at("pass") == true);
  CHECK(j.at("config").at("junction_params").at("e_l") == 4.0);
  bool saw_frame_note = false;
  for (const auto& note : j.at("notes"))
    if (note.get<std::string>().find("arctan(2E_ch/E_J) + pi/2") != std::string::npos)
      saw_frame_note = true;
  CHECK(saw_frame_note);
}

TEST_CASE("design emits a re-verifiable echo program") {
  RunConfig cfg;
  cfg.command = Command::design;
  cfg.lambda_kl = std::numbers::pi / 3;
  cfg.m = 1;
  cfg.output_path = temp_file("design_seq.json").string();
  cfg.sequence_out = temp_file("echo_seq.json").string();
  std::ostringstream log;
  REQUIRE(run(cfg, log) == 0);

  RunConfig vcfg;
  vcfg.command = Command::verify;
  vcfg.sequence_path = cfg.sequence_out;
  vcfg.lambda_kl = std::numbers::pi / 3;  // realized angle matches modulo 2 pi
  vcfg.output_path = temp_file("verify_seq.json").string();
  CHECK(run(vcfg, log) == 0);
  const auto j = nlohmann::json::parse(slurp(vcfg.output_path));
  CHECK(j.at("gate_report").at("fidelity").get<double>() >= 1.0 - 1e-9);
}

TEST_CASE("junction parameters survive a JSON round trip") {
  const JunctionParams p{0.3, -0.7, 1.9, -2.4, 3.1};
  JsonWriter w;
  write(w, p);
  const JunctionParams back = junction_params_from_json(nlohmann::json::parse(w.str()));
  CHECK(back.e_ch_k == p.e_ch_k);
  CHECK(back.e_ch_l == p.e_ch_l);
  CHECK(back.e_j_k == p.e_j_k);
  CHECK(back.e_j_l == p.e_j_l);
  CHECK(back.e_l == p.e_l);
}

TEST_CASE("run-config JSON mirrors the flag surface") {
  const std::string text = R"({
    "command": "bch-scan",
    "lambda_kl": null,
    "m": null,
    "spin_params": {"omega_k": 1.0, "omega_l": 1.0, "j_kl": 0.3183098861837907},
    "t_points": [0.2, 0.1],
    "output_path": "out.json",
    "tolerance_profile": "strict"
  })";
  const RunConfig cfg = run_config_from_json(nlohmann::json::parse(text));
  CHECK(cfg.command == Command::bch_scan);
  CHECK(cfg.strict);
  CHECK(cfg.t_points.size() == 2);
  CHECK(cfg.spin_params->omega_k == 1.0);
  CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(R"({"command": "bogus"})")),
                  std::invalid_argument);
}
