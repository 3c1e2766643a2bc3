#pragma once

// JSON interchange for the CLI: a deterministic writer (fixed key order,
// doubles at 17 significant digits, so identical inputs render byte-identical
// reports) and nlohmann-based readers for configs and serialized artifacts.

#include "jjgate/design.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace jjgate {

// ---------------------------------------------------------------------------
// Writer

class JsonWriter {
 public:
  std::string str() const { return out_; }

  JsonWriter& begin_object() { open('{'); return *this; }
  JsonWriter& end_object() { close('}'); return *this; }
  JsonWriter& begin_array() { open('['); return *this; }
  JsonWriter& end_array() { close(']'); return *this; }

  JsonWriter& key(const std::string& k) {
    separate();
    append_string(k);
    out_ += ':';
    pending_value_ = true;
    return *this;
  }

  JsonWriter& value(double v) { separate(); append_number(v); return *this; }
  JsonWriter& value(int v) { separate(); out_ += std::to_string(v); return *this; }
  JsonWriter& value(long long v) { separate(); out_ += std::to_string(v); return *this; }
  JsonWriter& value(bool v) { separate(); out_ += v ? "true" : "false"; return *this; }
  JsonWriter& value(const std::string& v) { separate(); append_string(v); return *this; }
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& null() { separate(); out_ += "null"; return *this; }

 private:
  void open(char c) {
    separate();
    out_ += c;
    first_.push_back(true);
  }
  void close(char c) {
    out_ += c;
    first_.pop_back();
  }
  void separate() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) out_ += ',';
      first_.back() = false;
    }
  }
  void append_number(double v) {
    if (!std::isfinite(v)) {
      out_ += "null";
      return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out_ += buf;
  }
  void append_string(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> first_;
  bool pending_value_ = false;
};

// ---------------------------------------------------------------------------
// Enum <-> string names used on the wire

inline std::string to_string(HamiltonianTag t) {
  return t == HamiltonianTag::h_rotated ? "H_rotated" : "H_evomq";
}

inline HamiltonianTag hamiltonian_tag_from(const std::string& s) {
  if (s == "H_rotated") return HamiltonianTag::h_rotated;
  if (s == "H_evomq") return HamiltonianTag::h_evomq;
  throw std::invalid_argument("unknown hamiltonian_tag: " + s);
}

inline std::string to_string(RotationGenerator g) {
  switch (g) {
    case RotationGenerator::i_kx: return "I_kx";
    case RotationGenerator::i_ky: return "I_ky";
    case RotationGenerator::i_kz: return "I_kz";
    case RotationGenerator::i_lx: return "I_lx";
    case RotationGenerator::i_ly: return "I_ly";
    case RotationGenerator::i_lz: return "I_lz";
    case RotationGenerator::f_x: return "F_x";
    case RotationGenerator::f_y: return "F_y";
    case RotationGenerator::f_z: return "F_z";
  }
  return "?";
}

inline RotationGenerator rotation_generator_from(const std::string& s) {
  static const std::pair<const char*, RotationGenerator> table[] = {
      {"I_kx", RotationGenerator::i_kx}, {"I_ky", RotationGenerator::i_ky},
      {"I_kz", RotationGenerator::i_kz}, {"I_lx", RotationGenerator::i_lx},
      {"I_ly", RotationGenerator::i_ly}, {"I_lz", RotationGenerator::i_lz},
      {"F_x", RotationGenerator::f_x},   {"F_y", RotationGenerator::f_y},
      {"F_z", RotationGenerator::f_z}};
  for (const auto& [name, g] : table)
    if (s == name) return g;
  throw std::invalid_argument("unknown rotation generator: " + s +
                              " (rotations are one-qubit or collective F operations)");
}

inline std::string to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }
inline std::string to_string(DesignMethod m) {
  return m == DesignMethod::closed_form ? "closed_form" : "numeric";
}
inline std::string to_string(PropagatorForm f) {
  switch (f) {
    case PropagatorForm::form_minus: return "form_minus";
    case PropagatorForm::form_plus: return "form_plus";
    default: return "neither";
  }
}

// ---------------------------------------------------------------------------
// Struct writers (field names are the wire format)

inline void write(JsonWriter& w, const JunctionParams& p) {
  w.begin_object();
  w.key("e_ch_k").value(p.e_ch_k);
  w.key("e_ch_l").value(p.e_ch_l);
  w.key("e_j_k").value(p.e_j_k);
  w.key("e_j_l").value(p.e_j_l);
  w.key("e_l").value(p.e_l);
  w.end_object();
}

inline void write(JsonWriter& w, const SpinParams& s) {
  w.begin_object();
  w.key("omega_k").value(s.omega_k);
  w.key("omega_l").value(s.omega_l);
  w.key("j_kl").value(s.j_kl);
  w.key("phi_k").value(s.phi_k);
  w.key("phi_l").value(s.phi_l);
  w.end_object();
}

inline void write(JsonWriter& w, const DiagonalizationSolution& d) {
  w.begin_object();
  w.key("alpha1").value(d.alpha1);
  w.key("alpha2").value(d.alpha2);
  w.key("alpha").value(d.alpha);
  w.key("beta").value(d.beta);
  w.key("omega_k_prime").value(d.omega_k_prime);
  w.key("omega_l_prime").value(d.omega_l_prime);
  w.key("delta").value(d.delta);
  w.key("branch").value(to_string(d.branch));
  w.end_object();
}

inline void write(JsonWriter& w, const DesignSolution& d) {
  w.begin_object();
  w.key("lambda_kl").value(d.lambda_kl);
  w.key("m").value(d.m);
  w.key("gamma").begin_object();
  w.key("num").value(d.gamma.num);
  w.key("den").value(d.gamma.den);
  w.end_object();
  w.key("mu").value(d.mu);
  w.key("nu").value(d.nu);
  w.key("p").value(d.p);
  w.key("omega_k").value(d.omega_k);
  w.key("omega_k_prime").value(d.omega_k_prime);
  w.key("omega_l_prime").value(d.omega_l_prime);
  w.key("t_p").value(d.t_p);
  w.key("root_index").value(d.root_index);
  w.key("method").value(to_string(d.method));
  w.key("constraints_ok").begin_array();
  w.value(d.constraint_mu_gamma_ok);
  w.value(d.constraint_nu_ok);
  w.end_array();
  w.key("realized_lambda").value(d.realized_lambda);
  w.key("valid").value(d.valid);
  w.end_object();
}

inline void write(JsonWriter& w, const GateReport& r) {
  w.begin_object();
  w.key("target_name").value(r.target_name);
  w.key("fidelity").value(r.fidelity);
  w.key("realized_lambda").value(r.realized_lambda);
  w.key("global_phase").value(r.global_phase);
  w.key("step_count").value(r.step_count);
  w.key("notes").begin_array();
  for (const auto& n : r.notes) w.value(n);
  w.end_array();
  w.end_object();
}

inline void write(JsonWriter& w, const PulseSequence& seq) {
  w.begin_object();
  w.key("context");
  write(w, seq.context);
  w.key("steps").begin_array();
  for (const SequenceStep& step : seq.steps) {
    w.begin_object();
    if (const auto* free = std::get_if<FreeEvolutionStep>(&step)) {
      w.key("kind").value("free_evolution");
      w.key("hamiltonian_tag").value(to_string(free->tag));
      w.key("duration").value(free->duration);
    } else {
      const auto& rot = std::get<RotationStep>(step);
      w.key("kind").value("rotation");
      w.key("generator").value(to_string(rot.generator));
      w.key("angle").value(rot.angle);
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

// ---------------------------------------------------------------------------
// Readers

inline SpinParams spin_params_from_json(const nlohmann::json& j) {
  SpinParams s;
  s.omega_k = j.at("omega_k").get<double>();
  s.omega_l = j.at("omega_l").get<double>();
  s.j_kl = j.at("j_kl").get<double>();
  s.phi_k = j.value("phi_k", 0.0);
  s.phi_l = j.value("phi_l", 0.0);
  return s;
}

inline JunctionParams junction_params_from_json(const nlohmann::json& j) {
  JunctionParams p;
  p.e_ch_k = j.at("e_ch_k").get<double>();
  p.e_ch_l = j.at("e_ch_l").get<double>();
  p.e_j_k = j.at("e_j_k").get<double>();
  p.e_j_l = j.at("e_j_l").get<double>();
  p.e_l = j.at("e_l").get<double>();
  return p;
}

inline DesignSolution design_from_json(const nlohmann::json& j) {
  DesignSolution d;
  d.lambda_kl = j.at("lambda_kl").get<double>();
  d.m = j.at("m").get<int>();
  d.gamma.num = j.at("gamma").at("num").get<long long>();
  d.gamma.den = j.at("gamma").at("den").get<long long>();
  d.mu = j.at("mu").get<double>();
  d.nu = j.at("nu").get<double>();
  d.p = j.value("p", 0.0);
  d.omega_k = j.value("omega_k", 1.0);
  d.omega_k_prime = j.value("omega_k_prime", 0.0);
  d.omega_l_prime = j.value("omega_l_prime", 0.0);
  d.t_p = j.at("t_p").get<double>();
  d.root_index = j.value("root_index", 0);
  d.method = j.value("method", std::string("numeric")) == "closed_form"
                 ? DesignMethod::closed_form
                 : DesignMethod::numeric;
  d.realized_lambda = j.value("realized_lambda", 0.0);
  return d;
}

inline PulseSequence sequence_from_json(const nlohmann::json& j) {
  PulseSequence seq;
  seq.context = spin_params_from_json(j.at("context"));
  for (const auto& js : j.at("steps")) {
    const std::string kind = js.at("kind").get<std::string>();
    if (kind == "free_evolution") {
      FreeEvolutionStep step;
      step.tag = hamiltonian_tag_from(js.at("hamiltonian_tag").get<std::string>());
      step.duration = js.at("duration").get<double>();
      if (step.duration < 0.0) throw std::invalid_argument("sequence: negative duration");
      seq.steps.push_back(step);
    } else if (kind == "rotation") {
      RotationStep step;
      step.generator = rotation_generator_from(js.at("generator").get<std::string>());
      step.angle = js.at("angle").get<double>();
      seq.steps.push_back(step);
    } else {
      throw std::invalid_argument("sequence: unknown step kind " + kind);
    }
  }
  return seq;
}

}  // namespace jjgate
