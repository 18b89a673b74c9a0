#include "congestcut/transcript.hpp"

#include <cmath>

#include <json.hpp>

#include "congestcut/config.hpp"

namespace congestcut::sim {

void Transcript::absorb(const Transcript& t) {
  rounds_elapsed += t.rounds_elapsed;
  per_round_messages.insert(per_round_messages.end(), t.per_round_messages.begin(),
                            t.per_round_messages.end());
  violations.insert(violations.end(), t.violations.begin(), t.violations.end());
  charges.insert(charges.end(), t.charges.begin(), t.charges.end());
  stage_modes.insert(stage_modes.end(), t.stage_modes.begin(), t.stage_modes.end());
}

std::string Transcript::to_json() const {
  nlohmann::json j;
  j["rounds"] = total_rounds();
  j["rounds_simulated"] = rounds_elapsed;
  j["rounds_charged"] = charged_rounds();
  j["halts"] = halt_round;
  j["charges"] = nlohmann::json::array();
  for (const auto& c : charges) {
    nlohmann::json jc;
    jc["label"] = c.label;
    jc["formula"] = c.formula;
    jc["inputs"] = c.inputs;
    jc["rounds"] = c.rounds;
    j["charges"].push_back(jc);
  }
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations)
    j["violations"].push_back({{"round", v.round}, {"node", v.node}, {"edge", v.edge},
                               {"words", v.words}});
  j["stages"] = nlohmann::json::array();
  for (const auto& [stage, mode] : stage_modes)
    j["stages"].push_back({{"stage", stage}, {"mode", mode}});
  j["messages_total"] = [&] {
    std::int64_t s = 0;
    for (auto c : per_round_messages) s += c;
    return s;
  }();
  return j.dump(2);
}

void ChargeFormulas::register_formula(const std::string& label, const std::string& text,
                                      Formula f) {
  table_[label] = Entry{text, std::move(f)};
}

ChargedOracleCall ChargeFormulas::evaluate(const std::string& label,
                                           const std::map<std::string, double>& inputs) const {
  auto it = table_.find(label);
  if (it == table_.end()) throw domain_error("unregistered charge formula: " + label);
  ChargedOracleCall call;
  call.label = label;
  call.formula = it->second.text;
  call.inputs = inputs;
  double value = it->second.fn(inputs);
  if (value < 0) throw domain_error("negative round charge for " + label);
  call.rounds = static_cast<std::int64_t>(std::ceil(value));
  return call;
}

std::int64_t ChargeFormulas::charge(Transcript& t, const std::string& label,
                                    const std::map<std::string, double>& inputs) const {
  ChargedOracleCall call = evaluate(label, inputs);
  t.charges.push_back(call);
  return call.rounds;
}

int log_star2(double x) {
  int k = 0;
  while (x > 1.0) {
    x = std::log2(x);
    ++k;
    if (k > 64) break;
  }
  return k;
}

namespace {
double at(const std::map<std::string, double>& m, const std::string& k) {
  auto it = m.find(k);
  if (it == m.end()) throw domain_error("charge formula missing input: " + k);
  return it->second;
}
double clog2(double x) { return std::ceil(std::log2(std::max(2.0, x))); }
}  // namespace

ChargeFormulas ChargeFormulas::standard(const Config& cfg) {
  ChargeFormulas f;
  f.register_formula(
      "c_slot_mst", "c_mst * (D + sqrt(n*l)) * ceil(log2 n)",
      [c = cfg.c_mst](const std::map<std::string, double>& in) {
        return c * (at(in, "D") + std::sqrt(at(in, "n") * at(in, "l"))) * clog2(at(in, "n"));
      });
  f.register_formula(
      "lambda_estimate",
      "c_ns14 * (sqrt(n)*logstar(n) + D) * eps^-5 * ceil(log2 n)^3",
      [c = cfg.c_ns14](const std::map<std::string, double>& in) {
        double n = at(in, "n");
        double eps = at(in, "eps");
        double lg = clog2(n);
        return c * (std::sqrt(n) * log_star2(n) + at(in, "D")) * std::pow(eps, -5.0) *
               lg * lg * lg;
      });
  f.register_formula(
      "ns14_exact_mincut",
      "c_ns14 * (sqrt(n)*logstar(n) + D) * lambda^4 * ceil(log2 n)^2",
      [c = cfg.c_ns14](const std::map<std::string, double>& in) {
        double n = at(in, "n");
        double lam = at(in, "lambda");
        double lg = clog2(n);
        return c * (std::sqrt(n) * log_star2(n) + at(in, "D")) * std::pow(lam, 4.0) * lg * lg;
      });
  f.register_formula(
      "low_conductance_cut", "c_lc * (D + n^(10*rho) * ceil(log2 m)^3)",
      [c = cfg.c_lc](const std::map<std::string, double>& in) {
        double lg = clog2(at(in, "m"));
        return c * (at(in, "D") + std::pow(at(in, "n"), 10.0 * at(in, "rho")) * lg * lg * lg);
      });
  f.register_formula(
      "broadcast", "c_bcast * (D + 1)",
      [c = cfg.c_bcast](const std::map<std::string, double>& in) {
        return c * (at(in, "D") + 1.0);
      });
  f.register_formula(
      "low_degree_peel", "c_bcast * (D + removed / n_gamma + 1)",
      [c = cfg.c_bcast](const std::map<std::string, double>& in) {
        return c * (at(in, "D") + at(in, "removed") / std::max(1.0, at(in, "n_gamma")) + 1.0);
      });
  f.register_formula(
      "two_respect_tree", "c_bcast * (5 * depth + n + D + 3)",
      [c = cfg.c_bcast](const std::map<std::string, double>& in) {
        return c * (5.0 * at(in, "depth") + at(in, "n") + at(in, "D") + 3.0);
      });
  f.register_formula(
      "trim_shave", "trimmed + D * ceil(log2(trimmed + 2))",
      [](const std::map<std::string, double>& in) {
        double t = at(in, "trimmed");
        return t + at(in, "D") * std::ceil(std::log2(t + 2.0));
      });
  return f;
}

}  // namespace congestcut::sim
