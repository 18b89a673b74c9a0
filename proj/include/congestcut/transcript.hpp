#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "congestcut/errors.hpp"

namespace congestcut {
struct Config;
}

namespace congestcut::sim {

/// One black-box subroutine call whose round cost is charged by a cited
/// formula instead of being simulated. The formula text is recorded
/// verbatim so a report reader can recompute the charge.
struct ChargedOracleCall {
  std::string label;
  std::string formula;
  std::map<std::string, double> inputs;
  std::int64_t rounds = 0;
};

struct BandwidthViolation {
  std::int64_t round = 0;
  int node = -1;
  int edge = -1;
  int words = 0;
};

/// Round and message accounting for one run or one pipeline stage.
struct Transcript {
  std::int64_t rounds_elapsed = 0;          // simulated synchronous rounds
  std::vector<std::int64_t> per_round_messages;
  std::vector<std::int64_t> halt_round;     // per node, -1 if never halted
  std::vector<BandwidthViolation> violations;
  std::vector<ChargedOracleCall> charges;
  std::vector<std::pair<std::string, std::string>> stage_modes;  // stage -> simulated|charged

  std::int64_t charged_rounds() const {
    std::int64_t total = 0;
    for (const auto& c : charges) total += c.rounds;
    return total;
  }
  std::int64_t total_rounds() const { return rounds_elapsed + charged_rounds(); }

  void declare_stage(const std::string& stage, bool simulated) {
    stage_modes.emplace_back(stage, simulated ? "simulated" : "charged");
  }

  /// Merge a sub-stage transcript: rounds add up, logs concatenate.
  void absorb(const Transcript& t);

  std::string to_json() const;
};

/// Registry of named round-charge formulas. charge() appends the ceiling
/// of the formula value to the transcript. Unregistered labels throw.
class ChargeFormulas {
 public:
  using Formula = std::function<double(const std::map<std::string, double>&)>;

  void register_formula(const std::string& label, const std::string& text, Formula f);
  bool has(const std::string& label) const { return table_.count(label) > 0; }

  ChargedOracleCall evaluate(const std::string& label,
                             const std::map<std::string, double>& inputs) const;
  std::int64_t charge(Transcript& t, const std::string& label,
                      const std::map<std::string, double>& inputs) const;

  /// Formulas used by the pipeline, with constants from the config.
  static ChargeFormulas standard(const Config& cfg);

 private:
  struct Entry {
    std::string text;
    Formula fn;
  };
  std::map<std::string, Entry> table_;
};

/// Iterated log base 2, the log* in MST-style round bounds.
int log_star2(double x);

}  // namespace congestcut::sim
