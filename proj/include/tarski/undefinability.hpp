#pragma once

// Runs a proposed truth definition against its own liar sentence.

#include "tarski/truth_hierarchy.hpp"

namespace tarski {

enum class Conclusion {
  /// sigma and phi(code of sigma) have opposite determined verdicts.
  Disagreement,
  /// The budget did not settle one of the two sides.
  Unknown,
  /// Both sides determined and equal. Impossible for a correct liar
  /// construction; surfaced rather than hidden.
  Agreement,
};

inline std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Disagreement:
      return "disagreement";
    case Conclusion::Unknown:
      return "unknown";
    case Conclusion::Agreement:
      return "agreement";
  }
  return "?";
}

struct DemonstrationReport {
  std::string candidate;
  unsigned level = 0;
  std::string sigma;
  Nat sigma_code;
  TruthValue3 sigma_value;
  TruthValue3 candidate_value;  // phi(numeral(code of sigma))
  Conclusion conclusion = Conclusion::Unknown;
  std::string explanation;
};

/// sigma := liar(phi). A truth definition would need phi(code of sigma) to
/// match sigma, but sigma says exactly ~phi(code of sigma).
inline DemonstrationReport tarski_demonstrate(const Formula& phi, const Budget& budget, unsigned level = 0) {
  check_formula(phi, language_level(level, std::max(level, kDefaultMaxLevel)));
  const Formula sigma = liar(phi);
  const Formula claim = instantiate_with_code(phi, sigma);
  const unsigned max_level = std::max(level, kDefaultMaxLevel);

  DemonstrationReport r;
  r.candidate = to_text(phi);
  r.level = level;
  r.sigma = to_text(sigma);
  r.sigma_code = encode(sigma).value;
  r.sigma_value = eval_level(sigma, {}, budget, level, max_level);
  r.candidate_value = eval_level(claim, {}, budget, level, max_level);

  if (!r.sigma_value.determined() || !r.candidate_value.determined()) {
    r.conclusion = Conclusion::Unknown;
    r.explanation = "budget exhausted before both sides were determined; no verdict is claimed";
  } else if (r.sigma_value.verdict != r.candidate_value.verdict) {
    r.conclusion = Conclusion::Disagreement;
    r.explanation = "sigma is " + to_string(r.sigma_value) + " but the candidate says " +
                    to_string(r.candidate_value) +
                    " of its code; a candidate agreeing here would put both sigma and its negation's "
                    "content in the truth set, breaking the negation clause";
  } else {
    r.conclusion = Conclusion::Agreement;
    r.explanation = "both sides agree, which the liar construction rules out; this indicates an evaluator defect";
  }
  return r;
}

}  // namespace tarski
