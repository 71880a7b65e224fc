#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace geu {

enum class Errc {
  AxiomViolation,
  NotAProbability,
  UnknownAct,
  NotPlausibilistic,
  NotStandard,
  UniverseMismatch,
  NotTotallyOrdered,
  NonNumericUtility,
  NotCredalProblem,
  NotStandardDomain,
  NotABeliefFunction,
  DomainMismatch,
  NotUniform,
  NotRespectingUtility,
  NotWeaklyRespectingUtility,
  InconsistentTable,
  UnknownLottery,
  TooLarge,
  MissingOuterPart,
  InvalidInput,
  ParseError,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::AxiomViolation: return "AxiomViolation";
    case Errc::NotAProbability: return "NotAProbability";
    case Errc::UnknownAct: return "UnknownAct";
    case Errc::NotPlausibilistic: return "NotPlausibilistic";
    case Errc::NotStandard: return "NotStandard";
    case Errc::UniverseMismatch: return "UniverseMismatch";
    case Errc::NotTotallyOrdered: return "NotTotallyOrdered";
    case Errc::NonNumericUtility: return "NonNumericUtility";
    case Errc::NotCredalProblem: return "NotCredalProblem";
    case Errc::NotStandardDomain: return "NotStandardDomain";
    case Errc::NotABeliefFunction: return "NotABeliefFunction";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::NotUniform: return "NotUniform";
    case Errc::NotRespectingUtility: return "NotRespectingUtility";
    case Errc::NotWeaklyRespectingUtility: return "NotWeaklyRespectingUtility";
    case Errc::InconsistentTable: return "InconsistentTable";
    case Errc::UnknownLottery: return "UnknownLottery";
    case Errc::TooLarge: return "TooLarge";
    case Errc::MissingOuterPart: return "MissingOuterPart";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::ParseError: return "ParseError";
  }
  return "Error";
}

/// Library error. `detail` names the violated axiom or the offending
/// item; `witness` holds the rendered elements that exhibit the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string detail, std::vector<std::string> witness = {})
      : std::runtime_error(render(code, detail, witness)),
        code_(code),
        detail_(std::move(detail)),
        witness_(std::move(witness)) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  static std::string render(Errc code, const std::string& detail,
                            const std::vector<std::string>& witness) {
    std::string out(errc_name(code));
    if (!detail.empty()) out += "(" + detail + ")";
    if (!witness.empty()) {
      out += ": witness (";
      for (std::size_t i = 0; i < witness.size(); ++i) {
        if (i) out += ", ";
        out += witness[i];
      }
      out += ")";
    }
    return out;
  }

  Errc code_;
  std::string detail_;
  std::vector<std::string> witness_;
};

}  // namespace geu
