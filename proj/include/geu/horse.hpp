#pragma once

#include "geu/lottery.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace geu {

/// A horse lottery: one roulette lottery (by index) per state.
struct HorseLottery {
  std::string name;
  std::vector<std::size_t> outcome;
};

/// Second-level expectation domain and beliefs over the states.
struct OuterPart {
  ExpectationPtr expectation;
  PlausibilityMeasure measure;
};

/// (H, E^, u, E, Pl): horse lotteries over states into an inner lottery
/// situation, with an optional outer expectation domain whose utility
/// domain is the inner valuation domain.
class AADecisionProblem {
 public:
  AADecisionProblem(std::vector<std::string> states, LotteryDecisionProblem inner, std::vector<HorseLottery> horses,
                    std::optional<OuterPart> outer = std::nullopt)
      : states_(std::move(states)), inner_(std::move(inner)), horses_(std::move(horses)), outer_(std::move(outer)) {
    if (states_.empty()) throw Error(Errc::InvalidInput, "no states");
    if (horses_.empty()) throw Error(Errc::InvalidInput, "no horse lotteries");
    detail::require_unique(states_, "state");
    std::vector<std::string> names;
    const auto nl = inner_.situation().lotteries().size();
    for (const auto& h : horses_) {
      names.push_back(h.name);
      if (h.outcome.size() != states_.size())
        throw Error(Errc::InvalidInput, "horse lottery '" + h.name + "' is not total on the states");
      for (auto l : h.outcome)
        if (l >= nl) throw Error(Errc::UnknownLottery, "horse lottery '" + h.name + "' leaves L");
    }
    detail::require_unique(names, "horse lottery");
    if (outer_) {
      if (!same_domain(outer_->expectation->u, inner_.expectation().v))
        throw Error(Errc::DomainMismatch, "outer utility domain is not the inner valuation domain");
      if (outer_->measure.states() != states_)
        throw Error(Errc::DomainMismatch, "outer measure states differ from the problem's states");
      if (!same_domain(outer_->measure.domain(), outer_->expectation->p))
        throw Error(Errc::DomainMismatch, "outer measure values are not in the outer P");
    }
  }

  const std::vector<std::string>& states() const { return states_; }
  const LotteryDecisionProblem& inner() const { return inner_; }
  const std::vector<HorseLottery>& horses() const { return horses_; }
  const std::optional<OuterPart>& outer() const { return outer_; }

  const HorseLottery& horse(const std::string& name) const {
    for (const auto& h : horses_)
      if (h.name == name) return h;
    throw Error(Errc::UnknownAct, name);
  }

 private:
  std::vector<std::string> states_;
  LotteryDecisionProblem inner_;
  std::vector<HorseLottery> horses_;
  std::optional<OuterPart> outer_;
};

/// u(l) = the inner expectation of u under l.
inline Value extend_utility(const AADecisionProblem& p, const std::string& lottery) {
  return lottery_geu(p.inner(), lottery);
}

inline Value extend_utility(const AADecisionProblem& p, const Lottery& l) { return lottery_geu(p.inner(), l); }

inline const OuterPart& require_outer(const AADecisionProblem& p) {
  if (!p.outer()) throw Error(Errc::MissingOuterPart, "problem has no outer expectation domain");
  return *p.outer();
}

/// Outer oplus-fold of Pl(u_h^{-1}(x)) (x) x, where u_h(s) = u(h(s)).
inline Value horse_geu(const AADecisionProblem& p, const HorseLottery& h) {
  const auto& outer = require_outer(p);
  const auto& ls = p.inner().situation().lotteries();
  UtilityRandomVariable rv;
  for (auto l : h.outcome) rv.push_back(extend_utility(p, ls[l]));
  std::optional<Value> acc;
  for (const auto& [x, pre] : utility_levels(rv)) {
    auto term = outer.expectation->otimes(outer.measure(pre), x);
    acc = acc ? outer.expectation->oplus(*acc, term) : std::move(term);
  }
  return *acc;
}

inline Value horse_geu(const AADecisionProblem& p, const std::string& h) { return horse_geu(p, p.horse(h)); }

/// The act problem with horse lotteries as acts and roulette lotteries as
/// consequences, valued by the extended utility.
inline DecisionProblem flatten(const AADecisionProblem& p) {
  const auto& outer = require_outer(p);
  const auto& ls = p.inner().situation();
  std::vector<Act> acts;
  for (const auto& h : p.horses()) acts.push_back(Act{h.name, h.outcome});
  auto sit = std::make_shared<DecisionSituation>(p.states(), ls.names(), std::move(acts));
  std::vector<Value> utility;
  for (const auto& l : ls.lotteries()) utility.push_back(extend_utility(p, l));
  return DecisionProblem(sit, outer.expectation->u, std::move(utility),
                         PlausibilisticPart{outer.expectation, outer.measure});
}

}  // namespace geu
