#include "geu/geu.hpp"
#include "geu/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using geu::Json;

enum Exit { kOk = 0, kPropertyFailure = 1, kInputError = 2 };

struct Options {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.json()) std::cout << j.dump(2) << '\n';
  else std::cout << text;
}

std::string pad(const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

std::size_t width(const std::vector<std::string>& xs) {
  std::size_t w = 0;
  for (const auto& x : xs) w = std::max(w, x.size());
  return w;
}

Json witness_json(const geu::Error& e) {
  Json j;
  j["error"] = std::string(geu::errc_name(e.code()));
  j["detail"] = e.detail();
  j["witness"] = e.witness();
  return j;
}

std::string measure_text(const geu::PlausibilityMeasure& pl) {
  std::ostringstream os;
  std::vector<std::string> names;
  for (geu::Subset x = 0; x <= pl.full(); ++x) names.push_back(geu::subset_str(x, pl.states()));
  auto w = width(names);
  for (geu::Subset x = 0; x <= pl.full(); ++x) os << "  " << pad(names[x], w) << "  " << pl(x).str() << '\n';
  return os.str();
}

Json measure_json(const geu::PlausibilityMeasure& pl) {
  Json rows = Json::array();
  for (geu::Subset x = 0; x <= pl.full(); ++x) rows.push_back({{"set", geu::subset_str(x, pl.states())}, {"value", pl(x).str()}});
  return rows;
}

std::string lottery_text(const geu::Lottery& l) {
  std::ostringstream os;
  os << l.name << ": support {";
  for (std::size_t i = 0; i < l.support.size(); ++i) os << (i ? "," : "") << l.support[i];
  os << "}\n" << measure_text(l.measure);
  return os.str();
}

Json lottery_json(const geu::Lottery& l) {
  Json j;
  j["name"] = l.name;
  j["support"] = l.support;
  j["table"] = measure_json(l.measure);
  return j;
}

std::string situation_text(const geu::DecisionSituation& sit) {
  std::ostringstream os;
  os << "states:";
  for (const auto& s : sit.states()) os << ' ' << s;
  os << "\nacts:\n";
  auto w = width(sit.act_names());
  for (const auto& a : sit.acts()) {
    os << "  " << pad(a.name, w) << " ";
    for (auto c : a.outcome) os << ' ' << sit.consequences()[c];
    os << '\n';
  }
  return os.str();
}

Json situation_json(const geu::DecisionSituation& sit) {
  Json acts = Json::array();
  for (const auto& a : sit.acts()) {
    std::vector<std::string> out;
    for (auto c : a.outcome) out.push_back(sit.consequences()[c]);
    acts.push_back({{"name", a.name}, {"outcome", out}});
  }
  return {{"states", sit.states()}, {"consequences", sit.consequences()}, {"acts", acts}};
}

std::string relation_text(const geu::PreferenceRelation& r) {
  std::ostringstream os;
  os << "relation:\n" << geu::render_matrix(r);
  for (const auto& line : geu::relation_lines(r)) os << line << '\n';
  return os.str();
}

std::string values_text(const std::vector<std::string>& names, const std::vector<geu::Value>& values) {
  std::ostringstream os;
  auto w = width(names);
  os << "values:\n";
  for (std::size_t i = 0; i < names.size(); ++i) os << "  " << pad(names[i], w) << "  " << values[i].str() << '\n';
  return os.str();
}

Json values_json(const std::vector<std::string>& names, const std::vector<geu::Value>& values) {
  Json j = Json::object();
  for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = values[i].str();
  return j;
}

/// Rules that read no beliefs run on the problem with its measure dropped.
geu::DecisionProblem rule_input(const geu::DecisionProblem& d, const std::string& rule) {
  if ((rule == "maximin" || rule == "regret") && d.plausibilistic()) return d.without_beliefs();
  return d;
}

geu::PreferenceRelation apply_rule(const geu::DecisionProblem& d, const std::string& name) {
  const auto& rule = geu::find_rule(name);
  auto input = rule_input(d, name);
  if (auto why = rule.why_not(input))
    throw geu::Error(geu::Errc::InvalidInput, "rule '" + name + "' does not apply: " + *why);
  return rule.evaluate(input);
}

// ---------------------------------------------------------------- eval

int cmd_eval(const Options& o, const std::string& file, const std::string& rule_name) {
  auto doc = geu::load_problem(file);
  if (auto* lp = std::get_if<geu::LotteryDecisionProblem>(&doc)) {
    if (rule_name != "geu") throw geu::Error(geu::Errc::InvalidInput, "lottery problems are evaluated with 'geu'");
    auto names = lp->situation().names();
    std::vector<geu::Value> values;
    for (const auto& n : names) values.push_back(geu::lottery_geu(*lp, n));
    auto r = geu::rule_lottery_geu(*lp);
    Json j{{"rule", rule_name}, {"values", values_json(names, values)}, {"relation", geu::relation_json(r)}};
    emit(o, j, "rule: " + rule_name + "\n" + values_text(names, values) + relation_text(r));
    return kOk;
  }
  if (std::holds_alternative<geu::AADecisionProblem>(doc))
    throw geu::Error(geu::Errc::InvalidInput, "Anscombe-Aumann problems are evaluated with 'aa eval'");
  const auto& d = std::get<geu::DecisionProblem>(doc);
  const auto& rule = geu::find_rule(rule_name);
  auto input = rule_input(d, rule_name);
  if (auto why = rule.why_not(input))
    throw geu::Error(geu::Errc::InvalidInput, "rule '" + rule_name + "' does not apply: " + *why);
  auto values = rule.scores(input);
  auto r = rule.evaluate(input);
  auto names = d.situation().act_names();
  std::string label = rule_name == "regret" ? "rule: regret (values are maximal regrets, lower is better)\n"
                                            : "rule: " + rule_name + "\n";
  Json j{{"rule", rule_name}, {"values", values_json(names, values)}, {"relation", geu::relation_json(r)}};
  emit(o, j, label + values_text(names, values) + relation_text(r));
  return kOk;
}

// ---------------------------------------------------------------- represent

struct AxiomReport {
  bool ok = true;
  std::string failure;
  Json json;
  std::string text;
};

AxiomReport axiom_report(const geu::DecisionProblem& t) {
  AxiomReport rep;
  const auto& e = t.expectation();
  geu::AxiomProbe probe;
  probe.samples = geu::kConstructedProbeSamples;
  probe.head = geu::kConstructedProbeHead;
  probe.u = t.utility();
  probe.p = t.measure().table();
  std::ostringstream os;
  os << std::boolalpha;
  try {
    geu::verify_expectation_axioms(e, probe);
    t.measure().validate();
  } catch (const geu::Error& err) {
    rep.ok = false;
    rep.failure = err.what();
  }
  os << "axioms: " << (rep.ok ? "E1-E4 and Pl1-Pl3 hold" : rep.failure) << '\n';
  os << "  U: " << e.u->name() << "\n  P: " << e.p->name();
  Json pj{{"name", e.p->name()}, {"finite", e.p->finite()}};
  if (const auto& r = e.p->report()) {
    os << " (reflexive=" << r->reflexive << " transitive=" << r->transitive << " antisymmetric=" << r->antisymmetric
       << " total=" << r->total << ")";
    pj["reflexive"] = r->reflexive;
    pj["transitive"] = r->transitive;
    pj["antisymmetric"] = r->antisymmetric;
    pj["total"] = r->total;
  }
  os << "\n  V: " << e.v->name() << " (transitive=" << e.v->transitive() << ")\n";
  rep.text = os.str();
  rep.json = {{"ok", rep.ok},
              {"failure", rep.failure},
              {"u", e.u->name()},
              {"p", pj},
              {"v", {{"name", e.v->name()}, {"transitive", e.v->transitive()}}}};
  return rep;
}

int cmd_represent(const Options& o, const std::string& file, const std::string& rule_name, const std::string& mode) {
  auto d = geu::load_act_problem(file);
  auto r = apply_rule(d, rule_name);
  geu::DecisionProblem t = d;
  try {
    if (mode == "example") t = geu::transformation_for_rule(rule_name).apply(d);
    else if (mode == "thm2") t = geu::represent_uniform(d, r);
    else t = geu::represent_ordinal(d, r);
  } catch (const geu::Error& e) {
    switch (e.code()) {
      case geu::Errc::NotUniform:
      case geu::Errc::NotRespectingUtility:
      case geu::Errc::NotWeaklyRespectingUtility:
      case geu::Errc::InconsistentTable: {
        std::ostringstream os;
        os << "representation failed: " << e.what() << '\n';
        if (e.code() == geu::Errc::NotUniform && e.witness().size() == 4) {
          const auto& w = e.witness();
          os << "witness: " << w[0] << " ~ " << w[2] << " and " << w[1] << " ~ " << w[3] << ", but the rule orders ("
             << w[0] << ", " << w[1] << ") and (" << w[2] << ", " << w[3] << ") differently\n";
        }
        Json j{{"rule", rule_name}, {"mode", mode}, {"represented", false}, {"failure", witness_json(e)}};
        emit(o, j, os.str());
        return kPropertyFailure;
      }
      default:
        throw;
    }
  }
  auto g = geu::rule_geu(t);
  const bool cong = geu::congruent(t, d);
  const bool sim = geu::similar(t, d);
  const bool eq = geu::relation_equal(g, r);
  auto rep = axiom_report(t);
  std::ostringstream os;
  os << "rule: " << rule_name << "\nmode: " << mode << "\ncongruent: " << (cong ? "true" : "false")
     << "\nsimilar: " << (sim ? "true" : "false") << "\nequal: " << (eq ? "true" : "false") << '\n'
     << rep.text;
  Json j{{"rule", rule_name}, {"mode", mode},   {"represented", true},
         {"congruent", cong}, {"similar", sim}, {"equal", eq},
         {"axioms", rep.json}};
  emit(o, j, os.str());
  const bool want_congruent = mode != "thm3";
  return eq && rep.ok && (want_congruent ? cong : sim) ? kOk : kPropertyFailure;
}

// ---------------------------------------------------------------- check

int cmd_check(const Options& o, const std::string& property, const std::string& file, const std::string& rule_name) {
  auto d = geu::load_act_problem(file);
  auto r = apply_rule(d, rule_name);
  bool holds = true;
  std::vector<std::string> witness;
  if (property == "uniform") {
    if (auto w = geu::uniformity_witness(r, d)) {
      holds = false;
      witness = w->names();
    }
  } else if (property == "respects-utility" || property == "weakly-respects-utility") {
    auto w = property == "respects-utility" ? geu::respects_utility_witness(r, d)
                                            : geu::weakly_respects_utility_witness(r, d);
    if (w) {
      holds = false;
      witness = {w->first, w->second};
    }
  } else {
    if (!d.plausibilistic()) throw geu::Error(geu::Errc::NotPlausibilistic, "lottery-uniform needs a measure");
    if (auto w = geu::lottery_uniformity_witness(geu::plausibilistic_situation(d), r)) {
      holds = false;
      witness = *w;
    }
  }
  std::ostringstream os;
  os << property << " (" << rule_name << "): " << (holds ? "holds" : "fails") << '\n';
  if (!holds) {
    os << "witness:";
    for (const auto& w : witness) os << ' ' << w;
    os << '\n';
  }
  Json j{{"property", property}, {"rule", rule_name}, {"holds", holds}, {"witness", witness}};
  emit(o, j, os.str());
  return holds ? kOk : kPropertyFailure;
}

// ---------------------------------------------------------------- lottery

int cmd_lottery(const Options& o, const std::string& action, const std::string& file) {
  auto doc = geu::load_problem(file);
  if (action == "induce") {
    const auto* d = std::get_if<geu::DecisionProblem>(&doc);
    if (!d || !d->plausibilistic()) throw geu::Error(geu::Errc::NotPlausibilistic, "induce needs an act problem with a measure");
    auto ps = geu::plausibilistic_situation(*d);
    auto induced = geu::induce_situation(ps);
    std::ostringstream os;
    Json acts = Json::object();
    const auto& ls = induced.situation.lotteries();
    for (std::size_t i = 0; i < d->situation().acts().size(); ++i) {
      const auto& name = d->situation().acts()[i].name;
      os << name << " -> " << ls[induced.act_lottery[i]].name << '\n';
      acts[name] = ls[induced.act_lottery[i]].name;
    }
    Json lj = Json::array();
    for (const auto& l : ls) {
      os << lottery_text(l);
      lj.push_back(lottery_json(l));
    }
    emit(o, {{"acts", acts}, {"lotteries", lj}}, os.str());
    return kOk;
  }
  const geu::LotteryDecisionSituation* ls = nullptr;
  if (auto* lp = std::get_if<geu::LotteryDecisionProblem>(&doc)) ls = &lp->situation();
  if (!ls) throw geu::Error(geu::Errc::InvalidInput, action + " needs a lottery problem");
  auto ps = action == "construct" ? geu::construct_situation(*ls) : geu::construct_situation_standard(*ls);
  std::ostringstream os;
  os << situation_text(*ps.situation) << "measure:\n" << measure_text(ps.measure);
  bool round_trip = true;
  for (const auto& l : ls->lotteries())
    round_trip = round_trip && geu::same_lottery(geu::induce_lottery(ps, l.name), l);
  os << "round trip: " << (round_trip ? "every lottery is induced by its act" : "FAILED") << '\n';
  Json j = situation_json(*ps.situation);
  j["measure"] = measure_json(ps.measure);
  j["round_trip"] = round_trip;
  emit(o, j, os.str());
  return round_trip ? kOk : kPropertyFailure;
}

// ---------------------------------------------------------------- aa

int cmd_aa(const Options& o, const std::string& action, const std::string& file) {
  auto doc = geu::load_problem(file);
  const auto* p = std::get_if<geu::AADecisionProblem>(&doc);
  if (!p) throw geu::Error(geu::Errc::InvalidInput, "'" + file + "' is not an Anscombe-Aumann problem");
  if (action == "flatten") {
    auto d = geu::flatten(*p);
    std::ostringstream os;
    os << situation_text(d.situation()) << "utility:\n";
    Json uj = Json::object();
    const auto& cs = d.situation().consequences();
    auto w = width(cs);
    for (std::size_t c = 0; c < cs.size(); ++c) {
      os << "  " << pad(cs[c], w) << "  " << d.utility(c).str() << '\n';
      uj[cs[c]] = d.utility(c).str();
    }
    os << "measure:\n" << measure_text(d.measure());
    Json j = situation_json(d.situation());
    j["utility"] = uj;
    j["measure"] = measure_json(d.measure());
    emit(o, j, os.str());
    return kOk;
  }
  std::vector<std::string> names;
  std::vector<geu::Value> values;
  for (const auto& h : p->horses()) {
    names.push_back(h.name);
    values.push_back(geu::horse_geu(*p, h));
  }
  auto r = geu::rule_geu(geu::flatten(*p));
  Json j{{"values", values_json(names, values)}, {"relation", geu::relation_json(r)}};
  emit(o, j, values_text(names, values) + relation_text(r));
  return kOk;
}

// ---------------------------------------------------------------- fuzz

struct FuzzOptions {
  std::uint64_t seed = 42;
  std::size_t count = 100;
  std::vector<std::string> suites;
  unsigned threads = 0;
  std::size_t states = 0;
  std::size_t acts = 0;
  std::size_t consequences = 0;
};

int cmd_fuzz(const Options& o, const FuzzOptions& f) {
  std::vector<geu::Suite> suites;
  if (f.suites.empty()) suites = geu::suite_registry();
  else
    for (const auto& name : f.suites) suites.push_back(geu::find_suite(name));
  bool all_ok = true;
  std::ostringstream os;
  Json arr = Json::array();
  if (f.count == 0) os << "no cases run\n";
  for (auto s : suites) {
    if (f.count == 0) break;
    if (f.states) s.caps.states = f.states;
    if (f.acts) s.caps.acts = f.acts;
    if (f.consequences) s.caps.consequences = f.consequences;
    auto rep = geu::run_suite(s, f.seed, f.count, f.threads);
    all_ok = all_ok && rep.ok();
    Json j{{"suite", rep.name}, {"passed", rep.passed}, {"failed", rep.failed}, {"ok", rep.ok()}};
    if (rep.expected_failures) {
      os << pad(rep.name, 18) << "expected failures: witness found in " << rep.passed << " of " << f.count << " cases\n";
      if (!rep.first_witness.empty()) os << "  first witness: " << rep.first_witness << '\n';
      j["expected_failures"] = true;
      j["first_witness"] = rep.first_witness;
    } else {
      os << pad(rep.name, 18) << "passed " << rep.passed << "  failed " << rep.failed << '\n';
    }
    if (rep.first_failing_seed && !rep.expected_failures) {
      os << "  first failing seed: " << *rep.first_failing_seed << '\n';
      j["first_failing_seed"] = *rep.first_failing_seed;
      if (rep.shrunk) {
        os << "  shrunk caps: states=" << rep.shrunk->states << " acts=" << rep.shrunk->acts
           << " consequences=" << rep.shrunk->consequences << '\n';
        j["shrunk"] = {{"states", rep.shrunk->states}, {"acts", rep.shrunk->acts},
                       {"consequences", rep.shrunk->consequences}};
      }
      os << "  failure: " << rep.first_failure << '\n';
      j["failure"] = rep.first_failure;
    }
    arr.push_back(j);
  }
  emit(o, Json{{"seed", f.seed}, {"count", f.count}, {"suites", arr}, {"ok", all_ok}}, os.str());
  return all_ok ? kOk : kPropertyFailure;
}

std::vector<std::string> rule_names() {
  std::vector<std::string> out;
  for (const auto& r : geu::rule_registry()) out.push_back(r.name);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized expected utility: evaluate rules, build representations, run property suites"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  std::string file, rule, mode, property, action;
  auto rules = rule_names();

  auto* eval = app.add_subcommand("eval", "Evaluate a decision rule on a problem file");
  eval->add_option("file", file)->required()->check(CLI::ExistingFile);
  eval->add_option("rule", rule)->required()->check(CLI::IsMember(rules));

  auto* represent = app.add_subcommand("represent", "Represent a rule as GEU on a problem file");
  represent->add_option("file", file)->required()->check(CLI::ExistingFile);
  represent->add_option("rule", rule)->required()->check(CLI::IsMember(rules));
  represent->add_option("mode", mode)->required()->check(CLI::IsMember({"example", "thm2", "thm3"}));

  auto* check = app.add_subcommand("check", "Check a property of a rule on a problem file");
  check->add_option("property", property)
      ->required()
      ->check(CLI::IsMember({"uniform", "respects-utility", "weakly-respects-utility", "lottery-uniform"}));
  check->add_option("file", file)->required()->check(CLI::ExistingFile);
  check->add_option("rule", rule)->required()->check(CLI::IsMember(rules));

  auto* lottery = app.add_subcommand("lottery", "Move between acts and lotteries");
  lottery->add_option("action", action)->required()->check(CLI::IsMember({"induce", "construct", "construct-standard"}));
  lottery->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* aa = app.add_subcommand("aa", "Anscombe-Aumann problems");
  aa->add_option("action", action)->required()->check(CLI::IsMember({"flatten", "eval"}));
  aa->add_option("file", file)->required()->check(CLI::ExistingFile);

  FuzzOptions fz;
  auto* fuzz = app.add_subcommand("fuzz", "Run the seeded property suites");
  fuzz->add_option("--seed", fz.seed, "Base seed")->capture_default_str();
  fuzz->add_option("--count", fz.count, "Cases per suite")->capture_default_str();
  std::vector<std::string> suite_names;
  for (const auto& s : geu::suite_registry()) suite_names.push_back(s.name);
  fuzz->add_option("--suite", fz.suites, "Suites to run (default: all)")->check(CLI::IsMember(suite_names));
  fuzz->add_option("--threads", fz.threads, "Worker threads (0: hardware concurrency)");
  fuzz->add_option("--max-states", fz.states, "Override the suites' state cap");
  fuzz->add_option("--max-acts", fz.acts, "Override the suites' act cap");
  fuzz->add_option("--max-consequences", fz.consequences, "Override the suites' consequence cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (eval->parsed()) return cmd_eval(opts, file, rule);
    if (represent->parsed()) return cmd_represent(opts, file, rule, mode);
    if (check->parsed()) return cmd_check(opts, property, file, rule);
    if (lottery->parsed()) return cmd_lottery(opts, action, file);
    if (aa->parsed()) return cmd_aa(opts, action, file);
    return cmd_fuzz(opts, fz);
  } catch (const geu::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
