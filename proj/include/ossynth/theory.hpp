#pragma once

// Specialization of the rewriting inference rules (reflexivity, transitivity,
// congruence, replacement) into explicit order-sorted sentences.

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "ossynth/error.hpp"
#include "ossynth/maude.hpp"
#include "ossynth/os_core.hpp"

namespace ossynth {

enum class SentenceOrigin { Reflexivity, Transitivity, Congruence, Replacement };

struct TheorySentence {
  std::string tag;  // "Rf[S]", "T[S]", "C(f,1)", "Re(1)"
  SentenceOrigin origin = SentenceOrigin::Reflexivity;
  std::size_t index = 0;     // component, rank or rule index
  std::size_t position = 0;  // argument position (congruence only, 1-based)
  Sentence sentence;
};

struct Theory {
  std::vector<TheorySentence> sentences;
};

inline Theory generate_theory(const OSTRS& trs) {
  const SortedSignature& sig = trs.sig;
  if (!check_signature(sig).coherent) throw IncoherentSignature("signature is not coherent");
  const auto& poset = sig.poset;
  Theory th;

  auto pred_at = [&](const char* pred, SortId top) -> std::size_t {
    for (std::size_t r : sig.pred_ranks_of(pred, 2)) {
      if (sig.preds[r].args[0] == top && sig.preds[r].args[1] == top) return r;
    }
    throw Error(std::string("predicate '") + pred + "' is not declared at '" + poset.name(top) + "'");
  };
  auto has_pred = [&](SortId top) {
    for (std::size_t r : sig.pred_ranks_of(kStarPred, 2)) {
      if (sig.preds[r].args[0] == top) return true;
    }
    return false;
  };

  std::vector<SortId> tops;
  for (std::size_t c = 0; c < poset.components().size(); ++c) {
    SortId top = *poset.top_of_component(c);
    if (has_pred(top)) tops.push_back(top);
  }

  for (std::size_t c = 0; c < tops.size(); ++c) {
    SortId s = tops[c];
    Term t = make_var("t", s);
    Sentence sen{{{"t", s}}, {}, Atom{kStarPred, pred_at(kStarPred, s), {t, t}}};
    th.sentences.push_back({"Rf[" + poset.name(s) + "]", SentenceOrigin::Reflexivity, c, 0, sen});
  }
  for (std::size_t c = 0; c < tops.size(); ++c) {
    SortId s = tops[c];
    Term t = make_var("t", s), t2 = make_var("t'", s), u = make_var("u", s);
    Sentence sen{{{"t", s}, {"t'", s}, {"u", s}},
                 {Atom{kStepPred, pred_at(kStepPred, s), {t, t2}},
                  Atom{kStarPred, pred_at(kStarPred, s), {t2, u}}},
                 Atom{kStarPred, pred_at(kStarPred, s), {t, u}}};
    th.sentences.push_back({"T[" + poset.name(s) + "]", SentenceOrigin::Transitivity, c, 0, sen});
  }
  for (std::size_t r = 0; r < sig.funcs.size(); ++r) {
    const auto& rank = sig.funcs[r];
    const std::size_t k = rank.args.size();
    for (std::size_t i = 0; i < k; ++i) {
      Sentence sen;
      std::vector<Term> before, after;
      for (std::size_t j = 0; j < k; ++j) {
        Term tj = make_var("t" + std::to_string(j + 1), rank.args[j]);
        sen.vars.emplace_back(tj.name, tj.sort);
        before.push_back(tj);
        if (j == i) {
          Term tp = make_var("t" + std::to_string(j + 1) + "'", rank.args[j]);
          sen.vars.emplace_back(tp.name, tp.sort);
          after.push_back(tp);
          sen.premises.push_back(Atom{kStepPred, pred_at(kStepPred, *poset.top(rank.args[j])), {tj, tp}});
        } else {
          after.push_back(tj);
        }
      }
      sen.conclusion = Atom{kStepPred, pred_at(kStepPred, *poset.top(rank.result)),
                            {make_app_at(sig, r, before), make_app_at(sig, r, after)}};
      th.sentences.push_back({"C(" + rank_label(sig, r) + "," + std::to_string(i + 1) + ")",
                              SentenceOrigin::Congruence, r, i + 1, sen});
    }
  }
  for (std::size_t i = 0; i < trs.rules.size(); ++i) {
    const Rule& rule = trs.rules[i];
    Sentence sen;
    collect_vars(rule.lhs, sen.vars);
    collect_vars(rule.rhs, sen.vars);
    sen.conclusion = make_atom(sig, kStepPred, {rule.lhs, rule.rhs});
    th.sentences.push_back({"Re(" + rule.label + ")", SentenceOrigin::Replacement, i, 0, sen});
  }
  for (const auto& s : th.sentences) check_closed(s.sentence);
  return th;
}

inline nlohmann::ordered_json term_to_json(const Term& t) {
  if (t.is_var()) return {{"var", t.name}};
  nlohmann::ordered_json args = nlohmann::ordered_json::array();
  for (const auto& a : t.args) args.push_back(term_to_json(a));
  return {{"sym", t.name}, {"args", args}};
}

inline nlohmann::ordered_json atom_to_json(const Atom& a) {
  nlohmann::ordered_json j{{"pred", a.pred}};
  if (a.args.size() == 2) {
    j["lhs"] = term_to_json(a.args[0]);
    j["rhs"] = term_to_json(a.args[1]);
  } else {
    j["args"] = nlohmann::ordered_json::array();
    for (const auto& t : a.args) j["args"].push_back(term_to_json(t));
  }
  return j;
}

inline nlohmann::ordered_json theory_to_json(const Theory& th, const SortedSignature& sig) {
  nlohmann::ordered_json sentences = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < th.sentences.size(); ++i) {
    const auto& ts = th.sentences[i];
    nlohmann::ordered_json vars = nlohmann::ordered_json::array();
    for (const auto& [name, sort] : ts.sentence.vars) {
      vars.push_back({{"name", name}, {"sort", sig.poset.name(sort)}});
    }
    nlohmann::ordered_json premises = nlohmann::ordered_json::array();
    for (const auto& p : ts.sentence.premises) premises.push_back(atom_to_json(p));
    sentences.push_back({{"id", i + 1},
                         {"tag", ts.tag},
                         {"vars", vars},
                         {"premises", premises},
                         {"conclusion", atom_to_json(ts.sentence.conclusion)}});
  }
  return {{"sentences", sentences}};
}

}  // namespace ossynth
