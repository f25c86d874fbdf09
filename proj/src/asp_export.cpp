#include "symaut/asp_export.hpp"

#include <cctype>
#include <sstream>

#include "symaut/guards.hpp"

namespace symaut {

std::string asp_term(std::string_view name) {
  auto ident = [&] {
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
    for (char c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
  };
  auto integer = [&] {
    if (name.empty()) return false;
    for (char c : name)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return name.size() == 1 || name[0] != '0';
  };
  if (ident() || integer()) return std::string(name);
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

namespace {

std::string asp_state(State q) { return std::to_string(static_cast<unsigned>(q) + 1); }

std::string asp_guard(const GroundGuard& g, const Dataset& d) {
  const auto& attrs = d.attributes();
  const std::string a = asp_term(attrs.name(g.attribute));
  const std::string b = g.kind == GuardKind::lt ? asp_term(attrs.name(g.operand))
                                                : asp_term(d.alphabet().name(static_cast<Symbol>(g.operand)));
  return std::string(kind_name(g.kind)) + "(" + a + "," + b + ")";
}

void feature_rules(std::ostream& out, GuardKinds kinds) {
  for (GuardKind k : kinds.list()) {
    if (k == GuardKind::lt) {
      out << "feature(lt(A1,A2)) :- att(A1), att(A2), A1 != A2.\n";
    } else {
      out << "feature(" << kind_name(k) << "(A,V)) :- att(A), val(V).\n";
    }
  }
}

void satisfaction_rules(std::ostream& out, GuardKinds kinds) {
  for (GuardKind k : kinds.list()) {
    switch (k) {
      case GuardKind::eq:
        out << "satisfies(SeqId,eq(A,V),T) :- obs(SeqId,av(A,V),T), feature(eq(A,V)).\n";
        break;
      case GuardKind::neg:
        out << "satisfies(SeqId,neg(A,V),T) :- obs(SeqId,av(A,V1),T), feature(neg(A,V)), V1 != V.\n";
        break;
      case GuardKind::lt:
        out << "satisfies(SeqId,lt(A1,A2),T) :- obs(SeqId,av(A1,V1),T), obs(SeqId,av(A2,V2),T), "
               "rank(V1,R1), rank(V2,R2), R1 < R2, feature(lt(A1,A2)).\n";
        break;
      case GuardKind::at_least:
        out << "satisfies(SeqId,at_least(A,V),T) :- obs(SeqId,av(A,V1),T), rank(V1,R1), rank(V,R), R1 >= R, "
               "feature(at_least(A,V)).\n";
        break;
      case GuardKind::at_most:
        out << "satisfies(SeqId,at_most(A,V),T) :- obs(SeqId,av(A,V1),T), rank(V1,R1), rank(V,R), R1 <= R, "
               "feature(at_most(A,V)).\n";
        break;
    }
  }
}

}  // namespace

std::string export_asp(const Dataset& dataset, const BatchConfig& cfg, const AspIncumbent* incumbent) {
  const std::size_t n = incumbent ? std::max(cfg.structural.max_states, incumbent->asa.num_states())
                                  : cfg.structural.max_states;
  const bool earliest = cfg.semantics.acceptance == AcceptanceMode::earliest_absorbing;
  std::ostringstream out;

  out << "#const w_fp=" << cfg.objective.w_fp << ".\n";
  out << "#const w_fn=" << cfg.objective.w_fn << ".\n";

  out << "\n% Generate ASA\n";
  out << "{transition(S1,F,S2)} :- state(S1), state(S2), feature(F).\n";
  feature_rules(out, cfg.kinds);
  out << "state(S) :- maxStates(S).\n";
  out << "{accepting(S)} :- state(S).\n";
  out << "maxStates(1.." << n << "). start(1).\n";

  out << "\n% Transition features\n";
  satisfaction_rules(out, cfg.kinds);

  out << "\n% Interpreter\n";
  out << "seq(SeqId) :- obs(SeqId,_,_).\n";
  out << "inState(SeqId,S,1) :- start(S), seq(SeqId).\n";
  out << "inState(SeqId,S2,T+1) :- inState(SeqId,S1,T), transition(S1,F,S2), satisfies(SeqId,F,T).\n";
  if (cfg.semantics.policy == ConsumptionPolicy::skip_till_any_match) {
    out << "inState(SeqId,S,T+1) :- inState(SeqId,S,T), obs(SeqId,_,T), "
           "#count{F,S2: transition(S,F,S2), satisfies(SeqId,F,T)} = 0.\n";
  }
  if (earliest) {
    out << "inState(SeqId,S,T+1) :- inState(SeqId,S,T), accepting(S), obs(SeqId,_,T).\n";
    out << "accepted(SeqId,T) :- inState(SeqId,S,T), accepting(S).\n";
    out << "accepted(SeqId) :- accepted(SeqId,_).\n";
  } else {
    out << "seqEnd(SeqId,T+1) :- obs(SeqId,_,T), not obs(SeqId,_,T+1).\n";
    out << "accepted(SeqId) :- inState(SeqId,S,T), accepting(S), seqEnd(SeqId,T).\n";
  }

  out << "\n% Minimize the training error\n";
  out << ":~ accepted(SeqId), negative(SeqId). [w_fp@2,SeqId]\n";
  out << ":~ not accepted(SeqId), positive(SeqId). [w_fn@2,SeqId]\n";

  out << "\n% Regularization constraints\n";
  if (cfg.objective.transition_penalty != 0)
    out << ":~ transition(S1,X,S2). [" << cfg.objective.transition_penalty << "@1,S1,S2,X]\n";
  if (cfg.objective.earliness_enabled) {
    if (cfg.objective.earliness_mode == EarlinessMode::sum_all_accept_steps) {
      out << ":~ accepted(SeqId,T). [T@1,SeqId,T]\n";
    } else {
      out << "firstAccepted(SeqId,T) :- accepted(SeqId,T), not accepted(SeqId,T-1).\n";
      out << ":~ firstAccepted(SeqId,T). [T@1,SeqId,T]\n";
    }
  }

  out << "\n% Structural constraints\n";
  if (cfg.structural.accepting_absorbing) out << ":- transition(S,_,S2), accepting(S), S2 != S.\n";
  if (cfg.structural.start_not_accepting) out << ":- start(S), accepting(S).\n";

  if (incumbent) {
    out << "\n% Revision of an existing ASA\n";
    std::size_t i = 0;
    for (const auto& t : incumbent->asa.transitions()) {
      ++i;
      const FactStats* s = incumbent->stats.find(t);
      const std::string fact =
          "transition(" + asp_state(t.from) + "," + asp_guard(t.guard, dataset) + "," + asp_state(t.to) + ")";
      out << "existing(" << fact << ").\n";
      out << "#const w_" << i << "=" << (s ? s->weight() : 0) << ".\n";
      out << ":~ not " << fact << ", existing(" << fact << "). [-w_" << i << "@1," << fact << "]\n";
    }
    for (std::size_t q = 0; q < incumbent->asa.num_states(); ++q) {
      if (!incumbent->asa.is_accepting(static_cast<State>(q))) continue;
      const std::string fact = "accepting(" + asp_state(static_cast<State>(q)) + ")";
      out << "existing(" << fact << ").\n";
      out << ":~ not " << fact << ", existing(" << fact << "). [1@1," << fact << "]\n";
    }
  }

  out << "\n% Domain\n";
  for (const auto& a : dataset.attributes().names()) out << "att(" << asp_term(a) << ").\n";
  const std::vector<Symbol> values = cfg.values == ValueDomain::observed ? observed_symbols(dataset) : [&] {
    std::vector<Symbol> all;
    for (std::size_t s = 0; s < dataset.alphabet().size(); ++s) all.push_back(static_cast<Symbol>(s));
    return all;
  }();
  for (Symbol v : values) out << "val(" << asp_term(dataset.alphabet().name(v)) << ").\n";
  for (std::size_t s = 0; s < dataset.alphabet().size(); ++s)
    out << "rank(" << asp_term(dataset.alphabet().name(static_cast<Symbol>(s))) << "," << s + 1 << ").\n";

  out << "\n% Examples\n";
  for (const auto& ex : dataset.examples()) {
    const std::string id = asp_term(ex.mvs.id());
    for (std::size_t t = 1; t <= ex.mvs.length(); ++t)
      for (std::size_t a = 0; a < dataset.attributes().size(); ++a)
        out << "obs(" << id << ",av(" << asp_term(dataset.attributes().name(a)) << ","
            << asp_term(dataset.alphabet().name(ex.mvs.at(a, t))) << ")," << t << ").\n";
    out << (ex.label == Label::positive ? "positive(" : "negative(") << id << ").\n";
  }

  out << "\n#show transition/3.\n#show accepting/1.\n";
  return out.str();
}

}  // namespace symaut
