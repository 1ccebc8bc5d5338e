#include "bjlab/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bjlab/transform.hpp"

namespace bjlab {

// ---------------------------------------------------------------- DIMACS

Cnf cnf_from_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  Cnf c;
  bool have_header = false;
  std::vector<CnfLit> cur;
  bool open = false;
  while (in >> tok) {
    if (tok == "c") {
      std::string line;
      std::getline(in, line);
      continue;
    }
    if (tok == "p") {
      std::string kind;
      int m = 0;
      if (!(in >> kind >> c.nvars >> m) || kind != "cnf")
        throw std::invalid_argument("bad DIMACS header");
      have_header = true;
      continue;
    }
    int lit = std::stoi(tok);
    if (!have_header) throw std::invalid_argument("DIMACS literal before header");
    if (lit == 0) {
      c.clauses.push_back(cur);
      cur.clear();
      open = false;
    } else {
      cur.push_back({lit > 0, std::abs(lit)});
      open = true;
    }
  }
  if (open) throw std::invalid_argument("DIMACS clause not terminated by 0");
  return c;
}

std::string cnf_to_dimacs(const Cnf& c) {
  std::ostringstream out;
  out << "p cnf " << c.nvars << " " << c.clauses.size() << "\n";
  for (const auto& cl : c.clauses) {
    for (const auto& l : cl) out << (l.pol ? l.var : -l.var) << " ";
    out << "0\n";
  }
  return out.str();
}

// --------------------------------------------------------------- encoding

TermPtr encode(const Cnf& c, FreshCounter& fresh, std::vector<TermPtr>* vars) {
  std::vector<TermPtr> vs;
  for (int i = 1; i <= c.nvars; ++i) vs.push_back(mk_var("V" + std::to_string(i), fresh.take()));
  if (vars) *vars = vs;
  std::vector<TermPtr> clause_terms;
  for (const auto& cl : c.clauses) {
    std::vector<TermPtr> lits;
    for (const auto& l : cl)
      lits.push_back(mk_pair(mk_const(l.pol ? "true" : "false"), vs.at(l.var - 1)));
    clause_terms.push_back(mk_list(lits));
  }
  return mk_list(clause_terms);
}

// ----------------------------------------------------------------- oracle

std::vector<std::vector<bool>> oracle(const Cnf& c) {
  if (c.nvars > 20) throw std::invalid_argument("oracle limited to 20 variables");
  std::vector<std::vector<bool>> out;
  for (unsigned long mask = 0; mask < (1ul << c.nvars); ++mask) {
    bool ok = true;
    for (const auto& cl : c.clauses) {
      bool sat = false;
      for (const auto& l : cl)
        if (((mask >> (l.var - 1)) & 1u) == static_cast<unsigned>(l.pol)) {
          sat = true;
          break;
        }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<bool> a(c.nvars);
    for (int i = 0; i < c.nvars; ++i) a[i] = (mask >> i) & 1u;
    out.push_back(std::move(a));
  }
  return out;
}

// -------------------------------------------------------------- instances

Cnf random_cnf(std::mt19937& rng) {
  std::uniform_int_distribution<int> nd(1, 4), md(1, 5), wd(1, 3), pd(0, 1);
  Cnf c;
  c.nvars = nd(rng);
  std::uniform_int_distribution<int> vd(1, c.nvars);
  int m = md(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<CnfLit> cl;
    int w = wd(rng);
    for (int j = 0; j < w; ++j) cl.push_back({pd(rng) == 1, vd(rng)});
    c.clauses.push_back(std::move(cl));
  }
  return c;
}

std::vector<Cnf> exhaustive_2var_cnfs() {
  // Candidate clauses: the empty clause plus every clause of width 1 or 2
  // over {1,2}.
  std::vector<std::vector<CnfLit>> cand;
  cand.push_back({});
  std::vector<CnfLit> lits{{true, 1}, {false, 1}, {true, 2}, {false, 2}};
  for (const auto& l : lits) cand.push_back({l});
  for (size_t i = 0; i < lits.size(); ++i)
    for (size_t j = i + 1; j < lits.size(); ++j) cand.push_back({lits[i], lits[j]});

  std::vector<Cnf> out;
  out.push_back({2, {}});
  for (size_t i = 0; i < cand.size(); ++i) {
    out.push_back({2, {cand[i]}});
    for (size_t j = i; j < cand.size(); ++j) out.push_back({2, {cand[i], cand[j]}});
  }
  return out;
}

unsigned corpus_seed() {
  if (const char* s = std::getenv("BJLAB_SEED")) {
    try {
      return static_cast<unsigned>(std::stoul(s));
    } catch (...) {
    }
  }
  return 20260826u;
}

// ----------------------------------------------------------- assignments

PartialAssignment extract_assignment(const Answer& a, int nvars, bool leveled) {
  PartialAssignment pa(static_cast<size_t>(nvars), std::nullopt);
  for (int i = 0; i < nvars && i < static_cast<int>(a.bindings.size()); ++i) {
    TermPtr v = a.bindings[i].second;
    if (leveled) {
      if (!is_compound(v, ",", 2)) continue;
      v = v->args[1];
    }
    if (is_const(v, "true"))
      pa[i] = true;
    else if (is_const(v, "false"))
      pa[i] = false;
  }
  return pa;
}

bool assignment_satisfies(const PartialAssignment& pa, const Cnf& c) {
  for (const auto& cl : c.clauses) {
    bool sat = false;
    for (const auto& l : cl) {
      auto v = pa.at(l.var - 1);
      if (v && *v == l.pol) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::vector<std::vector<bool>> expand_assignment(const PartialAssignment& pa) {
  std::vector<int> free_idx;
  for (size_t i = 0; i < pa.size(); ++i)
    if (!pa[i]) free_idx.push_back(static_cast<int>(i));
  std::vector<std::vector<bool>> out;
  for (unsigned long mask = 0; mask < (1ul << free_idx.size()); ++mask) {
    std::vector<bool> a(pa.size());
    for (size_t i = 0; i < pa.size(); ++i) a[i] = pa[i].value_or(false);
    for (size_t k = 0; k < free_idx.size(); ++k) a[free_idx[k]] = (mask >> k) & 1u;
    out.push_back(std::move(a));
  }
  return out;
}

CoverVerdict answers_cover_oracle(const std::vector<PartialAssignment>& answers, const Cnf& c) {
  CoverVerdict v;
  v.sound = std::all_of(answers.begin(), answers.end(),
                        [&](const PartialAssignment& pa) { return assignment_satisfies(pa, c); });
  auto extends = [](const std::vector<bool>& total, const PartialAssignment& pa) {
    for (size_t i = 0; i < pa.size(); ++i)
      if (pa[i] && *pa[i] != total[i]) return false;
    return true;
  };
  v.complete = true;
  for (const auto& total : oracle(c)) {
    bool covered = std::any_of(answers.begin(), answers.end(),
                               [&](const PartialAssignment& pa) { return extends(total, pa); });
    if (!covered) {
      v.complete = false;
      break;
    }
  }
  return v;
}

// ---------------------------------------------------------------- traces

std::vector<TraceEvent> project_trace(const std::vector<TraceEvent>& trace,
                                      const std::set<PredKey>& keep) {
  std::vector<TraceEvent> out;
  for (const auto& e : trace) {
    if (e.port == Port::Answer) {
      out.push_back(e);
      continue;
    }
    if (e.port != Port::Call && e.port != Port::Exit && e.port != Port::Redo &&
        e.port != Port::Fail)
      continue;
    if (!e.goal) continue;
    if (e.goal->tag != Tag::Const && e.goal->tag != Tag::Compound) continue;
    if (keep.count(pred_key(e.goal))) out.push_back(e);
  }
  return out;
}

std::string render_event(const TraceEvent& e) {
  return std::string(port_name(e.port)) + " " + (e.goal ? format_canonical(e.goal) : "");
}

TraceDiff diff_traces(const std::vector<TraceEvent>& a, const std::vector<TraceEvent>& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (render_event(a[i]) != render_event(b[i]))
      return {false, i, render_event(a[i]), render_event(b[i])};
  }
  if (a.size() != b.size())
    return {false, n, n < a.size() ? render_event(a[n]) : std::string(),
            n < b.size() ? render_event(b[n]) : std::string()};
  return {};
}

// --------------------------------------------------------------- programs

namespace {

const char* kP1 = R"PL(
sat_cl([Pol-Pol|_Pairs]).
sat_cl([_H|Pairs]) :- sat_cl(Pairs).
sat_cnf([]).
sat_cnf([Clause|Clauses]) :- sat_cl(Clause), sat_cnf(Clauses).
)PL";

const char* kLeveledSatCl = R"PL(
sat_cl([Pol-V|_Pairs], _L, _HL) :- nonvar(V), V = (_, Pol).
sat_cl([Pol-V|_Pairs], L, _HL) :- var(V), V = (L, Pol).
sat_cl([_-V|Pairs], L, HL) :-
        new_highest(V, HL, HLnew),
        sat_cl(Pairs, L, HLnew).
)PL";

const char* kNewHighest = R"PL(
new_highest(V, H, H) :- var(V).
new_highest(V, H, H) :- nonvar(V), V = (L, _Value), H >= L.
new_highest(V, H, L) :- nonvar(V), V = (L, _Value), H < L.
)PL";

const char* kP2SatCnf = R"PL(
sat_cnf([], _L).
sat_cnf([Clause|Clauses], L) :-
        sat_cl(Clause, L, -1),
        Lnew is L + 1,
        sat_cnf(Clauses, Lnew).
)PL";

const char* kP3SatClThrow = R"PL(
sat_cl([], _, HL) :- HL >= 0, throw(HL).
)PL";

const char* kP3SatCnf = R"PL(
sat_cnf([], _L).
sat_cnf([Clause|Clauses], L) :-
        sat_cl(Clause, L, -1),
        Lnew is L + 1,
        catch(sat_cnf(Clauses, Lnew), L, fail).
)PL";

const char* kPb = R"PL(
sat_b([]).
sat_b([[Pol-Pol|_]|Clauses]) :- sat_b(Clauses).
sat_b([[_|Pairs]|Clauses]) :- sat_b([Pairs|Clauses]).
)PL";

const char* kPb2 = R"PL(
sat_b([], _L, _HL).
sat_b([[Pol-V|_]|Clauses], L, _HL) :- nonvar(V),
        V = (_, Pol), Lnew is L + 1,
        sat_b(Clauses, Lnew, -1).
sat_b([[Pol-V|_]|Clauses], L, _HL) :- var(V),
        V = (L, Pol), Lnew is L + 1,
        sat_b(Clauses, Lnew, -1).
sat_b([[_-V|Pairs]|Clauses], L, HL) :-
        Lnew is L + 1,
        new_highest(V, HL, HLnew),
        sat_b([Pairs|Clauses], Lnew, HLnew).
)PL";

const char* kPbThrow = R"PL(
sat_b([[]|_Clauses], _L, HL) :- HL >= 0, throw(HL).
)PL";

const char* kPb3 = R"PL(
sat_b([], _L, _HL).
sat_b([[Pol-V|_]|Clauses], L, _HL) :- nonvar(V),
        V = (_, Pol), Lnew is L + 1,
        sat_b(Clauses, Lnew, -1).
sat_b([[Pol-V|_]|Clauses], L, _HL) :-
        catch((var(V), V = (L, Pol), Lnew is L + 1,
               sat_b(Clauses, Lnew, -1)),
              L,
              fail).
sat_b([[_-V|Pairs]|Clauses], L, HL) :-
        Lnew is L + 1,
        new_highest(V, HL, HLnew),
        sat_b([Pairs|Clauses], Lnew, HLnew).
sat_b([[]|_Clauses], _L, HL) :- HL >= 0, throw(HL).
)PL";

const char* kPb3a = R"PL(
sat_b([], _L, _HL).
sat_b([[Pol-V|Pairs]|Clauses], L, HL) :-
   catch((nonvar(V), V = (_, Pol), Lnew is L + 1, sat_b(Clauses, Lnew, -1)
          ; throw(L)
         ),
         L,
         catch((var(V), V = (L, Pol), Lnew is L + 1, sat_b(Clauses, Lnew, -1)
                ; throw(L)
               ),
               L,
               catch((Lnew is L + 1, new_highest(V, HL, HLnew),
                      sat_b([Pairs|Clauses], Lnew, HLnew)
                      ; throw(L)
                     ),
                     L,
                     fail))).
sat_b([[]|_Clauses], _L, HL) :- HL >= 0, throw(HL).
)PL";

const char* kPb2Native = R"PL(
sat_b([], _L, _HL).
sat_b([[Pol-V|_]|Clauses], L, _HL) :- nonvar(V),
        V = (_, Pol), Lnew is L + 1,
        sat_b(Clauses, Lnew, -1).
sat_b([[Pol-V|_]|Clauses], L, _HL) :- btid(L),
        var(V), V = (L, Pol), Lnew is L + 1,
        sat_b(Clauses, Lnew, -1).
sat_b([[_-V|Pairs]|Clauses], L, HL) :-
        Lnew is L + 1,
        new_highest(V, HL, HLnew),
        sat_b([Pairs|Clauses], Lnew, HLnew).
sat_b([[]|_Clauses], _L, HL) :- HL >= 0, backjump(HL).
)PL";

// dbsim input: Pb2 with the backjump initiated through the database.
const char* kPb2DbsimBase = R"PL(
sat_b([], _L, _HL).
sat_b([[Pol-V|_]|Clauses], L, _HL) :- nonvar(V),
        V = (_, Pol), Lnew is L + 1,
        sat_b(Clauses, Lnew, -1).
sat_b([[Pol-V|_]|Clauses], L, _HL) :- var(V),
        V = (L, Pol), Lnew is L + 1,
        sat_b(Clauses, Lnew, -1).
sat_b([[_-V|Pairs]|Clauses], L, HL) :-
        Lnew is L + 1,
        new_highest(V, HL, HLnew),
        sat_b([Pairs|Clauses], Lnew, HLnew).
sat_b([[]|_Clauses], _L, HL) :- HL >= 0, assertz(target(HL)), fail.
)PL";

std::string join(std::initializer_list<const char*> parts) {
  std::string out;
  for (const char* p : parts) out += p;
  return out;
}

std::string dbsim_source() {
  FreshCounter fresh;
  Program base = parse_program(join({kPb2DbsimBase, kNewHighest}), fresh);
  BackjumpSpec spec;
  PredKey sat_b{"sat_b", 3}, nh{"new_highest", 3};
  spec.target_procedures = {sat_b, nh};
  spec.id_policy = BackjumpSpec::IdPolicy::FromArg;
  spec.id_arg = 2;
  // Only the value-assigning clause and the clause resumed on arrival can
  // catch a backjump; everything else must fail while one is in flight.
  spec.exempt_clauses = {{sat_b, 1}, {sat_b, 2}, {sat_b, 5}, {nh, 1}, {nh, 2}, {nh, 3}};
  return format_program(dbsim(base, spec, fresh));
}

std::vector<CorpusProgram> make_programs() {
  std::vector<CorpusProgram> v;
  v.push_back({"p1", join({kP1}), "sat_cnf", 1, false, Mode::Iso});
  v.push_back({"p2", join({kLeveledSatCl, kNewHighest, kP2SatCnf}), "sat_cnf", 2, true, Mode::Iso});
  v.push_back({"p3", join({kLeveledSatCl, kP3SatClThrow, kNewHighest, kP3SatCnf}), "sat_cnf", 2,
               true, Mode::Iso});
  v.push_back({"pb", join({kPb}), "sat_b", 1, false, Mode::Iso});
  v.push_back({"pb2", join({kPb2, kNewHighest}), "sat_b", 3, true, Mode::Iso});
  v.push_back({"pb2_throw", join({kPb2, kPbThrow, kNewHighest}), "sat_b", 3, true, Mode::Iso});
  v.push_back({"pb3", join({kPb3, kNewHighest}), "sat_b", 3, true, Mode::Iso});
  v.push_back({"pb3a", join({kPb3a, kNewHighest}), "sat_b", 3, true, Mode::Iso});
  v.push_back({"pb2_native", join({kPb2Native, kNewHighest}), "sat_b", 3, true, Mode::NativeBj});
  v.push_back({"pb2_dbsim", dbsim_source(), "sat_b", 3, true, Mode::Iso});
  return v;
}

}  // namespace

const std::vector<CorpusProgram>& build_corpus_programs() {
  static const std::vector<CorpusProgram> programs = make_programs();
  return programs;
}

const CorpusProgram& corpus_program(const std::string& name) {
  for (const auto& p : build_corpus_programs())
    if (p.name == name) return p;
  throw std::invalid_argument("no corpus program named " + name);
}

CnfRun run_on_cnf(const CorpusProgram& prog, const Cnf& c, Limits limits) {
  FreshCounter fresh;
  Program p = parse_program(prog.source, fresh);
  std::vector<TermPtr> vars;
  TermPtr formula = encode(c, fresh, &vars);
  std::vector<TermPtr> args{formula};
  if (prog.query_arity >= 2) args.push_back(mk_int(0));
  if (prog.query_arity >= 3) args.push_back(mk_int(-1));
  TermPtr query = mk_compound(prog.query_pred, args);
  Engine e(std::move(p), prog.mode, fresh, limits);
  CnfRun run{e.solve(query, vars), {}};
  for (const auto& a : run.result.answers)
    run.assignments.push_back(extract_assignment(a, c.nvars, prog.leveled));
  return run;
}

}  // namespace bjlab
