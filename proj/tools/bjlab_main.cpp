#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bjlab/corpus.hpp"
#include "bjlab/engine.hpp"
#include "bjlab/reader.hpp"
#include "bjlab/transform.hpp"

namespace {

using namespace bjlab;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "name/arity:idx" -> clause id; "name/arity:idx:split" adds a split point.
ClauseId parse_clause_id(const std::string& text, int* split = nullptr) {
  size_t c1 = text.find(':');
  if (c1 == std::string::npos) throw std::invalid_argument("expected name/arity:index");
  ClauseId id{pred_key_of(text.substr(0, c1)), 0};
  std::string rest = text.substr(c1 + 1);
  size_t c2 = rest.find(':');
  if (split) {
    if (c2 == std::string::npos) throw std::invalid_argument("expected name/arity:index:split");
    id.second = std::stoi(rest.substr(0, c2));
    *split = std::stoi(rest.substr(c2 + 1));
  } else {
    if (c2 != std::string::npos) throw std::invalid_argument("expected name/arity:index");
    id.second = std::stoi(rest);
  }
  return id;
}

int cmd_run(const std::string& program_path, const std::string& query, const std::string& mode_name,
            long long max_steps, long long max_solutions, const std::string& trace_path) {
  Mode mode = mode_name == "native-bj" ? Mode::NativeBj : Mode::Iso;
  Limits limits;
  if (max_steps > 0) limits.max_steps = max_steps;
  limits.max_solutions = max_solutions;
  SolveResult r;
  try {
    r = solve_text(read_file(program_path), query, mode, limits);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  for (const auto& a : r.answers) std::cout << format_answer(a) << "\n";
  if (!trace_path.empty()) {
    std::ostream* out = &std::cout;
    std::ofstream f;
    if (trace_path != "-") {
      f.open(trace_path);
      if (!f) {
        std::cerr << "error: cannot write " << trace_path << "\n";
        return 2;
      }
      out = &f;
    }
    for (const auto& e : r.trace) *out << to_json_line(e) << "\n";
  }
  if (r.error) {
    std::cerr << "error: " << r.error->message << "\n";
    return 2;
  }
  return r.answers.empty() ? 1 : 0;
}

int cmd_transform(const std::string& approach, const std::string& program_path,
                  const std::vector<std::string>& targets, int id_from_arg,
                  const std::vector<std::string>& splits, const std::vector<std::string>& exempts,
                  const std::vector<std::string>& dyn_exempts) {
  FreshCounter fresh;
  Program p = parse_program(read_file(program_path), fresh);
  BackjumpSpec spec;
  for (const auto& t : targets) spec.target_procedures.insert(pred_key_of(t));
  if (id_from_arg > 0) {
    spec.id_policy = BackjumpSpec::IdPolicy::FromArg;
    spec.id_arg = id_from_arg;
  }
  for (const auto& s : splits) {
    int split = 0;
    ClauseId id = parse_clause_id(s, &split);
    spec.split_points[id] = split;
    spec.target_procedures.insert(id.first);
  }
  for (const auto& s : exempts) spec.exempt_clauses.insert(parse_clause_id(s));
  for (const auto& s : dyn_exempts) spec.dynamic_exempt.insert(parse_clause_id(s));
  Program out;
  if (approach == "1")
    out = approach1(p, spec, fresh);
  else if (approach == "1a")
    out = approach1a(p, spec, fresh);
  else if (approach == "2")
    out = approach2(p, spec, fresh);
  else if (approach == "dbsim")
    out = dbsim(p, spec, fresh);
  else
    throw std::invalid_argument("unknown approach " + approach);
  std::cout << format_program(out);
  return 0;
}

Port port_from_name(const std::string& n) {
  static const std::map<std::string, Port> names{
      {"Call", Port::Call},         {"Exit", Port::Exit},     {"Redo", Port::Redo},
      {"Fail", Port::Fail},         {"Throw", Port::Throw},   {"Catch", Port::Catch},
      {"Backjump", Port::Backjump}, {"Block", Port::Block},   {"Unblock", Port::Unblock},
      {"Answer", Port::Answer}};
  auto it = names.find(n);
  if (it == names.end()) throw std::invalid_argument("unknown port " + n);
  return it->second;
}

std::vector<TraceEvent> read_trace(const std::string& path, FreshCounter& fresh) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<TraceEvent> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    TraceEvent e;
    e.port = port_from_name(j.at("port").get<std::string>());
    e.node = j.value("node", -1);
    if (j.contains("goal") && j["goal"].is_string())
      e.goal = parse_term(j["goal"].get<std::string>(), fresh);
    out.push_back(std::move(e));
  }
  return out;
}

int cmd_diff(const std::string& a_path, const std::string& b_path,
             const std::vector<std::string>& project) {
  FreshCounter fresh;
  std::vector<TraceEvent> a = read_trace(a_path, fresh);
  std::vector<TraceEvent> b = read_trace(b_path, fresh);
  if (!project.empty()) {
    std::set<PredKey> keep;
    for (const auto& s : project) keep.insert(pred_key_of(s));
    a = project_trace(a, keep);
    b = project_trace(b, keep);
  }
  TraceDiff d = diff_traces(a, b);
  if (d.equal) {
    std::cout << "equal\n";
    return 0;
  }
  std::cout << "divergence at event " << d.index << ":\n"
            << "  a: " << (d.left.empty() ? "<end of trace>" : d.left) << "\n"
            << "  b: " << (d.right.empty() ? "<end of trace>" : d.right) << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LD-resolution engine with backjumping, transforms and trace tools"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a program under a chosen mode");
  std::string program_path, query, mode_name = "iso", trace_path;
  long long max_steps = 0, max_solutions = -1;
  run->add_option("program", program_path, "program file")->required();
  run->add_option("-q,--query", query, "query text")->required();
  run->add_option("-m,--mode", mode_name, "iso | native-bj")
      ->check(CLI::IsMember({"iso", "native-bj"}));
  run->add_option("--max-steps", max_steps, "step limit");
  run->add_option("--max-solutions", max_solutions, "stop after N answers");
  run->add_option("--trace", trace_path, "write JSON-lines trace ('-' for stdout)");

  auto* tr = app.add_subcommand("transform", "rewrite a program for backjumping");
  std::string approach;
  std::vector<std::string> targets, splits, exempts, dyn_exempts;
  int id_from_arg = 0;
  tr->add_option("program", program_path, "program file")->required();
  tr->add_option("-a,--approach", approach, "1 | 1a | 2 | dbsim")
      ->required()
      ->check(CLI::IsMember({"1", "1a", "2", "dbsim"}));
  tr->add_option("--target", targets, "target procedure name/arity (repeatable)");
  tr->add_option("--id-from-arg", id_from_arg, "use head argument N as the identifier");
  tr->add_option("--split", splits, "name/arity:clause:split (approach 2, repeatable)");
  tr->add_option("--exempt", exempts, "name/arity:clause left unchanged (repeatable)");
  tr->add_option("--dynamic-exempt", dyn_exempts,
                 "name/arity:clause rewritten to the guarded if-then-else form");

  auto* diff = app.add_subcommand("diff-traces", "compare two JSON-lines traces");
  std::string a_path, b_path;
  std::vector<std::string> project;
  diff->add_option("a", a_path, "first trace")->required();
  diff->add_option("b", b_path, "second trace")->required();
  diff->add_option("--project", project, "keep only these predicates (name/arity, repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(program_path, query, mode_name, max_steps, max_solutions, trace_path);
    if (tr->parsed())
      return cmd_transform(approach, program_path, targets, id_from_arg, splits, exempts,
                           dyn_exempts);
    if (diff->parsed()) return cmd_diff(a_path, b_path, project);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
