#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "birat/text.hpp"

namespace birat::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Poly2<Rational> read_component(const std::string& name, const std::string& text) {
  try {
    return parse_poly(text);
  } catch (const Error& e) {
    throw InputError(name + ": " + e.what());
  }
}

std::string pair_text(const MorphismPair& p) { return "(" + render_poly(p.u()) + ", " + render_poly(p.v()) + ")"; }

std::string degrees_text(const MorphismPair& p) {
  std::ostringstream os;
  os << "deg " << p.u().total_degree() << " + " << p.v().total_degree() << " = " << degree_sum(p);
  return os.str();
}

void print_tower(const FieldCtx& ctx, std::ostream& out) {
  const auto tower = encode_tower(ctx);
  if (tower.empty()) return;
  out << "tower:\n";
  for (const auto& rel : tower) out << "  " << rel.defining << " = 0\n";
}

void print_refusal(const std::vector<FamilyReport>& families, std::ostream& out) {
  for (const auto& f : families) {
    out << "  " << f.move << ": " << f.reason;
    if (f.gcd) out << " [gcd " << *f.gcd << "]";
    out << "\n";
  }
}

void print_decision(const Decision& d, std::ostream& out) {
  out << "outcome: " << outcome_name(d.outcome) << "\n";
  out << "field: " << (d.mode == FieldMode::Rational ? "rational" : "closure") << "\n";
  out << "search: " << d.stats.nodes << " nodes, depth " << d.stats.max_depth << " of bound " << d.depth_bound
      << ", " << d.stats.splits << " splits\n";
  if (d.outcome == Outcome::Yes) {
    const FieldCtx& ctx = d.final_pair->ctx();
    print_tower(ctx, out);
    MorphismPair p(to_elem(d.input_u), to_elem(d.input_v), ctx);
    out << "trace:\n";
    if (d.trace.empty()) out << "  (empty: the input is an affine automorphism)\n";
    int i = 0;
    for (const auto& e : d.trace) {
      p = apply_step(p, e.step);
      out << "  " << ++i << ". " << describe(e.step) << " -> " << pair_text(p) << "\n";
    }
  } else {
    out << "root moves:\n";
    print_refusal(d.refusal, out);
  }
}

}  // namespace

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Yes: return kExitYes;
    case Outcome::No: return kExitNo;
    case Outcome::Undecided: return kExitUndecided;
  }
  return kExitUndecided;
}

int cmd_decide(const DecideArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const Poly2<Rational> u = read_component("u", args.u);
    const Poly2<Rational> v = read_component("v", args.v);
    if (u.is_constant() || v.is_constant()) throw InputError("input pair has a constant component");
    if (args.max_depth && *args.max_depth < 0) throw InputError("--max-depth must be nonnegative");
    DecideOptions options;
    options.max_depth = args.max_depth;
    if (args.trace) options.log = [&err](const std::string& line) { err << line << "\n"; };
    const Decision d = decide(u, v, args.mode, options);
    if (args.json)
      out << encode(make_certificate(d));
    else
      print_decision(d, out);
    return exit_code(d.outcome);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot read " << path << "\n";
    return kExitInputError;
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  try {
    const VerifyReport r = verify(decode(buffer.str()));
    out << (r.ok() ? "verified" : "rejected") << ": " << r.message << "\n";
    return r.ok() ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_reduce(const std::string& u_text, const std::string& v_text, FieldMode mode, std::ostream& out,
               std::ostream& err) {
  try {
    const Poly2<Rational> u = read_component("u", u_text);
    const Poly2<Rational> v = read_component("v", v_text);
    if (u.is_constant() || v.is_constant()) throw InputError("input pair has a constant component");
    const MorphismPair p(to_elem(u), to_elem(v), FieldCtx(mode));
    const MoveAnalysis analysis = analyze_moves(p);
    out << "pair: " << pair_text(p) << ", " << degrees_text(p) << "\n";
    for (const auto& f : analysis.families) {
      out << f.move << ": " << f.reason;
      if (f.gcd) out << " [gcd " << *f.gcd << "]";
      out << "\n";
    }
    int i = 0;
    for (const auto& m : analysis.moves) {
      out << "[" << ++i << "] " << describe(m.step) << " -> " << pair_text(m.successor) << ", "
          << degrees_text(m.successor) << "\n";
      if (m.successor.ctx().height() > 0)
        for (const auto& rel : encode_tower(m.successor.ctx())) out << "    where " << rel.defining << " = 0\n";
    }
    return analysis.moves.empty() ? 1 : 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide whether a plane birational morphism (u, v) over Q is a product of simple affine "
               "contractions.\nExit status: 0 yes, 1 no, 2 undecided, 64 input error.",
               "birat"};
  app.require_subcommand(1);

  const std::map<std::string, FieldMode> fields{{"rational", FieldMode::Rational}, {"closure", FieldMode::Closure}};

  DecideArgs decide_args;
  auto* decide_cmd = app.add_subcommand("decide", "Decide the pair (U, V)");
  decide_cmd->add_option("U", decide_args.u, "first component")->required();
  decide_cmd->add_option("V", decide_args.v, "second component")->required();
  decide_cmd->add_option("--field", decide_args.mode, "coefficient field (default closure)")
      ->transform(CLI::CheckedTransformer(fields, CLI::ignore_case));
  decide_cmd->add_flag("--json", decide_args.json, "write the certificate as JSON to stdout");
  decide_cmd->add_flag("--trace", decide_args.trace, "log explored steps to stderr");
  decide_cmd->add_option("--max-depth", decide_args.max_depth, "search depth override");

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "Replay and recompose a certificate");
  verify_cmd->add_option("FILE", verify_path, "certificate file")->required();

  std::string reduce_u, reduce_v;
  FieldMode reduce_mode = FieldMode::Closure;
  auto* reduce_cmd = app.add_subcommand("reduce", "List the degree-reducing moves of (U, V)");
  reduce_cmd->add_option("U", reduce_u, "first component")->required();
  reduce_cmd->add_option("V", reduce_v, "second component")->required();
  reduce_cmd->add_option("--field", reduce_mode, "coefficient field (default closure)")
      ->transform(CLI::CheckedTransformer(fields, CLI::ignore_case));

  FieldMode repl_mode = FieldMode::Closure;
  auto* repl_cmd = app.add_subcommand("repl", "Interactive reduction session");
  repl_cmd->add_option("--field", repl_mode, "coefficient field (default closure)")
      ->transform(CLI::CheckedTransformer(fields, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitInputError;
  }

  if (decide_cmd->parsed()) return cmd_decide(decide_args, out, err);
  if (verify_cmd->parsed()) return cmd_verify(verify_path, out, err);
  if (reduce_cmd->parsed()) return cmd_reduce(reduce_u, reduce_v, reduce_mode, out, err);
  return cmd_repl(repl_mode, in, out, err);
}

}  // namespace birat::cli
