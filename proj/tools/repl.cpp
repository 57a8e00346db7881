#include <unistd.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "birat/text.hpp"
#include "cli.hpp"

namespace birat::cli {

namespace {

constexpr const char* kHelp =
    "commands:\n"
    "  load U, V              start a session on the pair (U, V)\n"
    "  moves                  list the degree-reducing moves\n"
    "  apply N                apply move N from the last listing\n"
    "  apply div1 SIDE A B    (SIDE + A) / (OTHER + B), SIDE is u or v\n"
    "  apply sub2 SIDE Q      SIDE + Q(OTHER), Q a polynomial in t\n"
    "  apply swap             exchange u and v\n"
    "  undo                   revert the last applied step\n"
    "  degree                 print the degree sum\n"
    "  show                   print the current pair and tower\n"
    "  export FILE            write the session as a certificate\n"
    "  help, quit\n";

struct CommandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_word(const std::string& s) {
  const std::string t = trim(s);
  const auto sp = t.find_first_of(" \t");
  if (sp == std::string::npos) return {t, ""};
  return {t.substr(0, sp), trim(t.substr(sp))};
}

Side read_side(const std::string& s) {
  if (s == "u") return Side::U;
  if (s == "v") return Side::V;
  throw CommandError("side must be u or v, got '" + s + "'");
}

std::string pair_text(const MorphismPair& p) { return "(" + render_poly(p.u()) + ", " + render_poly(p.v()) + ")"; }

}  // namespace

bool Session::execute(const std::string& line, std::ostream& out, std::ostream& err) {
  const auto [command, rest] = split_word(line);
  try {
    if (command.empty() || command[0] == '#') return true;
    if (command == "quit" || command == "exit") return false;
    if (command == "help") {
      out << kHelp;
    } else if (command == "load") {
      load(rest, out);
    } else if (command == "moves") {
      list_moves(out);
    } else if (command == "apply") {
      apply(rest, out);
    } else if (command == "undo") {
      undo(out);
    } else if (command == "degree") {
      if (!current_) throw CommandError("no pair loaded");
      out << degree_sum(*current_) << "\n";
    } else if (command == "show") {
      show(out);
    } else if (command == "export") {
      if (!current_) throw CommandError("no pair loaded");
      if (rest.empty()) throw CommandError("export needs a file name");
      std::ofstream file(rest, std::ios::binary);
      if (!file) throw CommandError("cannot write " + rest);
      file << encode(certificate());
      out << "wrote " << rest << "\n";
    } else {
      throw CommandError("unknown command '" + command + "' (try help)");
    }
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotDivisible) {
      err << "error: remainder nonzero\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
  }
  return true;
}

Certificate Session::certificate() const {
  bool affine = true;
  for (const auto& b : is_affine_auto(*current_)) affine = affine && b.value;
  return make_certificate(input_u_, input_v_, mode_, affine ? Outcome::Yes : Outcome::Undecided, current_->ctx(),
                          steps_);
}

void Session::load(const std::string& rest, std::ostream& out) {
  const auto comma = rest.find(',');
  if (comma == std::string::npos) throw CommandError("usage: load U, V");
  Poly2<Rational> u = parse_poly(rest.substr(0, comma));
  Poly2<Rational> v = parse_poly(rest.substr(comma + 1));
  MorphismPair pair(to_elem(u), to_elem(v), FieldCtx(mode_));
  input_u_ = std::move(u);
  input_v_ = std::move(v);
  current_ = std::move(pair);
  history_.clear();
  steps_.clear();
  listed_.clear();
  show(out);
}

void Session::list_moves(std::ostream& out) {
  if (!current_) throw CommandError("no pair loaded");
  MoveAnalysis analysis = analyze_moves(*current_);
  listed_ = std::move(analysis.moves);
  if (listed_.empty()) out << "no reducing moves\n";
  int i = 0;
  for (const auto& m : listed_) {
    out << "[" << ++i << "] " << describe(m.step) << " -> " << pair_text(m.successor) << "\n";
    if (m.successor.ctx().height() > current_->ctx().height())
      for (const auto& rel : encode_tower(m.successor.ctx())) out << "    where " << rel.defining << " = 0\n";
  }
}

void Session::apply(const std::string& rest, std::ostream& out) {
  if (!current_) throw CommandError("no pair loaded");
  const auto [kind, args] = split_word(rest);
  if (!kind.empty() && std::isdigit(static_cast<unsigned char>(kind[0]))) {
    std::size_t index = 0;
    try {
      index = std::stoul(kind);
    } catch (const std::exception&) {
      throw CommandError("invalid move index '" + kind + "'");
    }
    if (index == 0 || index > listed_.size()) throw CommandError("invalid move index " + kind);
    Move m = listed_[index - 1];
    push(m.step, m.successor);
  } else if (kind == "swap") {
    if (!args.empty()) throw CommandError("swap takes no parameters");
    push(Swap{}, apply_step(*current_, Swap{}));
  } else if (kind == "sub2") {
    const auto [side, q] = split_word(args);
    if (q.empty()) throw CommandError("usage: apply sub2 SIDE Q");
    Sub2 step{read_side(side), parse_unipoly(q, current_->ctx(), Var::t)};
    push(step, apply_step(*current_, step));
  } else if (kind == "div1") {
    const auto [side, ab] = split_word(args);
    const auto [a, b] = split_word(ab);
    if (a.empty() || b.empty() || b.find_first_of(" \t") != std::string::npos)
      throw CommandError("usage: apply div1 SIDE A B");
    Div1 step{read_side(side), parse_elem(a, current_->ctx()), parse_elem(b, current_->ctx()), Elem(1)};
    push(step, apply_step(*current_, step));
  } else {
    throw CommandError("usage: apply N | apply div1 SIDE A B | apply sub2 SIDE Q | apply swap");
  }
  show(out);
}

void Session::push(ETStep step, MorphismPair next) {
  history_.push_back(*current_);
  steps_.push_back(std::move(step));
  current_ = std::move(next);
  listed_.clear();
}

void Session::undo(std::ostream& out) {
  if (history_.empty()) throw CommandError("nothing to undo");
  current_ = std::move(history_.back());
  history_.pop_back();
  steps_.pop_back();
  listed_.clear();
  show(out);
}

void Session::show(std::ostream& out) const {
  if (!current_) throw CommandError("no pair loaded");
  out << pair_text(*current_) << ", degree sum " << degree_sum(*current_) << "\n";
  for (const auto& rel : encode_tower(current_->ctx())) out << "  where " << rel.defining << " = 0\n";
}

int cmd_repl(FieldMode mode, std::istream& in, std::ostream& out, std::ostream& err) {
  Session session(mode);
  std::string line;
  const bool interactive = &in == &std::cin && isatty(STDIN_FILENO);
  if (interactive) out << "birat repl, type help for commands\n";
  while (true) {
    if (interactive) out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    if (!session.execute(line, out, err)) break;
  }
  return 0;
}

}  // namespace birat::cli
