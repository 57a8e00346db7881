#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "birat/certify.hpp"
#include "birat/engine.hpp"

namespace birat::cli {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitInputError = 64;

struct DecideArgs {
  std::string u;
  std::string v;
  FieldMode mode = FieldMode::Closure;
  bool json = false;
  bool trace = false;
  std::optional<int> max_depth;
};

int exit_code(Outcome o);

int cmd_decide(const DecideArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_reduce(const std::string& u, const std::string& v, FieldMode mode, std::ostream& out, std::ostream& err);
int cmd_repl(FieldMode mode, std::istream& in, std::ostream& out, std::ostream& err);

/// Full command line, including argv[0].
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

/// Line-oriented session state. Every command either succeeds or leaves the
/// state untouched.
class Session {
 public:
  explicit Session(FieldMode mode) : mode_(mode) {}

  /// Runs one line; returns false after "quit". Errors are written to err.
  bool execute(const std::string& line, std::ostream& out, std::ostream& err);

  bool loaded() const { return current_.has_value(); }
  const MorphismPair& current() const { return *current_; }
  std::size_t depth() const { return history_.size(); }
  const std::vector<ETStep>& steps() const { return steps_; }
  Certificate certificate() const;

 private:
  void load(const std::string& rest, std::ostream& out);
  void list_moves(std::ostream& out);
  void apply(const std::string& rest, std::ostream& out);
  void undo(std::ostream& out);
  void show(std::ostream& out) const;
  void push(ETStep step, MorphismPair next);

  FieldMode mode_;
  Poly2<Rational> input_u_;
  Poly2<Rational> input_v_;
  std::optional<MorphismPair> current_;
  std::vector<MorphismPair> history_;
  std::vector<ETStep> steps_;
  std::vector<Move> listed_;
};

}  // namespace birat::cli
