#include "birat/certify.hpp"

#include <json.hpp>

#include "birat/text.hpp"

namespace birat {

namespace {

using Json = nlohmann::ordered_json;

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedCertificate, "malformed certificate: " + what);
}

const char* mode_name(FieldMode m) { return m == FieldMode::Rational ? "rational" : "closure"; }

FieldMode parse_mode(const std::string& s) {
  if (s == "rational") return FieldMode::Rational;
  if (s == "closure") return FieldMode::Closure;
  malformed("unknown mode '" + s + "'");
}

Outcome parse_outcome(const std::string& s) {
  if (s == "yes") return Outcome::Yes;
  if (s == "no") return Outcome::No;
  if (s == "undecided") return Outcome::Undecided;
  malformed("unknown outcome '" + s + "'");
}

Side parse_side(const std::optional<std::string>& s) {
  if (!s) malformed("step without a side");
  if (*s == "u") return Side::U;
  if (*s == "v") return Side::V;
  malformed("unknown side '" + *s + "'");
}

// Strict object reader: every key must be expected, in any order.
class Fields {
 public:
  Fields(const Json& j, const char* where, std::initializer_list<const char*> allowed) : j_(j), where_(where) {
    if (!j.is_object()) malformed(std::string(where) + " is not an object");
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) malformed("unexpected field '" + key + "' in " + where);
    }
  }

  const Json& get(const char* key) const {
    auto it = j_.find(key);
    if (it == j_.end()) malformed(std::string("missing field '") + key + "' in " + where_);
    return *it;
  }
  std::string str(const char* key) const {
    const Json& v = get(key);
    if (!v.is_string()) malformed(std::string("field '") + key + "' in " + where_ + " is not a string");
    return v.get<std::string>();
  }
  std::optional<std::string> opt_str(const char* key) const {
    if (!j_.contains(key)) return std::nullopt;
    return str(key);
  }
  long integer(const char* key) const {
    const Json& v = get(key);
    if (!v.is_number_integer()) malformed(std::string("field '") + key + "' in " + where_ + " is not an integer");
    return v.get<long>();
  }
  const Json& array(const char* key) const {
    const Json& v = get(key);
    if (!v.is_array()) malformed(std::string("field '") + key + "' in " + where_ + " is not an array");
    return v;
  }

 private:
  const Json& j_;
  const char* where_;
};

template <class T, class Fn>
T reading(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const SyntaxError& e) {
    malformed(std::string(what) + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedCertificate) throw;
    malformed(std::string(what) + ": " + e.what());
  }
}

ETStep load_step(const StepRecord& r, const FieldCtx& ctx) {
  auto elem = [&](const std::optional<std::string>& text, const char* name) {
    if (!text) malformed(std::string("div1 step without '") + name + "'");
    return reading<Elem>("step parameter", [&] { return parse_elem(*text, ctx); });
  };
  if (r.kind == "swap") {
    if (r.side || r.a || r.b || r.c || r.q) malformed("swap step with parameters");
    return Swap{};
  }
  if (r.kind == "sub2") {
    if (r.a || r.b || r.c) malformed("sub2 step with div1 parameters");
    if (!r.q) malformed("sub2 step without 'q'");
    return Sub2{parse_side(r.side),
                reading<UniPoly<Elem>>("step parameter", [&] { return parse_unipoly(*r.q, ctx, Var::t); })};
  }
  if (r.kind == "div1") {
    if (r.q) malformed("div1 step with 'q'");
    Div1 step{parse_side(r.side), elem(r.a, "a"), elem(r.b, "b"), Elem(1)};
    if (r.c) step.c = elem(r.c, "c");
    return step;
  }
  malformed("unknown step kind '" + r.kind + "'");
}

// Affine automorphism check for the verifier: degrees at most one and a
// linear part whose determinant is a unit in every branch of the tower.
bool affine_everywhere(const MorphismPair& p) {
  auto branches = evaluate(p.ctx(), [&](const FieldCtx& c) {
    const Poly2<Elem> u = import(p.u(), c.tower());
    const Poly2<Elem> v = import(p.v(), c.tower());
    if (u.total_degree() > Degree(1) || v.total_degree() > Degree(1)) return false;
    const Elem det = u.coeff({1, 0}) * v.coeff({0, 1}) - u.coeff({0, 1}) * v.coeff({1, 0});
    if (det.is_zero()) return false;
    det.inverse();
    return true;
  });
  for (const auto& b : branches)
    if (!b.value) return false;
  return true;
}

}  // namespace

std::vector<TowerRelation> encode_tower(const FieldCtx& ctx) {
  std::vector<TowerRelation> out;
  int k = 0;
  for (const auto& node : ctx.chain()) {
    ++k;
    out.push_back({node->name(), render_unipoly(node->defining(), Var::generator(static_cast<unsigned>(k)))});
  }
  return out;
}

StepRecord encode_step(const ETStep& step, const TowerPtr& tower) {
  return std::visit(overloaded{
                        [&](const Div1& s) {
                          StepRecord r{"div1", side_name(s.side), render_elem(import(s.a, tower)),
                                       render_elem(import(s.b, tower)), std::nullopt, std::nullopt};
                          if (!(s.c == Elem(1))) r.c = render_elem(import(s.c, tower));
                          return r;
                        },
                        [&](const Sub2& s) {
                          return StepRecord{"sub2",       side_name(s.side), std::nullopt, std::nullopt, std::nullopt,
                                            render_unipoly(import(s.q, tower), Var::t)};
                        },
                        [](const Swap&) { return StepRecord{"swap", {}, {}, {}, {}, {}}; },
                    },
                    step);
}

Certificate make_certificate(const Poly2<Rational>& u, const Poly2<Rational>& v, FieldMode mode, Outcome outcome,
                             const FieldCtx& ctx, const std::vector<ETStep>& steps) {
  Certificate c;
  c.u = render_poly(u);
  c.v = render_poly(v);
  c.mode = mode;
  c.outcome = outcome;
  c.tower = encode_tower(ctx);
  for (const auto& s : steps) c.trace.push_back(encode_step(s, ctx.tower()));
  return c;
}

Certificate make_certificate(const Decision& d) {
  std::vector<ETStep> steps;
  for (const auto& e : d.trace) steps.push_back(e.step);
  const FieldCtx ctx = d.final_pair ? d.final_pair->ctx() : FieldCtx(d.mode);
  Certificate c = make_certificate(d.input_u, d.input_v, d.mode, d.outcome, ctx, steps);
  for (const auto& f : d.refusal) c.refusal.push_back({f.move, f.reason, f.gcd});
  c.stats = d.stats;
  return c;
}

std::string encode(const Certificate& c) {
  Json j;
  j["version"] = c.version;
  j["input"] = Json{{"u", c.u}, {"v", c.v}};
  j["mode"] = mode_name(c.mode);
  j["outcome"] = outcome_name(c.outcome);
  j["tower"] = Json::array();
  for (const auto& t : c.tower) j["tower"].push_back(Json{{"name", t.name}, {"defining", t.defining}});
  j["trace"] = Json::array();
  for (const auto& s : c.trace) {
    Json e;
    e["kind"] = s.kind;
    if (s.side) e["side"] = *s.side;
    if (s.a) e["a"] = *s.a;
    if (s.b) e["b"] = *s.b;
    if (s.c) e["c"] = *s.c;
    if (s.q) e["q"] = *s.q;
    j["trace"].push_back(std::move(e));
  }
  j["refusal"] = Json::array();
  for (const auto& r : c.refusal) {
    Json e;
    e["move"] = r.move;
    e["reason"] = r.reason;
    if (r.gcd) e["gcd"] = *r.gcd;
    j["refusal"].push_back(std::move(e));
  }
  j["stats"] = Json{{"nodes", c.stats.nodes}, {"maxDepth", c.stats.max_depth}, {"splits", c.stats.splits}};
  return j.dump(2) + "\n";
}

Certificate decode(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  Fields top(j, "certificate", {"version", "input", "mode", "outcome", "tower", "trace", "refusal", "stats"});
  Certificate c;
  c.version = static_cast<int>(top.integer("version"));
  if (c.version != 1) malformed("unsupported version " + std::to_string(c.version));

  Fields input(top.get("input"), "input", {"u", "v"});
  c.u = input.str("u");
  c.v = input.str("v");
  c.mode = parse_mode(top.str("mode"));
  c.outcome = parse_outcome(top.str("outcome"));

  for (const auto& t : top.array("tower")) {
    Fields f(t, "tower entry", {"name", "defining"});
    c.tower.push_back({f.str("name"), f.str("defining")});
  }
  for (const auto& s : top.array("trace")) {
    Fields f(s, "trace step", {"kind", "side", "a", "b", "c", "q"});
    c.trace.push_back({f.str("kind"), f.opt_str("side"), f.opt_str("a"), f.opt_str("b"), f.opt_str("c"), f.opt_str("q")});
  }
  for (const auto& r : top.array("refusal")) {
    Fields f(r, "refusal entry", {"move", "reason", "gcd"});
    c.refusal.push_back({f.str("move"), f.str("reason"), f.opt_str("gcd")});
  }
  Fields stats(top.get("stats"), "stats", {"nodes", "maxDepth", "splits"});
  c.stats.nodes = stats.integer("nodes");
  c.stats.max_depth = static_cast<int>(stats.integer("maxDepth"));
  c.stats.splits = stats.integer("splits");
  return c;
}

LoadedCertificate load(const Certificate& c) {
  LoadedCertificate out;
  out.ctx = FieldCtx(c.mode);
  if (c.mode == FieldMode::Rational && !c.tower.empty()) malformed("rational certificate with a tower");
  for (const auto& rel : c.tower) {
    const std::string expected = out.ctx.next_generator_name();
    if (rel.name != expected) malformed("tower entry '" + rel.name + "', expected '" + expected + "'");
    const unsigned var = Var::generator(static_cast<unsigned>(out.ctx.height() + 1));
    out.ctx = reading<FieldCtx>("tower relation", [&] {
      UniPoly<Elem> f = parse_unipoly(rel.defining, out.ctx, var);
      if (f.size() < 2 || !(f.lead() == Elem(1))) malformed("defining polynomial of " + rel.name + " is not monic");
      return FieldCtx(c.mode, Tower::make(out.ctx.tower(), rel.name, std::move(f)));
    });
  }
  out.u = reading<Poly2<Rational>>("input u", [&] { return parse_poly(c.u); });
  out.v = reading<Poly2<Rational>>("input v", [&] { return parse_poly(c.v); });
  if (out.u.is_constant() || out.v.is_constant()) malformed("input pair has a constant component");
  for (const auto& r : c.trace) out.steps.push_back(load_step(r, out.ctx));
  return out;
}

SacFactor step_to_contraction(const ETStep& step) {
  const Poly2<Elem> x = Poly2<Elem>::x(), y = Poly2<Elem>::y();
  return std::visit(overloaded{
                        [&](const Div1& s) {
                          const Poly2<Elem>& fixed = s.side == Side::U ? y : x;
                          const Poly2<Elem>& moved = s.side == Side::U ? x : y;
                          Poly2<Elem> image = moved * (fixed.scale(s.c) + Poly2<Elem>::constant(s.b)) -
                                              Poly2<Elem>::constant(s.a);
                          return s.side == Side::U ? SacFactor{image, y} : SacFactor{x, image};
                        },
                        [&](const Sub2& s) {
                          const Poly2<Elem>& fixed = s.side == Side::U ? y : x;
                          const Poly2<Elem>& moved = s.side == Side::U ? x : y;
                          Poly2<Elem> image = moved - compose(s.q, fixed);
                          return s.side == Side::U ? SacFactor{image, y} : SacFactor{x, image};
                        },
                        [&](const Swap&) { return SacFactor{y, x}; },
                    },
                    step);
}

std::optional<std::vector<MorphismPair>> replay_branches(const Certificate& c) {
  const LoadedCertificate loaded = load(c);
  if (c.outcome != Outcome::Yes) return std::nullopt;
  try {
    auto branches = evaluate(loaded.ctx, [&](const FieldCtx& ctx) -> std::optional<MorphismPair> {
      MorphismPair p(to_elem(loaded.u), to_elem(loaded.v), ctx);
      for (const auto& s : loaded.steps) p = apply_step(p, s);
      if (!affine_everywhere(p)) return std::nullopt;
      return p;
    });
    std::vector<MorphismPair> out;
    for (auto& b : branches) {
      if (!b.value) return std::nullopt;
      out.push_back(std::move(*b.value));
    }
    return out;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotDivisible || e.code() == ErrorCode::ConstantComponent ||
        e.code() == ErrorCode::ZeroDivisor)
      return std::nullopt;
    throw;
  }
}

bool replay(const Certificate& c) { return replay_branches(c).has_value(); }

bool recompose(const Certificate& c) {
  const LoadedCertificate loaded = load(c);
  const auto ends = replay_branches(c);
  if (!ends) return false;
  std::vector<SacFactor> sigmas;
  for (const auto& s : loaded.steps) sigmas.push_back(step_to_contraction(s));
  for (const auto& end : *ends) {
    const TowerPtr& t = end.ctx().tower();
    Poly2<Elem> u = end.u(), v = end.v();
    for (auto it = sigmas.rbegin(); it != sigmas.rend(); ++it) {
      Poly2<Elem> nu = substitute(import(it->x_image, t), u, v);
      Poly2<Elem> nv = substitute(import(it->y_image, t), u, v);
      u = std::move(nu);
      v = std::move(nv);
    }
    if (!(u == to_elem(loaded.u) && v == to_elem(loaded.v))) return false;
  }
  return true;
}

VerifyReport verify(const Certificate& c) {
  VerifyReport r;
  load(c);
  if (c.outcome != Outcome::Yes) {
    r.message = std::string("certificate records outcome '") + outcome_name(c.outcome) + "'; only yes certificates replay";
    return r;
  }
  r.replay_ok = replay(c);
  if (!r.replay_ok) {
    r.message = "replay failed: a step is not exact or the end pair is not an affine automorphism";
    return r;
  }
  r.recompose_ok = recompose(c);
  r.message = r.recompose_ok ? "replay and recomposition succeeded"
                             : "recomposition does not reproduce the input pair";
  return r;
}

}  // namespace birat
