#pragma once

#include <optional>
#include <string>
#include <vector>

#include "birat/engine.hpp"

namespace birat {

struct TowerRelation {
  std::string name;      // "b1", "b2", ...
  std::string defining;  // polynomial in the generator itself, over the lower ones
  friend bool operator==(const TowerRelation&, const TowerRelation&) = default;
};

/// One ET step with its parameters as canonical text. Absent fields are
/// empty optionals: swap has only a kind, sub2 has side and q, div1 has
/// side, a, b and (only when c != 1) c.
struct StepRecord {
  std::string kind;  // "div1", "sub2", "swap"
  std::optional<std::string> side;
  std::optional<std::string> a;
  std::optional<std::string> b;
  std::optional<std::string> c;
  std::optional<std::string> q;
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct RefusalRecord {
  std::string move;
  std::string reason;
  std::optional<std::string> gcd;
  friend bool operator==(const RefusalRecord&, const RefusalRecord&) = default;
};

/// A decision as evidence. The pair before step i equals sigma_i applied to
/// the pair after it, so input = alpha o sigma_n o ... o sigma_1 where alpha
/// is the final affine pair.
struct Certificate {
  int version = 1;
  std::string u;
  std::string v;
  FieldMode mode = FieldMode::Closure;
  Outcome outcome = Outcome::No;
  std::vector<TowerRelation> tower;
  std::vector<StepRecord> trace;
  std::vector<RefusalRecord> refusal;
  SearchStats stats;

  friend bool operator==(const Certificate& a, const Certificate& b) {
    return a.version == b.version && a.u == b.u && a.v == b.v && a.mode == b.mode && a.outcome == b.outcome &&
           a.tower == b.tower && a.trace == b.trace && a.refusal == b.refusal && a.stats.nodes == b.stats.nodes &&
           a.stats.max_depth == b.stats.max_depth && a.stats.splits == b.stats.splits;
  }
};

Certificate make_certificate(const Decision& d);
/// Certificate for an explicit step sequence; step parameters must live in
/// ctx or one of its ancestors.
Certificate make_certificate(const Poly2<Rational>& u, const Poly2<Rational>& v, FieldMode mode, Outcome outcome,
                             const FieldCtx& ctx, const std::vector<ETStep>& steps);

std::string encode(const Certificate& c);
/// Throws MalformedCertificate.
Certificate decode(const std::string& text);

StepRecord encode_step(const ETStep& step, const TowerPtr& tower);
std::vector<TowerRelation> encode_tower(const FieldCtx& ctx);

/// Typed view of a certificate: input pair, tower and steps.
struct LoadedCertificate {
  FieldCtx ctx;
  Poly2<Rational> u;
  Poly2<Rational> v;
  std::vector<ETStep> steps;
};

/// Throws MalformedCertificate on unknown generators, bad tower relations or
/// unparsable texts.
LoadedCertificate load(const Certificate& c);

/// Images of x and y under one generalized contraction.
struct SacFactor {
  Poly2<Elem> x_image;
  Poly2<Elem> y_image;
};

SacFactor step_to_contraction(const ETStep& step);

/// End pairs of a successful replay, one per branch of the recorded tower;
/// nullopt when a step fails or some end pair is not an affine automorphism.
/// Throws MalformedCertificate.
std::optional<std::vector<MorphismPair>> replay_branches(const Certificate& c);
bool replay(const Certificate& c);
/// input == alpha o sigma_n o ... o sigma_1, alpha being the replayed end pair.
bool recompose(const Certificate& c);

struct VerifyReport {
  bool replay_ok = false;
  bool recompose_ok = false;
  std::string message;
  bool ok() const { return replay_ok && recompose_ok; }
};

/// Throws MalformedCertificate.
VerifyReport verify(const Certificate& c);

}  // namespace birat
