#pragma once

#include <optional>

#include "taut/bclass.hpp"
#include "taut/json_io.hpp"
#include "taut/reduce.hpp"

namespace taut {

struct VerifyResult {
  enum class Method { EmptyClass, Integration, Certificate, None };

  Expression input;
  std::optional<Expression> psi_free;
  Method method = Method::None;
  ZeroCertificate certificate;
  std::optional<Rational> integral;

  bool proved() const { return method != Method::None; }
  bool overflow() const { return certificate.outcome == ZeroCertificate::Outcome::Overflow; }
};

std::string to_string(VerifyResult::Method m);

/// Vanishing check of one expression: empty is trivially zero; a top-degree
/// class is zero iff its integral is; otherwise psi elimination followed by the
/// WDVV span test.
VerifyResult verify_expression(const Expression& e, const Budget& budget = {});

/// verify_expression(class_B(g, m, d)).
VerifyResult verify_vanishing(int g, int m, const WeightVector& d, const Budget& budget = {});

struct PushforwardCheck {
  Expression lhs;  // pi_* B^{m+l}_{g,d}
  Expression rhs;  // sum over k in D_l(d) of l!/prod (d_i - k_i)! B^m_{g,k}
  bool equal = false;
  bool needed_certificate = false;  // the difference did not vanish term for term
  ZeroCertificate certificate;
};

PushforwardCheck check_pushforward(int g, int m, int l, const WeightVector& d, const Budget& budget = {});

/// Forgetting l frozen legs one at a time agrees with forgetting them jointly.
bool stepwise_matches_joint(const Expression& e, int l);

/// {schema:1, outcome, rounds, combination:[{coefficient, relation}]}.
Json certificate_to_json(const ZeroCertificate& c);

}  // namespace taut
