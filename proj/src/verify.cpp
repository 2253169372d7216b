#include "taut/verify.hpp"

#include "taut/pushforward.hpp"

namespace taut {

std::string to_string(VerifyResult::Method m) {
  switch (m) {
    case VerifyResult::Method::EmptyClass: return "empty-class";
    case VerifyResult::Method::Integration: return "top-degree-integration";
    case VerifyResult::Method::Certificate: return "wdvv-certificate";
    case VerifyResult::Method::None: return "none";
  }
  return "?";
}

VerifyResult verify_expression(const Expression& e, const Budget& budget) {
  VerifyResult r{e, std::nullopt, VerifyResult::Method::None, {}, std::nullopt};
  if (e.empty()) {
    r.method = VerifyResult::Method::EmptyClass;
    r.certificate.outcome = ZeroCertificate::Outcome::Zero;
    return r;
  }
  if (*e.degree() == e.ambient().dimension()) {
    r.integral = integrate(e);
    if (*r.integral == 0) r.method = VerifyResult::Method::Integration;
    return r;
  }
  r.psi_free = eliminate_all_psi(e);
  r.certificate = span_zero_test(*r.psi_free, budget);
  if (r.certificate.outcome == ZeroCertificate::Outcome::Zero && replay(r.certificate, *r.psi_free))
    r.method = VerifyResult::Method::Certificate;
  return r;
}

VerifyResult verify_vanishing(int g, int m, const WeightVector& d, const Budget& budget) {
  return verify_expression(class_B(g, m, d), budget);
}

PushforwardCheck check_pushforward(int g, int m, int l, const WeightVector& d, const Budget& budget) {
  const int n = static_cast<int>(d.size());
  PushforwardCheck out{forget_frozen_legs(class_B(g, m + l, d), l), Expression(b_ambient(g, n, m)), false, false, {}};
  for (const auto& entry : string_pushforward_vertex(d, l)) out.rhs += scale(class_B(g, m, entry.p), entry.coefficient);
  const Expression diff = out.lhs - out.rhs;
  if (diff.empty()) {
    out.equal = true;
    out.certificate.outcome = ZeroCertificate::Outcome::Zero;
    return out;
  }
  out.needed_certificate = true;
  const VerifyResult v = verify_expression(diff, budget);
  out.certificate = v.certificate;
  out.equal = v.proved();
  return out;
}

bool stepwise_matches_joint(const Expression& e, int l) {
  Expression stepwise = e;
  for (int i = 0; i < l; ++i) stepwise = forget_frozen_legs(stepwise, 1);
  return stepwise == forget_frozen_legs(e, l);
}

Json certificate_to_json(const ZeroCertificate& c) {
  Json j;
  j["schema"] = 1;
  j["outcome"] = to_string(c.outcome);
  j["rounds"] = c.rounds_used;
  j["combination"] = Json::array();
  for (const auto& [coef, rel] : c.combination)
    j["combination"].push_back(Json{{"coefficient", rational_to_json(coef)}, {"relation", expression_to_json(rel)}});
  return j;
}

}  // namespace taut
