#include "taut/rational.hpp"

#include <stdexcept>

namespace taut {

Rational parse_rational(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  if (t.empty()) throw std::invalid_argument("empty rational");
  const auto slash = t.find('/');
  auto digits_ok = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = (allow_sign && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos ? !digits_ok(t, true)
                                 : !digits_ok(t.substr(0, slash), true) || !digits_ok(t.substr(slash + 1), false))
    throw std::invalid_argument("malformed rational '" + text + "'");
  Rational r(t, 10);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace taut
