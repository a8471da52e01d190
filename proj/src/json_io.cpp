#include "duality/json_io.hpp"

namespace duality {

std::string bigq_to_string(const bigq& v) { return v.str(); }

bigq bigq_from_string(const std::string& s) {
  if (s.empty()) throw domain_violation("json: empty fraction string");
  for (const char c : s)
    if (std::string("+-/0123456789").find(c) == std::string::npos)
      throw domain_violation("json: malformed fraction string '" + s + "'");
  // GMP aborts (rather than throws) when canonicalizing a zero denominator,
  // so reject it before handing the text over.
  const std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    std::string den = s.substr(slash + 1);
    if (!den.empty() && (den[0] == '+' || den[0] == '-')) den.erase(0, 1);
    if (den.empty() || den.find_first_not_of('0') == std::string::npos)
      throw domain_violation("json: zero denominator in '" + s + "'");
  }
  try {
    return bigq(s);
  } catch (const std::exception&) {
    throw domain_violation("json: malformed fraction string '" + s + "'");
  }
}

std::string canonical_dump(const njson& j) { return j.dump(2) + "\n"; }

njson parse_json(const std::string& text) {
  try {
    return njson::parse(text);
  } catch (const njson::parse_error& e) {
    throw domain_violation(std::string("json: parse error: ") + e.what());
  }
}

}  // namespace duality
