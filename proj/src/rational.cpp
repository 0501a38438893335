#include "hyparr/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hyparr {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  if (!valid_integer_token(num))
    throw std::invalid_argument("malformed rational: '" + s + "'");
  if (slash == std::string::npos) return Rat(Int(num));
  const std::string den = s.substr(slash + 1);
  if (!valid_integer_token(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: '" + s + "'");
  return make_rat(Int(num), Int(den));
}

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Int& z) { return z.get_str(); }

}  // namespace hyparr
