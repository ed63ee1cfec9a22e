#include "ringq/profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace ringq {

namespace {

std::function<double(double)> radial_mean_by_name(const std::string& name,
                                                  int n) {
  if (name.rfind("const:", 0) == 0) {
    const double k = std::stod(name.substr(6));
    if (!(k >= 0.0))
      throw std::invalid_argument("profile const:K needs K >= 0");
    return [k](double) { return k; };
  }
  if (name == "log") {
    return [](double r) { return std::log(1.0 / r); };
  }
  if (name == "log2") {
    return [](double r) {
      const double l = std::log(1.0 / r);
      return std::max(1.0, l * l);
    };
  }
  if (name.rfind("powlog:", 0) == 0) {
    const double c = std::stod(name.substr(7));
    if (!(c > 0.0)) throw std::invalid_argument("profile powlog:C needs C > 0");
    const int e = n - 1;
    return [c, e](double r) { return c * std::pow(std::log(1.0 / r), e); };
  }
  throw std::invalid_argument("unknown profile '" + name +
                              "' (expected const:K | log | log2 | powlog:C)");
}

}  // namespace

QProfile profile_by_name(const std::string& name, int n) {
  return make_radial_profile(n, radial_mean_by_name(name, n));
}

QProfile family_profile_by_name(const std::string& name, int n) {
  auto base = radial_mean_by_name(name, n);
  return make_radial_profile(
      n, [base](double r) { return std::max(1.0, base(r)); });
}

}  // namespace ringq
