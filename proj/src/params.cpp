#include "swallowtail/params.hpp"

#include <cmath>
#include <string>

#include "swallowtail/errors.hpp"

namespace swallowtail {

namespace {

double fifth_root_power(int numerator) {
  return std::pow(5.0, static_cast<double>(numerator) / 5.0);
}

}  // namespace

std::string_view to_string(Form form) { return form == Form::S ? "S" : "Q"; }

Form parse_form(std::string_view text) {
  if (text == "S" || text == "s") return Form::S;
  if (text == "Q" || text == "q") return Form::Q;
  throw InvalidArgument("unknown form '" + std::string(text) + "', expected S or Q");
}

void Params::validate() const {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
    throw InvalidArgument("parameters must be finite real numbers");
}

Rescaled s_to_q(const Params& p) {
  if (p.form != Form::S) throw InvalidArgument("s_to_q expects S-normalized parameters");
  p.validate();
  return {Params{3.0 * p.x / fifth_root_power(3), 2.0 * p.y / fifth_root_power(2),
                 p.z / fifth_root_power(1), Form::Q},
          1.0 / fifth_root_power(1)};
}

Rescaled q_to_s(const Params& p) {
  if (p.form != Form::Q) throw InvalidArgument("q_to_s expects Q-normalized parameters");
  p.validate();
  return {Params{fifth_root_power(3) * p.x / 3.0, fifth_root_power(2) * p.y / 2.0,
                 fifth_root_power(1) * p.z, Form::S},
          fifth_root_power(1)};
}

Params conjugate_reflection(const Params& p) { return {p.x, -p.y, p.z, p.form}; }

}  // namespace swallowtail
