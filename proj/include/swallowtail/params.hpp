#pragma once

#include <string_view>

namespace swallowtail {

// Normalization of the swallowtail integral.
//   S(x,y,z) = ∫ exp[i(u^5 + x u^3 + y u^2 + z u)] du
//   Q(x,y,z) = ∫ exp[i(t^5/5 + x t^3/3 + y t^2/2 + z t)] dt
enum class Form { S, Q };

std::string_view to_string(Form form);
// Accepts "S"/"Q" in either case; throws InvalidArgument otherwise.
Form parse_form(std::string_view text);

// A real parameter triple tagged with its normalization. The tag keeps S and
// Q coordinates from being mixed by accident.
struct Params {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  Form form = Form::Q;

  // Throws InvalidArgument when a coordinate is not finite.
  void validate() const;
};

// Result of moving between normalizations. `value_factor` relates function
// values: value_in_source_form = value_factor * value_at(mapped).
struct Rescaled {
  Params mapped;
  double value_factor = 1.0;
};

// (x,y,z)_S -> (3x/5^{3/5}, 2y/5^{2/5}, z/5^{1/5})_Q with factor 5^{-1/5}.
Rescaled s_to_q(const Params& p);

// (x,y,z)_Q -> (5^{3/5}x/3, 5^{2/5}y/2, 5^{1/5}z)_S with factor 5^{1/5}.
Rescaled q_to_s(const Params& p);

// (x,y,z) -> (x,-y,z). The integral at the reflected point is the complex
// conjugate of the integral at p, in either normalization.
Params conjugate_reflection(const Params& p);

}  // namespace swallowtail
