#pragma once

#include <string>
#include <string_view>

#include "innerlab/certify.hpp"
#include "innerlab/hup.hpp"
#include "innerlab/inner_function.hpp"

namespace innerlab {

/// {"zeros": [[re, im], ...], "singular_atoms": [[angle, mass], ...],
///  "front_factor_angle": t, "outer": {"center": [re, im], "rotation": r}}
/// The "outer" key is present only for composed forms. Doubles are written
/// with 17 significant digits, so parsing the output reproduces every bit.
std::string to_json(const InnerFunction& f);
InnerFunction inner_function_from_json(std::string_view text);

/// {"atoms": [[position, mass], ...]}
std::string to_json(const IntervalSingularMeasure& nu);
IntervalSingularMeasure measure_from_json(std::string_view text);
/// "s1:m1,s2:m2,..." as accepted on the command line.
IntervalSingularMeasure parse_measure_spec(std::string_view spec);

std::string to_json(const Certificate& c);
Certificate certificate_from_json(std::string_view text);
Verdict verdict_from_string(std::string_view s);

/// printf("%.17g")
std::string format_double(double x);

}  // namespace innerlab
