#pragma once

#include <string>

namespace imglab {

/// Fixed 12-significant-digit decimal formatting for all numeric output.
/// Integral values keep a trailing ".0" so CSV columns stay typed.
std::string fmt_real(double x);

}  // namespace imglab
