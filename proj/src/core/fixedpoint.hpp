#ifndef HEGRAD_CORE_FIXEDPOINT_HPP
#define HEGRAD_CORE_FIXEDPOINT_HPP

#include <gmpxx.h>

#include "core/decimal.hpp"

namespace hegrad {
namespace fixedpoint {

// Scale a decimal with at most `sigma` fraction digits to the integer
// 10^sigma * r. Inputs needing more digits are rejected, never rounded;
// callers that want rounding must call quantize() explicitly.
mpz_class encode(const ScaledDecimal& value, unsigned sigma);

// Map a residue z in [0, m) back to a signed decimal with `scale` fraction
// digits: z/10^scale for the low half, (z-m)/10^scale for the high half.
// m must be odd.
ScaledDecimal decode_residue(const mpz_class& z, unsigned scale, const mpz_class& m);

// decode_residue(encode-then-mod): the identity whenever
// |10^scale * value| <= (m-1)/2; throws bound_violated otherwise.
ScaledDecimal roundtrip(const ScaledDecimal& value, unsigned scale, const mpz_class& m);

}  // namespace fixedpoint
}  // namespace hegrad

#endif
