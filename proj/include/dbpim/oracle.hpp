#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dbpim/ipu.hpp"

namespace dbpim::oracle {

// Reference implementations used to pin down expected results in tests.
// Everything here is computed from first principles (brute force over the
// full representation space, plain integer dot products) and shares no code
// with the encoder, compiler, or simulator it is checked against.

struct ReferenceResult {
  std::vector<std::int64_t> outputs;  // one per weight row
};

// Plain integer matrix-vector product. Weight rows must all have the length
// of `inputs`; weights must lie in [-128, 127] and inputs in the domain of
// `signedness`. Internally evaluates each row in two different summation
// orders and insists they agree.
ReferenceResult dot_reference(const std::vector<std::vector<int>>& weight_rows,
                              std::span<const int> inputs,
                              Signedness signedness);

// All 8-digit signed-digit vectors (digits in {-1,0,+1}, index 0 = 2^0)
// whose decoded value equals `value`. Enumerates the full 3^8 space.
std::vector<std::array<std::int8_t, 8>> csd_enumerate(int value);

// True iff no two adjacent digits are both non-zero.
bool is_nonadjacent(const std::array<std::int8_t, 8>& digits);

// Minimum number of non-zero digits over every signed-digit representation
// of `value`. Defined for values representable in 8 signed digits.
int min_nonzero_count(int value);

// Closest representable value to `w` among t in [-128, 127] satisfying
// phi_ok(min_nonzero_count(t)). Ties on distance prefer the smaller |t|,
// then the positive candidate. Throws ArgumentError if no value qualifies.
int nearest_reference(int w, const std::function<bool(int)>& phi_ok);

// Convenience form: phi equal to (at_most = false) or at most (at_most =
// true) the given threshold.
int nearest_reference(int w, int phi_threshold, bool at_most);

}  // namespace dbpim::oracle
