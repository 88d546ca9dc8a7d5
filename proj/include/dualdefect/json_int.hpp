#pragma once

// Arbitrary precision integers in JSON: numbers while they fit in 53 bits,
// decimal strings beyond that.

#include <json.hpp>

#include "dualdefect/exact_linalg.hpp"

namespace dualdefect::json_int {

using Json = nlohmann::ordered_json;

Json encode(const Int& v);
Int decode(const Json& j);

Json encode(const IntVector& v);
IntVector decode_vector(const Json& j);

Json encode(const IntMatrix& m);
// cols is needed to recover the shape of matrices without rows.
IntMatrix decode_matrix(const Json& j, std::size_t cols);

}  // namespace dualdefect::json_int
