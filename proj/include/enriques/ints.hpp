#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

namespace enr {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using IntMat = std::vector<std::vector<Int>>;

inline long to_long(const Int& v) { return v.get_si(); }

inline std::string to_string(const Int& v) { return v.get_str(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

} // namespace enr
