#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace chiralp1 {

// Exact rational scalar. mpq_class keeps the canonical form we rely on
// everywhere: lowest terms, denominator > 0, zero represented as 0/1.
using Scalar = mpq_class;

inline Scalar frac(long num, long den = 1) {
    Scalar s(num, den);
    s.canonicalize();
    return s;
}

inline std::string to_string(const Scalar& s) { return s.get_str(); }

inline bool is_integer(const Scalar& s) { return s.get_den() == 1; }

}  // namespace chiralp1
