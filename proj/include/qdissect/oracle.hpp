#pragma once

#include <vector>

#include <gmpxx.h>

namespace qdissect::oracle {

/// Exact overpartition counts indexed 0..nmax. l is the divisibility
/// restriction on non-overlined parts; l = 0 means unrestricted.
struct CountTable {
    int l = 0;
    int nmax = 0;
    std::vector<mpz_class> counts;
};

/// Counts overpartitions of 0..nmax whose non-overlined parts are not
/// divisible by l. Dynamic programming over part sizes: one backward
/// sweep per size for the at-most-once overlined copy, one forward sweep
/// for unbounded non-overlined copies when the size is allowed. Shares no
/// code with the series convolution engine.
CountTable count_restricted(int l, int nmax);

/// Plain overpartition counts (both factors for every part size).
CountTable count_overpartitions(int nmax);

/// Third, slower path: recursive enumeration over part multiplicities and
/// overline choices. Intended for small n as a cross-check of both sweeps.
std::vector<mpz_class> enumerate_counts(int l, int nmax);

}  // namespace qdissect::oracle
