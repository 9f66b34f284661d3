#include "qdissect/oracle.hpp"

#include <stdexcept>

namespace qdissect::oracle {

namespace {

CountTable build(int l, int nmax) {
    if (nmax < 0) throw std::invalid_argument("nmax must be >= 0");
    CountTable table;
    table.l = l;
    table.nmax = nmax;
    table.counts.assign(static_cast<std::size_t>(nmax) + 1, 0);
    table.counts[0] = 1;
    auto& c = table.counts;
    for (int s = 1; s <= nmax; ++s) {
        // overlined part s: at most one copy
        for (int i = nmax; i >= s; --i) c[i] += c[i - s];
        // non-overlined part s: unbounded, unless s is a forbidden size
        if (l == 0 || s % l != 0)
            for (int i = s; i <= nmax; ++i) c[i] += c[i - s];
    }
    return table;
}

// Partitions of r into parts <= s, with a multiplicity-aware overline
// choice per part size. A size divisible by l admits only the single
// overlined copy; any other size used contributes a factor of 2.
mpz_class enumerate(int l, int r, int s) {
    if (r == 0) return 1;
    if (s == 0) return 0;
    mpz_class total = enumerate(l, r, s - 1);  // size s unused
    bool forbidden = l != 0 && s % l == 0;
    for (int mult = 1; mult * s <= r; ++mult) {
        if (forbidden) {
            if (mult == 1) total += enumerate(l, r - s, s - 1);
            break;
        }
        total += 2 * enumerate(l, r - mult * s, s - 1);
    }
    return total;
}

}  // namespace

CountTable count_restricted(int l, int nmax) {
    if (l < 1)
        throw std::invalid_argument("l must be >= 1 (use count_overpartitions for no restriction)");
    return build(l, nmax);
}

CountTable count_overpartitions(int nmax) {
    return build(0, nmax);
}

std::vector<mpz_class> enumerate_counts(int l, int nmax) {
    if (nmax < 0) throw std::invalid_argument("nmax must be >= 0");
    std::vector<mpz_class> out(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = enumerate(l, n, n);
    return out;
}

}  // namespace qdissect::oracle
