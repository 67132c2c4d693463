// Exponent vectors and monomial orders (grevlex, lex, and the elimination
// block order: lex on a variable prefix, grevlex on the rest).
#pragma once

#include <numeric>
#include <vector>

namespace splm {

using Expo = std::vector<int>;

struct MonomialOrder {
    enum class Kind { Grevlex, Lex, Block };
    Kind kind = Kind::Grevlex;
    int split = 0;  // Block: number of leading (eliminated) variables

    static MonomialOrder grevlex() { return {Kind::Grevlex, 0}; }
    static MonomialOrder lex() { return {Kind::Lex, 0}; }
    static MonomialOrder block(int split) { return {Kind::Block, split}; }

    bool operator==(const MonomialOrder& o) const {
        return kind == o.kind && (kind != Kind::Block || split == o.split);
    }
};

inline int expo_deg(const Expo& e, int lo, int hi) {
    int d = 0;
    for (int i = lo; i < hi; ++i) d += e[i];
    return d;
}

inline int expo_deg(const Expo& e) { return expo_deg(e, 0, static_cast<int>(e.size())); }

namespace detail {

inline int cmp_lex_range(const Expo& a, const Expo& b, int lo, int hi) {
    for (int i = lo; i < hi; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
}

inline int cmp_grevlex_range(const Expo& a, const Expo& b, int lo, int hi) {
    int da = expo_deg(a, lo, hi), db = expo_deg(b, lo, hi);
    if (da != db) return da > db ? 1 : -1;
    for (int i = hi - 1; i >= lo; --i)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
}

}  // namespace detail

/// Three-way comparison; returns +1 when a is the larger monomial.
inline int cmp_expo(const Expo& a, const Expo& b, const MonomialOrder& ord) {
    int n = static_cast<int>(a.size());
    switch (ord.kind) {
        case MonomialOrder::Kind::Lex:
            return detail::cmp_lex_range(a, b, 0, n);
        case MonomialOrder::Kind::Grevlex:
            return detail::cmp_grevlex_range(a, b, 0, n);
        case MonomialOrder::Kind::Block: {
            if (int c = detail::cmp_lex_range(a, b, 0, ord.split)) return c;
            return detail::cmp_grevlex_range(a, b, ord.split, n);
        }
    }
    return 0;
}

inline bool expo_divides(const Expo& a, const Expo& b) {  // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Expo expo_lcm(const Expo& a, const Expo& b) {
    Expo r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline Expo expo_add(const Expo& a, const Expo& b) {
    Expo r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Expo expo_sub(const Expo& a, const Expo& b) {  // requires b | a
    Expo r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline bool expo_coprime(const Expo& a, const Expo& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

}  // namespace splm
