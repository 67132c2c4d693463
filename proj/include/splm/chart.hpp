// Construction of the two affine charts: structure matrices, the raw ideals
// (matrix-relation entries), the simplified ideals (pivot relations plus the
// entries of D*Q + 2*pi*I), and a pivot-substituted "reduced" presentation
// used by the fiber analyses.
//
// Chart 1 lives on O[Y, Z] with Y, Z of size n x s; the simplification trades
// Z for a skew matrix D of size s x s via Z = Ytilde * D, where Ytilde is the
// sign-flipped row reversal of Y, and sets Q = Ytilde^t * Y.
//
// Chart 2 lives on O[x, B, M2, Z1, Z2]; the simplification (s >= 2) trades
// Z2 for a skew matrix D of size (s-1) x (s-1) and keeps the quadratic form
// values q_{i,j} = sum_{k=1}^{m-1} (a_{k,i} a_{n-1-k,j} - a_{n-1-k,i} a_{k,j}).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splm/groebner.hpp"
#include "splm/matrix.hpp"

namespace splm {

using QPi = RamifiedQuadraticField;
using PolyQ = Poly<QPi>;
using MatQ = PolyMatrix<QPi>;

struct ChartSpec {
    long p = 3;
    int n = 4, r = 2, s = 2;
    int chart = 1;
    std::vector<int> pivots;  // 1-based; chart 1: s rows of Y; chart 2 (s>=2): s-1 rows of M2

    int m() const { return n / 2; }

    void validate() const {
        require_odd_prime(p);
        if (n < 4 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 4");
        if (r + s != n) throw std::invalid_argument("signature must satisfy r + s = n");
        if (s < 1 || s > r) throw std::invalid_argument("signature must satisfy 1 <= s <= r");
        if (chart != 1 && chart != 2) throw std::invalid_argument("chart must be 1 or 2");
        int count = chart == 1 ? s : s - 1;
        int hi = chart == 1 ? n : n - 2;
        if (static_cast<int>(pivots.size()) != count)
            throw std::invalid_argument("chart " + std::to_string(chart) + " needs " +
                                        std::to_string(count) + " pivot rows");
        for (size_t k = 0; k < pivots.size(); ++k) {
            if (pivots[k] < 1 || pivots[k] > hi)
                throw std::invalid_argument("pivot row out of range: " + std::to_string(pivots[k]));
            if (k > 0 && pivots[k] <= pivots[k - 1])
                throw std::invalid_argument("pivot rows must be strictly increasing");
        }
    }

    /// 1 when every pivot sits in the upper half (<= m for chart 1, <= m-1 for
    /// chart 2), else 2.
    int case_id() const {
        int bound = chart == 1 ? m() : m() - 1;
        for (int piv : pivots)
            if (piv > bound) return 2;
        return 1;
    }

    /// Certification is claimed only for s <= 3 pivot patterns; anything else
    /// is accepted but flagged.
    bool unverified_case() const { return s > 3; }

    static ChartSpec with_default_pivots(long p, int n, int r, int s, int chart,
                                         int case_id = 1) {
        ChartSpec cs;
        cs.p = p, cs.n = n, cs.r = r, cs.s = s, cs.chart = chart;
        int m = n / 2;
        if (chart == 1) {
            if (case_id == 1) {
                for (int k = 1; k <= s; ++k) cs.pivots.push_back(k);
            } else {
                // representative with the last pivot just past the midpoint
                for (int k = s - 1; k >= 1; --k) cs.pivots.push_back(m - k + 1);
                cs.pivots.push_back(m + 1);
            }
        } else if (s >= 2) {
            if (case_id == 1) {
                for (int k = 1; k <= s - 1; ++k) cs.pivots.push_back(k);
            } else {
                for (int k = s - 2; k >= 1; --k) cs.pivots.push_back(m - k);
                cs.pivots.push_back(m);
            }
        }
        cs.validate();
        return cs;
    }

    std::string label() const {
        std::string out = "p" + std::to_string(p) + "_n" + std::to_string(n) + "_s" +
                          std::to_string(s) + "_chart" + std::to_string(chart) + "_piv";
        for (int piv : pivots) out += std::to_string(piv) + "-";
        if (!pivots.empty()) out.pop_back();
        return out;
    }
};

// variable-name helpers (shared by the census projection)
inline std::string var_y(int i, int j) {
    return "y" + std::to_string(i) + "_" + std::to_string(j);
}
inline std::string var_z(int i, int j) {
    return "z" + std::to_string(i) + "_" + std::to_string(j);
}
inline std::string var_a(int k, int i) {
    return "a" + std::to_string(k) + "_" + std::to_string(i);
}
inline std::string var_b(int r, int c) {
    return "b" + std::to_string(r) + "_" + std::to_string(c);
}
inline std::string var_z2(int j, int k) {  // entry z'_{j,k} of the chart-2 matrix Z2
    return "zp" + std::to_string(j) + "_" + std::to_string(k);
}
/// d-variable for the skew matrix; a single off-diagonal pair is named "d".
inline std::string var_d(int p, int q, bool single) {
    return single ? "d" : "d" + std::to_string(p) + "_" + std::to_string(q);
}

struct Chart {
    ChartSpec spec;
    QPi field{3};

    Ring<QPi> raw_ring;
    std::vector<PolyQ> raw_gens;  // zero entries pruned
    int raw_entry_count = 0;      // including zero entries

    Ring<QPi> simp_ring;
    std::vector<PolyQ> simp_gens;

    // simplified presentation with the pivot relations substituted away
    Ring<QPi> red_ring;
    std::vector<PolyQ> red_gens;

    std::map<std::string, MatQ> named;

    int chart_case = 1;
    bool unverified = false;

    const MatQ& matrix(const std::string& name) const {
        auto it = named.find(name);
        if (it == named.end()) throw std::invalid_argument("no matrix named " + name);
        return it->second;
    }
};

namespace detail {

/// Substitute constants for named variables and transport everything else to
/// `target` (which must contain all surviving variables).
template <class K>
Poly<K> fix_vars(const Poly<K>& f, const Ring<K>& target,
                 const std::map<std::string, typename K::Elt>& fixed) {
    const auto& src = f.ring();
    std::vector<Poly<K>> images;
    images.reserve(src->nvars());
    for (int i = 0; i < src->nvars(); ++i) {
        auto it = fixed.find(src->vars[i]);
        if (it != fixed.end())
            images.push_back(Poly<K>::constant(target, it->second));
        else
            images.push_back(Poly<K>::variable(target, src->vars[i]));
    }
    return substitute(f, target, images);
}

inline void append_entries(std::vector<PolyQ>& gens, int& counter, const MatQ& rel) {
    for (const auto& e : rel.entries()) {
        ++counter;
        if (!e.is_zero()) gens.push_back(e);
    }
}

/// Dedup while preserving order (used to keep generator lists tidy).
inline std::vector<PolyQ> prune_duplicates(const std::vector<PolyQ>& gens) {
    std::vector<PolyQ> out;
    for (const auto& g : gens) {
        bool seen = false;
        for (const auto& h : out)
            if (g == h || g == -h) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(g);
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Chart 1
// ---------------------------------------------------------------------------

/// Ytilde: row i is +y_{n+1-i,*} for i <= m and -y_{n+1-i,*} for i > m.
inline MatQ chart1_ytilde(const Ring<QPi>& ring, int n, int s) {
    int m = n / 2;
    MatQ yt(ring, n, s);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= s; ++j) {
            PolyQ v = PolyQ::variable(ring, var_y(n + 1 - i, j));
            yt.at(i - 1, j - 1) = i <= m ? v : -v;
        }
    return yt;
}

/// The skew matrix D on d-variables indexed by pairs p < q.
inline MatQ skew_matrix(const Ring<QPi>& ring, int size, int index_lo, bool single) {
    MatQ d(ring, size, size);
    for (int p = 0; p < size; ++p)
        for (int q = p + 1; q < size; ++q) {
            PolyQ v = PolyQ::variable(ring, var_d(index_lo + p, index_lo + q, single));
            d.at(p, q) = v;
            d.at(q, p) = -v;
        }
    return d;
}

inline Chart build_chart1(const ChartSpec& spec) {
    spec.validate();
    if (spec.chart != 1) throw std::invalid_argument("build_chart1 requires chart = 1");
    const int n = spec.n, s = spec.s;
    Chart ch;
    ch.spec = spec;
    ch.field = QPi(spec.p);
    ch.chart_case = spec.case_id();
    ch.unverified = spec.unverified_case();
    const PolyQ::Elt two_pi = ch.field.mul(ch.field.from_int(2), ch.field.pi());

    // raw ring: y row-major, then z row-major
    std::vector<std::string> raw_vars;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= s; ++j) raw_vars.push_back(var_y(i, j));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= s; ++j) raw_vars.push_back(var_z(i, j));
    ch.raw_ring = mk_ring(ch.field, raw_vars);

    MatQ Y(ch.raw_ring, n, s), Z(ch.raw_ring, n, s);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= s; ++j) {
            Y.at(i - 1, j - 1) = PolyQ::variable(ch.raw_ring, var_y(i, j));
            Z.at(i - 1, j - 1) = PolyQ::variable(ch.raw_ring, var_z(i, j));
        }
    MatQ J = mat_J(ch.raw_ring, n);
    MatQ pivot_rel(ch.raw_ring, s, s);  // Y' - I_s
    for (int k = 1; k <= s; ++k)
        for (int j = 1; j <= s; ++j)
            pivot_rel.at(k - 1, j - 1) = PolyQ::variable(ch.raw_ring, var_y(spec.pivots[k - 1], j)) -
                                         PolyQ::from_int(ch.raw_ring, k == j ? 1 : 0);
    MatQ YZt = Y * Z.transpose();
    MatQ rel1 = Z * Y.transpose() + J * YZt * J;                    // n x n
    MatQ rel2 = YZt * Y - Y.scaled(PolyQ::constant(ch.raw_ring, two_pi));  // n x s

    detail::append_entries(ch.raw_gens, ch.raw_entry_count, pivot_rel);
    detail::append_entries(ch.raw_gens, ch.raw_entry_count, rel1);
    detail::append_entries(ch.raw_gens, ch.raw_entry_count, rel2);

    // A = Y Z^t - pi I_n
    MatQ A = YZt - MatQ::identity(ch.raw_ring, n).scaled(PolyQ::constant(ch.raw_ring, ch.field.pi()));

    // simplified ring: d pairs then y row-major
    std::vector<std::string> simp_vars;
    for (int p = 1; p <= s; ++p)
        for (int q = p + 1; q <= s; ++q) simp_vars.push_back(var_d(p, q, s == 2));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= s; ++j) simp_vars.push_back(var_y(i, j));
    ch.simp_ring = mk_ring(ch.field, simp_vars);

    MatQ Ys(ch.simp_ring, n, s);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= s; ++j) Ys.at(i - 1, j - 1) = PolyQ::variable(ch.simp_ring, var_y(i, j));
    MatQ Yt = chart1_ytilde(ch.simp_ring, n, s);
    MatQ D = skew_matrix(ch.simp_ring, s, 1, s == 2);
    MatQ Q = Yt.transpose() * Ys;
    MatQ dq = D * Q + MatQ::identity(ch.simp_ring, s).scaled(PolyQ::constant(ch.simp_ring, two_pi));
    MatQ pivot_simp(ch.simp_ring, s, s);
    for (int k = 1; k <= s; ++k)
        for (int j = 1; j <= s; ++j)
            pivot_simp.at(k - 1, j - 1) =
                PolyQ::variable(ch.simp_ring, var_y(spec.pivots[k - 1], j)) -
                PolyQ::from_int(ch.simp_ring, k == j ? 1 : 0);
    int dummy = 0;
    detail::append_entries(ch.simp_gens, dummy, pivot_simp);
    detail::append_entries(ch.simp_gens, dummy, dq);

    // reduced presentation: substitute the pivot rows of Y
    std::map<std::string, PolyQ::Elt> fixed;
    for (int k = 1; k <= s; ++k)
        for (int j = 1; j <= s; ++j)
            fixed[var_y(spec.pivots[k - 1], j)] = ch.field.from_int(k == j ? 1 : 0);
    std::vector<std::string> red_vars;
    for (const auto& v : simp_vars)
        if (!fixed.count(v)) red_vars.push_back(v);
    ch.red_ring = mk_ring(ch.field, red_vars);
    {
        std::vector<PolyQ> red;
        for (const auto& e : dq.entries()) {
            PolyQ g = detail::fix_vars(e, ch.red_ring, fixed);
            if (!g.is_zero()) red.push_back(g);
        }
        ch.red_gens = detail::prune_duplicates(red);
    }

    ch.named.emplace("J", mat_J(ch.simp_ring, n));
    ch.named.emplace("H", mat_H(ch.simp_ring, n / 2));
    ch.named.emplace("Mt", mat_Mt_chart1(ch.simp_ring, n, spec.p));
    ch.named.emplace("Y", Y);
    ch.named.emplace("Z", Z);
    ch.named.emplace("A", A);
    ch.named.emplace("Ytilde", Yt);
    ch.named.emplace("D", D);
    ch.named.emplace("Q", Q);
    return ch;
}

// ---------------------------------------------------------------------------
// Chart 2
// ---------------------------------------------------------------------------

/// q_{i,j} = sum_{k=1}^{m-1} (a_{k,i} a_{n-1-k,j} - a_{n-1-k,i} a_{k,j}).
inline PolyQ chart2_qform(const Ring<QPi>& ring, int n, int i, int j) {
    int m = n / 2;
    PolyQ acc = PolyQ::zero(ring);
    for (int k = 1; k <= m - 1; ++k) {
        acc = acc + PolyQ::variable(ring, var_a(k, i)) * PolyQ::variable(ring, var_a(n - 1 - k, j)) -
              PolyQ::variable(ring, var_a(n - 1 - k, i)) * PolyQ::variable(ring, var_a(k, j));
    }
    return acc;
}

inline Chart build_chart2(const ChartSpec& spec) {
    spec.validate();
    if (spec.chart != 2) throw std::invalid_argument("build_chart2 requires chart = 2");
    const int n = spec.n, s = spec.s, w = n - 2;
    Chart ch;
    ch.spec = spec;
    ch.field = QPi(spec.p);
    ch.chart_case = spec.case_id();
    ch.unverified = spec.unverified_case();
    const PolyQ::Elt pi = ch.field.pi();
    const PolyQ::Elt two_pi = ch.field.mul(ch.field.from_int(2), pi);

    // raw ring: x, B, M2 (= columns a_i), Z1^t entries z_{c,k}, Z2^t entries z'_{j,k}
    std::vector<std::string> raw_vars{"x"};
    for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= w; ++c) raw_vars.push_back(var_b(r, c));
    for (int k = 1; k <= w; ++k)
        for (int i = 1; i <= s; ++i) raw_vars.push_back(var_a(k, i));
    for (int c = 1; c <= 2; ++c)
        for (int k = 1; k <= s; ++k) raw_vars.push_back(var_z(c, k));
    for (int j = 1; j <= w; ++j)
        for (int k = 1; k <= s; ++k) raw_vars.push_back(var_z2(j, k));
    ch.raw_ring = mk_ring(ch.field, raw_vars);
    const Ring<QPi>& R = ch.raw_ring;

    MatQ B(R, 2, w), M2(R, w, s), Z1t(R, s, 2), Z2t(R, s, w);
    for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= w; ++c) B.at(r - 1, c - 1) = PolyQ::variable(R, var_b(r, c));
    for (int k = 1; k <= w; ++k)
        for (int i = 1; i <= s; ++i) M2.at(k - 1, i - 1) = PolyQ::variable(R, var_a(k, i));
    for (int k = 1; k <= s; ++k)
        for (int c = 1; c <= 2; ++c) Z1t.at(k - 1, c - 1) = PolyQ::variable(R, var_z(c, k));
    for (int k = 1; k <= s; ++k)
        for (int j = 1; j <= w; ++j) Z2t.at(k - 1, j - 1) = PolyQ::variable(R, var_z2(j, k));

    // constants: M0 = [1 0 ... 0] (1 x s), M1 = [[pi M0], [M0]] (2 x s)
    MatQ M0(R, 1, s), M1(R, 2, s);
    M0.at(0, 0) = PolyQ::from_int(R, 1);
    M1.at(0, 0) = PolyQ::constant(R, pi);
    M1.at(1, 0) = PolyQ::from_int(R, 1);

    MatQ J2(R, 2, 2), Jw = mat_J(R, w);
    J2.at(0, 1) = PolyQ::from_int(R, -1);
    J2.at(1, 0) = PolyQ::from_int(R, 1);

    MatQ M2Z1 = M2 * Z1t;  // (n-2) x 2, the matrix C
    MatQ M2Z2 = M2 * Z2t;  // (n-2) x (n-2)
    MatQ twopi_scale = MatQ::identity(R, w).scaled(PolyQ::constant(R, two_pi));

    std::vector<MatQ> rels;
    rels.push_back(M2Z1 - Jw * B.transpose() * J2);                       // M2 Z1^t = J B^t J
    rels.push_back(M2Z2.transpose() + Jw * M2Z2 * Jw);                    // skew-type symmetry
    rels.push_back(M2Z2 * M2Z2 - M2Z2.scaled(PolyQ::constant(R, two_pi)));  // idempotent-type
    {
        MatQ B1(R, 1, w), B2(R, 1, w);
        for (int c = 0; c < w; ++c) {
            B1.at(0, c) = B.at(0, c);
            B2.at(0, c) = B.at(1, c);
        }
        rels.push_back(B1 * M2 - (B2 * M2).scaled(PolyQ::constant(R, pi)));  // B1 M2 = pi B2 M2
        rels.push_back(B1 + B2.scaled(PolyQ::constant(R, pi)) - B2 * M2Z2);  // B1 + pi B2 = B2 (M2 Z2^t)
    }
    rels.push_back(M0 * Z2t);  // M0 Z2^t = 0
    {
        MatQ target(R, 1, 2);
        target.at(0, 0) = PolyQ::from_int(R, 1);
        target.at(0, 1) = PolyQ::constant(R, pi);
        rels.push_back(M0 * Z1t - target);  // M0 Z1^t = [1 pi]
    }
    rels.push_back(M2Z1 * M1 + M2Z2 * M2 - M2.scaled(PolyQ::constant(R, two_pi)));

    for (const auto& rel : rels) detail::append_entries(ch.raw_gens, ch.raw_entry_count, rel);

    // ----- simplified side -----
    if (s == 1) {
        // residual coordinate ring is free on x, a_1..a_{n-2}
        std::vector<std::string> simp_vars{"x"};
        for (int k = 1; k <= w; ++k) simp_vars.push_back(var_a(k, 1));
        ch.simp_ring = mk_ring(ch.field, simp_vars);
        ch.red_ring = ch.simp_ring;
        // no generators: the chart is A^{n-1}
    } else {
        // vars: x, z_{1,2..s}, d pairs (2 <= p < q <= s), all of M2
        std::vector<std::string> simp_vars{"x"};
        for (int k = 2; k <= s; ++k) simp_vars.push_back(var_z(1, k));
        for (int p = 2; p <= s; ++p)
            for (int q = p + 1; q <= s; ++q) simp_vars.push_back(var_d(p, q, s == 3));
        for (int k = 1; k <= w; ++k)
            for (int i = 1; i <= s; ++i) simp_vars.push_back(var_a(k, i));
        ch.simp_ring = mk_ring(ch.field, simp_vars);

        MatQ D = skew_matrix(ch.simp_ring, s - 1, 2, s == 3);
        MatQ Q(ch.simp_ring, s - 1, s - 1);
        for (int p = 2; p <= s; ++p)
            for (int q = 2; q <= s; ++q)
                Q.at(p - 2, q - 2) = chart2_qform(ch.simp_ring, n, p, q);
        MatQ dq = D * Q + MatQ::identity(ch.simp_ring, s - 1)
                              .scaled(PolyQ::constant(ch.simp_ring, two_pi));
        MatQ pivot_simp(ch.simp_ring, s - 1, s);  // M2' - [0 | I_{s-1}]
        for (int k = 2; k <= s; ++k)
            for (int j = 1; j <= s; ++j)
                pivot_simp.at(k - 2, j - 1) =
                    PolyQ::variable(ch.simp_ring, var_a(spec.pivots[k - 2], j)) -
                    PolyQ::from_int(ch.simp_ring, k == j ? 1 : 0);
        int dummy = 0;
        detail::append_entries(ch.simp_gens, dummy, pivot_simp);
        detail::append_entries(ch.simp_gens, dummy, dq);

        std::map<std::string, PolyQ::Elt> fixed;
        for (int k = 2; k <= s; ++k)
            for (int j = 1; j <= s; ++j)
                fixed[var_a(spec.pivots[k - 2], j)] = ch.field.from_int(k == j ? 1 : 0);
        std::vector<std::string> red_vars;
        for (const auto& v : simp_vars)
            if (!fixed.count(v)) red_vars.push_back(v);
        ch.red_ring = mk_ring(ch.field, red_vars);
        std::vector<PolyQ> red;
        for (const auto& e : dq.entries()) {
            PolyQ g = detail::fix_vars(e, ch.red_ring, fixed);
            if (!g.is_zero()) red.push_back(g);
        }
        ch.red_gens = detail::prune_duplicates(red);

        ch.named.emplace("D", D);
        ch.named.emplace("Q", Q);
    }

    ch.named.emplace("S", mat_S(R, n));
    ch.named.emplace("Mt", mat_Mt_chart2(R, n, spec.p));
    ch.named.emplace("B", B);
    ch.named.emplace("M0", M0);
    ch.named.emplace("M1", M1);
    ch.named.emplace("M2", M2);
    ch.named.emplace("Z1t", Z1t);
    ch.named.emplace("Z2t", Z2t);
    ch.named.emplace("C", M2Z1);
    return ch;
}

inline Chart build_chart(const ChartSpec& spec) {
    return spec.chart == 1 ? build_chart1(spec) : build_chart2(spec);
}

/// Sign attached to a chart-1 column (q) or chart-2 row (p) of the skew matrix,
/// determined by the position of the corresponding pivot row.
inline int pivot_sign(const ChartSpec& spec, int index) {
    if (spec.chart == 1) return spec.pivots[index - 1] <= spec.m() ? 1 : -1;
    return spec.pivots[index - 2] <= spec.m() - 1 ? 1 : -1;
}

}  // namespace splm
