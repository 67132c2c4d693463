// Spin audit: enumerate special-fiber points of the simplified charts,
// reconstruct the matrix of (t + pi) on the rank-n subbundle at each point,
// and check the rank-parity law (rank has the parity of s). Also the census
// comparing the simplified special fiber against the raw-chart special fiber
// filtered by that parity condition.
#pragma once

#include "splm/enumerate.hpp"
#include "splm/fiber.hpp"

namespace splm {

using MatF = PolyMatrix<PrimeField>;
using PolyF = Poly<PrimeField>;

/// Symbolic matrices over the specialized reduced ring used by the audit.
struct SpinMatrices {
    Ring<PrimeField> ring;  // specialized reduced ring
    MatF Zt;                // chart 1: (Ytilde*D)^t; chart 2: [Z1^t  Z2^t]
    MatF D;                 // the skew matrix
    MatF Q;                 // chart 1 only: pivot-substituted isotropy form
    MatF A;                 // chart 1 only: Y*Z^t (pi = 0)
};

inline SpinMatrices spin_matrices(const Chart& ch) {
    const ChartSpec& spec = ch.spec;
    const int n = spec.n, s = spec.s, m = spec.m();
    PrimeField F(spec.p);
    SpinMatrices out;
    out.ring = specialize_ring(ch.red_ring, F);
    const Ring<PrimeField>& R = out.ring;

    auto var_or_const = [&](const std::string& name, long cval, bool is_const) {
        return is_const ? PolyF::constant(R, F.from_int(cval)) : PolyF::variable(R, name);
    };

    if (spec.chart == 1) {
        std::map<int, int> pivot_of;  // row -> pivot index (1-based)
        for (int k = 1; k <= s; ++k) pivot_of[spec.pivots[k - 1]] = k;
        auto y_entry = [&](int i, int j) {
            auto it = pivot_of.find(i);
            if (it != pivot_of.end()) return var_or_const("", it->second == j ? 1 : 0, true);
            return var_or_const(var_y(i, j), 0, false);
        };
        MatF Y(R, n, s), Yt(R, n, s);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= s; ++j) {
                Y.at(i - 1, j - 1) = y_entry(i, j);
                PolyF v = y_entry(n + 1 - i, j);
                Yt.at(i - 1, j - 1) = i <= m ? v : -v;
            }
        MatF D(R, s, s);
        for (int p = 1; p <= s; ++p)
            for (int q = p + 1; q <= s; ++q) {
                PolyF v = PolyF::variable(R, var_d(p, q, s == 2));
                D.at(p - 1, q - 1) = v;
                D.at(q - 1, p - 1) = -v;
            }
        MatF Z = Yt * D;
        out.Zt = Z.transpose();
        out.D = D;
        out.Q = Yt.transpose() * Y;
        out.A = Y * Z.transpose();
        return out;
    }

    // chart 2
    const int w = n - 2;
    if (s == 1) {
        MatF Zt(R, 1, n);
        Zt.at(0, 0) = PolyF::from_int(R, 1);  // Z1^t = [1 pi], pi = 0
        out.Zt = Zt;
        out.D = MatF(R, 0, 0);
        return out;
    }
    std::map<int, int> pivot_of;  // M2 row -> pivot index k (2-based)
    for (int k = 2; k <= s; ++k) pivot_of[spec.pivots[k - 2]] = k;
    auto a_entry = [&](int i, int j) {
        auto it = pivot_of.find(i);
        if (it != pivot_of.end()) return var_or_const("", it->second == j ? 1 : 0, true);
        return var_or_const(var_a(i, j), 0, false);
    };
    MatF D(R, s - 1, s - 1), Dsig(R, s - 1, s - 1);
    for (int p = 2; p <= s; ++p)
        for (int q = p + 1; q <= s; ++q) {
            PolyF v = PolyF::variable(R, var_d(p, q, s == 3));
            D.at(p - 2, q - 2) = v;
            D.at(q - 2, p - 2) = -v;
        }
    for (int p = 2; p <= s; ++p) {
        int sgn = pivot_sign(spec, p);
        for (int q = 2; q <= s; ++q)
            Dsig.at(p - 2, q - 2) = sgn > 0 ? D.at(p - 2, q - 2) : -D.at(p - 2, q - 2);
    }
    // quadratic form matrix including the first column
    MatF Qfull(R, s - 1, s);
    for (int p = 2; p <= s; ++p)
        for (int j = 1; j <= s; ++j) {
            PolyF acc = PolyF::zero(R);
            for (int k = 1; k <= m - 1; ++k)
                acc = acc + a_entry(k, p) * a_entry(n - 1 - k, j) -
                      a_entry(n - 1 - k, p) * a_entry(k, j);
            Qfull.at(p - 2, j - 1) = acc;
        }
    MatF u(R, s, 1);
    u.at(0, 0) = PolyF::from_int(R, 1);
    for (int k = 2; k <= s; ++k) u.at(k - 1, 0) = PolyF::variable(R, var_z(1, k));
    MatF z2 = Dsig * Qfull * u;  // (s-1) x 1; the + pi*z_{1,k} term dies mod pi

    MatF Atil(R, s - 1, w);
    for (int k = 2; k <= s; ++k)
        for (int j = 1; j <= w; ++j) {
            PolyF v = a_entry(n - 1 - j, k);
            Atil.at(k - 2, j - 1) = j <= m - 1 ? v : -v;
        }
    MatF Zt(R, s, n);
    Zt.at(0, 0) = PolyF::from_int(R, 1);  // first row of Z1^t is [1 pi]
    for (int k = 2; k <= s; ++k) {
        Zt.at(k - 1, 0) = PolyF::variable(R, var_z(1, k));
        Zt.at(k - 1, 1) = z2.at(k - 2, 0);
    }
    MatF Z2t(R, s, w);  // [zero row; D] * Atil
    for (int k = 2; k <= s; ++k)
        for (int j = 1; j <= w; ++j) {
            PolyF acc = PolyF::zero(R);
            for (int e = 2; e <= s; ++e) acc = acc + D.at(k - 2, e - 2) * Atil.at(e - 2, j - 1);
            Z2t.at(k - 1, j - 1) = acc;
        }
    for (int k = 1; k <= s; ++k)
        for (int j = 1; j <= w; ++j) Zt.at(k - 1, 2 + j - 1) = Z2t.at(k - 1, j - 1);
    out.Zt = Zt;
    out.D = D;
    return out;
}

/// Points of the simplified special fiber, as coordinate vectors of the
/// specialized reduced ring.
inline std::vector<std::vector<long>> enumerate_chart_points(const Chart& ch,
                                                             long guard = kDefaultEnumGuard) {
    return enumerate_points(special_ideal(ch), guard);
}

inline int rank_t_plus_pi(const SpinMatrices& mats, const std::vector<long>& point) {
    return mat_eval_rank(mats.Zt, point);
}

inline int isotropy_rank(const SpinMatrices& mats, const std::vector<long>& point) {
    if (mats.Q.rows() == 0) throw std::domain_error("isotropy rank is a chart-1 notion");
    return mat_eval_rank(mats.Q, point);
}

struct SpinAudit {
    size_t points = 0;
    size_t violations = 0;
    std::map<int, size_t> rank_histogram;
    std::map<int, size_t> isotropy_histogram;  // chart 1 only
    size_t worst_fiber_points = 0;             // D = 0 points
};

inline SpinAudit spin_audit(const Chart& ch, long guard = kDefaultEnumGuard) {
    SpinMatrices mats = spin_matrices(ch);
    SpinAudit out;
    const int parity = ch.spec.s % 2;
    for (const auto& pt : enumerate_chart_points(ch, guard)) {
        ++out.points;
        int rk = rank_t_plus_pi(mats, pt);
        ++out.rank_histogram[rk];
        if (rk % 2 != parity) ++out.violations;
        if (mats.D.rows() > 0 && mat_eval_rank(mats.D, pt) == 0) ++out.worst_fiber_points;
        if (ch.spec.chart == 1) ++out.isotropy_histogram[isotropy_rank(mats, pt)];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Census: simplified special fiber vs parity-filtered raw special fiber
// ---------------------------------------------------------------------------

namespace detail {

/// Raw special-fiber ideal with the pivot normalization preset, plus the
/// enumeration stages that keep the solve affine at each step.
struct RawEnumSetup {
    Ideal<PrimeField> ideal;
    std::vector<std::vector<int>> stages;
    std::map<int, long> preset;
};

inline RawEnumSetup raw_enum_setup(const Chart& ch) {
    const ChartSpec& spec = ch.spec;
    PrimeField F(spec.p);
    auto ring = specialize_ring(ch.raw_ring, F);
    RawEnumSetup out{Ideal<PrimeField>(ring, specialize_gens(ch.raw_gens, ring)), {}, {}};
    const int n = spec.n, s = spec.s;
    auto idx = [&](const std::string& name) { return ring->index.at(name); };
    if (spec.chart == 1) {
        for (int k = 1; k <= s; ++k)
            for (int j = 1; j <= s; ++j)
                out.preset[idx(var_y(spec.pivots[k - 1], j))] = k == j ? 1 : 0;
        std::vector<int> ys, zs;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= s; ++j) {
                if (!out.preset.count(idx(var_y(i, j)))) ys.push_back(idx(var_y(i, j)));
                zs.push_back(idx(var_z(i, j)));
            }
        out.stages = {ys, zs};
    } else {
        for (int k = 2; k <= s; ++k)
            for (int j = 1; j <= s; ++j)
                out.preset[idx(var_a(spec.pivots[k - 2], j))] = k == j ? 1 : 0;
        out.preset[idx(var_z(1, 1))] = 1;
        out.preset[idx(var_z(2, 1))] = 0;  // pi = 0
        for (int j = 1; j <= n - 2; ++j) out.preset[idx(var_z2(j, 1))] = 0;
        std::vector<int> xa, zp, rest;
        xa.push_back(idx("x"));
        for (int i = 1; i <= n - 2; ++i)
            for (int j = 1; j <= s; ++j)
                if (!out.preset.count(idx(var_a(i, j)))) xa.push_back(idx(var_a(i, j)));
        for (int j = 1; j <= n - 2; ++j)
            for (int k = 2; k <= s; ++k) zp.push_back(idx(var_z2(j, k)));
        for (int k = 2; k <= s; ++k) {
            rest.push_back(idx(var_z(1, k)));
            rest.push_back(idx(var_z(2, k)));
        }
        for (int r = 1; r <= 2; ++r)
            for (int c = 1; c <= n - 2; ++c) rest.push_back(idx(var_b(r, c)));
        out.stages = {xa, zp, rest};
    }
    return out;
}

/// rank of (t+pi) at a raw special-fiber point, read off the raw coordinates.
inline int raw_rank_t_plus_pi(const Chart& ch, const Ring<PrimeField>& ring,
                              const std::vector<long>& pt) {
    const ChartSpec& spec = ch.spec;
    PrimeField F(spec.p);
    const int n = spec.n, s = spec.s;
    std::vector<long> flat;
    auto val = [&](const std::string& name) { return pt[static_cast<size_t>(ring->index.at(name))]; };
    if (spec.chart == 1) {
        // Z^t: s x n
        flat.resize(static_cast<size_t>(s) * n);
        for (int k = 1; k <= s; ++k)
            for (int i = 1; i <= n; ++i)
                flat[static_cast<size_t>(k - 1) * n + (i - 1)] = val(var_z(i, k));
        return scalar_rank(F, flat, s, n);
    }
    // [Z1^t Z2^t]: s x n
    flat.resize(static_cast<size_t>(s) * n);
    for (int k = 1; k <= s; ++k) {
        flat[static_cast<size_t>(k - 1) * n + 0] = val(var_z(1, k));
        flat[static_cast<size_t>(k - 1) * n + 1] = val(var_z(2, k));
        for (int j = 1; j <= n - 2; ++j)
            flat[static_cast<size_t>(k - 1) * n + 1 + j] = val(var_z2(j, k));
    }
    return scalar_rank(F, flat, s, n);
}

}  // namespace detail

/// Project a raw special-fiber point to the reduced coordinates (d-variables
/// are signed designated raw entries).
inline std::vector<long> project_raw_point(const Chart& ch, const Ring<PrimeField>& raw_ring,
                                           const Ring<PrimeField>& red_ring,
                                           const std::vector<long>& pt) {
    const ChartSpec& spec = ch.spec;
    PrimeField F(spec.p);
    const int n = spec.n, s = spec.s;
    std::map<std::string, long> values;
    for (int i = 0; i < raw_ring->nvars(); ++i) values[raw_ring->vars[i]] = pt[static_cast<size_t>(i)];
    std::vector<long> out(static_cast<size_t>(red_ring->nvars()), 0);
    for (int i = 0; i < red_ring->nvars(); ++i) {
        const std::string& name = red_ring->vars[i];
        auto it = values.find(name);
        if (it != values.end()) {
            out[static_cast<size_t>(i)] = it->second;
            continue;
        }
        // a d-variable: recover the designated raw entry with its sign
        bool found = false;
        if (spec.chart == 1) {
            for (int p = 1; p <= s && !found; ++p)
                for (int q = p + 1; q <= s && !found; ++q)
                    if (name == var_d(p, q, s == 2)) {
                        long v = values.at(var_z(n + 1 - spec.pivots[q - 1], p));
                        out[static_cast<size_t>(i)] = pivot_sign(spec, q) > 0 ? v : F.neg(v);
                        found = true;
                    }
        } else {
            for (int p = 2; p <= s && !found; ++p)
                for (int q = p + 1; q <= s && !found; ++q)
                    if (name == var_d(p, q, s == 3)) {
                        long v = values.at(var_z2(n - 1 - spec.pivots[p - 2], q));
                        out[static_cast<size_t>(i)] = pivot_sign(spec, p) > 0 ? v : F.neg(v);
                        found = true;
                    }
        }
        if (!found) throw std::logic_error("unmapped reduced variable: " + name);
    }
    return out;
}

struct CensusResult {
    bool match = false;
    size_t simplified_points = 0;
    size_t raw_points = 0;       // raw special-fiber points (pivot-normalized)
    size_t filtered_points = 0;  // raw points passing the parity condition
};

/// Desk-scale, chart-local shadow of the spin = splitting comparison: the
/// simplified special fiber must coincide with the parity-filtered raw
/// special fiber under the canonical projection of coordinates.
inline CensusResult spin_equals_splitting_census(const Chart& ch,
                                                 long guard = kDefaultEnumGuard) {
    CensusResult out;
    PrimeField F(ch.spec.p);
    auto red_ring = specialize_ring(ch.red_ring, F);
    auto simp_pts = enumerate_chart_points(ch, guard);
    out.simplified_points = simp_pts.size();

    auto setup = detail::raw_enum_setup(ch);
    auto raw_pts = enumerate_points_staged(setup.ideal, setup.stages, setup.preset, guard);
    out.raw_points = raw_pts.size();

    const int parity = ch.spec.s % 2;
    std::vector<std::vector<long>> projected;
    for (const auto& pt : raw_pts) {
        if (detail::raw_rank_t_plus_pi(ch, setup.ideal.ring, pt) % 2 != parity) continue;
        ++out.filtered_points;
        projected.push_back(project_raw_point(ch, setup.ideal.ring, red_ring, pt));
    }
    std::sort(projected.begin(), projected.end());
    projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
    out.match = projected == simp_pts;
    return out;
}

}  // namespace splm
