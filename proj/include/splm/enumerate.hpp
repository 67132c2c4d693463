// Finite-field point enumeration for chart ideals: a staged solver that
// assigns variables stage by stage, solving the constraints that become
// affine-linear in the current stage by exact Gaussian elimination and
// enumerating only the remaining free variables. Nonlinear constraints act as
// filters as soon as all their variables are assigned, and every generator is
// re-verified at each full assignment.
#pragma once

#include "splm/groebner.hpp"

namespace splm {

inline constexpr long kDefaultEnumGuard = 10'000'000;

namespace detail {

/// Reduce a generator by the partial assignment; returns the polynomial with
/// assigned variables replaced by their values.
inline Poly<PrimeField> reduce_partial(const Poly<PrimeField>& g, const std::vector<long>& value,
                                       const std::vector<bool>& assigned) {
    const auto& ring = g.ring();
    std::vector<std::optional<long>> vals(ring->nvars());
    bool any = false;
    for (int i = 0; i < ring->nvars(); ++i)
        if (assigned[i] && g.uses_var(i)) {
            vals[i] = value[i];
            any = true;
        }
    if (!any) return g;
    return substitute_partial(g, vals);
}

struct StageContext {
    const Ideal<PrimeField>* ideal = nullptr;
    const std::vector<std::vector<int>>* stages = nullptr;
    long budget = 0;
    std::vector<std::vector<long>>* out = nullptr;
};

inline void enumerate_stage(StageContext& ctx, size_t stage_idx, std::vector<long>& value,
                            std::vector<bool>& assigned) {
    const auto& ring = ctx.ideal->ring;
    const PrimeField& F = ring->field;
    const long p = F.p();
    if (stage_idx == ctx.stages->size()) {
        for (const auto& g : ctx.ideal->gens)
            if (!F.is_zero(g.eval(value))) return;
        ctx.out->push_back(value);
        return;
    }
    std::vector<int> stage;
    for (int v : (*ctx.stages)[stage_idx])
        if (!assigned[v]) stage.push_back(v);
    std::vector<int> pos(ring->nvars(), -1);
    for (size_t i = 0; i < stage.size(); ++i) pos[stage[i]] = static_cast<int>(i);

    // classify the reduced generators
    std::vector<std::vector<long>> rows;  // linear: coefficients then constant
    std::vector<Poly<PrimeField>> filters;  // nonlinear but fully supported after this stage
    for (const auto& g0 : ctx.ideal->gens) {
        Poly<PrimeField> g = reduce_partial(g0, value, assigned);
        if (g.is_zero()) continue;
        if (g.is_constant()) return;  // inconsistent branch
        bool in_stage = true;
        for (int i = 0; i < ring->nvars(); ++i)
            if (!assigned[i] && pos[i] < 0 && g.uses_var(i)) in_stage = false;
        if (!in_stage) continue;  // handled by a later stage
        if (g.total_degree() <= 1) {
            std::vector<long> row(stage.size() + 1, 0);
            for (const auto& [e, c] : g.terms()) {
                int var = -1;
                for (int i = 0; i < ring->nvars(); ++i)
                    if (e[i] > 0) var = i;
                if (var < 0)
                    row[stage.size()] = F.neg(c);  // rhs of sum coeff*var = -const
                else
                    row[static_cast<size_t>(pos[var])] = c;
            }
            rows.push_back(std::move(row));
        } else {
            filters.push_back(g);
        }
    }

    // Gaussian elimination to reduced row-echelon form
    const size_t k = stage.size();
    size_t rank = 0;
    std::vector<int> pivot_col;
    for (size_t c = 0; c < k && rank < rows.size(); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        long inv = F.inv(rows[rank][c]);
        for (auto& x : rows[rank]) x = F.mul(x, inv);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            long f = rows[r][c];
            for (size_t j = 0; j <= k; ++j)
                rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[rank][j]));
        }
        pivot_col.push_back(static_cast<int>(c));
        ++rank;
    }
    for (size_t r = rank; r < rows.size(); ++r)
        if (rows[r][k] != 0) return;  // 0 = nonzero: inconsistent

    std::vector<int> free_vars;
    {
        std::vector<bool> is_pivot(k, false);
        for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
        for (size_t c = 0; c < k; ++c)
            if (!is_pivot[c]) free_vars.push_back(static_cast<int>(c));
    }

    // enumerate the free variables of this stage
    std::vector<long> free_val(free_vars.size(), 0);
    while (true) {
        if (--ctx.budget < 0) throw guard_exceeded("enumeration guard exceeded");
        for (size_t c = 0; c < k; ++c) value[static_cast<size_t>(stage[c])] = 0;
        for (size_t i = 0; i < free_vars.size(); ++i)
            value[static_cast<size_t>(stage[static_cast<size_t>(free_vars[i])])] = free_val[i];
        for (size_t r = 0; r < rank; ++r) {
            long acc = rows[r][k];  // row: pivot + sum coeff*free = const
            for (size_t i = 0; i < free_vars.size(); ++i)
                acc = F.sub(acc, F.mul(rows[r][static_cast<size_t>(free_vars[i])], free_val[i]));
            value[static_cast<size_t>(stage[static_cast<size_t>(pivot_col[r])])] = acc;
        }
        for (int v : stage) assigned[static_cast<size_t>(v)] = true;
        bool pass = true;
        for (const auto& f : filters)
            if (!F.is_zero(f.eval(value))) {
                pass = false;
                break;
            }
        if (pass) enumerate_stage(ctx, stage_idx + 1, value, assigned);
        for (int v : stage) assigned[static_cast<size_t>(v)] = false;

        // odometer step
        size_t i = 0;
        while (i < free_val.size() && ++free_val[i] == p) free_val[i++] = 0;
        if (i == free_val.size()) break;
        if (free_val.empty()) break;
    }
}

}  // namespace detail

/// All F_p points of V(ideal), visiting variables stage by stage; `preset`
/// pins variables to fixed values. Points are full coordinate vectors in ring
/// variable order. Throws guard_exceeded when more than `guard` candidate
/// assignments would be visited.
inline std::vector<std::vector<long>> enumerate_points_staged(
    const Ideal<PrimeField>& ideal, std::vector<std::vector<int>> stages,
    const std::map<int, long>& preset = {}, long guard = kDefaultEnumGuard) {
    const auto& ring = ideal.ring;
    std::vector<long> value(ring->nvars(), 0);
    std::vector<bool> assigned(ring->nvars(), false);
    for (const auto& [v, x] : preset) {
        value[static_cast<size_t>(v)] = ring->field.from_int(x);
        assigned[static_cast<size_t>(v)] = true;
    }
    // any variable not covered by a stage joins a final catch-all stage
    std::vector<bool> covered = assigned;
    for (const auto& st : stages)
        for (int v : st) covered[static_cast<size_t>(v)] = true;
    std::vector<int> rest;
    for (int i = 0; i < ring->nvars(); ++i)
        if (!covered[static_cast<size_t>(i)]) rest.push_back(i);
    if (!rest.empty()) stages.push_back(std::move(rest));

    std::vector<std::vector<long>> out;
    detail::StageContext ctx{&ideal, &stages, guard, &out};
    detail::enumerate_stage(ctx, 0, value, assigned);
    std::sort(out.begin(), out.end());
    return out;
}

/// Single-stage enumeration over all variables.
inline std::vector<std::vector<long>> enumerate_points(const Ideal<PrimeField>& ideal,
                                                       long guard = kDefaultEnumGuard) {
    std::vector<int> all;
    for (int i = 0; i < ideal.ring->nvars(); ++i) all.push_back(i);
    return enumerate_points_staged(ideal, {all}, {}, guard);
}

}  // namespace splm
