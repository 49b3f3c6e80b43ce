#include "drham/seeds.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace drham {

namespace {

int grade(int r, int alpha) {
    return r + 1 - alpha;
}

// multisets of alphas in [lo, r-1] with total grade g
void multisets(int r, int lo, int g, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (g == 0) {
        if (cur.size() >= 2) out.push_back(cur);
        return;
    }
    for (int a = lo; a <= r - 1; ++a) {
        if (grade(r, a) > g) continue;
        cur.push_back(a);
        multisets(r, a, g - grade(r, a), cur, out);
        cur.pop_back();
    }
}

Coefficient substitute_all(Coefficient c, const std::map<int, Rational>& values) {
    for (auto& [id, v] : values)
        if (c.depends_on(id)) c = c.substitute(id, v);
    return c;
}

DiffPoly substitute_all(const DiffPoly& f, const std::map<int, Rational>& values) {
    return f.map_coefficients([&](const Coefficient& c) { return substitute_all(c, values); });
}

RationalMatrix antidiagonal(int n) {
    RationalMatrix m(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    for (int a = 0; a < n; ++a) m[static_cast<size_t>(a)][static_cast<size_t>(n - 1 - a)] = 1;
    return m;
}

// Solves every currently linear constraint; returns the number of new assignments.
int solve_linear(const std::vector<AnsatzConstraint>& cons, const std::vector<int>& unknowns, std::map<int, Rational>& values) {
    std::vector<int> free;
    for (int u : unknowns)
        if (!values.count(u)) free.push_back(u);
    if (free.empty()) return 0;

    std::vector<std::vector<Rational>> rows;  // coefficients per free unknown, then constant
    for (auto& c : cons) {
        Coefficient p = substitute_all(c.poly, values);
        if (p.is_zero()) continue;
        std::pair<Coefficient, std::map<int, Coefficient>> split;
        try {
            split = p.linear_split(free);
        } catch (const std::exception&) {
            continue;
        }
        if (!split.first.is_constant()) continue;
        std::vector<Rational> row(free.size() + 1, Rational(0));
        bool ok = true;
        for (auto& [id, k] : split.second) {
            if (!k.is_constant()) {
                ok = false;
                break;
            }
            size_t i = static_cast<size_t>(std::find(free.begin(), free.end(), id) - free.begin());
            row[i] = k.constant_term();
        }
        if (!ok) continue;
        row.back() = split.first.constant_term();
        rows.push_back(std::move(row));
    }

    // reduced row echelon form
    size_t nc = free.size(), piv_row = 0;
    for (size_t col = 0; col < nc && piv_row < rows.size(); ++col) {
        size_t sel = piv_row;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[piv_row], rows[sel]);
        Rational inv = 1 / rows[piv_row][col];
        for (auto& x : rows[piv_row]) x *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == piv_row || rows[i][col] == 0) continue;
            Rational f = rows[i][col];
            for (size_t j = 0; j <= nc; ++j) rows[i][j] -= f * rows[piv_row][j];
        }
        ++piv_row;
    }

    int assigned = 0;
    for (auto& row : rows) {
        int nz = 0;
        size_t at = 0;
        for (size_t j = 0; j < nc; ++j)
            if (row[j] != 0) {
                ++nz;
                at = j;
            }
        if (nz == 0 && row.back() != 0) throw InconsistentSystem("ansatz constraints are inconsistent");
        if (nz == 1) {
            values[free[at]] = -row.back() / row[at];
            ++assigned;
        }
    }
    return assigned;
}

}  // namespace

AnsatzSystem rspin_ansatz(int r) {
    if (r != 3 && r != 4) throw std::invalid_argument("rspin_ansatz: r must be 3 or 4");
    AnsatzSystem sys;
    sys.r = r;
    sys.n = r - 1;
    sys.candidate = DiffPoly(sys.n);
    const int total = 2 * r + 2;
    int counter = 0;
    for (int e = 0; e <= total; e += 2) {
        std::vector<std::vector<int>> sets;
        std::vector<int> cur;
        multisets(r, 1, total - e, cur, sets);
        for (auto& alphas : sets) {
            std::set<Monomial> support;
            for (auto& m : slice_basis(alphas, e)) {
                DiffPoly nf = ibp_normal_form(DiffPoly::term(sys.n, 0, m, Coefficient(1)));
                for (auto& [k, c] : nf.terms()) support.insert(k.mono);
            }
            for (auto& m : support) {
                int id = param_id("a" + std::to_string(r) + "_" + std::to_string(++counter));
                sys.basis.push_back({e, m, id});
                sys.unknowns.push_back(id);
                sys.candidate.add_term(e, m, Coefficient::param(id));
            }
        }
    }
    return sys;
}

std::vector<AnsatzConstraint> normalization_constraints(const AnsatzSystem& sys) {
    DiffPoly v = variational_derivative(sys.candidate, 1);
    return {{"normalization", v.coeff(2, {{1, 2, 1}}) - Coefficient(frac(sys.n, 12))}};
}

// Genus zero: (D-2) applied to the cubic part (three-point values 1 when the
// a_i sum to r-2) and to the quartic part (the point class value 1/r of
// (1,1,r-2,r-2)); all other cubic and quartic correlators vanish.
std::vector<AnsatzConstraint> primary_constraints(const AnsatzSystem& sys) {
    std::vector<AnsatzConstraint> out;
    const int r = sys.r;
    for (auto& t : sys.basis) {
        if (t.eps != 0) continue;
        int deg = u_degree(t.mono);
        if (deg != 3 && deg != 4) continue;
        Rational aut = 1;
        for (auto& f : t.mono) aut *= factorial(f.exp);
        Rational value = 0;
        auto as = alpha_multiset(t.mono);
        if (deg == 3) {
            int s = 0;
            for (int a : as) s += a - 1;
            if (s == r - 2) value = 1 / aut;
        } else if (as == std::vector<int>{2, 2, r - 1, r - 1}) {
            value = Rational(2) / (r * aut);
        }
        out.push_back({"primary " + DiffPoly::term(sys.n, 0, t.mono, Coefficient(1)).str(),
                       Coefficient::param(t.unknown) - Coefficient(value)});
    }
    return out;
}

std::vector<AnsatzConstraint> exactness_constraints(const AnsatzSystem& sys, const DiffPoly& candidate, int levels) {
    std::vector<AnsatzConstraint> out;
    RationalMatrix eta = antidiagonal(sys.n);
    auto k = HamiltonianOperator::standard(matrix_inverse(eta));
    LocalFunctional g11 = integrate(candidate);
    for (int a = 1; a <= sys.n; ++a) {
        DiffPoly g = DiffPoly::jet(sys.n, sys.n + 1 - a);
        for (int d = -1; d < levels; ++d) {
            DxSplit split = dx_split(bracket_df(g, g11, k));
            std::string src = "exact g[" + std::to_string(a) + "][" + std::to_string(d + 1) + "]";
            for (auto& [key, c] : split.remainder.terms()) out.push_back({src, c});
            g = d_shift_inverse(split.primitive, 1);
        }
    }
    return out;
}

RspinSolution rspin_solve(AnsatzSystem sys, int r, int max_levels) {
    if (sys.r != r) throw std::invalid_argument("rspin_solve: ansatz built for another r");
    RspinSolution sol;
    auto& values = sol.assignment;
    auto all_solved = [&] { return values.size() == sys.unknowns.size(); };

    auto first = normalization_constraints(sys);
    auto prim = primary_constraints(sys);
    first.insert(first.end(), prim.begin(), prim.end());
    sys.constraints = first;
    int got = solve_linear(first, sys.unknowns, values);
    sol.stages.push_back("normalization and genus zero: " + std::to_string(got) + " unknowns");

    for (int level = 1; level <= max_levels && !all_solved(); ++level) {
        while (!all_solved()) {
            auto cons = exactness_constraints(sys, substitute_all(sys.candidate, values), level);
            sys.constraints.insert(sys.constraints.end(), cons.begin(), cons.end());
            got = solve_linear(cons, sys.unknowns, values);
            sol.stages.push_back("exactness up to d=" + std::to_string(level) + ": " + std::to_string(got) + " unknowns");
            if (got == 0) break;
        }
    }

    for (auto& c : sys.constraints) {
        Coefficient p = substitute_all(c.poly, values);
        if (p.is_zero()) continue;
        if (p.is_constant()) throw InconsistentSystem("constraint '" + c.source + "' fails: " + p.str());
        sol.residual.push_back({c.source, p});
    }
    if (!all_solved()) return sol;

    // every constraint, re-assembled with the final values, must vanish
    DiffPoly g11 = substitute_all(sys.candidate, values);
    for (auto& c : exactness_constraints(sys, g11, max_levels))
        if (!c.poly.is_zero()) throw InconsistentSystem("constraint '" + c.source + "' fails after solving");

    CftSeed s;
    s.name = std::to_string(r) + "spin";
    s.n = sys.n;
    s.eta = antidiagonal(sys.n);
    s.g11 = integrate(g11);
    for (int a = 0; a <= r - 2; ++a) s.grading.push_back(r - a);
    sol.seed = s;
    sol.solved = true;
    return sol;
}

Report rspin_verify(int r, const LocalFunctional& g11, int levels) {
    AnsatzSystem sys = rspin_ansatz(r);
    Report rep;
    rep.check = "rspin-verify[r=" + std::to_string(r) + "]";

    std::map<int, Rational> values;
    DiffPoly rest = g11.repr();
    for (auto& t : sys.basis) {
        Coefficient c = g11.repr().coeff(t.eps, t.mono);
        values[t.unknown] = c.to_rational();
        rest -= DiffPoly::term(sys.n, t.eps, t.mono, c);
    }
    rep.add("basis", rest.is_zero(), rest.str());

    auto cons = normalization_constraints(sys);
    auto prim = primary_constraints(sys);
    auto ex = exactness_constraints(sys, sys.candidate, levels);
    cons.insert(cons.end(), prim.begin(), prim.end());
    cons.insert(cons.end(), ex.begin(), ex.end());
    // one entry per source, residual is the first nonzero value
    std::map<std::string, std::string> failures;
    std::vector<std::string> order;
    for (auto& c : cons) {
        if (std::find(order.begin(), order.end(), c.source) == order.end()) order.push_back(c.source);
        Coefficient p = substitute_all(c.poly, values);
        if (!p.is_zero() && !failures.count(c.source)) failures[c.source] = p.str();
    }
    for (auto& s : order) rep.add(s, !failures.count(s), failures.count(s) ? failures[s] : "");
    return rep;
}

}  // namespace drham
