#include "drham/seeds.hpp"

#include "drham/parse.hpp"

namespace drham {

// With eps = sqrt2 * e the equation reads e chi' - chi^2 = u - lambda, and
// chi = lambda^{1/2} + sum chi_m lambda^{-m/2} gives
//   chi_1 = -u/2,  chi_m = (e chi_{m-1}' - sum_{a+b=m-1} chi_a chi_b) / 2.
// The chi_m are computed with e in the eps slot; e^{2j} = eps^{2j} / 2^j afterwards.
std::vector<LocalFunctional> riccati_kdv(int p_max) {
    const int m_max = 2 * p_max + 3;
    std::vector<DiffPoly> chi(static_cast<size_t>(m_max + 1), DiffPoly(1));
    chi[1] = DiffPoly::jet(1, 1) * frac(-1, 2);
    for (int m = 2; m <= m_max; ++m) {
        DiffPoly s = dx(chi[static_cast<size_t>(m - 1)]).times_eps(1);
        for (int a = 1; a <= m - 2; ++a) s -= chi[static_cast<size_t>(a)] * chi[static_cast<size_t>(m - 1 - a)];
        chi[static_cast<size_t>(m)] = s * frac(1, 2);
    }

    std::vector<LocalFunctional> out;
    for (int p = 0; p <= p_max; ++p) {
        Rational dfact = 1;
        for (int k = 1; k <= 2 * p + 1; k += 2) dfact *= k;
        Rational scale = -Rational(mpz_class(1) << (p + 2)) / dfact;
        DiffPoly nf = ibp_normal_form(chi[static_cast<size_t>(2 * p + 3)] * scale);
        DiffPoly g(1);
        for (auto& [k, c] : nf.terms()) {
            if (k.eps % 2 != 0) throw std::logic_error("riccati_kdv: odd power of eps survived");
            g.add_term(k.eps, k.mono, c * Rational(1, 1 << (k.eps / 2)));
        }
        out.push_back(integrate(g));
    }
    return out;
}

}  // namespace drham
