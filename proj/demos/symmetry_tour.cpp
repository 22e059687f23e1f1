// Builds one operator from each structured family and prints its symmetry defects.

#include <cstdio>

#include "cswcd/cswcd.hpp"

int main()
{
    using cswcd::cplx;
    const cswcd::SpaceParams s{0.0, 1, 64};

    const auto j = cswcd::family_J_symmetric(1.0, cplx(0.3, 0.1), cplx(0.2, -0.1), s.n, s.alpha, s.N);
    const auto mj = cswcd::build_wcd_matrix(j, s);
    std::printf("J-symmetric family:   ||M^T - M|| / ||M|| = %.3e\n",
                cswcd::is_C_symmetric(mj, cswcd::make_J(s), 1e-10).defect);

    const cplx p(0.3, 0.2), lu = 1.0;
    const auto wc = cswcd::family_conjugated_wc(p, lu, 1.0, cplx(0.3, 0.1), cplx(0.2, -0.1), s.n, s.alpha, s.N);
    const auto C = cswcd::make_wc_J(p, lu, s);
    std::printf("conjugated by C_p:    C-symmetry defect = %.3e (leading block, U at dimension %zu)\n",
                cswcd::check_C_symmetry(wc, C, 1e-8).defect, C.dim());

    const auto sa = cswcd::family_self_adjoint(1.0, 0.4, cplx(0.1, 0.2), s.n, s.alpha, s.N);
    std::printf("self-adjoint family:  hermitian defect = %.3e\n",
                cswcd::is_hermitian(cswcd::build_wcd_matrix(sa, s), 1e-10).defect);

    const auto g = cswcd::family_general(1.0, cplx(0.0, 0.4), 0.3, s.n, s.alpha, s.N);
    std::printf("general, b imaginary: normality defect = %.3e\n",
                cswcd::is_normal(cswcd::build_wcd_matrix(g, s), 1e-8).defect);
    return 0;
}
