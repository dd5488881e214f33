// Smallest eigenvalue and singular value of the 20x20 Bessel collocation
// matrix at nodes 1..20, through the bidiagonal decomposition and through
// plain double precision.

#include <cstdio>

#include "tpbd/tpbd.hpp"

int main() {
    const auto nodes = tpbd::node_sequence::integers(20);
    const auto b = tpbd::bd_collocation(tpbd::basis_kind::bessel, nodes);
    const auto m = tpbd::to_double(tpbd::expand(b));

    const auto ev = tpbd::eigenvalues(b);
    const auto sv = tpbd::singular_values(b);
    const auto naive_ev = tpbd::naive_eigenvalues(m);
    const auto naive_sv = tpbd::naive_singular_values(m);

    std::printf("det M_20       = %s\n", tpbd::determinant(b).str().c_str());
    std::printf("lambda_1       = %.16e\n", ev.values.front());
    std::printf("lambda_20      = %.16e  (double QR: %.16e)\n", ev.values.back(), naive_ev.back());
    std::printf("sigma_1        = %.16e\n", sv.values.front());
    std::printf("sigma_20       = %.16e  (double SVD: %.16e)\n", sv.values.back(), naive_sv.back());
    std::printf("precision used = %ld bits\n", ev.achieved_precision_bits);
}
