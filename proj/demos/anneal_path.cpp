// Sweep a 3-vertex path and watch the final state concentrate on its
// unique maximum independent set {0, 2} as the sweep slows down.

#include <cstdio>

#include "rydmis/anneal.hpp"
#include "rydmis/subspace.hpp"
#include "rydmis/udgraph.hpp"

int main() {
    using namespace rydmis;
    UDGraph path = udgraph_from_edges(3, {{0, 1}, {1, 2}});
    ISBasis basis = build_is_basis(path);
    ProjectedHamiltonian h = build_projected_hamiltonian(basis);
    std::printf("path graph: dim_IS = %zu, |MIS| = %d\n", basis.dim(), basis.mis_size());
    for (double T : {1.0, 5.0, 20.0, 100.0}) {
        AnnealResult r = run_qaa(basis, h, 1.0, 6.0, T);
        std::printf("T = %6.1f   P_MIS = %.6f   approx ratio = %.6f\n", T, r.p_mis,
                    r.approx_ratio);
    }
    return 0;
}
