#ifndef JASTROW_GRIDSCAN_HPP
#define JASTROW_GRIDSCAN_HPP

#include <vector>

#include "jastrow/model.hpp"
#include "jastrow/threading.hpp"

namespace jastrow {

struct SurfacePoint {
    double u, v;        // relative coordinates x1-x2, x2-x3
    double potential;
    double psi;         // |psi|, normalized to unit L2 mass over the grid window
};

/// V(u, v) and normalized |psi(u, v)| for a 3-particle model in the
/// center-of-mass frame x1 + x2 + x3 = 0, i.e. at
/// x = ((2u+v)/3, (v-u)/3, -(u+2v)/3). Circle models are restricted to the
/// triangle u + v < l; points outside the window are skipped. Requires
/// n == 3. The parallel path computes rows concurrently and is
/// bit-identical to the serial one.
std::vector<SurfacePoint> relative_surface(const ModelSpec& spec, double u_min, double u_max,
                                           int nu, double v_min, double v_max, int nv,
                                           Execution exec = Execution::Parallel);

struct ProfilePoint {
    double x;
    double v2;   // two-body potential V2(x)
    double chi;  // bond factor chi(x), L2-normalized
};

/// 1D profiles of V2 and chi over [lo, hi]. chi is normalized so that
/// int |chi|^2 dx = 1 over (0, l) on the circle and over [lo, hi] on the
/// line.
std::vector<ProfilePoint> pair_profile(const ModelSpec& spec, double lo, double hi, int n,
                                       Execution exec = Execution::Parallel);

}  // namespace jastrow

#endif
