#include "pathmec/frenet.hpp"

#include <cmath>
#include <string>

#include "pathmec/errors.hpp"

namespace pathmec {

FrenetState frenet_derivative(double kappa, double kappa_r, double v, const FrenetState& f,
                              double existence_eps) {
    const double denom = 1.0 - kappa_r * f.z;
    if (!(denom > existence_eps))
        throw SingularityError("existence condition violated: 1 - kappa_r*z = " +
                               std::to_string(denom) + " <= " + std::to_string(existence_eps));
    const double cos_th = std::cos(f.theta);
    FrenetState d;
    d.theta = kappa * v - kappa_r * v * cos_th / denom;
    d.s_r = v * cos_th / denom;
    d.z = v * std::sin(f.theta);
    return d;
}

GlobalPose pose_derivative(double v, double kappa, const GlobalPose& g) {
    GlobalPose d;
    d.xi = v * std::cos(g.theta_o);
    d.eta = v * std::sin(g.theta_o);
    d.theta_o = kappa * v;
    return d;
}

bool check_existence(double kappa_r, double z, double eps) {
    return 1.0 - kappa_r * z > eps;
}

} // namespace pathmec
