#ifndef FGK_LP_HPP
#define FGK_LP_HPP

#include <vector>

#include "fgk/common.hpp"

namespace fgk {

/// Dense LP in the form: maximize c.v subject to A v <= b, v >= 0.
/// The feasible set is assumed bounded (every column of A has a positive
/// entry in our uses).
struct LpSolution {
  double value = 0.0;
  std::vector<double> x;
};

/// Vertices of {v : A v <= b, v >= 0}, enumerated exactly in rational
/// arithmetic (intended for <= 6 variables). A floating pre-filter discards
/// clearly infeasible bases; anything within the rounding band is settled
/// exactly.
std::vector<std::vector<double>> enumerate_vertices(
    const std::vector<std::vector<double>>& A, const std::vector<double>& b);

/// Dense primal simplex with Bland's rule, 1e-9 feasibility tolerance.
/// Requires b >= 0 (the origin is feasible).
LpSolution simplex_maximize(const std::vector<std::vector<double>>& A,
                            const std::vector<double>& b,
                            const std::vector<double>& c);

/// Dispatches: exact vertex enumeration for <= 6 variables, floating
/// simplex otherwise.
LpSolution lp_maximize(const std::vector<std::vector<double>>& A,
                       const std::vector<double>& b,
                       const std::vector<double>& c);

}  // namespace fgk

#endif  // FGK_LP_HPP
