#pragma once

// Polynomial constructions: the comonotone interpolant V_n, the Stechkin
// type operator Theta, the corrections near breakpoints, and the final tau.

#include "comonotone/constants.hpp"
#include "comonotone/decompose.hpp"
#include "comonotone/partition.hpp"
#include "comonotone/step.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace comonotone {

/// Builds and memoizes the averaged steps T_j for one (grid, Pi, n1).
class StepFamily {
public:
    StepFamily(const UniformGrid& grid, TrigPoly pi, int n1, int s);

    /// 1/2 (T(x; x_j*) + T(x; x_j* + pi/n1)) with l = s+2; j is not normalized,
    /// so the centre is the midpoint of I_j exactly as indexed.
    const LinearPlusTrig& T(int j);
    /// Average of the two shifted steps centred at I_j's midpoint for another
    /// sign polynomial (used for the modified breakpoint sets).
    LinearPlusTrig averaged(int j, const TrigPoly& pi) const;
    /// Step with l = s+3 for Pi_j = Pi sin((x-x_j)/2) sin((x-x_{j-1})/2).
    LinearPlusTrig T_star(int j) const;
    /// (T_j - T_j*) sign Pi(x_j): purely periodic.
    TrigPoly T_bar(int j);

    const UniformGrid& grid() const { return grid_; }
    const TrigPoly& pi() const { return pi_; }
    int n1() const { return n1_; }
    int s() const { return s_; }

private:
    UniformGrid grid_;
    TrigPoly pi_;
    int n1_;
    int s_;
    std::map<int, LinearPlusTrig> cache_;
};

/// V_n(x; G) from grid values G(x_j) (any integer j, G = A x + periodic).
LinearPlusTrig build_Vn(const std::function<double(int)>& G_grid, const PartitionState& partition,
                        StepFamily& steps, const SignWitness& witness);

struct ThetaOptions {
    int max_refinements = 4;
    /// accepted L1 change of the coefficients between sample counts N and 2N
    double tolerance = 0.0;  // 0: 1e-3 (pi/n2)^r max(1, |G|)
};

/// Theta_{n2,l,r}(x; G) for periodic G, degree l(n2-1). Coefficients come
/// from the Fourier multiplier sum_j (-1)^{j+1} C(r,j) 2 pi Jhat(k j) applied
/// to the discrete coefficients of G, refined until stable.
TrigPoly build_theta(int n2, int l, int r, const std::function<double(double)>& G_periodic,
                     const ThetaOptions& opts = {});

struct RParts {
    LinearPlusTrig value;     // Theta - B x + weight * sum Tbar_j
    TrigPoly theta;
    TrigPoly tbar_sum;        // unweighted
    double weight = 0.0;
    double c23 = 0.0;
    std::vector<int> tbar_indices;
};

RParts build_R(const SplitFunctions& split, StepFamily& steps, int n2, const ConstantsLedger& ledger);

struct BreakpointCorrection {
    int i = 0;            // 1-based breakpoint index
    int j = 0;            // y_i in [x_j, x_{j-1})
    bool upper = true;    // branch using T_{j+2}
    TrigPoly K;
    TrigPoly U;
    double R_prime = 0.0;
    double K_prime = 0.0;
};

/// K_i, U_i for breakpoint y_i (1-based i), cancelling R'(y_i).
BreakpointCorrection build_correction(int i, const LinearPlusTrig& R, const PartitionState& partition,
                                      const BreakpointSet& y, StepFamily& steps, int r);

struct StageTimes {
    double partition = 0, split = 0, vn = 0, theta = 0, corrections = 0, verify = 0;
};

struct ApproximationResult {
    TrigPoly tau;
    int degree = 0;
    double sup_error = 0.0;
    double margin = 0.0;
    double linear_residue = 0.0;
    double u_weight = 0.0;
    bool whitney = false;
    bool no_packs = false;
    Mode mode = Mode::Practical;
    ConstantsLedger ledger;
    std::vector<BreakpointCorrection> corrections;
    StageTimes times;
};

struct Instance {
    std::function<double(double)> f;
    std::function<double(double)> fprime;
    BreakpointSet y;
};

struct AssembleOptions {
    int grid_density = 4096;         // margin grid points per unit of n
    double margin_tolerance = 1e-9;
    int max_degree = 1 << 20;        // refuse larger constructions
    PartitionOptions partition;
};

ApproximationResult assemble_tau(const Instance& inst, int r, int n, const ConstantsLedger& ledger,
                                 const AssembleOptions& opts = {});

}  // namespace comonotone
