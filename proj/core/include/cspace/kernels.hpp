#pragma once

#include "cspace/system.hpp"

namespace cspace {

/// <a|b> in closed form.
cplx overlap_cs(const CSSystem& system, const PhasePoint& a, const PhasePoint& b);

/// Expansion of the coherent state at `a` in the basis of `system`.  The
/// `truncated` flag is raised when the last retained coefficient is not below
/// 1e-10 of the largest one.
StateVector cs_coefficients(const CSSystem& system, const PhasePoint& a);

/// Position-space wavefunction <q'|q,p> of an oscillator coherent state.
cplx position_overlap_h4(double q_prime, const PlaneCoords& a);

/// <a|T|a> in closed form.
double expectation_generator(const CSSystem& system, const GeneratorSpec& gen, const PhasePoint& a);

/// Truncated matrix of `gen` in the basis of `system` (dimension x dimension).
Eigen::MatrixXcd generator_matrix(const CSSystem& system, const GeneratorSpec& gen);

struct GroupAction {
  PhasePoint point;
  double phase;  // in (-pi, pi]
};

/// exp(-i chi T)|a> = exp(i phase)|a'>.
GroupAction group_action(const CSSystem& system, const GeneratorSpec& gen, double chi, const PhasePoint& a);

/// Same action without the final reduction of the phase.  For SU(1,1) the
/// phase follows the branch continuous in chi from 0, which matters when 2k is
/// not an integer.
GroupAction group_action_unwrapped(const CSSystem& system, const GeneratorSpec& gen, double chi,
                                   const PhasePoint& a);

/// Oscillator basis size large enough for coherent states with |z|^2 <= max_abs_z2.
int default_h4_cutoff(double max_abs_z2);
/// Smallest basis size beyond which SU(1,1) coefficients at |zeta| = r fall below
/// 1e-16 of their peak, and at least 64.
int default_su11_cutoff(double k, double r);

/// Complex label of a plane point as used by the basis expansion: z for H4,
/// (q s + i p / s)/sqrt(2) for the scaled oscillator.
cplx oscillator_label(const CSSystem& system, const PhasePoint& a);

}  // namespace cspace
