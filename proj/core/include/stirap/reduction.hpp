#pragma once

#include "stirap/models.hpp"
#include "stirap/pulses.hpp"

namespace stirap {

enum class ReductionLevel { Full, MinusExcited, MinusExcitedAndBright };

const char* level_name(ReductionLevel level);

/// Bright/dark basis change for the linear variants. Lambda states map
/// (a, e, g) -> (B, e, D); tripod states (a, e, g1, g2) -> (B, e, D1, D2).
/// The transform is real orthogonal, hence norm preserving and exactly
/// invertible.
CVec to_bright_dark(const SystemParams& p, const PulseSchedule& s, double t,
                    const CVec& bare);
CVec from_bright_dark(const SystemParams& p, const PulseSchedule& s, double t,
                      const CVec& bd);

/// Right-hand side of the transformed system in dimensionless time tau = t/T.
CVec bright_dark_rhs(const SystemParams& p, const PulseSchedule& s, double tau,
                     const CVec& bd);

// --- excited-state elimination ---------------------------------------------
// Linear variants evolve (B, D) / (B, D1, D2) in dimensionless time; the
// nonlinear ones keep the bare ground amplitudes in raw time.

CVec minus_excited_rhs(const SystemParams& p, const PulseSchedule& s, double time,
                       const CVec& y);

/// Algebraic reconstruction of the eliminated excited amplitude.
Complex reconstruct_excited(const SystemParams& p, const PulseSchedule& s, double t,
                            const CVec& reduced);

// --- bright-state elimination (linear variants only) ------------------------

struct MinusBrightOptions {
  bool coupling_only = false;  // drop the Gram correction (tripod)
};

CVec minus_bright_rhs(const SystemParams& p, const PulseSchedule& s, double tau,
                      const CVec& dark, const MinusBrightOptions& opt = {});

/// Algebraic reconstruction of the eliminated bright amplitude.
Complex reconstruct_bright(const SystemParams& p, const PulseSchedule& s, double t,
                           const CVec& dark);

}  // namespace stirap
