#pragma once

#include <vector>

#include "oam/beams.hpp"
#include "oam/waveguide.hpp"

namespace oam {

/// Split-step parameters. The reference index defaults to the profile's
/// background; absorber is a supergaussian amplitude rim applied each step.
struct BpmParams {
    double dz = 2.0;          // um, must lie in (0, 5]
    double length = 19640.0;  // um
    double n_ref = 0.0;       // 0 -> use profile n0
    double absorber_width = 6.0;
    double absorber_exponent = 8.0;
    bool absorber_enabled = true;
    int record_every = 100; // steps between power-trace samples (0 = ends only)

    void validate(const Grid& grid) const;
};

struct PropagationResult {
    ComplexField output;
    std::vector<std::pair<double, double>> power_trace; // (z um, power fraction of input)
};

/// Scalar paraxial split-step propagation of the input through the profile.
PropagationResult propagate(const ComplexField& input, const IndexProfile& profile,
                            const BpmParams& params);

/// Power of the output within the aperture divided by the input power.
double transmission(const PropagationResult& result, const ComplexField& input,
                    double aperture_radius);

struct SweepRow {
    BeamSpec beam;
    ObjectiveSpec objective;
    double focused_waist_um = 0.0;
    double efficiency = 0.0;
    int spectrum_argmax = 0; // dominant output charge, |l| <= 8
};

/// One propagation per (beam, objective): the beam's waist is replaced by
/// the objective's focal waist for the given collimated input beam (mm).
/// Rows are computed concurrently (threads = 0 -> hardware) but reported
/// in input order.
std::vector<SweepRow> coupling_sweep(const std::vector<BeamSpec>& beams,
                                     const std::vector<ObjectiveSpec>& objectives,
                                     double input_waist_mm, const IndexProfile& profile,
                                     const BpmParams& params, double aperture_radius = 10.0,
                                     int threads = 0);

} // namespace oam
