#pragma once

#include <ostream>
#include <string>

#include "hupcf/hyperbola.hpp"
#include "hupcf/measures.hpp"
#include "hupcf/moebius.hpp"
#include "hupcf/transfer.hpp"

namespace hupcf {

/// 17 significant digits: round-trip exact for doubles.
std::string format_double(double v);

/// CSV, comma-separated, LF endings, header row.
/// densities: t, re(density), im(density) at cell midpoints.
void emit_density_csv(std::ostream& os, const GridMeasure& nu);

/// spectra: beta, N, index, re(lambda), im(lambda), modulus.
void emit_spectrum_csv(std::ostream& os, double beta, int grid_size,
                       const SpectrumReport& report);

/// lattice residuals: j_or_k, axis, re, im, abs.
void emit_lattice_csv(std::ostream& os, const LatticeCross& cross,
                      const LatticeResidualReport& report);

/// density-gap sweeps: beta, N, residual, condition.
void emit_density_gap_csv_header(std::ostream& os);
void emit_density_gap_csv_row(std::ostream& os, double beta, int n,
                              const DensityGapReport& report);

/// survivor enclosures: index, lo, hi.
void emit_survivor_csv(std::ostream& os, const IntervalUnion& survivors);

/// {beta, status, p, q, q_max}
std::string verdict_json(double beta, const DomainVerdict& verdict);

std::string certificate_json(const AnnihilatorCertificate& cert);

} // namespace hupcf
