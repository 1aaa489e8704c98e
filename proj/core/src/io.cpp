#include "hupcf/io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace hupcf {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_density_csv(std::ostream& os, const GridMeasure& nu) {
  os << "t,re_density,im_density\n";
  const double h = nu.cell_width();
  for (int i = 0; i < nu.grid_size; ++i) {
    const std::complex<double> d = nu.cell_weights[i] / h;
    os << format_double(nu.cell_mid(i)) << ',' << format_double(d.real()) << ','
       << format_double(d.imag()) << '\n';
  }
}

void emit_spectrum_csv(std::ostream& os, double beta, int grid_size,
                       const SpectrumReport& report) {
  os << "beta,N,index,re_lambda,im_lambda,modulus\n";
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    const auto& ev = report.eigenvalues[i];
    os << format_double(beta) << ',' << grid_size << ',' << i << ','
       << format_double(ev.real()) << ',' << format_double(ev.imag()) << ','
       << format_double(std::abs(ev)) << '\n';
  }
}

void emit_lattice_csv(std::ostream& os, const LatticeCross& cross,
                      const LatticeResidualReport& report) {
  os << "j_or_k,axis,re,im,abs\n";
  for (const LatticeSample& s : report.samples) {
    const bool on_xi1 = s.xi2 == 0.0;
    const long idx = std::lround(on_xi1 ? s.xi1 / cross.alpha : s.xi2 / cross.beta);
    os << idx << ',' << (on_xi1 ? "xi1" : "xi2") << ','
       << format_double(s.value.real()) << ',' << format_double(s.value.imag())
       << ',' << format_double(std::abs(s.value)) << '\n';
  }
}

void emit_density_gap_csv_header(std::ostream& os) {
  os << "beta,N,residual,condition\n";
}

void emit_density_gap_csv_row(std::ostream& os, double beta, int n,
                              const DensityGapReport& report) {
  os << format_double(beta) << ',' << n << ',' << format_double(report.residual)
     << ',' << format_double(report.gram_condition) << '\n';
}

void emit_survivor_csv(std::ostream& os, const IntervalUnion& survivors) {
  os << "index,lo,hi\n";
  for (std::size_t i = 0; i < survivors.intervals.size(); ++i) {
    os << i << ',' << format_double(survivors.intervals[i].lo) << ','
       << format_double(survivors.intervals[i].hi) << '\n';
  }
}

std::string verdict_json(double beta, const DomainVerdict& verdict) {
  nlohmann::ordered_json j;
  j["beta"] = beta;
  switch (verdict.status) {
    case GroupClass::discrete_free: j["status"] = "discrete_free"; break;
    case GroupClass::discrete_pq: j["status"] = "discrete_pq"; break;
    case GroupClass::non_discrete: j["status"] = "non_discrete"; break;
  }
  if (verdict.p) j["p"] = *verdict.p;
  if (verdict.q) j["q"] = *verdict.q;
  j["q_max"] = verdict.q_max;
  return j.dump(2);
}

std::string certificate_json(const AnnihilatorCertificate& cert) {
  nlohmann::ordered_json j;
  j["kind"] = cert.kind == AnnihilatorKind::singular_pair ? "singular_pair"
                                                          : "poisson_difference";
  j["alpha"] = cert.alpha;
  j["beta"] = cert.beta;
  j["z1"] = {cert.z1.real(), cert.z1.imag()};
  j["z2"] = {cert.z2.real(), cert.z2.imag()};
  j["max_lattice_residual"] = cert.max_lattice_residual;
  j["witness"] = {{"xi1", cert.witness_xi1},
                  {"xi2", cert.witness_xi2},
                  {"value", cert.witness_value}};
  j["valid"] = cert.valid();
  return j.dump(2);
}

} // namespace hupcf
