#include <doctest.h>

#include <sstream>

#include "hupcf/io.hpp"

using namespace hupcf;

TEST_CASE("format_double round-trips") {
  for (const double v : {0.1, 1.0 / 3.0, 2.0 + std::sqrt(3.0), -1e-17, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("density CSV shape") {
  const GridMeasure nu = GridMeasure::lebesgue(4);
  std::ostringstream os;
  emit_density_csv(os, nu);
  const std::string out = os.str();
  CHECK(out.rfind("t,re_density,im_density\n", 0) == 0);
  CHECK(std::count(out.begin(), out.end(), '\n') == 5);
  CHECK(out.find("\r") == std::string::npos);
}

TEST_CASE("verdict JSON carries the search bound") {
  DomainVerdict v;
  v.status = GroupClass::discrete_pq;
  v.p = 1;
  v.q = 3;
  v.q_max = 100;
  const std::string j = verdict_json(4.0 / 3.0, v);
  CHECK(j.find("\"status\": \"discrete_pq\"") != std::string::npos);
  CHECK(j.find("\"p\": 1") != std::string::npos);
  CHECK(j.find("\"q\": 3") != std::string::npos);
  CHECK(j.find("\"q_max\": 100") != std::string::npos);
}

TEST_CASE("certificate JSON reports validity") {
  AnnihilatorCertificate cert;
  cert.kind = AnnihilatorKind::poisson_difference;
  cert.alpha = 1.0;
  cert.beta = 2.0;
  cert.max_lattice_residual = 1e-8;
  cert.witness_value = 0.4;
  const std::string j = certificate_json(cert);
  CHECK(j.find("\"valid\": true") != std::string::npos);
  CHECK(j.find("poisson_difference") != std::string::npos);
}
