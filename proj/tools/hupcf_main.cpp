// hupcf: command line front end. One verb per concept: orbits and even
// continued fractions, invariance checks, Birkhoff averages, survivor
// sets, transfer-operator spectra, Moebius group verdicts, and the
// Heisenberg-uniqueness-pair laboratory on the hyperbola.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hupcf/errors.hpp"
#include "hupcf/gauss.hpp"
#include "hupcf/hyperbola.hpp"
#include "hupcf/io.hpp"
#include "hupcf/measures.hpp"
#include "hupcf/moebius.hpp"
#include "hupcf/transfer.hpp"

using json = nlohmann::ordered_json;
using namespace hupcf;

namespace {

struct Global {
  int threads = 1;
  std::uint64_t seed = 0;
  std::string out;
};

// "p/q" engages exact arithmetic, plain decimals stay floating
IntervalPoint parse_point(const std::string& s) {
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::int64_t p = std::stoll(s.substr(0, slash));
    const std::int64_t q = std::stoll(s.substr(slash + 1));
    return mod2_reduce_exact(p, q);
  }
  return IntervalPoint(std::stod(s));
}

bool parse_beta(const std::string& s, Rational& rat, double& flt) {
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    rat = Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    flt = rat.to_double();
    return true;
  }
  flt = std::stod(s);
  return false;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

json point_json(const IntervalPoint& p) {
  json j;
  j["value"] = p.value;
  if (p.exact) j["exact"] = p.exact->str();
  return j;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::none: return "none";
    case Termination::hit_zero: return "hit_zero";
    case Termination::hit_one: return "hit_one";
  }
  return "?";
}

json report_skeleton(const std::string& command, const Global& g) {
  json j;
  j["config"] = {{"command", command}, {"threads", g.threads}};
  j["seed"] = g.seed;
  j["results"] = json::object();
  j["tail_bounds"] = json::object();
  j["warnings"] = json::array();
  return j;
}

void deliver(const json& j, const Global& g) {
  if (g.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream os(g.out);
  if (!os) throw std::invalid_argument("cannot open output file: " + g.out);
  os << j.dump(2) << '\n';
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output file: " + path);
  os << content;
}

/// Fan a parameter sweep over a bounded worker pool; results land in
/// parameter order no matter the completion order.
template <typename Fn>
auto parallel_map(std::size_t count, int threads, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::future<void>> inflight;
  std::size_t next = 0;
  while (next < count || !inflight.empty()) {
    while (next < count && inflight.size() < static_cast<std::size_t>(threads)) {
      const std::size_t idx = next++;
      inflight.push_back(std::async(std::launch::async,
                                    [idx, &results, &fn] { results[idx] = fn(idx); }));
    }
    inflight.front().get();
    inflight.erase(inflight.begin());
  }
  return results;
}

// ---------------------------------------------------------------------------

void cmd_orbit(const Global& g, const std::string& x, const std::string& beta,
               int steps, int precision_bits, bool stop_at_one) {
  const IntervalPoint start = parse_point(x);
  Rational brat;
  double bflt = 1.0;
  const bool exact_beta = parse_beta(beta, brat, bflt);
  const OrbitRecord rec =
      exact_beta ? orbit(start, steps, brat, precision_bits, stop_at_one)
                 : orbit(start, steps, bflt, precision_bits, stop_at_one);

  json j = report_skeleton("orbit", g);
  j["config"]["x"] = x;
  j["config"]["beta"] = beta;
  j["config"]["steps"] = steps;
  j["config"]["precision_bits"] = precision_bits;
  json iter = json::array();
  for (const IntervalPoint& p : rec.iterates) iter.push_back(point_json(p));
  j["results"]["iterates"] = iter;
  j["results"]["digits"] = rec.digits;
  j["results"]["terminated"] = termination_name(rec.terminated);
  j["results"]["trusted"] = rec.trusted;
  j["results"]["exact"] = rec.exact;
  j["results"]["log2_derivative_product"] = rec.log2_derivative_product;
  deliver(j, g);
}

void cmd_ecf_expand(const Global& g, const std::string& x, int depth) {
  const EvenCfExpansion e = even_cf_expand(parse_point(x), depth);
  json j = report_skeleton("ecf expand", g);
  j["config"]["x"] = x;
  j["config"]["depth"] = depth;
  j["results"]["digits"] = e.digits;
  j["results"]["tail"] = point_json(e.tail);
  j["results"]["terminated"] = termination_name(e.terminated);
  deliver(j, g);
}

void cmd_ecf_reconstruct(const Global& g, const std::string& digits,
                         const std::string& tail) {
  const IntervalPoint v =
      even_cf_reconstruct(parse_int_list(digits), parse_point(tail));
  json j = report_skeleton("ecf reconstruct", g);
  j["config"]["digits"] = digits;
  j["config"]["tail"] = tail;
  j["results"]["value"] = point_json(v);
  deliver(j, g);
}

void cmd_invariant_check(const Global& g, const std::string& measure,
                         double lambda_re, double lambda_im, double beta,
                         int grid, int cutoff, double truncate,
                         const std::string& density_csv) {
  GridMeasure nu(grid);
  if (measure == "omega") {
    nu = GridMeasure::from_density(grid, [&](double t) -> std::complex<double> {
      return std::fabs(t) <= truncate ? omega_density(t) : 0.0;
    });
  } else if (measure == "lebesgue") {
    nu = GridMeasure::lebesgue(grid);
  } else if (measure == "dirac0") {
    nu = GridMeasure::dirac(grid, 0.0, 1.0);
  } else {
    throw std::invalid_argument("unknown measure: " + measure);
  }
  if (!density_csv.empty()) {
    std::ostringstream os;
    emit_density_csv(os, nu);
    write_file(density_csv, os.str());
  }
  const ResidualReport rep =
      invariance_residual(nu, {lambda_re, lambda_im}, beta, cutoff);
  json j = report_skeleton("invariant-check", g);
  j["config"]["measure"] = measure;
  j["config"]["lambda"] = {lambda_re, lambda_im};
  j["config"]["beta"] = beta;
  j["config"]["grid"] = grid;
  j["config"]["branch_cutoff"] = cutoff;
  j["results"]["total_variation_residual"] = rep.total;
  j["results"]["interior_residual"] = rep.interior;
  j["tail_bounds"]["branch_tail"] = rep.tail_bound;
  if (!density_csv.empty()) j["results"]["density_csv"] = density_csv;
  deliver(j, g);
}

void cmd_birkhoff(const Global& g, const std::string& x, int steps,
                  int precision_bits, bool random_start) {
  json j = report_skeleton("birkhoff", g);
  j["config"]["steps"] = steps;
  j["config"]["precision_bits"] = precision_bits;
  if (random_start) {
    const OrbitRecord rec = random_orbit(g.seed, steps - 1, 1.0, precision_bits);
    double acc = 0.0;
    for (const IntervalPoint& p : rec.iterates) acc += 1.0 - p.value * p.value;
    j["config"]["x"] = "random";
    j["results"]["average"] = acc / steps;
    j["results"]["trusted"] = rec.trusted;
    j["results"]["terms"] = rec.iterates.size();
    if (!rec.trusted)
      j["warnings"].push_back("orbit untrusted at this precision; average is not reliable");
  } else {
    const BirkhoffResult r =
        birkhoff_average(parse_point(x), steps, {}, precision_bits);
    j["config"]["x"] = x;
    j["results"]["average"] = r.average;
    j["results"]["trusted"] = r.trusted;
    j["results"]["terms"] = r.terms;
    j["results"]["terminated"] = termination_name(r.terminated);
    if (!r.trusted)
      j["warnings"].push_back("orbit untrusted at this precision; average is not reliable");
  }
  deliver(j, g);
}

void cmd_survivor(const Global& g, double beta, int depth, int cutoff,
                  const std::string& csv) {
  const IntervalUnion e = survivor_set(beta, depth, cutoff);
  if (!csv.empty()) {
    std::ostringstream os;
    emit_survivor_csv(os, e);
    write_file(csv, os.str());
  }
  json j = report_skeleton("survivor", g);
  j["config"]["beta"] = beta;
  j["config"]["depth"] = depth;
  j["config"]["branch_cutoff"] = cutoff;
  j["results"]["measure_lower"] = e.measure_lower;
  j["results"]["measure_upper"] = e.measure_upper;
  j["results"]["interval_count"] = e.intervals.size();
  j["tail_bounds"]["enclosure_gap"] = e.tail_measure_bound;
  if (!csv.empty()) j["results"]["csv"] = csv;
  deliver(j, g);
}

json spectrum_json(double beta, int grid, const SpectrumReport& rep) {
  json r;
  r["beta"] = beta;
  r["grid"] = grid;
  r["spectral_radius"] = rep.spectral_radius;
  r["peripheral_gap"] = rep.peripheral_gap;
  json evs = json::array();
  for (const auto& ev : rep.eigenvalues)
    evs.push_back({{"re", ev.real()}, {"im", ev.imag()}, {"abs", std::abs(ev)}});
  r["eigenvalues"] = evs;
  return r;
}

void cmd_spectrum(const Global& g, double beta, int grid, int top, int cutoff,
                  const std::string& csv) {
  const TransferMatrix m = ulam_matrix(beta, grid, cutoff);
  const SpectrumReport rep = spectrum(m, top);
  if (!csv.empty()) {
    std::ostringstream os;
    emit_spectrum_csv(os, beta, grid, rep);
    write_file(csv, os.str());
  }
  json j = report_skeleton("spectrum", g);
  j["config"]["beta"] = beta;
  j["config"]["grid"] = grid;
  j["config"]["top"] = top;
  j["config"]["branch_cutoff"] = cutoff;
  j["results"] = spectrum_json(beta, grid, rep);
  j["tail_bounds"]["row_mass_deficiency"] = m.tail_bound;
  if (!csv.empty()) j["results"]["csv"] = csv;
  deliver(j, g);
}

void cmd_spectrum_sweep(const Global& g, const std::string& betas, int grid,
                        int top, int cutoff, const std::string& csv) {
  const std::vector<double> bs = parse_list(betas);
  if (bs.empty()) throw std::invalid_argument("spectrum-sweep: empty beta list");
  const auto reports = parallel_map(bs.size(), g.threads, [&](std::size_t i) {
    return spectrum(ulam_matrix(bs[i], grid, cutoff), top);
  });
  if (!csv.empty()) {
    std::ostringstream os;
    os << "beta,N,index,re_lambda,im_lambda,modulus\n";
    for (std::size_t i = 0; i < bs.size(); ++i) {
      for (std::size_t k = 0; k < reports[i].eigenvalues.size(); ++k) {
        const auto& ev = reports[i].eigenvalues[k];
        os << format_double(bs[i]) << ',' << grid << ',' << k << ','
           << format_double(ev.real()) << ',' << format_double(ev.imag()) << ','
           << format_double(std::abs(ev)) << '\n';
      }
    }
    write_file(csv, os.str());
  }
  json j = report_skeleton("spectrum-sweep", g);
  j["config"]["betas"] = bs;
  j["config"]["grid"] = grid;
  j["config"]["top"] = top;
  j["config"]["branch_cutoff"] = cutoff;
  json rs = json::array();
  for (std::size_t i = 0; i < bs.size(); ++i)
    rs.push_back(spectrum_json(bs[i], grid, reports[i]));
  j["results"]["sweep"] = rs;
  if (!csv.empty()) j["results"]["csv"] = csv;
  deliver(j, g);
}

void cmd_moebius_classify(const Global& g, double beta, int qmax) {
  const DomainVerdict v = discreteness_classify(beta, qmax);
  json j = report_skeleton("moebius classify", g);
  j["config"]["beta"] = beta;
  j["config"]["q_max"] = qmax;
  j["results"] = json::parse(verdict_json(beta, v));
  deliver(j, g);
}

void cmd_moebius_reduce(const Global& g, double re, double im, double beta,
                        int max_steps) {
  const ReduceResult r = reduce_to_domain({re, im}, beta, max_steps);
  json j = report_skeleton("moebius reduce", g);
  j["config"]["z"] = {re, im};
  j["config"]["beta"] = beta;
  j["config"]["max_steps"] = max_steps;
  j["results"]["z"] = {r.z.real(), r.z.imag()};
  json word = json::array();
  for (const Letter l : r.word) word.push_back(letter_name(l));
  j["results"]["word"] = word;
  j["results"]["completed"] = r.completed;
  j["results"]["cusp_proximity"] = r.cusp_proximity;
  if (!r.completed)
    j["warnings"].push_back(r.cusp_proximity
                                ? "reduction stalled near the cusp at 0"
                                : "max_steps exhausted before reaching the domain");
  deliver(j, g);
}

void cmd_hup_verdict(const Global& g, double alpha, double beta, double eps) {
  const PairVerdict v = normalize_pair(alpha, beta, eps);
  json j = report_skeleton("hup verdict", g);
  j["config"]["alpha"] = alpha;
  j["config"]["beta"] = beta;
  j["config"]["eps"] = eps;
  j["results"]["beta_prime"] = v.beta_prime;
  j["results"]["hup"] = v.is_hup;
  deliver(j, g);
}

void cmd_hup_falsify(const Global& g, const std::string& kind, double alpha,
                     double beta, int m, int n, int range,
                     const std::string& csv) {
  json j = report_skeleton("hup falsify", g);
  j["config"]["kind"] = kind;
  j["config"]["alpha"] = alpha;
  j["config"]["beta"] = beta;
  j["config"]["lattice_range"] = range;

  AnnihilatorCertificate cert;
  HyperbolaMeasure measure;
  if (kind == "singular") {
    j["config"]["m"] = m;
    j["config"]["n"] = n;
    SingularAnnihilator ann = singular_annihilator(alpha, beta, m, n, range);
    cert = ann.certificate;
    measure = std::move(ann.measure);
  } else if (kind == "ac") {
    AcAnnihilator ann = ac_annihilator(beta, range);
    cert = ann.certificate;
    measure = std::move(ann.measure);
  } else {
    throw std::invalid_argument("falsify kind must be 'singular' or 'ac'");
  }
  if (!csv.empty()) {
    const LatticeResidualReport rep = lattice_residual(
        measure, {kind == "ac" ? 1.0 : alpha, beta, range, range});
    std::ostringstream os;
    emit_lattice_csv(os, {kind == "ac" ? 1.0 : alpha, beta, range, range}, rep);
    write_file(csv, os.str());
    j["results"]["csv"] = csv;
  }
  j["results"]["certificate"] = json::parse(certificate_json(cert));
  deliver(j, g);
}

void cmd_hup_density_gap(const Global& g, double beta, const std::string& ns,
                         const std::string& target, const std::string& csv) {
  const std::vector<double> n_list = parse_list(ns);
  DensityGapTarget tgt;
  if (target == "poisson-diff-2") {
    tgt = ac_annihilator(2.0, 1).measure.density;
  } else if (target == "e1") {
    tgt = BasisTarget{false, 1};
  } else {
    throw std::invalid_argument("density-gap target must be 'poisson-diff-2' or 'e1'");
  }
  const auto reports = parallel_map(n_list.size(), g.threads, [&](std::size_t i) {
    return density_gap(beta, static_cast<int>(n_list[i]), tgt);
  });
  std::ostringstream os;
  emit_density_gap_csv_header(os);
  json rows = json::array();
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    emit_density_gap_csv_row(os, beta, static_cast<int>(n_list[i]), reports[i]);
    rows.push_back({{"N", static_cast<int>(n_list[i])},
                    {"residual", reports[i].residual},
                    {"condition", reports[i].gram_condition},
                    {"flagged", reports[i].regularization_flagged}});
  }
  if (!csv.empty()) write_file(csv, os.str());
  json j = report_skeleton("hup density-gap", g);
  j["config"]["beta"] = beta;
  j["config"]["N"] = n_list;
  j["config"]["target"] = target;
  j["results"]["sweep"] = rows;
  if (!csv.empty()) j["results"]["csv"] = csv;
  deliver(j, g);
}

void cmd_hup_lattice_residual(const Global& g, const std::string& kind,
                              double alpha, double beta, int m, int n,
                              int j_range, int k_range, const std::string& csv) {
  HyperbolaMeasure measure;
  double cross_alpha = alpha;
  if (kind == "singular") {
    measure = singular_annihilator(alpha, beta, m, n, 1).measure;
  } else if (kind == "ac") {
    measure = ac_annihilator(beta, 1).measure;
    cross_alpha = 1.0;
  } else {
    throw std::invalid_argument("annihilator kind must be 'singular' or 'ac'");
  }
  const LatticeCross cross{cross_alpha, beta, j_range, k_range};
  const LatticeResidualReport rep = lattice_residual(measure, cross);
  if (!csv.empty()) {
    std::ostringstream os;
    emit_lattice_csv(os, cross, rep);
    write_file(csv, os.str());
  }
  json j = report_skeleton("hup lattice-residual", g);
  j["config"]["kind"] = kind;
  j["config"]["alpha"] = cross_alpha;
  j["config"]["beta"] = beta;
  j["config"]["j_range"] = j_range;
  j["config"]["k_range"] = k_range;
  j["results"]["max_abs"] = rep.max_abs;
  j["results"]["argmax"] = {rep.argmax_xi1, rep.argmax_xi2};
  if (!csv.empty()) j["results"]["csv"] = csv;
  deliver(j, g);
}

void cmd_fixtures(const Global& g, const std::string& dir, int grid) {
  // regenerates the plot-ready fixture set the acceptance values refer to
  std::filesystem::create_directories(dir);
  json index = report_skeleton("fixtures generate", g);
  index["config"]["dir"] = dir;
  index["config"]["grid"] = grid;

  {
    const auto betas = std::vector<double>{0.3, 0.5, 0.7, 0.9};
    const auto reports = parallel_map(betas.size(), g.threads, [&](std::size_t i) {
      return spectrum(ulam_matrix(betas[i], grid, 512), 8);
    });
    std::ostringstream os;
    os << "beta,N,index,re_lambda,im_lambda,modulus\n";
    for (std::size_t i = 0; i < betas.size(); ++i)
      for (std::size_t k = 0; k < reports[i].eigenvalues.size(); ++k) {
        const auto& ev = reports[i].eigenvalues[k];
        os << format_double(betas[i]) << ',' << grid << ',' << k << ','
           << format_double(ev.real()) << ',' << format_double(ev.imag()) << ','
           << format_double(std::abs(ev)) << '\n';
      }
    write_file(dir + "/peripheral_gaps.csv", os.str());
  }
  {
    std::ostringstream os;
    os << "n,measure_lower,measure_upper\n";
    for (int n = 1; n <= 8; ++n) {
      const IntervalUnion e = survivor_set(0.8, n, 256);
      os << n << ',' << format_double(e.measure_lower) << ','
         << format_double(e.measure_upper) << '\n';
    }
    write_file(dir + "/survivor_beta08.csv", os.str());
  }
  {
    const SingularAnnihilator ann = singular_annihilator(1.0, 1.0, 2, 2, 50);
    write_file(dir + "/singular_certificate.json",
               certificate_json(ann.certificate) + "\n");
    const AcAnnihilator ac = ac_annihilator(2.0, 20);
    write_file(dir + "/ac_certificate.json",
               certificate_json(ac.certificate) + "\n");
  }
  index["results"]["files"] = {dir + "/peripheral_gaps.csv",
                               dir + "/survivor_beta08.csv",
                               dir + "/singular_certificate.json",
                               dir + "/ac_certificate.json"};
  deliver(index, g);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"hupcf: even-continued-fraction dynamics, transfer operators,\n"
               "and Heisenberg uniqueness pairs for the hyperbola"};
  app.footer("Environment: HUPCF_THREADS and HUPCF_SEED override --threads and "
             "--seed.\nExit codes: 0 success, 2 validation error, 3 "
             "numerical-accuracy failure.");
  app.require_subcommand(1);

  Global g;
  app.add_option("--threads", g.threads, "worker pool bound for sweeps")
      ->envname("HUPCF_THREADS")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed recorded in every output")
      ->envname("HUPCF_SEED");
  app.add_option("--json-out", g.out,
                 "write the JSON report here instead of stdout");

  // orbit
  std::string x = "1/2", beta_s = "1";
  int steps = 10, precision_bits = 53;
  bool stop_at_one = false;
  auto* orbit_cmd = app.add_subcommand("orbit", "iterate the Gauss-type map U_beta");
  orbit_cmd->add_option("--x", x, "start, decimal or p/q (p/q is exact)")->required();
  orbit_cmd->add_option("--beta", beta_s, "beta in ]0,1], decimal or p/q");
  orbit_cmd->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
  orbit_cmd->add_option("--precision-bits", precision_bits);
  orbit_cmd->add_flag("--stop-at-one", stop_at_one);

  // ecf
  auto* ecf = app.add_subcommand("ecf", "even continued fractions");
  ecf->require_subcommand(1);
  std::string digits = "", tail = "0/1";
  int depth = 30;
  auto* expand = ecf->add_subcommand("expand", "digits of x");
  expand->add_option("--x", x)->required();
  expand->add_option("--depth", depth)->check(CLI::PositiveNumber);
  auto* reconstruct = ecf->add_subcommand("reconstruct", "evaluate digits + tail");
  reconstruct->add_option("--digits", digits, "comma-separated nonzero integers")
      ->required();
  reconstruct->add_option("--tail", tail);

  // invariant-check
  std::string measure = "omega";
  double lambda_re = 1.0, lambda_im = 0.0, beta_f = 1.0, truncate = 0.95;
  int grid = 1024, cutoff = 512;
  auto* inv = app.add_subcommand("invariant-check",
                                 "(U,lambda)-invariance residual of a measure");
  inv->add_option("--measure", measure, "omega | lebesgue | dirac0");
  inv->add_option("--lambda-re", lambda_re);
  inv->add_option("--lambda-im", lambda_im);
  inv->add_option("--beta", beta_f);
  inv->add_option("--grid", grid)->check(CLI::PositiveNumber);
  inv->add_option("--branch-cutoff", cutoff)->check(CLI::PositiveNumber);
  inv->add_option("--truncate", truncate, "omega truncation radius");
  std::string density_csv;
  inv->add_option("--density-out", density_csv,
                  "write the measure's density CSV here");

  // birkhoff
  bool random_start = false;
  auto* birk = app.add_subcommand("birkhoff", "Cesaro average of 1-t^2 along an orbit");
  birk->add_option("--x", x);
  birk->add_option("--steps", steps)->check(CLI::PositiveNumber);
  birk->add_option("--precision-bits", precision_bits);
  birk->add_flag("--random", random_start,
                 "full-precision random start drawn from --seed");

  // survivor
  auto* surv = app.add_subcommand("survivor", "enclosure of the survivor set E_beta(n)");
  surv->add_option("--beta", beta_f)->required();
  surv->add_option("--depth", depth)->check(CLI::PositiveNumber);
  surv->add_option("--branch-cutoff", cutoff);
  std::string csv;
  surv->add_option("--out", csv, "write the interval list CSV here");

  // spectrum
  int top = 8;
  auto* spec = app.add_subcommand("spectrum", "Ulam transfer-matrix spectrum");
  spec->add_option("--beta", beta_f)->required();
  spec->add_option("--grid", grid);
  spec->add_option("--top", top);
  spec->add_option("--branch-cutoff", cutoff);
  spec->add_option("--out", csv, "write the spectrum CSV here");

  // spectrum-sweep
  std::string betas = "0.3,0.5,0.7,0.9";
  auto* sweep = app.add_subcommand("spectrum-sweep", "spectra over a beta grid");
  sweep->add_option("--betas", betas, "comma-separated list");
  sweep->add_option("--grid", grid);
  sweep->add_option("--top", top);
  sweep->add_option("--branch-cutoff", cutoff);
  sweep->add_option("--out", csv, "write the merged CSV here");

  // moebius
  auto* moeb = app.add_subcommand("moebius", "group G(beta) machinery");
  moeb->require_subcommand(1);
  int qmax = 10000, max_steps = 4000;
  double z_re = 0.0, z_im = 1.0;
  auto* classify = moeb->add_subcommand("classify", "discreteness of G(beta)");
  classify->add_option("--beta", beta_f)->required();
  classify->add_option("--qmax", qmax)->check(CLI::Range(2, 100000000));
  auto* reduce = moeb->add_subcommand("reduce", "reduce z into the fundamental domain");
  reduce->add_option("--re", z_re)->required();
  reduce->add_option("--im", z_im)->required();
  reduce->add_option("--beta", beta_f);
  reduce->add_option("--max-steps", max_steps);

  // hup
  auto* hup = app.add_subcommand("hup", "Heisenberg uniqueness pair laboratory");
  hup->require_subcommand(1);
  double alpha = 1.0, eps = 1.0;
  int m = 2, n_int = 2, range = 50, j_range = 50, k_range = 50;
  std::string kind = "singular", target = "poisson-diff-2", n_list = "4,8,16,32";

  auto* verdict = hup->add_subcommand("verdict", "alpha beta |eps| <= 1 test");
  verdict->add_option("--alpha", alpha)->required();
  verdict->add_option("--beta", beta_f)->required();
  verdict->add_option("--eps", eps)->required();

  auto* falsify = hup->add_subcommand(
      "falsify", "construct an annihilating measure (singular or ac)");
  falsify->add_option("--kind", kind, "singular | ac");
  falsify->add_option("--alpha", alpha);
  falsify->add_option("--beta", beta_f)->required();
  falsify->add_option("--m", m);
  falsify->add_option("--n", n_int);
  falsify->add_option("--lattice-range", range);
  falsify->add_option("--out", csv, "write the residual table CSV here");

  auto* gap = hup->add_subcommand("density-gap", "finite-rank spanning residuals");
  gap->add_option("--beta", beta_f)->required();
  gap->add_option("--n-list", n_list, "frequency cutoffs, comma-separated");
  gap->add_option("--target", target, "poisson-diff-2 | e1");
  gap->add_option("--out", csv, "write the sweep CSV here");

  auto* lat = hup->add_subcommand("lattice-residual", "max |mu^| over the cross");
  lat->add_option("--kind", kind, "singular | ac");
  lat->add_option("--alpha", alpha);
  lat->add_option("--beta", beta_f)->required();
  lat->add_option("--m", m);
  lat->add_option("--n", n_int);
  lat->add_option("--j-range", j_range);
  lat->add_option("--k-range", k_range);
  lat->add_option("--out", csv, "write the residual table CSV here");

  // fixtures
  std::string dir = ".";
  auto* fixtures = app.add_subcommand("fixtures", "fixture regeneration");
  fixtures->require_subcommand(1);
  auto* generate = fixtures->add_subcommand("generate", "write the fixture set");
  generate->add_option("--dir", dir, "output directory (must exist)");
  generate->add_option("--grid", grid);

  try {
    app.parse(argc, argv);

    if (*orbit_cmd) {
      cmd_orbit(g, x, beta_s, steps, precision_bits, stop_at_one);
    } else if (*expand) {
      cmd_ecf_expand(g, x, depth);
    } else if (*reconstruct) {
      cmd_ecf_reconstruct(g, digits, tail);
    } else if (*inv) {
      cmd_invariant_check(g, measure, lambda_re, lambda_im, beta_f, grid, cutoff,
                          truncate, density_csv);
    } else if (*birk) {
      cmd_birkhoff(g, x, steps, precision_bits, random_start);
    } else if (*surv) {
      cmd_survivor(g, beta_f, depth, cutoff, csv);
    } else if (*spec) {
      cmd_spectrum(g, beta_f, grid, top, cutoff, csv);
    } else if (*sweep) {
      cmd_spectrum_sweep(g, betas, grid, top, cutoff, csv);
    } else if (*classify) {
      cmd_moebius_classify(g, beta_f, qmax);
    } else if (*reduce) {
      cmd_moebius_reduce(g, z_re, z_im, beta_f, max_steps);
    } else if (*verdict) {
      cmd_hup_verdict(g, alpha, beta_f, eps);
    } else if (*falsify) {
      cmd_hup_falsify(g, kind, alpha, beta_f, m, n_int, range, csv);
    } else if (*gap) {
      cmd_hup_density_gap(g, beta_f, n_list, target, csv);
    } else if (*lat) {
      cmd_hup_lattice_residual(g, kind, alpha, beta_f, m, n_int, j_range,
                               k_range, csv);
    } else if (*generate) {
      cmd_fixtures(g, dir, grid);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const accuracy_error& e) {
    std::cerr << "accuracy failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
