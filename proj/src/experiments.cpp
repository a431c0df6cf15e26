#include "gaugelab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "gaugelab/extension.hpp"
#include "gaugelab/gns.hpp"
#include "gaugelab/serialize.hpp"
#include "gaugelab/weak.hpp"

namespace gaugelab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

namespace {

const std::map<std::string, std::string>& anchors() {
  static const std::map<std::string, std::string> a{
      {"car-check", "CAR relations, antilinearity, and the gauge automorphism norm identity"},
      {"haar-moments", "Haar measure on the fiber group via character orthogonality"},
      {"invariant-state", "invariant state phi(A) = m(f^A) by group averaging"},
      {"gns-covariance", "GNS representation with covariant unitaries fixing the cyclic vector"},
      {"weak-vs-norm", "relative weak seminorms p_omega versus the sup norm under refinement"},
      {"lemma3-compose", "invariant mean of an extension composed from subgroup and quotient means"},
      {"semidirect-vacuum", "gauge and translation invariant state from the composed mean"},
  };
  return a;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"car", 1e-12},          {"norm_identity", 1e-10}, {"exact_invariance", 1e-10},
      {"slope_center", -0.5},  {"slope_halfwidth", 0.15}, {"gns_reconstruction", 1e-10},
      {"gns_algebra", 1e-9},   {"gns_covariance", 1e-8},  {"sup_norm", 1e-12},
      {"decay_ratio", 1.9},    {"compose", 1e-14},        {"translation", 1e-10},
      {"gauge_factor", 3.0},   {"haar_sigmas", 4.0},
  };
  return t;
}

bool uses_fock_space(const std::string& e) {
  return e == "car-check" || e == "invariant-state" || e == "gns-covariance" || e == "semidirect-vacuum";
}

template <class T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"car-check",     "haar-moments",   "invariant-state",
                                              "gns-covariance", "weak-vs-norm",   "lemma3-compose",
                                              "semidirect-vacuum"};
  return names;
}

ExperimentConfig ExperimentConfig::defaults(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (experiment == "car-check") {
    c.dims = {2};
    c.colors = 2;
    c.group = "U";
  } else if (experiment == "haar-moments") {
    c.samples = 100000;
  } else if (experiment == "invariant-state") {
    c.dims = {3};
    c.colors = 1;
    c.group = "U";
    c.samples = 10000;
  } else if (experiment == "gns-covariance") {
    c.dims = {2};
    c.colors = 2;
    c.group = "U";
    c.initial_state = "fock";
  } else if (experiment == "weak-vs-norm") {
    c.colors = 1;
    c.group = "U";
  } else if (experiment == "lemma3-compose") {
    c.dims = {2};
    c.colors = 1;
    c.group = "Z4";
    c.sampler = Sampler::ExactFiniteGroup;
    c.pairs = 50;
  } else if (experiment == "semidirect-vacuum") {
    c.dims = {3};
    c.colors = 1;
    c.group = "U";
    c.samples = 10000;
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const json& j, const std::string& experiment) {
  if (!j.is_object()) throw InvalidInput("config: document must be a JSON object");
  const int schema = j.value("schema", kConfigSchemaVersion);
  if (schema != kConfigSchemaVersion)
    throw InvalidInput("config: unsupported schema version " + std::to_string(schema));
  std::string name = experiment;
  if (name.empty()) read_if(j, "experiment", name);
  if (j.contains("experiment") && j.at("experiment").get<std::string>() != name)
    throw InvalidInput("config: file is for experiment '" + j.at("experiment").get<std::string>() + "'");
  ExperimentConfig c = defaults(name);
  try {
    if (j.contains("lattice")) {
      const auto& l = j.at("lattice");
      read_if(l, "dims", c.dims);
      read_if(l, "colors", c.colors);
      read_if(l, "weights", c.weights);
    }
    read_if(j, "group", c.group);
    if (j.contains("mean")) {
      const auto& m = j.at("mean");
      if (m.contains("sampler")) c.sampler = parse_sampler(m.at("sampler").get<std::string>());
      read_if(m, "samples", c.samples);
      read_if(m, "seed", c.seed);
      read_if(m, "sweep", c.sweep);
    }
    read_if(j, "sites", c.sites);
    read_if(j, "groups", c.groups);
    read_if(j, "initial_state", c.initial_state);
    read_if(j, "pairs", c.pairs);
    read_if(j, "test_fields", c.test_fields);
    if (j.contains("tolerances"))
      for (const auto& [k, v] : j.at("tolerances").items()) c.tolerances[k] = v.get<double>();
    if (j.contains("output") && j.at("output").contains("report"))
      c.out = j.at("output").at("report").get<std::string>();
    read_if(j, "strict_deterministic", c.strict_deterministic);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  return c;
}

json ExperimentConfig::to_json() const {
  json tol = json::object();
  for (const auto& [k, v] : default_tolerances()) tol[k] = this->tol(k);
  return {{"schema", kConfigSchemaVersion},
          {"experiment", experiment},
          {"lattice", {{"dims", dims}, {"colors", colors}, {"weights", weights}}},
          {"group", group},
          {"mean", {{"sampler", sampler_name(sampler)}, {"samples", samples}, {"seed", seed}, {"sweep", sweep}}},
          {"sites", sites},
          {"groups", groups},
          {"initial_state", initial_state},
          {"pairs", pairs},
          {"test_fields", test_fields},
          {"tolerances", tol},
          {"strict_deterministic", strict_deterministic}};
}

LatticeSpec ExperimentConfig::lattice() const {
  if (weights == "uniform") return {dims, colors};
  if (weights == "random") {
    LatticeSpec uniform(dims, colors);
    Rng rng = substream(seed, 0xA11CE);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    std::vector<double> w(uniform.sites());
    double total = 0.0;
    for (auto& x : w) total += (x = u(rng));
    for (auto& x : w) x /= total;
    // Renormalize the last weight so the sum is exact to rounding.
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) head += w[i];
    w.back() = 1.0 - head;
    return {dims, colors, std::move(w)};
  }
  throw InvalidInput("config: weights must be 'uniform' or 'random'");
}

MeanConfig ExperimentConfig::mean(std::uint64_t samples_override) const {
  MeanConfig m;
  m.sampler = sampler;
  m.samples = samples_override ? samples_override : samples;
  m.seed = seed;
  m.kind = kind();
  m.spec = lattice();
  return m;
}

double ExperimentConfig::tol(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

void ExperimentConfig::validate() const {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end())
    throw InvalidInput("unknown experiment '" + experiment + "'");
  for (const auto& [k, v] : tolerances)
    if (!default_tolerances().contains(k)) throw InvalidInput("config: unknown tolerance '" + k + "'");
  if (samples < 1) throw InvalidInput("config: samples must be >= 1");
  (void)kind();
  const LatticeSpec spec = lattice();
  if (uses_fock_space(experiment) && spec.modes() > kMaxConjugationModes)
    throw InvalidInput("config: " + std::to_string(spec.modes()) + " modes exceeds the cap of " +
                       std::to_string(kMaxConjugationModes) + " for this experiment");
  if (experiment == "invariant-state" || experiment == "semidirect-vacuum") {
    for (auto n : sweep)
      if (n < 1) throw InvalidInput("config: sweep entries must be >= 1");
    mean().validate();
  }
  if (experiment == "semidirect-vacuum" && weights != "uniform")
    throw InvalidInput("config: semidirect-vacuum requires uniform weights");
  if (experiment == "gns-covariance" && (std::size_t{1} << spec.modes()) > kMaxFullAlgebraDim)
    throw InvalidInput("config: gns-covariance uses the full matrix algebra, Fock dimension <= 32");
  if (experiment == "lemma3-compose") {
    if (kind().family != GroupFamily::Cyclic) throw InvalidInput("config: lemma3-compose needs a group Z<q>");
    double order = std::pow(static_cast<double>(kind().q), static_cast<double>(spec.sites()));
    if (order > static_cast<double>(kMaxTableOrder))
      throw InvalidInput("config: q^m exceeds the finite group table cap of 4096");
  }
  if (experiment == "weak-vs-norm") {
    if (sites.empty()) throw InvalidInput("config: sites must be non-empty");
    for (int m : sites)
      if (m < 1) throw InvalidInput("config: sites entries must be positive");
  }
}

// ---------------------------------------------------------------------------
// Report

std::string Table::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

void Report::check(std::string name, double measured, double bound) {
  checks.push_back({std::move(name), measured, bound, "<=", measured <= bound});
}

void Report::check_at_least(std::string name, double measured, double bound) {
  checks.push_back({std::move(name), measured, bound, ">=", measured >= bound});
}

json Report::payload() const {
  json cs = json::array();
  for (const auto& c : checks) {
    json r{{"name", c.name}, {"measured", c.measured}, {"bound", c.bound}, {"relation", c.relation},
           {"pass", c.pass}};
    if (!c.pass) r["violation"] = c.relation == "<=" ? c.measured - c.bound : c.bound - c.measured;
    cs.push_back(std::move(r));
  }
  json ts = json::array();
  for (const auto& t : tables) ts.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
  return {{"schema", kReportSchemaVersion},
          {"config", config.to_json()},
          {"seed", config.seed},
          {"checks", std::move(cs)},
          {"tables", std::move(ts)},
          {"records", records},
          {"notes", notes},
          {"passed", passed()}};
}

json Report::to_json() const {
  return {{"payload", payload()},
          {"metadata",
           {{"version", kVersion}, {"anchor", anchor}, {"wall_clock_seconds", wall_clock_seconds}}}};
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

CVector gaussian_coords(Eigen::Index size, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector c(size);
  for (Eigen::Index i = 0; i < size; ++i) c(i) = Complex(normal(rng), normal(rng));
  return c;
}

OneParticleVector random_vector(const LatticeSpec& spec, Rng& rng) {
  return OneParticleVector::from_coordinates(spec, gaussian_coords(static_cast<Eigen::Index>(spec.modes()), rng));
}

State initial_state(const ExperimentConfig& cfg, const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (cfg.initial_state == "fock") return fock_state(space);
  if (cfg.initial_state == "maximally-mixed") return State::maximally_mixed(space);
  if (cfg.initial_state == "uniform-superposition") return State::pure(space, CVector::Ones(d));
  if (cfg.initial_state == "random-pure") {
    Rng rng = substream(cfg.seed, 0xB0B);
    return State::pure(space, gaussian_coords(d, rng));
  }
  throw InvalidInput("config: unknown initial_state '" + cfg.initial_state + "'");
}

void car_check(const ExperimentConfig& cfg, Report& rep) {
  const LatticeSpec spec = cfg.lattice();
  const FockSpace space(spec);
  const GroupKind kind = cfg.kind();
  const double tol = cfg.tol("car");

  double aa = 0.0, adag = 0.0;
  auto accumulate = [&](const OneParticleVector& psi, const OneParticleVector& xi) {
    const auto ac = car_anticommutators(space, psi, xi);
    aa = std::max(aa, op_norm(ac.aa));
    const CMatrix expected = inner(psi, xi) * CMatrix::Identity(ac.a_adag.matrix().rows(), ac.a_adag.matrix().cols());
    adag = std::max(adag, spectral_norm(ac.a_adag.matrix() - expected));
  };
  for (std::size_t i = 0; i < cfg.pairs; ++i) {
    Rng rng = substream(cfg.seed, 2 * i);
    const auto psi = random_vector(spec, rng);
    const auto xi = random_vector(spec, rng);
    accumulate(psi, xi);
  }
  if (space.modes() <= 8) {
    for (std::size_t k = 0; k < space.modes(); ++k)
      for (std::size_t l = 0; l < space.modes(); ++l)
        accumulate(OneParticleVector::basis_mode(spec, k), OneParticleVector::basis_mode(spec, l));
  } else {
    rep.notes.push_back("exhaustive basis-pair CAR sweep skipped above 8 modes");
  }
  rep.check("car {a(psi),a(xi)} norm", aa, tol);
  rep.check("car {a(psi),a(xi)*} - (psi,xi)I norm", adag, tol);

  double antilinear = 0.0, isometry = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    Rng rng = substream(cfg.seed, 1'000'000 + i);
    const auto psi = random_vector(spec, rng);
    const auto xi = random_vector(spec, rng);
    const Complex lambda(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
    const auto lhs = annihilator(space, psi.scaled(lambda) + xi);
    const auto rhs = annihilator(space, psi).scaled(std::conj(lambda)) + annihilator(space, xi);
    antilinear = std::max(antilinear, max_abs(lhs.matrix() - rhs.matrix()));
    isometry = std::max(isometry, std::abs(op_norm(annihilator(space, psi)) - psi.norm()));
  }
  rep.check("antilinearity a(l psi + xi) = conj(l) a(psi) + a(xi)", antilinear, tol);
  rep.check("isometry |a(psi)| = |psi|", isometry, cfg.tol("norm_identity"));

  double identity_err = 0.0, covariance_err = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    Rng rng = substream(cfg.seed, 2'000'000 + i);
    const GaugeField g = sample_gauge_field(spec, kind, rng);
    const auto psi = random_vector(spec, rng);
    const auto a = annihilator(space, psi);
    const auto moved = gauge_automorphism(g, a);
    const double lhs = op_norm(moved - a);
    const double rhs = (apply(g.field(), psi) - psi).norm();
    identity_err = std::max(identity_err, std::abs(lhs - rhs));
    covariance_err = std::max(covariance_err, max_abs(moved.matrix() - annihilator(space, apply(g.field(), psi)).matrix()));
  }
  rep.check("norm identity |gamma_g(a(psi)) - a(psi)| = |rho(g)psi - psi|", identity_err, cfg.tol("norm_identity"));
  rep.check("gamma_g(a(psi)) = a(rho(g)psi)", covariance_err, cfg.tol("norm_identity"));
}

void haar_moments(const ExperimentConfig& cfg, Report& rep) {
  const std::uint64_t n_samples = cfg.samples;
  const double bound = cfg.tol("haar_sigmas") / std::sqrt(static_cast<double>(n_samples));
  Table table{"haar_moments", {"n", "special", "mean_trace_abs", "mean_abs_trace_sq"}, {}};
  for (std::size_t gi = 0; gi < cfg.groups.size(); ++gi) {
    const std::string& label = cfg.groups[gi];
    const bool special = label.rfind("SU", 0) == 0;
    const std::string digits = label.substr(special ? 2 : 1);
    if (digits.empty() || (!special && label[0] != 'U'))
      throw InvalidInput("config: haar group labels look like U2 or SU3, got '" + label + "'");
    const int n = std::stoi(digits);
    const GroupKind kind = special ? GroupKind::special_unitary() : GroupKind::unitary();
    Complex tr_sum = 0.0;
    double tr2_sum = 0.0;
    Rng rng = substream(cfg.seed, gi);
    for (std::uint64_t s = 0; s < n_samples; ++s) {
      const Complex tr = haar_sample(kind, n, rng).trace();
      tr_sum += tr;
      tr2_sum += std::norm(tr);
    }
    const double mean_tr = std::abs(tr_sum / static_cast<double>(n_samples));
    const double mean_tr2 = tr2_sum / static_cast<double>(n_samples);
    rep.check(label + " |E[tr g]|", mean_tr, bound);
    rep.check(label + " |E[|tr g|^2] - 1|", std::abs(mean_tr2 - 1.0), bound);
    table.rows.push_back({static_cast<double>(n), special ? 1.0 : 0.0, mean_tr, mean_tr2});
  }
  rep.tables.push_back(std::move(table));
}

// Defect of the averaged state at each sweep size, measured against
// independent test fields and the matrix-unit suite.
std::vector<ConvergencePoint> convergence_sweep(const ExperimentConfig& cfg, const State& omega0,
                                                const Execution& exec) {
  const auto fields = test_fields(omega0.space().spec(), cfg.kind(), cfg.test_fields, cfg.seed ^ 0x7E57);
  std::vector<ConvergencePoint> points;
  for (auto n : cfg.sweep) {
    const State avg = group_average(omega0, cfg.mean(n), exec);
    points.push_back({n, invariance_defect(avg, fields)});
  }
  return points;
}

Table convergence_table(const std::vector<ConvergencePoint>& points) {
  Table t{"convergence", {"N", "defect"}, {}};
  for (const auto& p : points) t.rows.push_back({static_cast<double>(p.samples), p.defect});
  return t;
}

Execution execution_for(const ExperimentConfig& cfg) {
  return cfg.strict_deterministic ? Execution{1, true} : Execution{0, false};
}

void invariant_state(const ExperimentConfig& cfg, Report& rep) {
  const FockSpace space(cfg.lattice());
  const State omega0 = initial_state(cfg, space);
  const Execution exec = execution_for(cfg);
  const MeanConfig mcfg = cfg.mean();

  if (cfg.sampler == Sampler::MonteCarloHaar && cfg.samples == 1)
    rep.notes.push_back("N = 1: the average is a single random conjugation");

  if (cfg.sampler == Sampler::ExactFiniteGroup) {
    const State avg = group_average(omega0, mcfg, exec);
    const auto all = enumerate_cyclic_fields(space.spec(), cfg.kind().q);
    rep.check("exact average: defect over all group elements", invariance_defect(avg, all),
              cfg.tol("exact_invariance"));
    const State twice = group_average(avg, mcfg, exec);
    rep.check("idempotence of exact averaging", max_abs(twice.density() - avg.density()),
              cfg.tol("exact_invariance"));
    rep.check("Fock state fixed by averaging",
              max_abs(group_average(fock_state(space), mcfg, exec).density() - fock_state(space).density()),
              cfg.tol("exact_invariance"));
    rep.records.push_back(io::to_json(avg));
    return;
  }

  if (cfg.sampler == Sampler::TorusQuadrature) {
    const State avg = group_average(omega0, mcfg, exec);
    const auto fields = test_fields(space.spec(), cfg.kind(), cfg.test_fields, cfg.seed ^ 0x7E57);
    rep.check("quadrature average: defect over test fields", invariance_defect(avg, fields),
              cfg.tol("exact_invariance"));
    return;
  }

  const auto points = convergence_sweep(cfg, omega0, exec);
  rep.tables.push_back(convergence_table(points));
  rep.records.push_back(io::convergence_record(mcfg, points));
  if (points.size() >= 2) {
    const PowerLawFit fit = fit_power_law(points);
    rep.check("|slope + 0.5| of log defect vs log N", std::abs(fit.slope - cfg.tol("slope_center")),
              cfg.tol("slope_halfwidth"));
    rep.records.push_back({{"fit", {{"slope", fit.slope}, {"intercept", fit.intercept}}},
                           {"root_n_constant", fit_root_n_constant(points)}});
  }
  const auto fields = test_fields(space.spec(), cfg.kind(), cfg.test_fields, cfg.seed ^ 0x7E57);
  const State fock_avg = group_average(fock_state(space), mcfg, exec);
  rep.check("Fock state fixed by averaging", max_abs(fock_avg.density() - fock_state(space).density()),
            cfg.tol("exact_invariance"));
  rep.check("Fock state invariance defect", invariance_defect(fock_state(space), fields), cfg.tol("exact_invariance"));
}

void gns_covariance(const ExperimentConfig& cfg, Report& rep) {
  const FockSpace space(cfg.lattice());
  const auto d = static_cast<Eigen::Index>(space.dim());
  const GroupKind kind = cfg.kind();
  const auto alg = AlgebraBasis::full_matrix_algebra(space);
  const State omega = initial_state(cfg, space);
  const GnsTriple gns = gns_construct(omega, alg);

  double recon = 0.0;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    const CMatrix pi = gns.rep.empty() ? gns_represent(gns, alg.elements()[i]) : gns.rep[i];
    recon = std::max(recon, std::abs(gns.cyclic.dot(pi * gns.cyclic) - evaluate(omega, alg.elements()[i])));
  }
  double mult = 0.0, star = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    Rng rng = substream(cfg.seed, 3'000'000 + i);
    CMatrix am(d, d), bm(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
      am.col(c) = gaussian_coords(d, rng);
      bm.col(c) = gaussian_coords(d, rng);
    }
    const FockOperator a(space, am), b(space, bm);
    const CMatrix pa = gns_represent(gns, a);
    const CMatrix pb = gns_represent(gns, b);
    recon = std::max(recon, std::abs(gns.cyclic.dot(pa * gns.cyclic) - evaluate(omega, a)));
    mult = std::max(mult, spectral_norm(gns_represent(gns, a * b) - pa * pb));
    star = std::max(star, spectral_norm(gns_represent(gns, a.adjoint()) - pa.adjoint()));
  }
  rep.check("reconstruction <Omega, pi(A) Omega> = omega(A)", recon, cfg.tol("gns_reconstruction"));
  rep.check("multiplicativity pi(AB) = pi(A)pi(B)", mult, cfg.tol("gns_algebra"));
  rep.check("*-preservation pi(A*) = pi(A)*", star, cfg.tol("gns_algebra"));
  rep.check("cyclic vector norm", std::abs(gns.cyclic.norm() - 1.0), cfg.tol("gns_reconstruction"));

  const double rank_tol = 0.0;
  const auto pure = gns_construct(State::pure(space, vacuum_vector(space)), alg);
  rep.check("rank |r - D| for a pure state", std::abs(static_cast<double>(pure.dim) - static_cast<double>(d)), rank_tol);
  const auto mixed = gns_construct(State::maximally_mixed(space), alg);
  rep.check("rank |r - D^2| for the maximally mixed state",
            std::abs(static_cast<double>(mixed.dim) - static_cast<double>(d * d)), rank_tol);
  rep.records.push_back({{"gns_dim", gns.dim}, {"pure_dim", pure.dim}, {"mixed_dim", mixed.dim}});

  const auto fields = test_fields(space.spec(), kind, cfg.test_fields, cfg.seed ^ 0xC0DE);
  double unit = 0.0, vac = 0.0, cov = 0.0, hom = 0.0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto cu = covariant_unitary(gns, omega, fields[i], alg);
    unit = std::max(unit, cu.unitarity_residual);
    vac = std::max(vac, cu.vacuum_residual);
    cov = std::max(cov, cu.covariance_residual);
    const auto& h = fields[(i + 1) % fields.size()];
    const auto ch = covariant_unitary(gns, omega, h, alg);
    const auto cgh = covariant_unitary(gns, omega, gauge_mul(fields[i], h), alg);
    hom = std::max(hom, spectral_norm(cu.u * ch.u - cgh.u));
  }
  const double ctol = cfg.tol("gns_covariance");
  rep.check("U_g unitary", unit, ctol);
  rep.check("U_g Omega = Omega", vac, ctol);
  rep.check("covariance U_g pi(A) U_g* = pi(gamma_g(A))", cov, ctol);
  rep.check("homomorphism U_g U_h = U_gh", hom, ctol);
  const auto ident = covariant_unitary(gns, omega, GaugeField::identity(space.spec(), kind), alg);
  rep.check("U_identity = I", max_abs(ident.u - CMatrix::Identity(ident.u.rows(), ident.u.cols())), ctol);

  // Continuity along g_t = exp(i t H).
  Rng rng = substream(cfg.seed, 4'000'000);
  std::vector<CMatrix> gens;
  for (std::size_t x = 0; x < space.spec().sites(); ++x) {
    CMatrix h(space.spec().colors(), space.spec().colors());
    for (Eigen::Index c = 0; c < h.cols(); ++c) h.col(c) = gaussian_coords(h.rows(), rng);
    gens.push_back(0.5 * (h + h.adjoint()));
  }
  std::vector<double> times;
  std::vector<GaugeField> path;
  for (int k = 0; k <= 10; ++k) {
    times.push_back(std::ldexp(1.0, -k));
    path.push_back(exponential_path(space.spec(), gens, times.back()));
  }
  times.push_back(0.0);
  path.push_back(exponential_path(space.spec(), gens, 0.0));
  const auto probe_op = annihilator(space, random_vector(space.spec(), rng)) +
                        FockOperator::identity(space);
  const auto rows = strong_continuity_probe(gns, omega, times, path, probe_op, alg);
  Table table{"continuity", {"t", "displacement", "bound"}, {}};
  double slack = -1e300;
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.rows.push_back({rows[i].t, rows[i].displacement, rows[i].bound});
    slack = std::max(slack, rows[i].displacement - rows[i].bound);
    if (i > 0 && rows[i].bound > rows[i - 1].bound + 1e-12) monotone = false;
  }
  rep.check("continuity bound |U xi(A) - xi(A)| - |gamma(A) - A|", slack, 1e-9);
  rep.check("continuity at t = 0", rows.back().displacement, 1e-12);
  rep.check_at_least("bound decreases monotonically as t -> 0", monotone ? 1.0 : 0.0, 1.0);
  rep.tables.push_back(std::move(table));
}

void weak_vs_norm(const ExperimentConfig& cfg, Report& rep) {
  Table table{"weak_vs_norm", {"m", "p_omega", "sup_norm"}, {}};
  double sup_dev = 0.0, bound_excess = -1e300, min_ratio = 1e300;
  double prev = 0.0;
  for (std::size_t i = 0; i < cfg.sites.size(); ++i) {
    const int m = cfg.sites[i];
    const LatticeSpec spec({m}, cfg.colors);
    const auto kind = GroupKind::unitary();
    const int n = cfg.colors;
    const auto one = GaugeField::identity(spec, kind);
    std::vector<CMatrix> vals(spec.sites(), CMatrix::Identity(n, n));
    vals[0] = -CMatrix::Identity(n, n);
    const GaugeField bump(spec, kind, vals);
    const auto omega = WeakFunctional::normalized_trace(spec);
    const double p = weak_seminorm(omega, bump - one);
    const double sup = sup_norm_dist(bump, one);
    table.rows.push_back({static_cast<double>(m), p, sup});
    sup_dev = std::max(sup_dev, std::abs(sup - 2.0));
    bound_excess = std::max(bound_excess, p - 2.0 * omega.max_block_norm() / m);
    if (i > 0) {
      if (m != 2 * cfg.sites[i - 1]) rep.notes.push_back("sites list is not a doubling sequence");
      min_ratio = std::min(min_ratio, prev / p);
    }
    prev = p;
  }
  rep.check("sup_norm_dist - 2", sup_dev, cfg.tol("sup_norm"));
  rep.check("p_omega - 2 |omega|_max / m", bound_excess, 1e-15);
  if (cfg.sites.size() > 1) rep.check_at_least("p_omega decay per doubling", min_ratio, cfg.tol("decay_ratio"));

  // Domination p_omega(g - h) <= |omega| sup_x |g(x) - h(x)| on random data.
  const LatticeSpec spec = cfg.lattice();
  double worst = -1e300;
  for (std::size_t i = 0; i < 50; ++i) {
    Rng rng = substream(cfg.seed, 5'000'000 + i);
    std::vector<CMatrix> blocks;
    for (std::size_t x = 0; x < spec.sites(); ++x) {
      CMatrix b(spec.colors(), spec.colors());
      for (Eigen::Index c = 0; c < b.cols(); ++c) b.col(c) = gaussian_coords(b.rows(), rng);
      blocks.push_back(b);
    }
    const WeakFunctional omega(spec, blocks);
    const auto g = sample_gauge_field(spec, cfg.kind(), rng);
    const auto h = sample_gauge_field(spec, cfg.kind(), rng);
    worst = std::max(worst, weak_seminorm(omega, g - h) - omega.norm() * sup_norm_dist(g, h));
  }
  rep.check("p_omega(g - h) - |omega| sup_norm_dist(g, h)", worst, 1e-12);
  rep.tables.push_back(std::move(table));
}

void lemma3_compose(const ExperimentConfig& cfg, Report& rep) {
  const LatticeSpec spec = cfg.lattice();
  const auto ext = FiniteGroupExtension::constant_subgroup(spec, cfg.kind().q);
  const auto& group = ext.group();
  const double tol = cfg.tol("compose");

  std::vector<Complex> ones(group.order(), 1.0);
  rep.check("M(1) - 1", std::abs(compose_means(ext, uniform_mean, uniform_mean, ones) - 1.0), tol);

  double invariance = 0.0, vs_uniform = 0.0;
  for (std::size_t i = 0; i < cfg.pairs; ++i) {
    Rng rng = substream(cfg.seed, 6'000'000 + i);
    const CVector coeffs = gaussian_coords(static_cast<Eigen::Index>(group.order()), rng);
    const std::vector<Complex> f(coeffs.data(), coeffs.data() + coeffs.size());
    const Complex mf = compose_means(ext, uniform_mean, uniform_mean, f);
    vs_uniform = std::max(vs_uniform, std::abs(mf - uniform_mean(f)));
    for (std::size_t k = 0; k < group.order(); ++k) {
      const auto fk = left_translate(group, f, k);
      invariance = std::max(invariance, std::abs(compose_means(ext, uniform_mean, uniform_mean, fk) - mf));
    }
  }
  rep.check("left invariance M(f_k) = M(f) over all k", invariance, tol);
  rep.check("M(f) = uniform mean over K", vs_uniform, tol);
  rep.records.push_back({{"group_order", group.order()},
                         {"subgroup_order", ext.subgroup().size()},
                         {"quotient_order", ext.quotient_order()}});
}

void semidirect_vacuum(const ExperimentConfig& cfg, Report& rep) {
  const FockSpace space(cfg.lattice());
  const State omega0 = initial_state(cfg, space);
  const Execution exec = execution_for(cfg);
  const auto fields = test_fields(space.spec(), cfg.kind(), cfg.test_fields, cfg.seed ^ 0x7E57);

  const State vacuum = semidirect_average(fock_state(space), cfg.mean(), exec);
  rep.check("Fock state unchanged", max_abs(vacuum.density() - fock_state(space).density()),
            cfg.tol("exact_invariance"));

  const State out = semidirect_average(omega0, cfg.mean(), exec);
  rep.check("translation defect", translation_defect(out), cfg.tol("translation"));

  if (cfg.sampler == Sampler::MonteCarloHaar) {
    const auto points = convergence_sweep(cfg, omega0, exec);
    const double c = fit_root_n_constant(points);
    const double bound = cfg.tol("gauge_factor") * c / std::sqrt(static_cast<double>(cfg.samples));
    rep.check("gauge defect vs 3 C / sqrt(N)", invariance_defect(out, fields), bound);
    rep.tables.push_back(convergence_table(points));
    rep.records.push_back(io::convergence_record(cfg.mean(), points));
    rep.records.push_back({{"root_n_constant", c}});
  } else {
    const std::vector<GaugeField> all = cfg.sampler == Sampler::ExactFiniteGroup
                                            ? enumerate_cyclic_fields(space.spec(), cfg.kind().q)
                                            : fields;
    rep.check("gauge defect", invariance_defect(out, all), cfg.tol("exact_invariance"));
  }
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.config = cfg;
  rep.anchor = anchors().at(cfg.experiment);

  static const std::map<std::string, std::function<void(const ExperimentConfig&, Report&)>> dispatch{
      {"car-check", car_check},           {"haar-moments", haar_moments},
      {"invariant-state", invariant_state}, {"gns-covariance", gns_covariance},
      {"weak-vs-norm", weak_vs_norm},     {"lemma3-compose", lemma3_compose},
      {"semidirect-vacuum", semidirect_vacuum}};
  dispatch.at(cfg.experiment)(cfg, rep);

  rep.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace gaugelab
