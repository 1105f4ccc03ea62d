#include "entanglekit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "entanglekit/state_io.hpp"

namespace entanglekit {

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  return r * std::cos(angle);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) * std::numbers::sqrt2 / 2.0;
}

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

ComplexMatrix random_unitary(int n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix random_su2(Rng& rng) {
  double a = rng.normal(), b = rng.normal(), c = rng.normal(), d = rng.normal();
  const double norm = std::sqrt(a * a + b * b + c * c + d * d);
  a /= norm, b /= norm, c /= norm, d /= norm;
  ComplexMatrix u(2, 2);
  u << cplx(a, b), cplx(c, d), cplx(-c, d), cplx(a, -b);
  return u;
}

PureState random_pure(BipartiteDims dims, Rng& rng) {
  ComplexVector v(dims.total());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  return PureState::from_amplitudes(dims, v);
}

DensityMatrix random_density_hs(BipartiteDims dims, Rng& rng) {
  const ComplexMatrix g = ginibre(dims.total(), dims.total(), rng);
  const ComplexMatrix m = g * g.adjoint();
  return DensityMatrix::from_matrix(dims, m / m.trace().real());
}

DensityMatrix random_separable(BipartiteDims dims, int terms, Rng& rng) {
  if (terms < 1) throw Error(ErrorKind::ParameterOutOfRange, "need at least one product term");
  std::vector<double> weights;
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    weights.push_back(-std::log(1.0 - rng.uniform()));  // flat Dirichlet weights
    total += weights.back();
  }
  ComplexMatrix m = ComplexMatrix::Zero(dims.total(), dims.total());
  for (int t = 0; t < terms; ++t) {
    ComplexVector a(dims.n_a), b(dims.n_b);
    for (int i = 0; i < dims.n_a; ++i) a(i) = rng.complex_normal();
    for (int i = 0; i < dims.n_b; ++i) b(i) = rng.complex_normal();
    a.normalize();
    b.normalize();
    ComplexVector ab(dims.total());
    for (int i = 0; i < dims.n_a; ++i) ab.segment(i * dims.n_b, dims.n_b) = a(i) * b;
    m += (weights[static_cast<std::size_t>(t)] / total) * outer(ab);
  }
  return DensityMatrix::from_matrix(dims, m);
}

// ---------------------------------------------------------------------------

const char* to_string(Ensemble e) { return e == Ensemble::Pure ? "pure" : "hs"; }

Ensemble parse_ensemble(const std::string& name) {
  if (name == "pure" || name == "fs") return Ensemble::Pure;
  if (name == "hs" || name == "mixed") return Ensemble::HilbertSchmidt;
  throw Error(ErrorKind::MalformedInput, "unknown ensemble \"" + name + "\" (pure|hs)");
}

namespace {

struct MeasureName {
  MeasureId id;
  const char* name;
};

constexpr MeasureName kMeasureNames[] = {
    {MeasureId::Concurrence, "concurrence"},
    {MeasureId::Negativity, "negativity"},
    {MeasureId::LogNegativity, "log_negativity"},
    {MeasureId::ReshufflingNegativity, "reshuffling_negativity"},
    {MeasureId::EntanglementEntropy, "entanglement_entropy"},
    {MeasureId::Tangle, "tangle"},
    {MeasureId::EntanglementOfFormation, "eof"},
    {MeasureId::MaxFidelity, "max_fidelity"},
    {MeasureId::Purity, "purity"},
    {MeasureId::VonNeumannEntropy, "von_neumann_entropy"},
    {MeasureId::ParticipationRatio, "participation_ratio"},
};

}  // namespace

const char* to_string(MeasureId m) {
  for (const auto& entry : kMeasureNames)
    if (entry.id == m) return entry.name;
  return "?";
}

MeasureId parse_measure(const std::string& name) {
  for (const auto& entry : kMeasureNames)
    if (name == entry.name) return entry.id;
  if (name == "fidelity") return MeasureId::MaxFidelity;
  if (name == "entropy") return MeasureId::EntanglementEntropy;
  throw Error(ErrorKind::UnknownMeasure, "unknown measure \"" + name + "\"");
}

double evaluate_measure(MeasureId m, const DensityMatrix& rho, const PureState* pure) {
  const bool two_qubits = rho.dims() == BipartiteDims{2, 2};
  switch (m) {
    case MeasureId::Concurrence:
      if (pure != nullptr) return concurrence_pure(*pure);
      return concurrence_2q(rho);
    case MeasureId::Negativity: return negativity(rho);
    case MeasureId::LogNegativity: return log_negativity(rho);
    case MeasureId::ReshufflingNegativity: return reshuffling_negativity(rho);
    case MeasureId::EntanglementEntropy:
      if (pure == nullptr) throw Error(ErrorKind::NotApplicable, "entanglement entropy needs a pure state");
      return entanglement_entropy(*pure);
    case MeasureId::Tangle:
      if (pure == nullptr) throw Error(ErrorKind::NotApplicable, "tangle needs a pure state");
      return tangle(*pure);
    case MeasureId::EntanglementOfFormation:
      if (pure != nullptr) return entanglement_entropy(*pure);
      return eof_2q(rho);
    case MeasureId::MaxFidelity:
      if (!two_qubits) throw Error(ErrorKind::DimensionMismatch, "maximal fidelity closed form needs two qubits");
      return max_fidelity_2q(rho);
    case MeasureId::Purity: return rho.purity();
    case MeasureId::VonNeumannEntropy: return entropy(rho);
    case MeasureId::ParticipationRatio: return rho.participation_ratio();
  }
  throw Error(ErrorKind::UnknownMeasure, "unhandled measure");
}

McEstimate summarize(const std::vector<double>& values) {
  McEstimate est;
  est.n = static_cast<std::int64_t>(values.size());
  if (values.empty()) return est;
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    est.standard_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return est;
}

namespace {

// Runs `per_sample` over spec.n draws split across workers; each worker owns
// an Rng seeded with seed ^ worker and writes into its own slice.
template <typename Row, typename Fn>
std::vector<Row> run_sampling(const SamplingSpec& spec, Fn per_sample) {
  if (spec.n < 0) throw Error(ErrorKind::ParameterOutOfRange, "sample count must be >= 0");
  if (spec.workers < 1) throw Error(ErrorKind::ParameterOutOfRange, "need at least one worker");
  const auto workers = static_cast<std::int64_t>(spec.workers);
  std::vector<std::vector<Row>> slices(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));

  const auto job = [&](std::int64_t w) {
    try {
      const std::int64_t count = spec.n / workers + (w < spec.n % workers ? 1 : 0);
      Rng rng(spec.seed ^ static_cast<std::uint64_t>(w));
      auto& out = slices[static_cast<std::size_t>(w)];
      out.reserve(static_cast<std::size_t>(count));
      for (std::int64_t i = 0; i < count; ++i) {
        if (spec.ensemble == Ensemble::Pure) {
          const PureState psi = random_pure(spec.dims, rng);
          const DensityMatrix rho = DensityMatrix::from_pure(psi);
          out.push_back(per_sample(rho, &psi));
        } else {
          const DensityMatrix rho = random_density_hs(spec.dims, rng);
          out.push_back(per_sample(rho, nullptr));
        }
      }
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };

  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> threads;
    for (std::int64_t w = 0; w < workers; ++w) threads.emplace_back(job, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<Row> merged;
  merged.reserve(static_cast<std::size_t>(spec.n));
  for (auto& slice : slices) merged.insert(merged.end(), slice.begin(), slice.end());
  return merged;
}

}  // namespace

std::vector<double> mc_values(MeasureId m, const SamplingSpec& spec) {
  return run_sampling<double>(spec, [m](const DensityMatrix& rho, const PureState* psi) {
    return evaluate_measure(m, rho, psi);
  });
}

McEstimate mc_average(MeasureId m, const SamplingSpec& spec) { return summarize(mc_values(m, spec)); }

std::vector<ScatterRow> mc_scatter(MeasureId x, MeasureId y, const SamplingSpec& spec) {
  return run_sampling<ScatterRow>(spec, [x, y](const DensityMatrix& rho, const PureState* psi) {
    return ScatterRow{evaluate_measure(x, rho, psi), evaluate_measure(y, rho, psi)};
  });
}

std::string values_csv(MeasureId m, const std::vector<double>& values) {
  std::string out = std::string(to_string(m)) + "\n";
  for (double v : values) out += format_real(v) + "\n";
  return out;
}

std::string scatter_csv(MeasureId x, MeasureId y, const std::vector<ScatterRow>& rows) {
  std::string out = std::string(to_string(x)) + "," + to_string(y) + "\n";
  for (const auto& r : rows) out += format_real(r.x) + "," + format_real(r.y) + "\n";
  return out;
}

std::string sampling_metadata_json(const SamplingSpec& spec, const std::vector<std::string>& measures) {
  nlohmann::ordered_json meta;
  meta["seed"] = spec.seed;
  meta["n"] = spec.n;
  meta["generator"] = Rng::kAlgorithm;
  meta["dims"] = {spec.dims.n_a, spec.dims.n_b};
  meta["ensemble"] = to_string(spec.ensemble);
  meta["workers"] = spec.workers;
  meta["measures"] = measures;
  return meta.dump(2) + "\n";
}

}  // namespace entanglekit
