#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "entanglekit/geomviz.hpp"
#include "entanglekit/locc.hpp"
#include "entanglekit/measures.hpp"
#include "entanglekit/reports.hpp"
#include "entanglekit/sampling.hpp"
#include "entanglekit/separability.hpp"
#include "entanglekit/state_io.hpp"

namespace entanglekit::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { Json, Text, Csv };

struct Globals {
  Format format = Format::Json;
  std::optional<double> tolerance;
  std::string output;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(trim(s), &used);
    if (used != trim(s).size()) throw InputError("not a number: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw InputError("not a number: " + s);
  }
}

BipartiteDims parse_dims(const std::string& s) {
  const auto parts = split(s, 'x');
  if (parts.size() != 2) throw InputError("dims must look like 2x3, got " + s);
  try {
    return BipartiteDims{std::stoi(parts[0]), std::stoi(parts[1])};
  } catch (const std::logic_error&) {
    throw InputError("dims must look like 2x3, got " + s);
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ENTANGLEKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw InputError(std::string("ENTANGLEKIT_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.output);
  if (!file) throw InputError("cannot write " + g.output);
  file << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
  std::string input;
  std::vector<std::string> criteria;
  std::vector<std::string> entropy_orders;
  std::vector<std::string> measures;
};

CriterionSelection selection_from(const AnalyzeOptions& o, const Globals& g) {
  CriterionSelection sel;
  if (!o.criteria.empty()) {
    sel.ppt = sel.reduction = sel.majorisation = sel.reshuffling = false;
    bool entropy = false;
    for (const auto& c : o.criteria) {
      if (c == "ppt") sel.ppt = true;
      else if (c == "reduction") sel.reduction = true;
      else if (c == "majorisation" || c == "majorization") sel.majorisation = true;
      else if (c == "reshuffling") sel.reshuffling = true;
      else if (c == "entropy") entropy = true;
      else throw InputError("unknown criterion \"" + c + "\"");
    }
    if (!entropy) sel.entropy_orders.clear();
  }
  if (!o.entropy_orders.empty()) {
    sel.entropy_orders.clear();
    for (const auto& q : o.entropy_orders) {
      sel.entropy_orders.push_back(q == "inf" ? kInfiniteOrder : parse_double(q));
    }
  }
  if (g.tolerance) sel.threshold = *g.tolerance;
  return sel;
}

int cmd_analyze(const AnalyzeOptions& o, const Globals& g, std::ostream& out) {
  const AnyState state = read_state_file(o.input);
  const DensityMatrix rho = as_density(state);
  const PureState* pure = std::get_if<PureState>(&state);

  const SeparabilityReport sep = aggregate_report(rho, selection_from(o, g));
  MeasureReport meas = measure_report(rho, pure);
  if (!o.measures.empty()) {
    MeasureReport filtered;
    filtered.flags = meas.flags;
    for (const auto& name : o.measures) {
      const auto it = meas.values.find(name);
      if (it == meas.values.end()) throw Error(ErrorKind::UnknownMeasure, "measure \"" + name + "\" not available");
      filtered.values.insert(*it);
    }
    meas = std::move(filtered);
  }

  if (g.format == Format::Text) {
    std::ostringstream os;
    os << "state: " << (pure ? "pure" : "density") << " " << rho.dims().n_a << "x" << rho.dims().n_b << "\n\n"
       << to_text(sep) << "\n" << to_text(meas);
    emit(g, out, os.str());
    return kExitOk;
  }
  if (g.format == Format::Csv) throw InputError("analyze supports --format json|text");
  ordered_json j;
  j["state"] = {{"kind", pure ? "pure" : "density"}, {"dims", {rho.dims().n_a, rho.dims().n_b}}};
  j["separability"] = to_json(sep);
  j["measures"] = to_json(meas);
  emit(g, out, j.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  std::string family;
  std::optional<int> n;
  std::optional<double> x, a, b, y, theta, eps;
  std::string kind = "phi+";
  std::string dims = "2x2";
  std::optional<std::uint64_t> seed;
};

BellKind parse_bell(const std::string& k) {
  if (k == "phi+") return BellKind::PhiPlus;
  if (k == "phi-") return BellKind::PhiMinus;
  if (k == "psi+") return BellKind::PsiPlus;
  if (k == "psi-") return BellKind::PsiMinus;
  throw InputError("unknown Bell kind \"" + k + "\" (phi+|phi-|psi+|psi-)");
}

template <typename T>
T need(const std::optional<T>& v, const char* flag, const std::string& family) {
  if (!v) throw InputError(family + " requires --" + flag);
  return *v;
}

AnyState generate_state(const GenerateOptions& o) {
  const std::string& f = o.family;
  if (f == "bell") return bell(parse_bell(o.kind));
  if (f == "werner") return werner(o.n.value_or(2), need(o.x, "x", f));
  if (f == "sigma-h") return sigma_h(need(o.a, "a", f));
  if (f == "sigma-b") return sigma_b(need(o.b, "b", f));
  if (f == "rho-m") return rho_m(need(o.y, "y", f));
  if (f == "rho-xtheta") return rho_xtheta(need(o.x, "x", f), need(o.theta, "theta", f));
  if (f == "psi-theta") return psi_theta(need(o.theta, "theta", f));
  if (f == "tiles") return tiles_upb_state();
  if (f == "pseudo-pure") {
    const int n = o.n.value_or(2);
    const PureState phi = n == 2 ? bell(parse_bell(o.kind)) : max_entangled(n);
    return pseudo_pure(phi, need(o.eps, "eps", f));
  }
  if (f == "max-entangled") {
    const int n = o.n.value_or(2);
    if (n < 2) throw InputError("--n must be >= 2");
    if (!o.seed) return max_entangled(n);
    Rng rng(*o.seed);
    return max_entangled_from_unitary(random_unitary(n, rng));
  }
  if (f == "random-pure" || f == "random-hs") {
    Rng rng(o.seed.value_or(default_seed()));
    const BipartiteDims dims = parse_dims(o.dims);
    if (f == "random-pure") return random_pure(dims, rng);
    return random_density_hs(dims, rng);
  }
  throw InputError("unknown family \"" + f + "\"");
}

int cmd_generate(const GenerateOptions& o, const Globals& g, std::ostream& out) {
  emit(g, out, state_to_json(generate_state(o)));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// convert

struct ConvertOptions {
  std::string from;
  std::string to;
};

struct ConvertOperand {
  SchmidtVector vector;
  std::optional<BipartiteDims> dims;
};

ConvertOperand parse_operand(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) {
    const AnyState state = read_state_file(spec);
    const auto* psi = std::get_if<PureState>(&state);
    if (psi == nullptr) throw InputError(spec + ": LOCC conversion needs a pure state file");
    return {SchmidtVector::of(*psi), psi->dims()};
  }
  std::string body = trim(spec);
  if (!body.empty() && (body.front() == '[' || body.front() == '(')) body = body.substr(1);
  if (!body.empty() && (body.back() == ']' || body.back() == ')')) body.pop_back();
  std::vector<double> values;
  for (const auto& part : split(body, ',')) values.push_back(parse_double(part));
  return {SchmidtVector(values), std::nullopt};
}

int cmd_convert(const ConvertOptions& o, const Globals& g, std::ostream& out) {
  const ConvertOperand source = parse_operand(o.from);
  const ConvertOperand target = parse_operand(o.to);
  if (source.dims && target.dims && *source.dims != *target.dims) {
    throw Error(ErrorKind::DimensionMismatch, "source and target states have different dims");
  }
  if (source.vector.size() != target.vector.size()) {
    throw Error(ErrorKind::DimensionMismatch, "Schmidt vectors have lengths " + std::to_string(source.vector.size()) +
                                                  " and " + std::to_string(target.vector.size()));
  }
  const ConversionReport report = conversion_report(source.vector, target.vector);
  if (g.format == Format::Text) {
    emit(g, out, to_text(report));
    return kExitOk;
  }
  ordered_json j;
  j["source"] = source.vector.values();
  j["target"] = target.vector.values();
  j["relation"] = to_string(report.relation);
  j["p_c"] = report.p_c;
  emit(g, out, j.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sample

struct SampleOptions {
  std::string measure;
  std::string scatter;
  std::string dims = "2x2";
  std::string ensemble = "pure";
  std::int64_t n = 10000;
  std::optional<std::uint64_t> seed;
  int workers = 1;
};

int cmd_sample(const SampleOptions& o, const Globals& g, std::ostream& out) {
  if (o.measure.empty() == o.scatter.empty()) throw InputError("give exactly one of --measure or --scatter");
  SamplingSpec spec;
  spec.dims = parse_dims(o.dims);
  spec.ensemble = parse_ensemble(o.ensemble);
  spec.n = o.n;
  spec.seed = o.seed.value_or(default_seed());
  spec.workers = o.workers;

  std::string csv;
  ordered_json summary;
  std::vector<std::string> names;
  if (!o.measure.empty()) {
    const MeasureId m = parse_measure(o.measure);
    const std::vector<double> values = mc_values(m, spec);
    const McEstimate est = summarize(values);
    csv = values_csv(m, values);
    names = {to_string(m)};
    summary["measure"] = to_string(m);
    summary["mean"] = est.mean;
    summary["standard_error"] = est.standard_error;
    summary["n"] = est.n;
  } else {
    const auto parts = split(o.scatter, ':');
    if (parts.size() != 2) throw InputError("--scatter expects X:Y");
    const MeasureId mx = parse_measure(parts[0]), my = parse_measure(parts[1]);
    const auto rows = mc_scatter(mx, my, spec);
    csv = scatter_csv(mx, my, rows);
    names = {to_string(mx), to_string(my)};
    summary["scatter"] = {to_string(mx), to_string(my)};
    summary["rows"] = rows.size();
  }
  summary["seed"] = spec.seed;
  summary["generator"] = Rng::kAlgorithm;
  summary["dims"] = {spec.dims.n_a, spec.dims.n_b};
  summary["ensemble"] = to_string(spec.ensemble);

  if (!g.output.empty()) {
    write_file(g.output, csv);
    write_file(g.output + ".meta.json", sampling_metadata_json(spec, names));
  }
  if (g.format == Format::Csv) {
    if (g.output.empty()) out << csv;
  } else if (g.format == Format::Text) {
    for (const auto& [k, v] : summary.items()) out << k << ": " << v.dump() << "\n";
  } else {
    out << summary.dump(2) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsOptions {
  std::string pair;
  int grid = 101;
  std::string bound = "lower";
};

int cmd_bounds(const BoundsOptions& o, const Globals& g, std::ostream& out) {
  if (o.grid < 2) throw InputError("--grid must be >= 2");
  if (o.bound != "lower" && o.bound != "upper") throw InputError("--bound must be lower or upper");
  const bool lower = o.bound == "lower";
  std::string header;
  std::function<double(double)> curve;
  double range = 1.0;
  if (o.pair == "concurrence:negativity") {
    header = lower ? "concurrence,negativity_lower" : "concurrence,negativity_upper";
    curve = lower ? std::function<double(double)>(neg_lower_bound) : [](double c) { return c; };
  } else if (o.pair == "concurrence:fidelity") {
    header = lower ? "concurrence,fidelity_lower" : "concurrence,fidelity_upper";
    curve = [lower](double c) { const Interval i = fid_bounds_from_c(c); return lower ? i.lo : i.hi; };
  } else if (o.pair == "negativity:fidelity") {
    header = lower ? "negativity,fidelity_lower" : "negativity,fidelity_upper";
    curve = [lower](double n) { const Interval i = fid_bounds_from_n(n); return lower ? i.lo : i.hi; };
  } else if (o.pair == "eof:relative_entropy") {
    header = lower ? "eof,relative_entropy_lower" : "eof,relative_entropy_upper";
    range = std::numbers::ln2;
    curve = lower ? std::function<double(double)>(er_lower_bound) : [](double e) { return e; };
  } else {
    throw InputError("unknown pair \"" + o.pair + "\"");
  }
  std::string csv = header + "\n";
  for (int i = 0; i < o.grid; ++i) {
    const double t = i == o.grid - 1 ? range : range * i / (o.grid - 1.0);
    csv += format_real(t) + "," + format_real(curve(t)) + "\n";
  }
  emit(g, out, csv);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// geometry

struct GeometryOptions {
  bool segre_sweep = false;
  bool cross_section = false;
  std::string input;
  int lines = 8;
  int points = 17;
  int resolution = 12;
  std::string phases = "0,0,0";
};

int cmd_geometry(const GeometryOptions& o, const Globals& g, std::ostream& out) {
  const int modes = int(o.segre_sweep) + int(o.cross_section) + int(!o.input.empty());
  if (modes != 1) throw InputError("give exactly one of --segre-sweep, --cross-section, --input");
  if (o.segre_sweep) {
    emit(g, out, ruling_csv(separable_ruling(o.lines, o.points)));
    return kExitOk;
  }
  if (o.cross_section) {
    const auto parts = split(o.phases, ',');
    if (parts.size() != 3) throw InputError("--phases expects three comma-separated values");
    const std::array<double, 3> phases{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
    emit(g, out, cross_section_csv(tetrahedron_cross_section(o.resolution, phases)));
    return kExitOk;
  }
  const AnyState state = read_state_file(o.input);
  const auto* psi = std::get_if<PureState>(&state);
  if (psi == nullptr) throw InputError("geometry --input needs a pure two-qubit state");
  const OctantCoords c = octant_coords(*psi);
  const SegreResiduals s = segre_residuals(*psi);
  ordered_json j;
  j["moduli"] = c.moduli;
  j["phases"] = c.phases;
  j["gnomonic"] = c.gnomonic;
  j["segre"] = {{"quadric", s.quadric}, {"modulus_eq", s.modulus_eq}, {"phase_eq", s.phase_eq}};
  j["separable"] = s.quadric <= kSegreTol;
  j["max_entangled_residual"] = max_entangled_residual(*psi);
  emit(g, out, j.dump(2) + "\n");
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquare:
    case ErrorKind::NotHermitian:
    case ErrorKind::NotPSD:
      return kExitNumeric;
    default:
      return kExitInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"entanglekit: entanglement analysis of bipartite quantum states"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::string format = "json";
  app.add_option("--format", format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_option("--tolerance", g.tolerance, "violation threshold for separability criteria");
  app.add_option("--output,-o", g.output, "write the result to this path");

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "separability and measure report for a state file");
  analyze->add_option("input", ao.input, "state file")->required();
  analyze->add_option("--criteria", ao.criteria, "subset of ppt,reduction,majorisation,entropy,reshuffling")->delimiter(',');
  analyze->add_option("--entropy-orders", ao.entropy_orders, "Renyi orders, e.g. 0.5,1,2,inf")->delimiter(',');
  analyze->add_option("--measures", ao.measures, "restrict the measure report to these keys")->delimiter(',');

  GenerateOptions go;
  auto* generate = app.add_subcommand("generate", "write a state file for a named family");
  generate->add_option("family", go.family,
                       "bell, werner, sigma-h, sigma-b, rho-m, rho-xtheta, psi-theta, pseudo-pure, tiles, "
                       "max-entangled, random-pure, random-hs")
      ->required();
  generate->add_option("--n", go.n, "subsystem dimension N");
  generate->add_option("--x", go.x);
  generate->add_option("--a", go.a);
  generate->add_option("--b", go.b);
  generate->add_option("--y", go.y);
  generate->add_option("--theta", go.theta);
  generate->add_option("--eps", go.eps);
  generate->add_option("--kind", go.kind, "Bell state: phi+, phi-, psi+, psi-");
  generate->add_option("--dims", go.dims, "dims for random families, e.g. 2x3");
  generate->add_option("--seed", go.seed, "seed for random families");

  ConvertOptions co;
  auto* convert = app.add_subcommand("convert", "LOCC relation and conversion probability");
  convert->add_option("--from", co.from, "Schmidt vector (0.7,0.3) or pure state file")->required();
  convert->add_option("--to", co.to, "Schmidt vector or pure state file")->required();

  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "Monte Carlo averages and scatter data");
  sample->add_option("--measure", so.measure);
  sample->add_option("--scatter", so.scatter, "X:Y measure pair");
  sample->add_option("--dims", so.dims);
  sample->add_option("--ensemble", so.ensemble, "pure (Fubini-Study) or hs (Hilbert-Schmidt)");
  sample->add_option("--n", so.n)->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", so.seed, "overrides ENTANGLEKIT_SEED");
  sample->add_option("--workers", so.workers)->check(CLI::PositiveNumber);

  BoundsOptions bo;
  auto* bounds = app.add_subcommand("bounds", "bound curves between two-qubit measures");
  bounds->add_option("--pair", bo.pair,
                     "concurrence:negativity, concurrence:fidelity, negativity:fidelity, eof:relative_entropy")
      ->required();
  bounds->add_option("--grid", bo.grid);
  bounds->add_option("--bound", bo.bound, "lower or upper");

  GeometryOptions geo;
  auto* geometry = app.add_subcommand("geometry", "octant coordinates and figure data");
  geometry->add_flag("--segre-sweep", geo.segre_sweep, "ruling lines of the separable surface");
  geometry->add_flag("--cross-section", geo.cross_section, "gnomonic lattice with entanglement entropy");
  geometry->add_option("--input", geo.input, "pure two-qubit state file");
  geometry->add_option("--lines", geo.lines);
  geometry->add_option("--points", geo.points);
  geometry->add_option("--resolution", geo.resolution);
  geometry->add_option("--phases", geo.phases, "nu1,nu2,nu3 for --cross-section");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  g.format = format == "text" ? Format::Text : format == "csv" ? Format::Csv : Format::Json;

  try {
    if (*analyze) return cmd_analyze(ao, g, out);
    if (*generate) return cmd_generate(go, g, out);
    if (*convert) return cmd_convert(co, g, out);
    if (*sample) return cmd_sample(so, g, out);
    if (*bounds) return cmd_bounds(bo, g, out);
    if (*geometry) return cmd_geometry(geo, g, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}

}  // namespace entanglekit::cli
