#include "knot/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "knot/errors.hpp"
#include "knot/inscribe.hpp"
#include "knot/inversion.hpp"
#include "knot/polygon.hpp"
#include "knot/sobolev.hpp"

namespace knot {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header,
            const std::string& config_hash)
      : out_(path) {
    if (!out_)
      throw Error(ErrorCode::BadConfig, "cannot open " + path.string());
    out_ << "# knotenergy v" << kToolVersion << " config=" << config_hash
         << "\n";
    auto now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    out_ << "# timestamp: " << now << "\n";
    out_ << header << "\n";
  }

  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i)
      out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

}  // namespace

ExperimentConfig ExperimentConfig::from_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::BadConfig, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::BadConfig,
                  "config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw Error(ErrorCode::BadConfig,
                  "config line " + std::to_string(lineno) + ": empty key");
    cfg.set(key, value);
  }
  return cfg;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

bool ExperimentConfig::has(const std::string& key) const {
  return values_.count(key) > 0;
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& def) const {
  auto it = values_.find(key);
  std::string v = (it == values_.end()) ? def : it->second;
  resolved_[key] = v;
  return v;
}

double ExperimentConfig::get_double(const std::string& key, double def) const {
  std::string v = get_string(key, fmt(def));
  try {
    size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadConfig, "field '" + key + "': bad number '" + v + "'");
  }
}

int ExperimentConfig::get_int(const std::string& key, int def) const {
  std::string v = get_string(key, std::to_string(def));
  try {
    size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadConfig, "field '" + key + "': bad integer '" + v + "'");
  }
}

bool ExperimentConfig::get_bool(const std::string& key, bool def) const {
  std::string v = get_string(key, def ? "true" : "false");
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorCode::BadConfig, "field '" + key + "': bad boolean '" + v + "'");
}

std::vector<double> ExperimentConfig::get_double_list(
    const std::string& key, const std::string& def) const {
  std::string v = get_string(key, def);
  std::vector<double> out;
  for (const std::string& item : split(v, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadConfig, "field '" + key + "': bad number '" + item + "'");
    }
  }
  return out;
}

std::vector<int> ExperimentConfig::get_int_list(const std::string& key,
                                                const std::string& def) const {
  std::vector<int> out;
  for (double v : get_double_list(key, def)) out.push_back(int(v));
  return out;
}

std::string ExperimentConfig::resolved_text() const {
  std::string out;
  for (const auto& [k, v] : resolved_) out += k + " = " + v + "\n";
  return out;
}

std::string ExperimentConfig::hash() const {
  // FNV-1a over the canonical resolved text
  uint64_t h = 1469598103934665603ull;
  for (char c : resolved_text()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// "torus_knot(2,3)" -> name "torus_knot", args {"2","3"}
void parse_kind(const std::string& spec, std::string& name,
                std::vector<std::string>& args) {
  size_t open = spec.find('(');
  if (open == std::string::npos) {
    name = trim(spec);
    return;
  }
  size_t close = spec.rfind(')');
  if (close == std::string::npos || close < open)
    throw Error(ErrorCode::BadCurveSpec, "unbalanced parentheses in '" + spec + "'");
  name = trim(spec.substr(0, open));
  args = split(spec.substr(open + 1, close - open - 1), ',');
}

}  // namespace

ClosedCurve make_curve(const ExperimentConfig& cfg) {
  std::string spec = cfg.get_string("curve.kind", "circle");
  const int N = cfg.get_int("curve.n", 512);
  const bool normalize = cfg.get_bool("curve.normalize", true);
  std::string name;
  std::vector<std::string> args;
  parse_kind(spec, name, args);
  auto build = [&]() -> ClosedCurve {
    if (name == "circle") {
      double radius = cfg.get_double("curve.radius", 1.0 / (2.0 * M_PI));
      return ClosedCurve::circle(N, radius);
    }
    if (name == "ellipse") {
      double a = cfg.get_double("curve.a", 1.0 / M_PI);
      double b = cfg.get_double("curve.b", 1.0 / (2.0 * M_PI));
      return ClosedCurve::ellipse(N, a, b);
    }
    if (name == "torus_knot") {
      int p = args.size() > 0 ? std::stoi(args[0]) : cfg.get_int("curve.p", 2);
      int q = args.size() > 1 ? std::stoi(args[1]) : cfg.get_int("curve.q", 3);
      return ClosedCurve::torus_knot(N, p, q);
    }
    if (name == "lacunary") {
      int K = args.size() > 0 ? std::stoi(args[0]) : cfg.get_int("curve.K", 4);
      double decay =
          args.size() > 1 ? std::stod(args[1]) : cfg.get_double("curve.decay", 0.4);
      return ClosedCurve::lacunary(N, K, decay);
    }
    if (name == "samples") {
      std::string path =
          args.size() > 0 ? args[0] : cfg.get_string("curve.path", "");
      if (path.empty())
        throw Error(ErrorCode::BadCurveSpec, "samples(...) needs a file path");
      return load_curve_samples(path);
    }
    throw Error(ErrorCode::BadCurveSpec, "unknown curve kind '" + name + "'");
  };
  ClosedCurve c = build();
  if (normalize) return reparametrize_by_arclength(c);
  return c;
}

ClosedCurve load_curve_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::BadCurveSpec, "cannot read sample file " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> cells = split(t, ',');
    std::vector<double> row;
    bool numeric = true;
    for (const std::string& c : cells) {
      try {
        row.push_back(std::stod(c));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) continue;  // header row
    rows.push_back(row);
  }
  if (rows.empty())
    throw Error(ErrorCode::BadCurveSpec, "no sample rows in " + path.string());
  const size_t cols = rows[0].size();
  if (cols < 3)
    throw Error(ErrorCode::BadCurveSpec, "sample rows need t and >= 2 coordinates");
  const int N = static_cast<int>(rows.size());
  Eigen::MatrixXd samples(N, cols - 1);
  for (int j = 0; j < N; ++j) {
    if (rows[j].size() != cols)
      throw Error(ErrorCode::BadCurveSpec, "ragged sample row " + std::to_string(j));
    if (std::fabs(rows[j][0] - double(j) / N) > 1e-9)
      throw Error(ErrorCode::BadCurveSpec,
                  "sample parameters must be t_j = j/N in order");
    for (size_t c = 1; c < cols; ++c) samples(j, c - 1) = rows[j][c];
  }
  return ClosedCurve::from_samples(std::move(samples), path.string());
}

void save_curve_samples(const ClosedCurve& curve,
                        const std::filesystem::path& path,
                        const std::string& provenance) {
  CsvWriter csv(path, [&] {
    std::string h = "t";
    for (int c = 1; c <= curve.dimension(); ++c)
      h += ",x" + std::to_string(c);
    return h;
  }(), provenance);
  for (int j = 0; j < curve.sample_count(); ++j) {
    std::vector<std::string> cells{fmt(double(j) / curve.sample_count())};
    for (int c = 0; c < curve.dimension(); ++c)
      cells.push_back(fmt(curve.samples()(j, c)));
    csv.row(cells);
  }
}

std::vector<ReparamConvergeRow> reparam_converge(
    const ClosedCurve& curve, const std::vector<double>& eps_list, int grid) {
  PeriodicFunction gp = PeriodicFunction::derivative_of(curve);
  std::vector<ReparamConvergeRow> rows;
  for (double eps : eps_list) {
    ClosedCurve tilde = reparametrize_by_arclength(mollify(curve, eps));
    ReparamConvergeRow row;
    row.epsilon = eps;
    Eigen::MatrixXd diff = tilde.samples() - curve.interpolant().resample(
                                                 tilde.sample_count(), 0);
    row.sup_distance = diff.rowwise().norm().maxCoeff();
    row.w12_derivative_distance =
        w12_distance(PeriodicFunction::derivative_of(tilde), gp, grid);
    rows.push_back(row);
  }
  return rows;
}

std::vector<MollifySweepRow> mollify_sweep(const ClosedCurve& curve,
                                           const std::vector<double>& eps_list,
                                           bool with_energies,
                                           const QuadratureSpec& spec) {
  std::vector<MollifySweepRow> rows;
  for (double eps : eps_list) {
    ClosedCurve ce = mollify(curve, eps);
    Eigen::VectorXd v = ce.speeds(4 * ce.sample_count());
    MollifySweepRow row;
    row.epsilon = eps;
    row.speed_min = v.minCoeff();
    row.speed_max = v.maxCoeff();
    row.speed_deviation = (v.array() - 1.0).abs().maxCoeff();
    if (with_energies) {
      EnergyReport rep = decompose(ce, spec);
      row.e_mobius = rep.e_mobius;
      row.e1 = rep.e1;
      row.e2 = rep.e2;
      row.has_energies = true;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

QuadratureSpec quad_from_config(const ExperimentConfig& cfg) {
  QuadratureSpec spec;
  spec.nx = cfg.get_int("quad.nx", 512);
  spec.nw = cfg.get_int("quad.nw", 512);
  std::string policy = cfg.get_string("quad.policy", "analytic-limit");
  if (policy == "analytic-limit")
    spec.policy = DiagonalPolicy::AnalyticLimit;
  else if (policy == "exclude-band")
    spec.policy = DiagonalPolicy::ExcludeBand;
  else
    throw Error(ErrorCode::BadConfig, "field 'quad.policy': unknown policy '" + policy + "'");
  spec.band_cells = cfg.get_int("quad.band", 1);
  spec.tolerance = cfg.get_double("quad.tolerance", 1e-3);
  return spec;
}

void write_resolved(const ExperimentConfig& cfg,
                    const std::filesystem::path& out,
                    std::vector<std::filesystem::path>& files) {
  std::ofstream f(out);
  f << cfg.resolved_text();
  files.push_back(out);
}

}  // namespace

std::vector<std::filesystem::path> run(const ExperimentConfig& cfg,
                                       const std::filesystem::path& out_dir) {
  std::string kind = cfg.get_string("exp.kind", "");
  if (kind.empty())
    throw Error(ErrorCode::BadConfig, "field 'exp.kind' is required");
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> files;

  if (kind == "energy" || kind == "decompose") {
    ClosedCurve curve = make_curve(cfg);
    QuadratureSpec spec = quad_from_config(cfg);
    EnergyReport rep = decompose(curve, spec);
    auto path = out_dir / (kind + ".csv");
    CsvWriter csv(path,
                  "curve_id,N_x,N_w,e_mobius,e1,e2,residual,tail_estimate",
                  cfg.hash());
    double tail = std::max(
        {rep.remainder_mobius, rep.remainder_e1, rep.remainder_e2});
    csv.row({curve.source(), std::to_string(spec.nx), std::to_string(spec.nw),
             fmt(rep.e_mobius), fmt(rep.e1), fmt(rep.e2), fmt(rep.residual),
             fmt(tail)});
    files.push_back(path);
  } else if (kind == "mollify-sweep") {
    ClosedCurve curve = make_curve(cfg);
    auto eps = cfg.get_double_list("eps.list", "0.2,0.1,0.05,0.025");
    bool with_energies = cfg.get_bool("mollify.with_energies", false);
    QuadratureSpec spec = quad_from_config(cfg);
    auto rows = mollify_sweep(curve, eps, with_energies, spec);
    auto path = out_dir / "mollify_sweep.csv";
    std::string header = "epsilon,speed_min,speed_max,speed_deviation";
    if (with_energies) header += ",e_mobius,e1,e2";
    CsvWriter csv(path, header, cfg.hash());
    for (const auto& r : rows) {
      std::vector<std::string> cells{fmt(r.epsilon), fmt(r.speed_min),
                                     fmt(r.speed_max), fmt(r.speed_deviation)};
      if (with_energies) {
        cells.push_back(fmt(r.e_mobius));
        cells.push_back(fmt(r.e1));
        cells.push_back(fmt(r.e2));
      }
      csv.row(cells);
    }
    files.push_back(path);
  } else if (kind == "reparam-converge") {
    ClosedCurve curve = make_curve(cfg);
    auto eps = cfg.get_double_list("eps.list", "0.2,0.1,0.05,0.025");
    int grid = cfg.get_int("sobolev.grid", curve.sample_count());
    auto rows = reparam_converge(curve, eps, grid);
    auto path = out_dir / "reparam_converge.csv";
    CsvWriter csv(path, "epsilon,sup_distance,w12_derivative_distance",
                  cfg.hash());
    for (const auto& r : rows)
      csv.row({fmt(r.epsilon), fmt(r.sup_distance),
               fmt(r.w12_derivative_distance)});
    files.push_back(path);
  } else if (kind == "gamma-sweep") {
    ClosedCurve curve = make_curve(cfg);
    auto m_list = cfg.get_int_list("m.list", "8,16,32,64,128,256");
    bool mollify_first = cfg.get_bool("gamma.mollify_first", false);
    QuadratureSpec spec = quad_from_config(cfg);
    auto rows = gamma_sweep(curve, m_list, spec, mollify_first);
    auto path = out_dir / "gamma_sweep.csv";
    CsvWriter csv(path, "m,E_m,E_mobius,gap", cfg.hash());
    for (const auto& r : rows)
      csv.row({std::to_string(r.m), fmt(r.discrete), fmt(r.e_mobius),
               fmt(r.gap)});
    files.push_back(path);
  } else if (kind == "invert") {
    ClosedCurve curve = make_curve(cfg);
    QuadratureSpec spec = quad_from_config(cfg);
    std::string center = cfg.get_string("invert.center", "on-curve");
    double radius = cfg.get_double("invert.radius", 1.0);
    auto idpath = out_dir / "invert_identity.csv";
    CsvWriter idcsv(idpath,
                    "quantity,value_original,value_image,difference",
                    cfg.hash());
    const double two_pi_sq = 2.0 * M_PI * M_PI;
    EnergyReport base = decompose(curve, spec);
    if (center == "on-curve") {
      double t0 = cfg.get_double("invert.t0", 0.0);
      double rdom = cfg.get_double("invert.rdom", 48.0);
      int samples = cfg.get_int("invert.samples", 4096);
      OpenCurve open = invert_centered_on_curve(curve, t0, radius, rdom, samples);
      OpenEnergyResult oe1 = e1_open(open), oe2 = e2_open(open),
                       oem = mobius_energy_open(open);
      idcsv.row({"e1_shift", fmt(base.e1 - two_pi_sq), fmt(oe1.value),
                 fmt(oe1.value - (base.e1 - two_pi_sq))});
      idcsv.row({"e2_shift", fmt(base.e2 + two_pi_sq), fmt(oe2.value),
                 fmt(oe2.value - (base.e2 + two_pi_sq))});
      idcsv.row({"e_mobius_shift", fmt(base.e_mobius - 4.0), fmt(oem.value),
                 fmt(oem.value - (base.e_mobius - 4.0))});
      idcsv.row({"tail_estimate_e1", fmt(0.0), fmt(oe1.tail_estimate),
                 fmt(oe1.tail_estimate)});
      auto spath = out_dir / "inverted_open.csv";
      CsvWriter scsv(spath, [&] {
        std::string h = "s";
        for (int c = 1; c <= open.dimension(); ++c) h += ",x" + std::to_string(c);
        return h;
      }(), cfg.hash());
      for (int i = 0; i < open.sample_count(); ++i) {
        std::vector<std::string> cells{fmt(open.arc_position(i))};
        for (int c = 0; c < open.dimension(); ++c)
          cells.push_back(fmt(open.samples()(i, c)));
        scsv.row(cells);
      }
      files.push_back(spath);
    } else {
      Eigen::VectorXd c(curve.dimension());
      std::vector<std::string> parts = split(center, ' ');
      if (int(parts.size()) != curve.dimension())
        throw Error(ErrorCode::BadConfig,
                    "field 'invert.center': expected 'on-curve' or " +
                        std::to_string(curve.dimension()) +
                        " space-separated coordinates");
      for (int i = 0; i < curve.dimension(); ++i) c(i) = std::stod(parts[i]);
      SphereInversion inv(c, radius);
      ClosedCurve image = reparametrize_by_arclength(invert_closed(curve, inv));
      EnergyReport img = decompose(image, spec);
      idcsv.row({"e_mobius", fmt(base.e_mobius), fmt(img.e_mobius),
                 fmt(img.e_mobius - base.e_mobius)});
      idcsv.row({"e1", fmt(base.e1), fmt(img.e1), fmt(img.e1 - base.e1)});
      idcsv.row({"e2", fmt(base.e2), fmt(img.e2), fmt(img.e2 - base.e2)});
      idcsv.row({"e1_plus_e2", fmt(base.e1 + base.e2), fmt(img.e1 + img.e2),
                 fmt((img.e1 + img.e2) - (base.e1 + base.e2))});
      auto spath = out_dir / "inverted_curve.csv";
      save_curve_samples(image, spath, cfg.hash());
      files.push_back(spath);
    }
    files.push_back(idpath);
  } else if (kind == "inscribe") {
    ClosedCurve curve = make_curve(cfg);
    int n = cfg.get_int("inscribe.n", 4);
    double x0 = cfg.get_double("inscribe.x0", 0.0);
    InscribedResult res = inscribed_ngon(curve, x0, n);
    auto ppath = out_dir / "inscribed_polygon.csv";
    CsvWriter pcsv(ppath, [&] {
      std::string h = "a";
      for (int c = 1; c <= curve.dimension(); ++c) h += ",x" + std::to_string(c);
      return h;
    }(), cfg.hash());
    for (size_t i = 0; i < res.params.size(); ++i) {
      std::vector<std::string> cells{fmt(wrap1(res.params[i]))};
      for (int c = 0; c < curve.dimension(); ++c)
        cells.push_back(fmt(res.points(int(i), c)));
      pcsv.row(cells);
    }
    auto dpath = out_dir / "inscribe_diagnostics.csv";
    CsvWriter dcsv(dpath, "side,closing_residual,iterations,distortion",
                   cfg.hash());
    double distortion = (n >= 3) ? gromov_distortion(res.polygon()) : 1.0;
    dcsv.row({fmt(res.side), fmt(res.closing_residual),
              std::to_string(res.iterations), fmt(distortion)});
    files.push_back(ppath);
    files.push_back(dpath);
  } else if (kind == "sobolev") {
    ClosedCurve curve = make_curve(cfg);
    PeriodicFunction f = PeriodicFunction::derivative_of(curve);
    double s = cfg.get_double("sobolev.s", 0.5);
    double p = cfg.get_double("sobolev.p", 2.0);
    int grid = cfg.get_int("sobolev.grid", 1024);
    auto r_list = cfg.get_double_list("sobolev.r_list",
                                      "0.03125,0.0625,0.125,0.25,0.5");
    auto path = out_dir / "sobolev.csv";
    CsvWriter csv(path, "quantity,s,p,r,grid,value,remainder_estimate",
                  cfg.hash());
    SeminormResult g = gagliardo_seminorm(f, s, p, grid);
    csv.row({"gagliardo", fmt(s), fmt(p), "", std::to_string(grid),
             fmt(g.value), fmt(g.remainder_power_p)});
    for (double r : r_list) {
      double v = vmo_modulus(f, r);
      csv.row({"vmo", "", "", fmt(r), std::to_string(grid), fmt(v), "0"});
      SeminormResult tail = gagliardo_tail(f, 0.5, 2.0, grid,
                                           std::min(0.5, 2.0 * r));
      csv.row({"gagliardo_tail", "0.5", "2", fmt(r), std::to_string(grid),
               fmt(tail.value), fmt(tail.remainder_power_p)});
    }
    files.push_back(path);
  } else {
    throw Error(ErrorCode::BadConfig, "field 'exp.kind': unknown experiment '" + kind + "'");
  }

  write_resolved(cfg, out_dir / "config_resolved.txt", files);
  return files;
}

}  // namespace knot
