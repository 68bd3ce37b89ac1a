#include <CLI11.hpp>
#include <iostream>

#include "knot/errors.hpp"
#include "knot/experiments.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::string curve = "circle";
  int n = 512;
  bool raw = false;  // skip arc-length normalization
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "key = value config file");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--curve", opts.curve,
                  "circle | ellipse | torus_knot(p,q) | lacunary(K,decay) | "
                  "samples(path)");
  cmd->add_option("--n", opts.n, "curve sample count (power of two, >= 16)");
  cmd->add_flag("--raw", opts.raw, "skip arc-length normalization");
}

knot::ExperimentConfig build_config(const CommonOpts& opts,
                                    const std::string& kind) {
  knot::ExperimentConfig cfg;
  if (!opts.config_path.empty())
    cfg = knot::ExperimentConfig::from_file(opts.config_path);
  // flags override the config file
  if (!cfg.has("curve.kind") || opts.curve != "circle")
    cfg.set("curve.kind", opts.curve);
  if (!cfg.has("curve.n") || opts.n != 512)
    cfg.set("curve.n", std::to_string(opts.n));
  if (opts.raw) cfg.set("curve.normalize", "false");
  cfg.set("exp.kind", kind);
  return cfg;
}

int run_kind(const CommonOpts& opts, const knot::ExperimentConfig& cfg) {
  try {
    auto files = knot::run(cfg, opts.out_dir);
    for (const auto& f : files) std::cout << f.string() << "\n";
    return 0;
  } catch (const knot::Error& e) {
    std::cerr << "error [" << knot::error_code_name(e.code()) << "]: "
              << e.what() << "\n";
    return e.is_validation() ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knot energies of closed curves: Moebius energy, its "
               "decomposition, discrete energies, Sobolev diagnostics"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* desc;
    CommonOpts opts;
    CLI::App* cmd = nullptr;
  };
  std::vector<Sub> subs = {
      {"energy", "Moebius energy of a curve", {}, nullptr},
      {"decompose", "energy decomposition E = E1 + E2 + 4", {}, nullptr},
      {"mollify-sweep", "speed deviation of mollified curves", {}, nullptr},
      {"reparam-converge", "arc-length reparametrization convergence", {}, nullptr},
      {"gamma-sweep", "discrete energies of inscribed polygons", {}, nullptr},
      {"invert", "sphere inversion identities", {}, nullptr},
      {"inscribe", "inscribed equilateral n-gon", {}, nullptr},
      {"sobolev", "Gagliardo seminorms and VMO moduli", {}, nullptr},
  };

  // the handful of experiment-specific knobs; everything else via --config
  std::string eps_list, m_list, center;
  double radius = 1.0, rdom = 48.0, t0 = 0.0, x0 = 0.0;
  int ngon = 4, quad_n = 0;
  bool with_energies = false, mollify_first = false;

  for (auto& s : subs) {
    s.cmd = app.add_subcommand(s.name, s.desc);
    add_common(s.cmd, s.opts);
    std::string name = s.name;
    if (name == "mollify-sweep" || name == "reparam-converge") {
      s.cmd->add_option("--eps", eps_list, "comma-separated epsilon list");
      if (name == "mollify-sweep")
        s.cmd->add_flag("--with-energies", with_energies,
                        "append e_mobius,e1,e2 columns");
    }
    if (name == "gamma-sweep") {
      s.cmd->add_option("--m", m_list, "comma-separated vertex counts");
      s.cmd->add_flag("--mollify-first", mollify_first,
                      "inscribe in the mollified curve gamma_{1/m}");
    }
    if (name == "invert") {
      s.cmd->add_option("--center", center,
                        "'on-curve' or space-separated coordinates");
      s.cmd->add_option("--radius", radius, "inversion radius");
      s.cmd->add_option("--rdom", rdom, "open-curve arc-length half-window");
      s.cmd->add_option("--t0", t0, "on-curve center parameter");
    }
    if (name == "inscribe") {
      s.cmd->add_option("--n-gon", ngon, "number of vertices");
      s.cmd->add_option("--x0", x0, "starting parameter");
    }
    if (name == "energy" || name == "decompose" || name == "gamma-sweep" ||
        name == "invert")
      s.cmd->add_option("--quad", quad_n, "quadrature grid (both axes)");
  }

  CLI11_PARSE(app, argc, argv);

  for (auto& s : subs) {
    if (!s.cmd->parsed()) continue;
    knot::ExperimentConfig cfg = build_config(s.opts, s.name);
    if (!eps_list.empty()) cfg.set("eps.list", eps_list);
    if (!m_list.empty()) cfg.set("m.list", m_list);
    if (with_energies) cfg.set("mollify.with_energies", "true");
    if (mollify_first) cfg.set("gamma.mollify_first", "true");
    if (!center.empty()) cfg.set("invert.center", center);
    if (s.cmd->count("--radius")) cfg.set("invert.radius", std::to_string(radius));
    if (s.cmd->count("--rdom")) cfg.set("invert.rdom", std::to_string(rdom));
    if (s.cmd->count("--t0")) cfg.set("invert.t0", std::to_string(t0));
    if (s.cmd->count("--n-gon")) cfg.set("inscribe.n", std::to_string(ngon));
    if (s.cmd->count("--x0")) cfg.set("inscribe.x0", std::to_string(x0));
    if (quad_n > 0) {
      cfg.set("quad.nx", std::to_string(quad_n));
      cfg.set("quad.nw", std::to_string(quad_n));
    }
    return run_kind(s.opts, cfg);
  }
  return 2;
}
