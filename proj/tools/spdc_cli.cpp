// spdc: command-line front end for the down-conversion wavepacket
// simulator.  Subcommands cover refractive indices, phase matching,
// spectra, correlation functions, interferograms, tuning curves,
// post-selection windows, counting simulation, and the full validation
// pipeline.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "spdc/acceptance.hpp"
#include "spdc/constants.hpp"
#include "spdc/correlation.hpp"
#include "spdc/crystal.hpp"
#include "spdc/errors.hpp"
#include "spdc/interferometry.hpp"
#include "spdc/io.hpp"
#include "spdc/montecarlo.hpp"
#include "spdc/sellmeier.hpp"
#include "spdc/spectral.hpp"
#include "spdc/tuning.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spdc;

namespace {

// ---------------------------------------------------------------------------
// configuration

// The "paper" preset: 2 mm crystal, 351.1 nm pump, degenerate collection at
// 702.2 nm through +/-3 deg apertures (3 mm at 2.8 m) behind 80 nm-wide
// interference filters, 3 ns coincidence window with the accidental window
// 10 ns away.
json preset_paper() {
  return json{
      {"pump_nm", 351.1},
      {"degenerate_nm", 702.2},
      {"length_um", 2000.0},
      {"pm_type", "II"},
      {"data_dir", ""},
      {"grid", {{"span_zeros", 0.0}, {"n_half", 8192}}},
      {"tau", {{"range_fs", 0.0}, {"step_fs", 0.0}}},
      {"filters",
       {{"signal",
         {{"center_nm", 702.2}, {"fwhm_nm", 80.0}, {"shape", "rectangular"}}},
        {"idler",
         {{"center_nm", 702.2}, {"fwhm_nm", 80.0}, {"shape", "rectangular"}}}}},
      {"apertures",
       {{"signal",
         {{"center_deg", 3.0}, {"distance_mm", 2800.0}, {"diameter_mm", 3.0}}},
        {"idler",
         {{"center_deg", -3.0}, {"distance_mm", 2800.0}, {"diameter_mm", 3.0}}}}},
      {"tuning",
       {{"lambda_min_nm", 620.0}, {"lambda_max_nm", 820.0}, {"points", 801},
        {"target_external_deg", 3.0}}},
      {"mca",
       {{"pair_rate_hz", 5e6},
        {"singles_excess_rate_hz", 5e6},
        {"duration_s", 2e-3},
        {"window_ns", 3.0},
        {"accidental_offset_ns", 10.0},
        {"jitter_sigma_ns", 0.3},
        {"true_visibility", 0.86}}}};
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::string format = "csv";
  std::string preset = "paper";
  std::uint64_t seed = 20260826;
};

json load_config(const CommonOpts& opts) {
  if (opts.preset != "paper") {
    throw config_error("unknown preset '" + opts.preset +
                       "' (field: --preset; available: paper)");
  }
  json cfg = preset_paper();
  if (!opts.config_path.empty()) {
    json user;
    try {
      user = json::parse(io::read_file(opts.config_path));
    } catch (const json::parse_error& e) {
      throw config_error("config file " + opts.config_path +
                         " is not valid JSON: " + e.what());
    }
    cfg.merge_patch(user);
  }
  return cfg;
}

FilterShape parse_shape(const std::string& s) {
  if (s == "gaussian") return FilterShape::gaussian;
  if (s == "rectangular") return FilterShape::rectangular;
  throw config_error("unknown filter shape '" + s +
                     "' (field: filters.*.shape; gaussian|rectangular|none)");
}

bool filter_enabled(const json& f) {
  return f.at("shape").get<std::string>() != "none" &&
         f.at("fwhm_nm").get<double>() > 0.0;
}

FilterSpec parse_filter(const json& f) {
  return FilterSpec{f.at("center_nm").get<double>(),
                    f.at("fwhm_nm").get<double>(),
                    parse_shape(f.at("shape").get<std::string>())};
}

ApertureGeometry parse_aperture(const json& a) {
  ApertureGeometry ap{a.at("center_deg").get<double>(),
                      a.at("distance_mm").get<double>(),
                      a.at("diameter_mm").get<double>()};
  ap.validate();
  return ap;
}

PmType parse_pm_type(const std::string& s) {
  if (s == "I" || s == "i" || s == "1") return PmType::type1;
  if (s == "II" || s == "ii" || s == "2") return PmType::type2;
  throw config_error("unknown phase-matching type '" + s +
                     "' (field: pm_type; I|II)");
}

CrystalConfig make_crystal(const json& cfg) {
  const std::string dir = cfg.at("data_dir").get<std::string>();
  return bbo_crystal(cfg.at("length_um").get<double>(),
                     dir.empty() ? default_data_dir() : dir);
}

struct Model {
  CrystalConfig crystal;
  PmType pm_type;
  double pump_nm, degenerate_nm;
  double theta_pm_deg;
  double D = 0.0, Dpp = 0.0;  // fs/um, fs^2/um
  SpectralAmplitude T;        // filters already applied if configured
};

Model make_model(const json& cfg, const std::string& pm_override) {
  Model m{make_crystal(cfg),
          parse_pm_type(pm_override.empty()
                            ? cfg.at("pm_type").get<std::string>()
                            : pm_override),
          cfg.at("pump_nm").get<double>(),
          cfg.at("degenerate_nm").get<double>(),
          0.0};
  m.theta_pm_deg = solve_collinear_pm_angle(m.pump_nm, m.degenerate_nm,
                                            m.pm_type, m.crystal);
  const double omega0 = omega_from_nm(m.degenerate_nm);
  const double span = cfg.at("grid").at("span_zeros").get<double>();
  const auto n_half = cfg.at("grid").at("n_half").get<std::size_t>();
  if (m.pm_type == PmType::type2) {
    m.D = group_delay_mismatch(m.crystal, m.degenerate_nm, m.theta_pm_deg)
              .D_fs_per_um;
    const DetuningGrid grid = default_grid_type2(
        m.D, m.crystal.length_um, span > 0.0 ? span : 16.0, n_half);
    m.T = build_type2(m.D, m.crystal.length_um, grid, omega0);
  } else {
    m.Dpp = gvd(m.crystal, m.degenerate_nm, Polarization::ordinary, 0.0)
                .Dpp_fs2_per_um;
    const DetuningGrid grid = default_grid_type1(
        m.Dpp, m.crystal.length_um, span > 0.0 ? span : 8.0, n_half);
    m.T = build_type1(m.Dpp, m.crystal.length_um, grid, omega0);
  }
  const json& fs_ = cfg.at("filters").at("signal");
  const json& fi_ = cfg.at("filters").at("idler");
  if (filter_enabled(fs_) || filter_enabled(fi_)) {
    const FilterSpec none{m.degenerate_nm, 1e9, FilterShape::rectangular};
    m.T = apply_filters(m.T, filter_enabled(fs_) ? parse_filter(fs_) : none,
                        filter_enabled(fi_) ? parse_filter(fi_) : none);
  }
  return m;
}

// Delay grid: explicit config wins, otherwise scale with the coherence
// structure of the amplitude (carrier-resolving step for interferograms).
std::vector<double> tau_grid(const json& cfg, const Model& m, double range_mult,
                             bool resolve_carrier) {
  double range = cfg.at("tau").at("range_fs").get<double>();
  double step = cfg.at("tau").at("step_fs").get<double>();
  if (range <= 0.0) {
    double scale;
    if (m.pm_type == PmType::type2) {
      scale = m.D * m.crystal.length_um;  // triangle base
    } else {
      scale = 30.0;  // unfiltered parallel-pair coherence scale
    }
    const json& f = cfg.at("filters").at("signal");
    if (filter_enabled(f) && f.at("fwhm_nm").get<double>() < 40.0) {
      scale = std::max(scale, 3.0 * filter_coherence_time(
                                        m.degenerate_nm,
                                        f.at("fwhm_nm").get<double>()));
    }
    range = range_mult * scale;
  }
  if (step <= 0.0) {
    step = range / 2000.0;
  }
  if (resolve_carrier) {
    const double carrier_step =
        0.09 * kTwoPi / omega_from_nm(m.degenerate_nm);
    step = std::min(step, carrier_step);
  }
  const auto n = static_cast<std::size_t>(2.0 * range / step) + 1;
  std::vector<double> taus(n);
  for (std::size_t j = 0; j < n; ++j) {
    taus[j] = -range + step * static_cast<double>(j);
  }
  return taus;
}

std::string artifact_path(const CommonOpts& opts, const std::string& stem) {
  fs::create_directories(opts.out_dir);
  const std::string ext = opts.format == "json"  ? ".json"
                          : opts.format == "svg" ? ".svg"
                                                 : ".csv";
  return (fs::path(opts.out_dir) / (stem + ext)).string();
}

void write_meta(const CommonOpts& opts, const std::string& stem, json meta) {
  meta["schema_version"] = io::kSchemaVersion;
  io::write_text((fs::path(opts.out_dir) / (stem + ".meta.json")).string(),
                 meta.dump(2) + "\n");
}

void emit_xy(const CommonOpts& opts, const std::string& stem,
             const std::vector<double>& x, const std::vector<double>& y,
             const std::string& x_label, const std::string& y_label,
             const std::string& csv_header_cols) {
  const std::string path = artifact_path(opts, stem);
  if (opts.format == "json") {
    json j{{"schema_version", io::kSchemaVersion},
           {x_label, x},
           {y_label, y}};
    io::write_text(path, j.dump(2) + "\n");
  } else if (opts.format == "svg") {
    io::write_svg(path, x, y, stem, x_label, y_label);
  } else {
    std::ostringstream os;
    os << "# schema_version=" << io::kSchemaVersion << "\n"
       << csv_header_cols << "\n";
    os.precision(12);
    for (std::size_t j = 0; j < x.size(); ++j) {
      os << x[j] << ',' << y[j] << "\n";
    }
    io::write_text(path, os.str());
  }
  std::cout << "wrote " << path << "\n";
}

// ---------------------------------------------------------------------------
// subcommand bodies

int cmd_indices(const CommonOpts& opts, double lambda_nm, double theta_deg) {
  const json cfg = load_config(opts);
  const CrystalConfig c = make_crystal(cfg);
  json out{{"schema_version", io::kSchemaVersion},
           {"lambda_nm", lambda_nm},
           {"theta_deg", theta_deg},
           {"n_ordinary", index_ordinary(lambda_nm, c.sellmeier_o)},
           {"n_extraordinary",
            index_extraordinary(lambda_nm, theta_deg, c.sellmeier_o,
                                c.sellmeier_e)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_pm_angle(const CommonOpts& opts, const std::string& pm) {
  const json cfg = load_config(opts);
  const Model m = make_model(cfg, pm);
  json out{{"schema_version", io::kSchemaVersion},
           {"pm_type", m.pm_type == PmType::type2 ? "II" : "I"},
           {"pump_nm", m.pump_nm},
           {"degenerate_nm", m.degenerate_nm},
           {"theta_pm_deg", m.theta_pm_deg}};
  if (m.pm_type == PmType::type2) {
    out["D_fs_per_um"] = m.D;
    out["half_delay_fs"] = 0.5 * m.D * m.crystal.length_um;
  } else {
    out["Dpp_fs2_per_um"] = m.Dpp;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_spectrum(const CommonOpts& opts, const std::string& pm) {
  const json cfg = load_config(opts);
  const Model m = make_model(cfg, pm);
  const std::string path = artifact_path(opts, "spectrum");
  if (opts.format == "svg") {
    std::vector<double> mag(m.T.grid.size());
    for (std::size_t k = 0; k < mag.size(); ++k) {
      mag[k] = std::abs(m.T.values[k]);
    }
    io::write_svg(path, m.T.grid.nu, mag, "spectral amplitude",
                  "nu_rad_per_fs", "abs");
  } else if (opts.format == "json") {
    json j{{"schema_version", io::kSchemaVersion},
           {"nu_rad_per_fs", m.T.grid.nu}};
    std::vector<double> re(m.T.grid.size()), im(m.T.grid.size());
    for (std::size_t k = 0; k < re.size(); ++k) {
      re[k] = m.T.values[k].real();
      im[k] = m.T.values[k].imag();
    }
    j["re"] = re;
    j["im"] = im;
    io::write_text(path, j.dump(2) + "\n");
  } else {
    io::write_spectrum_csv(path, m.T);
  }
  write_meta(opts, "spectrum",
             {{"pm_type", m.pm_type == PmType::type2 ? "II" : "I"},
              {"theta_pm_deg", m.theta_pm_deg},
              {"center_omega_rad_per_fs", m.T.center_omega}});
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_trace(const CommonOpts& opts, const std::string& pm, bool second_order) {
  const json cfg = load_config(opts);
  const Model m = make_model(cfg, pm);
  const auto taus = tau_grid(cfg, m, second_order ? 1.1 : 1.1, false);
  const CorrelationTrace tr = second_order ? g2(m.T, taus) : g1_envelope(m.T, taus);
  const std::string stem = second_order ? "g2" : "g1";
  emit_xy(opts, stem, tr.tau_fs, tr.values, "tau_fs", "value", "tau_fs,value");
  json meta{{"kind", stem}};
  try {
    const FwhmResult w = fwhm(tr);
    meta["fwhm_fs"] = w.width_fs;
    meta["multimodal"] = w.multimodal;
  } catch (const numeric_error&) {
    meta["fwhm_fs"] = nullptr;
  }
  write_meta(opts, stem, meta);
  return 0;
}

int cmd_michelson(const CommonOpts& opts, const std::string& pm) {
  const json cfg = load_config(opts);
  const Model m = make_model(cfg, pm);
  const auto taus = tau_grid(cfg, m, 1.2, true);
  const InterferencePattern p = michelson(m.T, taus);
  if (opts.format == "csv") {
    const std::string path = artifact_path(opts, "michelson");
    io::write_pattern_csv(path, p);
    std::cout << "wrote " << path << "\n";
  } else {
    emit_xy(opts, "michelson", p.tau_fs, p.rate, "tau_fs", "rate",
            "tau_fs,rate");
  }
  CorrelationTrace env;
  env.tau_fs = p.tau_fs;
  env.values = p.envelope;
  write_meta(opts, "michelson",
             {{"carrier_omega_rad_per_fs", p.carrier_omega},
              {"envelope_fwhm_fs", fwhm(env).width_fs}});
  return 0;
}

int cmd_hom(const CommonOpts& opts, const std::string& pm, double theta1,
            double theta2, bool peak) {
  const json cfg = load_config(opts);
  const Model m = make_model(cfg, pm);
  const auto taus = tau_grid(cfg, m, 0.65, false);
  InterferencePattern p;
  const bool general = theta1 != 0.0 || theta2 != 0.0;
  if (general) {
    p = hom_general(magnitude_only(m.T), taus, theta1, theta2);
  } else {
    p = hom_closed(m.T, taus, peak ? HomSign::plus : HomSign::minus);
  }
  if (opts.format == "csv") {
    const std::string path = artifact_path(opts, "hom");
    io::write_pattern_csv(path, p);
    std::cout << "wrote " << path << "\n";
  } else {
    emit_xy(opts, "hom", p.tau_fs, p.rate, "tau_fs", "rate", "tau_fs,rate");
  }
  CorrelationTrace env;
  env.tau_fs = p.tau_fs;
  env.values = p.envelope;
  json meta{{"mode", general ? "general" : (peak ? "peak" : "dip")},
            {"analyzer_theta1_deg", p.analyzer_theta1_deg},
            {"analyzer_theta2_deg", p.analyzer_theta2_deg}};
  try {
    meta["envelope_fwhm_fs"] = fwhm(env).width_fs;
  } catch (const numeric_error&) {
    meta["envelope_fwhm_fs"] = nullptr;
  }
  write_meta(opts, "hom", meta);
  return 0;
}

struct GeometryOut {
  double pump_angle_deg;
  TuningCurve sig, idl;
};

GeometryOut make_geometry(const json& cfg, const CrystalConfig& crystal) {
  const json& t = cfg.at("tuning");
  GeometryOut g{calibrate_pump_angle(t.at("target_external_deg").get<double>(),
                                     cfg.at("pump_nm").get<double>(), crystal),
                {}, {}};
  std::tie(g.sig, g.idl) = compute_tuning_curve(
      t.at("lambda_min_nm").get<double>(), t.at("lambda_max_nm").get<double>(),
      t.at("points").get<std::size_t>(), cfg.at("pump_nm").get<double>(),
      crystal, g.pump_angle_deg);
  return g;
}

int cmd_tuning(const CommonOpts& opts) {
  const json cfg = load_config(opts);
  const CrystalConfig crystal = make_crystal(cfg);
  const GeometryOut g = make_geometry(cfg, crystal);
  const std::string path = artifact_path(opts, "tuning");
  if (opts.format == "svg") {
    io::write_svg(path, g.sig.lambda_nm, g.sig.theta_ext_deg, "tuning curve",
                  "lambda_nm", "theta_ext_deg");
  } else if (opts.format == "json") {
    json j{{"schema_version", io::kSchemaVersion},
           {"signal", {{"lambda_nm", g.sig.lambda_nm},
                       {"theta_ext_deg", g.sig.theta_ext_deg}}},
           {"idler", {{"lambda_nm", g.idl.lambda_nm},
                      {"theta_ext_deg", g.idl.theta_ext_deg}}}};
    io::write_text(path, j.dump(2) + "\n");
  } else {
    io::write_tuning_csv(path, g.sig, g.idl);
  }
  write_meta(opts, "tuning",
             {{"pump_angle_to_axis_deg", g.pump_angle_deg},
              {"pump_angle_calibrated", true},
              {"calibration_target_external_deg",
               cfg.at("tuning").at("target_external_deg").get<double>()}});
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_pair_window(const CommonOpts& opts) {
  const json cfg = load_config(opts);
  const Model m = make_model(cfg, "I");
  const GeometryOut g = make_geometry(cfg, m.crystal);
  const PairWindow pw = pair_window(
      g.sig, g.idl, parse_aperture(cfg.at("apertures").at("signal")),
      parse_aperture(cfg.at("apertures").at("idler")),
      parse_filter(cfg.at("filters").at("signal")),
      parse_filter(cfg.at("filters").at("idler")), m.T);
  const std::string path = artifact_path(opts, "pair_window");
  if (opts.format == "svg") {
    io::write_svg(path, pw.nu, pw.weight, "pair window", "nu_rad_per_fs",
                  "weight");
  } else if (opts.format == "json") {
    json j{{"schema_version", io::kSchemaVersion},
           {"nu_rad_per_fs", pw.nu},
           {"weight", pw.weight}};
    io::write_text(path, j.dump(2) + "\n");
  } else {
    io::write_pair_window_csv(path, pw);
  }
  write_meta(opts, "pair_window",
             {{"pair_fraction", pw.pair_fraction},
              {"effective_pair_fwhm_nm", pw.effective_pair_fwhm_nm},
              {"pump_angle_to_axis_deg", g.pump_angle_deg},
              {"pump_angle_calibrated", true}});
  std::cout << "wrote " << path << "\npair_fraction = " << pw.pair_fraction
            << ", effective_pair_fwhm_nm = " << pw.effective_pair_fwhm_nm
            << "\n";
  return 0;
}

int cmd_mca_sim(const CommonOpts& opts) {
  const json cfg = load_config(opts);
  const json& mcfg = cfg.at("mca");
  CountingConfig mc;
  mc.pair_rate_hz = mcfg.at("pair_rate_hz").get<double>();
  mc.singles_excess_rate_hz = mcfg.at("singles_excess_rate_hz").get<double>();
  mc.duration_s = mcfg.at("duration_s").get<double>();
  mc.window_ns = mcfg.at("window_ns").get<double>();
  mc.accidental_offset_ns = mcfg.at("accidental_offset_ns").get<double>();
  mc.jitter_sigma_ns = mcfg.at("jitter_sigma_ns").get<double>();
  mc.rng_seed = opts.seed;
  const double v_true = mcfg.at("true_visibility").get<double>();
  if (!(v_true >= 0.0 && v_true <= 1.0)) {
    throw config_error("mca.true_visibility must lie in [0, 1]");
  }
  fs::create_directories(opts.out_dir);
  json summary{{"schema_version", io::kSchemaVersion},
               {"rng_algorithm", "mt19937_64, 64 time shards"},
               {"rng_seed", mc.rng_seed}};
  double c_dip = 0, a_dip = 0, c_peak = 0, a_peak = 0;
  for (const bool is_peak : {false, true}) {
    const double r = 0.5 * (1.0 + (is_peak ? v_true : -v_true));
    const MCAHistogram h = simulate_mca(mc, r);
    const CoincidenceResult res =
        extract_coincidences(h, mc.window_ns, mc.accidental_offset_ns);
    const std::string stem = is_peak ? "mca_peak" : "mca_dip";
    io::write_histogram_csv(
        (fs::path(opts.out_dir) / (stem + ".csv")).string(), h);
    summary[stem] = {{"coincidence_counts", res.coincidence_counts},
                     {"accidental_counts", res.accidental_counts},
                     {"true_counts", res.net_counts},
                     {"peak_center_ns", res.peak_center_ns},
                     {"predicted_accidentals", predicted_accidentals(mc, r)}};
    (is_peak ? c_peak : c_dip) = static_cast<double>(res.coincidence_counts);
    (is_peak ? a_peak : a_dip) = static_cast<double>(res.accidental_counts);
  }
  summary["raw_visibility"] = (c_peak - c_dip) / (c_peak + c_dip);
  summary["corrected_visibility"] =
      ((c_peak - a_peak) - (c_dip - a_dip)) / ((c_peak - a_peak) + (c_dip - a_dip));
  const std::string spath =
      (fs::path(opts.out_dir) / "mca_summary.json").string();
  io::write_text(spath, summary.dump(2) + "\n");
  std::cout << "wrote " << spath << "\nraw_visibility = "
            << summary["raw_visibility"].get<double>()
            << ", corrected_visibility = "
            << summary["corrected_visibility"].get<double>() << "\n";
  return 0;
}

int cmd_reproduce(const CommonOpts& opts) {
  const json cfg = load_config(opts);
  AcceptanceConfig acfg;
  acfg.data_dir = cfg.at("data_dir").get<std::string>();
  acfg.seed = opts.seed;
  const auto results = run_acceptance(acfg);
  json rows = json::array();
  bool all = true;
  std::printf("%-30s %-6s %s\n", "criterion", "status", "detail");
  for (const auto& r : results) {
    std::printf("%-30s %-6s %s\n", r.name.c_str(), r.pass ? "pass" : "FAIL",
                r.detail.c_str());
    rows.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all = all && r.pass;
  }
  fs::create_directories(opts.out_dir);
  io::write_text(
      (fs::path(opts.out_dir) / "reproduce_summary.json").string(),
      json{{"schema_version", io::kSchemaVersion}, {"all_pass", all},
           {"criteria", rows}}
              .dump(2) +
          "\n");
  std::printf("%s\n", all ? "all criteria pass" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one- and two-photon down-conversion wavepacket simulator"};
  app.require_subcommand(1);
  CommonOpts opts;
  app.add_option("--config", opts.config_path, "JSON config overriding the preset");
  app.add_option("--out", opts.out_dir, "output directory");
  app.add_option("--seed", opts.seed, "RNG seed");
  app.add_option("--preset", opts.preset, "parameter preset (paper)");
  app.add_option("--format", opts.format, "csv|json|svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));

  double lambda_nm = 702.2, theta_deg = 0.0;
  auto* indices = app.add_subcommand("indices", "refractive indices");
  indices->add_option("--lambda-nm", lambda_nm, "wavelength [nm]");
  indices->add_option("--theta-deg", theta_deg, "propagation angle to axis");

  std::string pm;
  for (auto* sc : {app.add_subcommand("pm-angle", "collinear phase-matching angle"),
                   app.add_subcommand("spectrum", "spectral amplitude"),
                   app.add_subcommand("g1", "first-order coherence envelope"),
                   app.add_subcommand("g2", "second-order correlation"),
                   app.add_subcommand("michelson", "single-photon interferogram"),
                   app.add_subcommand("hom", "two-photon interferogram")}) {
    sc->add_option("--type", pm, "phase-matching type I|II");
  }
  double theta1 = 0.0, theta2 = 0.0;
  bool peak = false;
  auto* hom = app.get_subcommand("hom");
  hom->add_option("--theta1", theta1, "analyzer 1 angle [deg]");
  hom->add_option("--theta2", theta2, "analyzer 2 angle [deg]");
  hom->add_flag("--peak", peak, "crossed analyzers (peak instead of dip)");

  app.add_subcommand("tuning", "wavelength vs emission angle");
  app.add_subcommand("pair-window", "aperture/filter post-selection window");
  app.add_subcommand("mca-sim", "counting simulation (dip and peak)");
  app.add_subcommand("reproduce-paper", "run the full validation pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "indices") return cmd_indices(opts, lambda_nm, theta_deg);
    if (cmd == "pm-angle") return cmd_pm_angle(opts, pm);
    if (cmd == "spectrum") return cmd_spectrum(opts, pm);
    if (cmd == "g1") return cmd_trace(opts, pm, false);
    if (cmd == "g2") return cmd_trace(opts, pm, true);
    if (cmd == "michelson") return cmd_michelson(opts, pm);
    if (cmd == "hom") return cmd_hom(opts, pm, theta1, theta2, peak);
    if (cmd == "tuning") return cmd_tuning(opts);
    if (cmd == "pair-window") return cmd_pair_window(opts);
    if (cmd == "mca-sim") return cmd_mca_sim(opts);
    if (cmd == "reproduce-paper") return cmd_reproduce(opts);
    std::cerr << "unknown command\n";
    return 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
