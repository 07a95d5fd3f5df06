#include "snls/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "snls/inequalities.hpp"
#include "snls/threading.hpp"

namespace snls {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct RawConfig {
  std::map<std::string, std::string> kv;
  std::vector<std::string> violations;
};

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      raw.violations.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      raw.violations.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    if (raw.kv.count(key)) {
      raw.violations.push_back("duplicate key '" + key + "'");
      continue;
    }
    raw.kv[key] = value;
  }
  return raw;
}

class ConfigReader {
 public:
  ConfigReader(RawConfig raw) : raw_(std::move(raw)) {}

  bool has(const std::string& key) const { return raw_.kv.count(key) > 0; }

  double number(const std::string& key, double fallback, bool required = false) {
    seen_.insert(key);
    auto it = raw_.kv.find(key);
    if (it == raw_.kv.end()) {
      if (required) raw_.violations.push_back("missing required key '" + key + "'");
      return fallback;
    }
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (...) {
      raw_.violations.push_back("key '" + key + "': not a number: '" + it->second + "'");
      return fallback;
    }
  }

  long long integer(const std::string& key, long long fallback, bool required = false) {
    seen_.insert(key);
    auto it = raw_.kv.find(key);
    if (it == raw_.kv.end()) {
      if (required) raw_.violations.push_back("missing required key '" + key + "'");
      return fallback;
    }
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (...) {
      raw_.violations.push_back("key '" + key + "': not an integer: '" + it->second + "'");
      return fallback;
    }
  }

  std::string text(const std::string& key, const std::string& fallback) {
    seen_.insert(key);
    auto it = raw_.kv.find(key);
    return it == raw_.kv.end() ? fallback : it->second;
  }

  void violation(const std::string& msg) { raw_.violations.push_back(msg); }

  void finish() {
    for (const auto& [key, value] : raw_.kv) {
      (void)value;
      if (!seen_.count(key)) raw_.violations.push_back("unknown key '" + key + "'");
    }
    if (!raw_.violations.empty()) throw ConfigError(raw_.violations);
  }

 private:
  RawConfig raw_;
  std::set<std::string> seen_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_csv(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  ConfigReader r(tokenize(text));
  RunConfig c;

  c.grid.n = static_cast<int>(r.integer("grid.n", 0, true));
  c.grid.half_width = r.number("grid.half_width", 0.0, true);
  if (c.grid.n != 0 && (c.grid.n < 8 || c.grid.n % 2 != 0)) {
    r.violation("grid.n must be an even integer >= 8");
  }
  if (r.has("grid.half_width") && !(c.grid.half_width > 0.0)) {
    r.violation("grid.half_width must be positive");
  }

  c.model.b = r.number("model.b", 0.5, true);
  if (r.has("model.b") && !(c.model.b > 0.0 && c.model.b < 1.0)) {
    r.violation("model.b must be in (0,1): the defocusing exponential problem with singular "
                "weight is posed for 0 < b < 1 (alpha = 2pi(2-b) is derived, never set)");
  }
  const std::string rule = r.text("model.origin_rule", "cell_average");
  if (rule == "cell_average") {
    c.model.origin_rule = OriginRule::CellAverage;
  } else if (rule == "epsilon") {
    c.model.origin_rule = OriginRule::Epsilon;
  } else {
    r.violation("model.origin_rule must be 'cell_average' or 'epsilon'");
  }
  c.model.epsilon = r.number("model.epsilon", 0.0);

  c.init.family = r.text("init.family", "gaussian");
  if (c.init.family != "gaussian" && c.init.family != "bump" &&
      c.init.family != "random_band_limited") {
    r.violation("init.family must be gaussian | bump | random_band_limited");
  }
  c.init.amplitude = r.number("init.amplitude", 1.0);
  c.init.sigma = r.number("init.sigma", 1.0);
  if (c.init.family == "gaussian" && !(c.init.sigma > 0.0)) {
    r.violation("init.sigma must be positive");
  }
  c.init.center_x = r.number("init.center_x", 0.0);
  c.init.center_y = r.number("init.center_y", 0.0);
  c.init.kx = r.number("init.kx", 0.0);
  c.init.ky = r.number("init.ky", 0.0);
  c.init.radius = r.number("init.radius", 1.0);
  c.init.smoothness = r.number("init.smoothness", 1.0);
  c.init.seed = static_cast<unsigned long long>(r.integer("init.seed", 1));
  c.init.cutoff = r.number("init.cutoff", 8.0);

  c.solver.dt = r.number("solver.dt", 0.0, true);
  if (r.has("solver.dt") && !(c.solver.dt > 0.0)) r.violation("solver.dt must be positive");
  c.solver.t_end = r.number("solver.t_end", 0.0, true);
  if (r.has("solver.t_end") && !(c.solver.t_end > 0.0)) {
    r.violation("solver.t_end must be positive");
  }
  c.solver.snapshot_stride = static_cast<int>(r.integer("solver.snapshot_stride", 10));
  if (c.solver.snapshot_stride < 1) r.violation("solver.snapshot_stride must be >= 1");
  c.solver.field_every = static_cast<int>(r.integer("solver.field_every", 4));
  if (c.solver.field_every < 0) r.violation("solver.field_every must be >= 0");

  c.validity.boundary_mass_threshold = r.number("validity.boundary_mass_threshold", 1e-6);
  c.validity.boundary_shell_cells =
      static_cast<int>(r.integer("validity.boundary_shell_cells", 4));
  if (c.validity.boundary_shell_cells < 1) {
    r.violation("validity.boundary_shell_cells must be >= 1");
  }

  c.observers = split_list(r.text("observers", "invariants,norms,snapshots"));
  for (const auto& o : c.observers) {
    if (o != "invariants" && o != "norms" && o != "snapshots") {
      r.violation("observers: unknown diagnostic '" + o + "'");
    }
  }
  c.output.directory = r.text("output.directory", ".");
  c.output.formats = split_list(r.text("output.formats", "csv,json"));
  for (const auto& f : c.output.formats) {
    if (f != "csv" && f != "json") r.violation("output.formats: unknown format '" + f + "'");
  }

  r.finish();
  return c;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SnlsError("cannot open config file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config_text(const RunConfig& c) {
  std::map<std::string, std::string> kv;
  kv["grid.n"] = std::to_string(c.grid.n);
  kv["grid.half_width"] = fmt(c.grid.half_width);
  kv["model.b"] = fmt(c.model.b);
  kv["model.origin_rule"] =
      c.model.origin_rule == OriginRule::CellAverage ? "cell_average" : "epsilon";
  kv["model.epsilon"] = fmt(c.model.epsilon);
  kv["init.family"] = c.init.family;
  kv["init.amplitude"] = fmt(c.init.amplitude);
  kv["init.sigma"] = fmt(c.init.sigma);
  kv["init.center_x"] = fmt(c.init.center_x);
  kv["init.center_y"] = fmt(c.init.center_y);
  kv["init.kx"] = fmt(c.init.kx);
  kv["init.ky"] = fmt(c.init.ky);
  kv["init.radius"] = fmt(c.init.radius);
  kv["init.smoothness"] = fmt(c.init.smoothness);
  kv["init.seed"] = std::to_string(c.init.seed);
  kv["init.cutoff"] = fmt(c.init.cutoff);
  kv["solver.dt"] = fmt(c.solver.dt);
  kv["solver.t_end"] = fmt(c.solver.t_end);
  kv["solver.snapshot_stride"] = std::to_string(c.solver.snapshot_stride);
  kv["solver.field_every"] = std::to_string(c.solver.field_every);
  kv["validity.boundary_mass_threshold"] = fmt(c.validity.boundary_mass_threshold);
  kv["validity.boundary_shell_cells"] = std::to_string(c.validity.boundary_shell_cells);
  std::string obs;
  for (const auto& o : c.observers) obs += (obs.empty() ? "" : ",") + o;
  kv["observers"] = obs;
  std::string fmts;
  for (const auto& f : c.output.formats) fmts += (fmts.empty() ? "" : ",") + f;
  kv["output.formats"] = fmts;
  kv["output.directory"] = c.output.directory;

  std::string out;
  for (const auto& [k, v] : kv) {
    out += k + "=" + v + "\n";
  }
  return out;
}

std::uint64_t config_hash(const RunConfig& config) {
  // FNV-1a 64
  const std::string text = canonical_config_text(config);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

ComplexField make_initial_datum(const GridPtr& grid, const RunConfig& c) {
  if (c.init.family == "gaussian") {
    return gaussian_field(grid, c.init.amplitude, c.init.sigma, c.init.center_x, c.init.center_y,
                          c.init.kx, c.init.ky);
  }
  if (c.init.family == "bump") {
    ComplexField f = bump_field(grid, c.init.radius, c.init.smoothness);
    for (auto& z : f.values()) z *= c.init.amplitude;
    return f;
  }
  if (c.init.family == "random_band_limited") {
    ComplexField f = random_band_limited_field(grid, c.init.seed, c.init.cutoff);
    for (auto& z : f.values()) z *= c.init.amplitude;
    return f;
  }
  throw SnlsError("unknown init family: " + c.init.family);
}

void checkpoint_write(const ComplexField& field, double t, const ModelParams& params,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SnlsError("cannot open checkpoint for writing: " + path.string());
  const unsigned char magic[4] = {0x53, 0x4E, 0x4C, 0x53};  // "SNLS"
  out.write(reinterpret_cast<const char*>(magic), 4);
  auto put_u32 = [&out](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
  auto put_f64 = [&out](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  put_u32(1);
  put_u32(static_cast<std::uint32_t>(field.grid().n));
  put_f64(field.grid().half_width);
  put_f64(params.b);
  put_f64(params.alpha);
  put_f64(t);
  out.write(reinterpret_cast<const char*>(field.data()),
            static_cast<std::streamsize>(field.size() * sizeof(Complex)));
  if (!out) throw SnlsError("checkpoint write failed: " + path.string());
}

CheckpointData checkpoint_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnlsError("cannot open checkpoint: " + path.string());
  unsigned char magic[4];
  in.read(reinterpret_cast<char*>(magic), 4);
  if (!in || magic[0] != 0x53 || magic[1] != 0x4E || magic[2] != 0x4C || magic[3] != 0x53) {
    throw SnlsError("checkpoint magic mismatch: " + path.string());
  }
  auto get_u32 = [&in]() {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    return v;
  };
  auto get_f64 = [&in]() {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  const std::uint32_t version = get_u32();
  if (version != 1) {
    throw SnlsError("unsupported checkpoint version " + std::to_string(version) + ": " +
                    path.string());
  }
  const std::uint32_t n = get_u32();
  const double half_width = get_f64();
  const double b = get_f64();
  const double alpha = get_f64();
  const double t = get_f64();
  if (!in) throw SnlsError("truncated checkpoint header: " + path.string());
  if (std::abs(alpha - 2.0 * kPi * (2.0 - b)) > 1e-12 * std::max(1.0, std::abs(alpha))) {
    throw SnlsError("checkpoint integrity: stored alpha does not equal 2pi(2-b)");
  }
  CheckpointData data;
  GridPtr grid = make_grid(static_cast<int>(n), half_width);
  data.field = ComplexField(grid);
  in.read(reinterpret_cast<char*>(data.field.data()),
          static_cast<std::streamsize>(data.field.size() * sizeof(Complex)));
  if (!in || in.gcount() != static_cast<std::streamsize>(data.field.size() * sizeof(Complex))) {
    throw SnlsError("truncated checkpoint payload: " + path.string());
  }
  data.t = t;
  data.params = ModelParams::make(b);
  return data;
}

void write_series_csv(const DiagnosticSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SnlsError("cannot open CSV for writing: " + path.string());
  const auto& cols = series_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i];
  }
  out << "\n";
  for (const auto& r : series.records) {
    const double vals[] = {r.t,  r.mass, r.hamiltonian, r.V,   r.M_mom, r.K,    r.G,
                           r.l4, r.h1,   r.sigma,       r.w14, r.linf,  r.boundary_mass_fraction};
    for (std::size_t i = 0; i < std::size(vals); ++i) {
      out << (i ? "," : "") << fmt_csv(vals[i]);
    }
    out << "\n";
  }
}

DiagnosticSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SnlsError("cannot open CSV: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw SnlsError("empty CSV: " + path.string());
  DiagnosticSeries series;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != series_columns().size()) {
      throw SnlsError("CSV row with wrong column count in " + path.string());
    }
    SeriesRecord r;
    r.t = vals[0];
    r.mass = vals[1];
    r.hamiltonian = vals[2];
    r.V = vals[3];
    r.M_mom = vals[4];
    r.K = vals[5];
    r.G = vals[6];
    r.l4 = vals[7];
    r.h1 = vals[8];
    r.sigma = vals[9];
    r.w14 = vals[10];
    r.linf = vals[11];
    r.boundary_mass_fraction = vals[12];
    series.records.push_back(r);
  }
  return series;
}

DiagnosticSeries load_run_directory(const std::filesystem::path& dir) {
  DiagnosticSeries series = read_series_csv(dir / "series.csv");
  std::vector<std::filesystem::path> snaps;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("snapshot_", 0) == 0 && entry.path().extension() == ".snls") {
      snaps.push_back(entry.path());
    }
  }
  std::sort(snaps.begin(), snaps.end());
  for (const auto& p : snaps) {
    CheckpointData data = checkpoint_read(p);
    series.snapshots.push_back({data.t, std::move(data.field)});
    series.snapshot_files.push_back(p.string());
  }
  return series;
}

DiagnosticSeries run(const RunConfig& config) {
  configure_threads_from_env();
  const GridPtr grid = make_grid(config.grid.n, config.grid.half_width);
  const ModelParams params =
      ModelParams::make(config.model.b, config.model.origin_rule, config.model.epsilon);
  const SingularWeight weight = weight_grid(grid, params);

  const std::filesystem::path dir = config.output.directory;
  std::filesystem::create_directories(dir);

  const bool want_csv =
      std::count(config.output.formats.begin(), config.output.formats.end(), "csv") > 0;
  const bool want_json =
      std::count(config.output.formats.begin(), config.output.formats.end(), "json") > 0;
  const bool observe_records =
      std::count(config.observers.begin(), config.observers.end(), "invariants") > 0 ||
      std::count(config.observers.begin(), config.observers.end(), "norms") > 0;
  const bool observe_snapshots =
      std::count(config.observers.begin(), config.observers.end(), "snapshots") > 0;

  SolverState state;
  state.u = make_initial_datum(grid, config);
  state.t = 0.0;

  StepPolicy policy;
  policy.dt = config.solver.dt;
  policy.t_end = config.solver.t_end;
  policy.snapshot_stride = config.solver.snapshot_stride;

  Observers obs;
  obs.boundary_threshold = config.validity.boundary_mass_threshold;
  obs.boundary_shell_cells = config.validity.boundary_shell_cells;
  obs.store_fields = false;
  obs.field_every = observe_snapshots ? config.solver.field_every : 0;

  std::ofstream csv;
  if (want_csv && observe_records) {
    csv.open(dir / "series.csv");
    const auto& cols = series_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) csv << (i ? "," : "") << cols[i];
    csv << "\n";
    obs.record_sink = [&csv](const SeriesRecord& r) {
      const double vals[] = {r.t,  r.mass, r.hamiltonian, r.V,   r.M_mom,
                             r.K,  r.G,    r.l4,          r.h1,  r.sigma,
                             r.w14, r.linf, r.boundary_mass_fraction};
      for (std::size_t i = 0; i < std::size(vals); ++i) csv << (i ? "," : "") << fmt_csv(vals[i]);
      csv << "\n";
    };
  }

  DiagnosticSeries series;
  series.config_hash = config_hash(config);
  int snap_index = 0;
  if (observe_snapshots) {
    obs.field_sink = [&](double t, const ComplexField& u) {
      char name[48];
      std::snprintf(name, sizeof(name), "snapshot_%05d.snls", snap_index++);
      const auto path = dir / name;
      checkpoint_write(u, t, params, path);
      series.snapshot_files.push_back(path.string());
    };
  }

  std::string status = "completed";
  std::string diagnostic;
  DiagnosticSeries evolved;
  try {
    evolved = evolve(state, policy, &weight, params, obs);
  } catch (const SnlsError& err) {
    status = "aborted";
    diagnostic = err.what();
  }
  series.records = std::move(evolved.records);
  series.snapshots = std::move(evolved.snapshots);
  csv.close();

  double t_wrap = series.records.empty() ? 0.0 : series.records.back().t;
  for (const auto& r : series.records) {
    if (r.boundary_mass_fraction > config.validity.boundary_mass_threshold) {
      t_wrap = r.t;
      break;
    }
  }

  if (want_json) {
    nlohmann::json manifest;
    manifest["code_version"] = kVersion;
    manifest["config_hash"] = series.config_hash;
    manifest["derived_alpha"] = params.alpha;
    manifest["status"] = status;
    if (!diagnostic.empty()) manifest["diagnostic"] = diagnostic;
    manifest["validity"] = {{"t_wrap", t_wrap},
                            {"boundary_mass_threshold", config.validity.boundary_mass_threshold},
                            {"boundary_shell_cells", config.validity.boundary_shell_cells}};
    nlohmann::json cfg;
    std::istringstream canon(canonical_config_text(config));
    std::string line;
    while (std::getline(canon, line)) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 1);
    }
    manifest["config"] = cfg;
    manifest["records"] = series.records.size();
    manifest["snapshots"] = series.snapshot_files.size();
    std::ofstream mf(dir / "manifest.json");
    mf << manifest.dump(2) << "\n";
  }

  if (status != "completed") {
    throw SnlsError("run aborted (outputs up to the abort were kept): " + diagnostic);
  }
  return series;
}

}  // namespace snls
