#include "intwine/harness/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"
#include "intwine/spectral/random.hpp"
#include "intwine/util/ini.hpp"

namespace intwine::harness {

using dynamics::IntertwiningMatrix;
using dynamics::MatrixClass;
using util::IniEntry;
using util::IniSection;
using util::format_double;

namespace {

constexpr std::uint64_t kStreamInitial1 = 1;
constexpr std::uint64_t kStreamInitial2 = 2;
constexpr std::uint64_t kStreamForce1 = 3;
constexpr std::uint64_t kStreamDelta1 = 4;
constexpr std::uint64_t kStreamForce2 = 5;
constexpr std::uint64_t kStreamDelta2 = 6;

struct Named {
  const char* name;
  int value;
};

template <class E, std::size_t N>
E lookup(const Named (&table)[N], const IniEntry& e, const char* what) {
  for (const auto& t : table) {
    if (e.value == t.name) return static_cast<E>(t.value);
  }
  std::string options;
  for (const auto& t : table) options += std::string(options.empty() ? "" : ", ") + t.name;
  throw ParseError(std::string("unknown ") + what + " '" + e.value + "' (expected one of " +
                       options + ")",
                   e.line);
}

template <class E, std::size_t N>
std::string name_of(const Named (&table)[N], E v) {
  for (const auto& t : table) {
    if (t.value == static_cast<int>(v)) return t.name;
  }
  return "?";
}

constexpr Named kScenarios[] = {
    {"self_sync", static_cast<int>(ScenarioKind::SelfSync)},
    {"fdss_determining_modes", static_cast<int>(ScenarioKind::FdssDeterminingModes)},
    {"reconstruction_nudge", static_cast<int>(ScenarioKind::ReconstructionNudge)},
    {"reconstruction_dr", static_cast<int>(ScenarioKind::ReconstructionDR)},
    {"regime_sweep", static_cast<int>(ScenarioKind::RegimeSweep)},
};
constexpr Named kShapes[] = {
    {"zero", static_cast<int>(FieldShape::Zero)},
    {"kolmogorov", static_cast<int>(FieldShape::Kolmogorov)},
    {"modes", static_cast<int>(FieldShape::Modes)},
    {"random", static_cast<int>(FieldShape::Random)},
};
constexpr Named kForceKinds[] = {
    {"zero", static_cast<int>(ForceKind::Zero)},       {"steady", static_cast<int>(ForceKind::Steady)},
    {"periodic", static_cast<int>(ForceKind::Periodic)}, {"decaying", static_cast<int>(ForceKind::Decaying)},
    {"same", static_cast<int>(ForceKind::Same)},
};
constexpr Named kInitialKinds[] = {
    {"zero", static_cast<int>(InitialKind::Zero)},
    {"field", static_cast<int>(InitialKind::Field)},
    {"perturb", static_cast<int>(InitialKind::Perturb)},
};
constexpr Named kFold[] = {
    {"auto", static_cast<int>(dynamics::FoldMode::Auto)},
    {"on", static_cast<int>(dynamics::FoldMode::On)},
    {"off", static_cast<int>(dynamics::FoldMode::Off)},
};
constexpr Named kClasses[] = {
    {"NudgeSym", static_cast<int>(MatrixClass::NudgeSym)},
    {"NudgeMut", static_cast<int>(MatrixClass::NudgeMut)},
    {"DRSym", static_cast<int>(MatrixClass::DRSym)},
    {"DRMut", static_cast<int>(MatrixClass::DRMut)},
    {"General", static_cast<int>(MatrixClass::General)},
};
constexpr Named kCouplings[] = {
    {"ProjectK", static_cast<int>(dynamics::Coupling::ProjectK)},
    {"ProjectK_B", static_cast<int>(dynamics::Coupling::ProjectK_B)},
};

// Hands out entries of one section and rejects whatever is left unread.
class Reader {
 public:
  explicit Reader(const IniSection* s) : s_(s) {}
  bool present() const { return s_ != nullptr; }
  int line() const { return s_ ? s_->line : 0; }

  const IniEntry* get(const std::string& key) {
    if (!s_) return nullptr;
    used_.insert(key);
    return s_->find(key);
  }
  const IniEntry& require(const std::string& key) {
    const IniEntry* e = get(key);
    if (!e) throw ParseError("[" + s_->name + "] is missing required key '" + key + "'", s_->line);
    return *e;
  }
  double number(const std::string& key, double fallback) {
    const IniEntry* e = get(key);
    return e ? util::parse_double(*e) : fallback;
  }
  void finish() const {
    if (!s_) return;
    for (const auto& e : s_->entries) {
      if (!used_.count(e.key)) {
        throw ParseError("unknown key '" + e.key + "' in [" + s_->name + "]", e.line);
      }
    }
  }

 private:
  const IniSection* s_;
  std::set<std::string> used_;
};

std::vector<double> parse_list(const IniEntry& e) {
  std::vector<double> out;
  std::istringstream in(e.value);
  std::string tok;
  while (in >> tok) out.push_back(util::parse_double(IniEntry{e.key, tok, e.line}));
  if (out.empty()) throw ParseError("'" + e.key + "' must list at least one number", e.line);
  return out;
}

std::string list_text(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + format_double(x);
  return s;
}

int parse_int_entry(const IniEntry& e) {
  const long long v = util::parse_int(e);
  if (v < -1000000 || v > 1000000) throw ParseError("'" + e.key + "' out of range", e.line);
  return static_cast<int>(v);
}

std::vector<dynamics::ModeAmplitude> parse_modes(const IniEntry& e) {
  std::vector<dynamics::ModeAmplitude> out;
  std::size_t b = 0;
  while (b <= e.value.size()) {
    const std::size_t s = std::min(e.value.find(';', b), e.value.size());
    std::istringstream in(e.value.substr(b, s - b));
    std::vector<std::string> tok;
    std::string t;
    while (in >> t) tok.push_back(t);
    if (!tok.empty()) {
      if (tok.size() != 6) {
        throw ParseError("each mode needs 'kx ky ax_re ax_im ay_re ay_im'", e.line);
      }
      auto num = [&](int i) { return util::parse_double(IniEntry{e.key, tok[i], e.line}); };
      auto integer = [&](int i) { return parse_int_entry(IniEntry{e.key, tok[i], e.line}); };
      out.push_back({integer(0), integer(1), {num(2), num(3)}, {num(4), num(5)}});
    }
    b = s + 1;
  }
  if (out.empty()) throw ParseError("'modes' lists no modes", e.line);
  return out;
}

std::string modes_text(const std::vector<dynamics::ModeAmplitude>& m) {
  std::string s;
  for (const auto& a : m) {
    if (!s.empty()) s += "; ";
    s += std::to_string(a.kx) + " " + std::to_string(a.ky) + " " + format_double(a.ax.real()) +
         " " + format_double(a.ax.imag()) + " " + format_double(a.ay.real()) + " " +
         format_double(a.ay.imag());
  }
  return s;
}

// Field keys carry an optional prefix ("delta_") so one section can hold two fields.
FieldSpec read_field(Reader& r, const std::string& prefix, bool required) {
  FieldSpec f;
  const IniEntry* shape = r.get(prefix + "shape");
  if (!shape) {
    if (required) r.require(prefix + "shape");
    return f;
  }
  f.shape = lookup<FieldShape>(kShapes, *shape, "field shape");
  switch (f.shape) {
    case FieldShape::Zero: break;
    case FieldShape::Kolmogorov:
      f.amplitude = util::parse_double(r.require(prefix + "amplitude"));
      f.wavenumber = parse_int_entry(r.require(prefix + "wavenumber"));
      if (f.wavenumber <= 0) throw ParseError("wavenumber must be positive", shape->line);
      break;
    case FieldShape::Modes: f.modes = parse_modes(r.require(prefix + "modes")); break;
    case FieldShape::Random: {
      if (const IniEntry* e = r.get(prefix + "seed")) f.seed = util::parse_u64(*e);
      f.slope = r.number(prefix + "slope", 1.0);
      f.kmin = r.number(prefix + "kmin", 0.0);
      f.kmax = r.number(prefix + "kmax", 0.0);
      f.l2 = r.number(prefix + "l2", 0.0);
      f.h1 = r.number(prefix + "h1", 0.0);
      if (f.kmin < 0.0 || f.kmax < 0.0 || f.l2 < 0.0 || f.h1 < 0.0) {
        throw ParseError("random field parameters must be >= 0", shape->line);
      }
      break;
    }
  }
  return f;
}

void write_field(std::string& out, const std::string& prefix, const FieldSpec& f) {
  out += prefix + "shape = " + name_of(kShapes, f.shape) + "\n";
  switch (f.shape) {
    case FieldShape::Zero: break;
    case FieldShape::Kolmogorov:
      out += prefix + "amplitude = " + format_double(f.amplitude) + "\n";
      out += prefix + "wavenumber = " + std::to_string(f.wavenumber) + "\n";
      break;
    case FieldShape::Modes: out += prefix + "modes = " + modes_text(f.modes) + "\n"; break;
    case FieldShape::Random:
      if (f.seed) out += prefix + "seed = " + std::to_string(*f.seed) + "\n";
      out += prefix + "slope = " + format_double(f.slope) + "\n";
      out += prefix + "kmin = " + format_double(f.kmin) + "\n";
      out += prefix + "kmax = " + format_double(f.kmax) + "\n";
      out += prefix + "l2 = " + format_double(f.l2) + "\n";
      out += prefix + "h1 = " + format_double(f.h1) + "\n";
      break;
  }
}

ForceConfig read_force(Reader r, bool second) {
  ForceConfig f;
  if (!r.present()) return f;
  const IniEntry& kind = r.require("kind");
  f.kind = lookup<ForceKind>(kForceKinds, kind, "force kind");
  if (f.kind == ForceKind::Same && !second) {
    throw ParseError("kind = same is only valid in [force2]", kind.line);
  }
  switch (f.kind) {
    case ForceKind::Zero:
    case ForceKind::Same: break;
    case ForceKind::Steady: f.base = read_field(r, "", true); break;
    case ForceKind::Periodic:
      f.base = read_field(r, "", true);
      f.omega = util::parse_double(r.require("omega"));
      break;
    case ForceKind::Decaying: {
      if (const IniEntry* b = r.get("base")) {
        if (b->value != "force1" || !second) {
          throw ParseError("base may only be 'force1', inside [force2]", b->line);
        }
        f.base_from_force1 = true;
      } else {
        f.base = read_field(r, "", true);
      }
      f.delta = read_field(r, "delta_", true);
      const IniEntry& a = r.require("alpha");
      f.alpha = util::parse_double(a);
      if (!(f.alpha > 0.0)) throw ParseError("alpha must be > 0", a.line);
      break;
    }
  }
  r.finish();
  return f;
}

void write_force(std::string& out, const char* name, const ForceConfig& f) {
  out += std::string("\n[") + name + "]\n";
  out += "kind = " + name_of(kForceKinds, f.kind) + "\n";
  switch (f.kind) {
    case ForceKind::Zero:
    case ForceKind::Same: break;
    case ForceKind::Steady: write_field(out, "", f.base); break;
    case ForceKind::Periodic:
      write_field(out, "", f.base);
      out += "omega = " + format_double(f.omega) + "\n";
      break;
    case ForceKind::Decaying:
      if (f.base_from_force1) {
        out += "base = force1\n";
      } else {
        write_field(out, "", f.base);
      }
      write_field(out, "delta_", f.delta);
      out += "alpha = " + format_double(f.alpha) + "\n";
      break;
  }
}

InitialConfig read_initial(Reader r, bool second) {
  InitialConfig c;
  if (!r.present()) return c;
  const IniEntry& kind = r.require("kind");
  c.kind = lookup<InitialKind>(kInitialKinds, kind, "initial data kind");
  if (c.kind == InitialKind::Perturb && !second) {
    throw ParseError("kind = perturb is only valid in [initial2]", kind.line);
  }
  if (c.kind != InitialKind::Zero) c.field = read_field(r, "", true);
  r.finish();
  return c;
}

void write_initial(std::string& out, const char* name, const InitialConfig& c) {
  out += std::string("\n[") + name + "]\n";
  out += "kind = " + name_of(kInitialKinds, c.kind) + "\n";
  if (c.kind != InitialKind::Zero) write_field(out, "", c.field);
}

IntertwiningMatrix read_matrix(Reader r) {
  const IniEntry& cls_e = r.require("class");
  const auto cls = lookup<MatrixClass>(kClasses, cls_e, "matrix class");
  const int line = cls_e.line;
  auto pair = [&](const char* a, const char* b) {
    const IniEntry& ea = r.require(a);
    const IniEntry& eb = r.require(b);
    return std::array<double, 2>{util::parse_double(ea), util::parse_double(eb)};
  };
  try {
    switch (cls) {
      case MatrixClass::NudgeSym: {
        const auto p = pair("mu1", "mu2");
        if (!(p[0] >= p[1] && p[1] >= 0.0)) {
          throw ParseError("NudgeSym violates mu1 >= mu2 >= 0 (mu1 = " + format_double(p[0]) +
                               ", mu2 = " + format_double(p[1]) + ")",
                           line);
        }
        r.finish();
        return IntertwiningMatrix::nudge_sym(p[0], p[1]);
      }
      case MatrixClass::NudgeMut: {
        const auto p = pair("mu1", "mu2");
        if (!(p[0] >= 0.0 && p[1] >= 0.0)) {
          throw ParseError("NudgeMut violates mu1, mu2 >= 0", line);
        }
        r.finish();
        return IntertwiningMatrix::nudge_mut(p[0], p[1]);
      }
      case MatrixClass::DRSym:
      case MatrixClass::DRMut: {
        const auto p = pair("theta1", "theta2");
        if (std::abs(p[0] + p[1] - 1.0) > 1e-12) {
          throw ParseError(name_of(kClasses, cls) + " violates theta1 + theta2 = 1 (theta1 + theta2 = " +
                               format_double(p[0] + p[1]) + ")",
                           line);
        }
        if (cls == MatrixClass::DRMut && !(p[0] >= 0.0 && p[1] >= 0.0)) {
          throw ParseError("DRMut violates theta1, theta2 >= 0", line);
        }
        r.finish();
        return cls == MatrixClass::DRSym ? IntertwiningMatrix::dr_sym(p[0], p[1])
                                         : IntertwiningMatrix::dr_mut(p[0], p[1]);
      }
      case MatrixClass::General: {
        const auto a = pair("m11", "m12");
        const auto b = pair("m21", "m22");
        const auto f =
            lookup<dynamics::Coupling>(kCouplings, r.require("coupling"), "intertwining function");
        r.finish();
        return IntertwiningMatrix::general(a[0], a[1], b[0], b[1], f);
      }
    }
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), line);
  }
  throw ParseError("invalid matrix class", line);
}

void write_matrix(std::string& out, const IntertwiningMatrix& m) {
  out += "\n[matrix]\nclass = " + name_of(kClasses, m.cls()) + "\n";
  switch (m.cls()) {
    case MatrixClass::NudgeSym:
    case MatrixClass::NudgeMut:
      out += "mu1 = " + format_double(m.mu1()) + "\nmu2 = " + format_double(m.mu2()) + "\n";
      break;
    case MatrixClass::DRSym:
    case MatrixClass::DRMut:
      out += "theta1 = " + format_double(m.theta1()) + "\ntheta2 = " + format_double(m.theta2()) + "\n";
      break;
    case MatrixClass::General:
      out += "m11 = " + format_double(m.m(1, 1)) + "\nm12 = " + format_double(m.m(1, 2)) +
             "\nm21 = " + format_double(m.m(2, 1)) + "\nm22 = " + format_double(m.m(2, 2)) +
             "\ncoupling = " + name_of(kCouplings, m.coupling()) + "\n";
      break;
  }
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

bool FieldSpec::operator==(const FieldSpec& o) const {
  if (modes.size() != o.modes.size()) return false;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& a = modes[i];
    const auto& b = o.modes[i];
    if (a.kx != b.kx || a.ky != b.ky || a.ax != b.ax || a.ay != b.ay) return false;
  }
  return shape == o.shape && amplitude == o.amplitude && wavenumber == o.wavenumber &&
         seed == o.seed && slope == o.slope && kmin == o.kmin && kmax == o.kmax && l2 == o.l2 &&
         h1 == o.h1;
}

std::string to_string(ScenarioKind k) { return name_of(kScenarios, k); }

ScenarioKind scenario_from_string(const std::string& s) {
  return lookup<ScenarioKind>(kScenarios, IniEntry{"scenario", s, 0}, "scenario");
}

ExperimentConfig parse_config_text(const std::string& text) {
  const auto doc = util::IniDocument::parse(text);
  static const std::set<std::string> known = {"grid",     "physics",  "matrix",  "force1",
                                              "force2",   "initial1", "initial2",
                                              "run",      "sweep",    "output"};
  for (const auto& s : doc.sections()) {
    if (!known.count(s.name)) throw ParseError("unknown section [" + s.name + "]", s.line);
  }
  auto section = [&](const char* name, bool required) {
    const IniSection* s = doc.section(name);
    if (!s && required) throw ParseError(std::string("missing required section [") + name + "]");
    return Reader(s);
  };

  ExperimentConfig c;
  {
    Reader r = section("run", true);
    c.scenario = lookup<ScenarioKind>(kScenarios, r.require("scenario"), "scenario");
    const IniEntry& dt = r.require("dt");
    c.dt = util::parse_double(dt);
    if (!positive(c.dt)) throw ParseError("dt must be > 0", dt.line);
    const IniEntry& te = r.require("t_end");
    c.t_end = util::parse_double(te);
    if (!(c.t_end >= 0.0)) throw ParseError("t_end must be >= 0", te.line);
    const IniEntry& se = r.require("sample_every");
    c.sample_every = util::parse_double(se);
    if (!positive(c.sample_every)) throw ParseError("sample_every must be > 0", se.line);
    if (const IniEntry* e = r.get("seed")) c.seed = util::parse_u64(*e);
    c.spinup = r.number("spinup", 0.0);
    if (!(c.spinup >= 0.0)) throw ParseError("spinup must be >= 0", r.line());
    c.cfl = r.number("cfl", 1.0);
    if (!positive(c.cfl)) throw ParseError("cfl must be > 0", r.line());
    if (const IniEntry* e = r.get("fold")) c.fold = lookup<dynamics::FoldMode>(kFold, *e, "fold mode");
    if (const IniEntry* e = r.get("tail_fraction")) {
      c.tail_fraction = util::parse_double(*e);
      if (!(c.tail_fraction > 0.0 && c.tail_fraction <= 1.0)) {
        throw ParseError("tail_fraction must lie in (0, 1]", e->line);
      }
    }
    if (const IniEntry* e = r.get("decay_ratio")) {
      c.decay_ratio = util::parse_double(*e);
      if (!(c.decay_ratio > 0.0 && c.decay_ratio < 1.0)) {
        throw ParseError("decay_ratio must lie in (0, 1)", e->line);
      }
    }
    if (const IniEntry* e = r.get("modes_N")) c.modes_N = parse_list(*e);
    r.finish();
  }
  {
    Reader r = section("grid", true);
    const IniEntry& n = r.require("n");
    c.n = parse_int_entry(n);
    if (const IniEntry* e = r.get("dealias_radius")) c.dealias_radius = util::parse_double(*e);
    try {
      (void)config_grid(c);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), n.line);
    }
    r.finish();
  }
  {
    Reader r = section("physics", true);
    const IniEntry& nu = r.require("nu");
    c.nu = util::parse_double(nu);
    if (!positive(c.nu)) throw ParseError("nu must be > 0", nu.line);
    const IniEntry* K = r.get("K");
    c.K = K ? util::parse_double(*K) : 0.0;
    if (!(c.K >= 0.0)) throw ParseError("K must be >= 0", K ? K->line : r.line());
    r.finish();
  }
  {
    Reader r = section("matrix", false);
    const bool needs = c.scenario != ScenarioKind::FdssDeterminingModes;
    if (r.present() && !needs) {
      throw ParseError("fdss_determining_modes runs uncoupled copies; remove [matrix]", r.line());
    }
    if (!r.present() && needs) throw ParseError("missing required section [matrix]");
    if (r.present()) c.matrix = read_matrix(r);
    const int line = r.line();
    if (c.scenario == ScenarioKind::ReconstructionNudge &&
        !(c.matrix.cls() == MatrixClass::NudgeMut && c.matrix.mu1() == 0.0)) {
      throw ParseError("reconstruction_nudge requires class = NudgeMut with mu1 = 0", line);
    }
    if (c.scenario == ScenarioKind::ReconstructionDR &&
        !(c.matrix.cls() == MatrixClass::DRMut && c.matrix.theta1() == 0.0)) {
      throw ParseError("reconstruction_dr requires class = DRMut with theta1 = 0", line);
    }
  }
  c.force1 = read_force(section("force1", false), false);
  c.force2 = read_force(section("force2", false), true);
  c.initial1 = read_initial(section("initial1", false), false);
  c.initial2 = read_initial(section("initial2", false), true);
  {
    Reader r = section("sweep", false);
    if (const IniEntry* e = r.get("K")) c.sweep.K = parse_list(*e);
    if (const IniEntry* e = r.get("param1")) c.sweep.param1 = parse_list(*e);
    if (const IniEntry* e = r.get("param2")) c.sweep.param2 = parse_list(*e);
    if (const IniEntry* e = r.get("amplitudes")) c.sweep.amplitudes = parse_list(*e);
    r.finish();
  }
  {
    Reader r = section("output", false);
    if (const IniEntry* e = r.get("dir")) c.output_dir = e->value;
    if (const IniEntry* e = r.get("constants")) c.constants_path = e->value;
    r.finish();
  }
  return c;
}

ExperimentConfig parse_config(const std::string& path) {
  return parse_config_text(util::read_text_file(path));
}

std::string serialize_config(const ExperimentConfig& c) {
  std::string out = "[run]\n";
  out += "scenario = " + to_string(c.scenario) + "\n";
  out += "dt = " + format_double(c.dt) + "\n";
  out += "t_end = " + format_double(c.t_end) + "\n";
  out += "sample_every = " + format_double(c.sample_every) + "\n";
  out += "seed = " + std::to_string(c.seed) + "\n";
  out += "spinup = " + format_double(c.spinup) + "\n";
  out += "cfl = " + format_double(c.cfl) + "\n";
  out += "fold = " + name_of(kFold, c.fold) + "\n";
  out += "tail_fraction = " + format_double(c.tail_fraction) + "\n";
  out += "decay_ratio = " + format_double(c.decay_ratio) + "\n";
  if (!c.modes_N.empty()) out += "modes_N = " + list_text(c.modes_N) + "\n";
  out += "\n[grid]\nn = " + std::to_string(c.n) + "\n";
  if (c.dealias_radius) out += "dealias_radius = " + format_double(*c.dealias_radius) + "\n";
  out += "\n[physics]\nnu = " + format_double(c.nu) + "\nK = " + format_double(c.K) + "\n";
  if (c.scenario != ScenarioKind::FdssDeterminingModes) write_matrix(out, c.matrix);
  write_force(out, "force1", c.force1);
  write_force(out, "force2", c.force2);
  write_initial(out, "initial1", c.initial1);
  write_initial(out, "initial2", c.initial2);
  const auto& s = c.sweep;
  if (!s.K.empty() || !s.param1.empty() || !s.param2.empty() || !s.amplitudes.empty()) {
    out += "\n[sweep]\n";
    if (!s.K.empty()) out += "K = " + list_text(s.K) + "\n";
    if (!s.param1.empty()) out += "param1 = " + list_text(s.param1) + "\n";
    if (!s.param2.empty()) out += "param2 = " + list_text(s.param2) + "\n";
    if (!s.amplitudes.empty()) out += "amplitudes = " + list_text(s.amplitudes) + "\n";
  }
  out += "\n[output]\ndir = " + c.output_dir + "\n";
  if (!c.constants_path.empty()) out += "constants = " + c.constants_path + "\n";
  return out;
}

spectral::Grid config_grid(const ExperimentConfig& c) {
  return c.dealias_radius ? spectral::Grid(c.n, *c.dealias_radius) : spectral::Grid(c.n);
}

spectral::SpectralField build_field(const spectral::Grid& g, const FieldSpec& f,
                                    std::uint64_t master_seed, std::uint64_t stream) {
  switch (f.shape) {
    case FieldShape::Zero: return spectral::SpectralField(g);
    case FieldShape::Kolmogorov: return dynamics::kolmogorov_field(g, f.amplitude, f.wavenumber);
    case FieldShape::Modes: return spectral::dealias(dynamics::field_from_modes(g, f.modes));
    case FieldShape::Random: {
      spectral::RandomFieldSpec r;
      r.seed = f.seed ? *f.seed : spectral::derive_seed(master_seed, stream);
      r.slope = f.slope;
      r.kmin = f.kmin;
      r.kmax = f.kmax;
      r.l2 = f.l2;
      r.h1 = f.h1;
      return spectral::random_field(g, r);
    }
  }
  return spectral::SpectralField(g);
}

namespace {

std::shared_ptr<const dynamics::Forcing> make_force(const spectral::Grid& g, const ForceConfig& f,
                                                    const spectral::SpectralField* force1_base,
                                                    std::uint64_t seed, std::uint64_t base_stream,
                                                    std::uint64_t delta_stream) {
  using dynamics::Forcing;
  switch (f.kind) {
    case ForceKind::Zero: return std::make_shared<const Forcing>(Forcing::zero(g));
    case ForceKind::Steady:
      return std::make_shared<const Forcing>(Forcing::steady(build_field(g, f.base, seed, base_stream)));
    case ForceKind::Periodic:
      return std::make_shared<const Forcing>(
          Forcing::time_periodic(build_field(g, f.base, seed, base_stream), f.omega));
    case ForceKind::Decaying: {
      spectral::SpectralField base = f.base_from_force1 && force1_base
                                         ? *force1_base
                                         : build_field(g, f.base, seed, base_stream);
      return std::make_shared<const Forcing>(Forcing::decaying_pair_delta(
          std::move(base), build_field(g, f.delta, seed, delta_stream), f.alpha));
    }
    case ForceKind::Same: break;
  }
  throw ConfigInvalid("kind = same cannot be built on its own");
}

}  // namespace

dynamics::StepperOptions stepper_options(const ExperimentConfig& c) {
  dynamics::StepperOptions o;
  o.dt = c.dt;
  o.cfl = c.cfl;
  o.fold = c.fold;
  return o;
}

dynamics::IntertwinedState build_state(const ExperimentConfig& c) {
  const spectral::Grid g = config_grid(c);
  auto g1 = make_force(g, c.force1, nullptr, c.seed, kStreamForce1, kStreamDelta1);
  std::shared_ptr<const dynamics::Forcing> g2;
  if (c.force2.kind == ForceKind::Same) {
    g2 = g1;
  } else {
    g2 = make_force(g, c.force2, &g1->base(), c.seed, kStreamForce2, kStreamDelta2);
  }

  spectral::SpectralField v1 = c.initial1.kind == InitialKind::Zero
                                   ? spectral::SpectralField(g)
                                   : build_field(g, c.initial1.field, c.seed, kStreamInitial1);
  if (c.spinup > 0.0) {
    auto steady = std::make_shared<const dynamics::Forcing>(dynamics::Forcing::steady(g1->base()));
    dynamics::IntertwinedState warm(0.0, c.nu, 0.0, IntertwiningMatrix::nudge_mut(0.0, 0.0), v1,
                                    spectral::SpectralField(g), steady, steady);
    dynamics::Stepper stepper(stepper_options(c));
    v1 = stepper.integrate(std::move(warm), c.spinup, c.spinup, nullptr).v1;
  }
  spectral::SpectralField v2(g);
  switch (c.initial2.kind) {
    case InitialKind::Zero: break;
    case InitialKind::Field: v2 = build_field(g, c.initial2.field, c.seed, kStreamInitial2); break;
    case InitialKind::Perturb:
      v2 = v1;
      v2 += build_field(g, c.initial2.field, c.seed, kStreamInitial2);
      break;
  }
  dynamics::IntertwinedState s(0.0, c.nu, c.K, c.matrix, std::move(v1), std::move(v2), g1, g2);
  s.validate();
  return s;
}

}  // namespace intwine::harness
