#include <precollapse/cli.hpp>

#include <precollapse/error.hpp>
#include <precollapse/format.hpp>
#include <precollapse/laser_probe.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace precollapse::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value, const char *expected) {
  throw Error(ErrorKind::Config, key + ": cannot parse '" + value + "', expected " + expected);
}

double to_double(const std::string &key, const std::string &value) {
  char *end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v)) {
    bad_value(key, value, "a finite number");
  }
  return v;
}

std::uint64_t to_u64(const std::string &key, const std::string &value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, "a non-negative integer");
  }
  return v;
}

int to_int(const std::string &key, const std::string &value) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, "an integer");
  }
  return v;
}

bool to_bool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1" || value == "yes") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no") {
    return false;
  }
  bad_value(key, value, "true or false");
}

struct Field {
  const char *key;
  std::function<void(InputBundle &, const std::string &key, const std::string &value)> set;
  std::function<std::string(const InputBundle &)> get;
};

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

#define DOUBLE_FIELD(KEY, MEMBER)                                                                  \
  Field {                                                                                          \
    KEY, [](InputBundle &b, const std::string &k, const std::string &v) { b.MEMBER = to_double(k, v); }, \
        [](const InputBundle &b) { return format_double(b.MEMBER); }                               \
  }

const std::vector<Field> &fields() {
  static const std::vector<Field> table{
      DOUBLE_FIELD("beam_speed_m_per_s", experiment.beam_speed),
      DOUBLE_FIELD("separation_m", experiment.separation),
      DOUBLE_FIELD("laser_wavelength_m", experiment.wavelength),
      DOUBLE_FIELD("laser_angle_rad", experiment.laser_angle),
      DOUBLE_FIELD("laser_lead_time_s", experiment.laser_lead_time),
      DOUBLE_FIELD("focal_spot_width_m", experiment.focal_spot_width),
      DOUBLE_FIELD("peak_excitation_p0", experiment.p0),
      DOUBLE_FIELD("lifetime_s", experiment.lifetime),
      DOUBLE_FIELD("detector_efficiency", experiment.detector_efficiency),
      DOUBLE_FIELD("dark_rate_per_s", experiment.dark_rate),
      Field{"atom_count",
            [](InputBundle &b, const std::string &k, const std::string &v) { b.experiment.atom_count = to_u64(k, v); },
            [](const InputBundle &b) { return std::to_string(b.experiment.atom_count); }},
      DOUBLE_FIELD("atom_flux_per_s", experiment.atom_flux),
      Field{"scenario",
            [](InputBundle &b, const std::string &, const std::string &v) {
              b.experiment.scenario = ScenarioKind::parse(v);
            },
            [](const InputBundle &b) { return b.experiment.scenario.to_string(); }},
      Field{"master_seed",
            [](InputBundle &b, const std::string &k, const std::string &v) { b.experiment.master_seed = to_u64(k, v); },
            [](const InputBundle &b) { return std::to_string(b.experiment.master_seed); }},
      Field{"evaluate_at_spot_entry",
            [](InputBundle &b, const std::string &k, const std::string &v) {
              b.experiment.evaluate_at_spot_entry = to_bool(k, v);
            },
            [](const InputBundle &b) { return fmt_bool(b.experiment.evaluate_at_spot_entry); }},
      Field{"autotune",
            [](InputBundle &b, const std::string &k, const std::string &v) { b.experiment.autotune = to_bool(k, v); },
            [](const InputBundle &b) { return fmt_bool(b.experiment.autotune); }},
      DOUBLE_FIELD("species_mass_kg", beam.mass),
      DOUBLE_FIELD("grating_period_m", beam.grating_period),
      Field{"diffraction_order",
            [](InputBundle &b, const std::string &k, const std::string &v) { b.beam.diffraction_order = to_int(k, v); },
            [](const InputBundle &b) { return std::to_string(b.beam.diffraction_order); }},
      DOUBLE_FIELD("arm_length_m", beam.arm_length),
      Field{"grating_pairs",
            [](InputBundle &b, const std::string &k, const std::string &v) { b.beam.grating_pairs = to_int(k, v); },
            [](const InputBundle &b) { return std::to_string(b.beam.grating_pairs); }},
      DOUBLE_FIELD("collision_atom_mass_kg", collisions.atom_mass),
      DOUBLE_FIELD("collision_atom_speed_m_per_s", collisions.atom_speed),
      DOUBLE_FIELD("collision_mean_free_path_m", collisions.mean_free_path),
      DOUBLE_FIELD("phase_threshold_rad", collisions.phase_threshold),
  };
  return table;
}

#undef DOUBLE_FIELD

const Field *find_field(const std::string &key) {
  for (const Field &f : fields()) {
    if (key == f.key) {
      return &f;
    }
  }
  return nullptr;
}

void rethrow_as_config(const char *section, const Error &e) {
  if (e.kind() == ErrorKind::Config) {
    throw e;
  }
  throw Error(ErrorKind::Config, std::string(section) + ": " + e.what());
}

} // namespace

void finalize(InputBundle &bundle) {
  ExperimentConfig &cfg = bundle.experiment;
  cfg.validate();
  if (cfg.autotune) {
    const double cos_angle = std::cos(cfg.laser_angle);
    const double projected = cfg.separation * cos_angle;
    if (laser::classify_separation(projected, cfg.wavelength).parity != laser::Parity::Odd) {
      const auto tuned = laser::tune_separation(projected, cfg.wavelength);
      const double before = cfg.separation;
      cfg.separation = tuned.separation / cos_angle;
      bundle.notes.push_back("autotune: separation_m " + format_double(before) + " -> " +
                             format_double(cfg.separation) + " (n = " + std::to_string(tuned.half_waves) +
                             " half wavelengths, adjustment " + format_double(tuned.adjustment) + " m)");
    }
  }
  // The beam spec shares the atom speed with the experiment.
  bundle.beam.speed = cfg.beam_speed;
  try {
    bundle.beam.validate();
  } catch (const Error &e) {
    rethrow_as_config("beam spec", e);
  }
  try {
    bundle.collisions.validate();
  } catch (const Error &e) {
    rethrow_as_config("collision environment", e);
  }
}

InputBundle parse_config_text(std::string_view text) {
  InputBundle bundle;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const Field *field = find_field(key);
    if (field == nullptr) {
      throw Error(ErrorKind::Config, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    try {
      field->set(bundle, key, value);
    } catch (const Error &e) {
      rethrow_as_config(key.c_str(), e);
    }
  }
  finalize(bundle);
  return bundle;
}

InputBundle parse_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Config, "cannot open config file '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const InputBundle &bundle) {
  std::string out;
  for (const Field &f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(bundle);
    out += '\n';
  }
  return out;
}

std::string config_hash(const InputBundle &bundle) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_config(bundle)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace precollapse::cli
