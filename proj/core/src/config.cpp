#include "abcwave/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "abcwave/io.hpp"

namespace abcwave {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Simulate: return "simulate";
    case ExperimentKind::Spectrum: return "spectrum";
    case ExperimentKind::Steady: return "steady";
    case ExperimentKind::Verify: return "verify";
    case ExperimentKind::Convergence: return "convergence";
    case ExperimentKind::Asymptotics: return "asymptotics";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const std::filesystem::path& dir)
      : text_(text), dir_(dir) {}

  RunConfig parse() {
    std::istringstream in(text_);
    std::string raw;
    std::string section;
    while (std::getline(in, raw)) {
      ++line_;
      const size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      const std::string line = trim(raw);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail("malformed section header");
        section = trim(line.substr(1, line.size() - 2));
        if (section != "domain" && section != "coefficients" &&
            section != "initial" && section != "stepper" &&
            section != "output") {
          fail("unknown section [" + section + "]");
        }
        continue;
      }
      const size_t eq = line.find('=');
      if (eq == std::string::npos) fail("expected key = value");
      if (section.empty()) fail("key outside of any section");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail("empty key");
      if (!seen_.insert(section + "." + key).second) {
        fail("duplicate key '" + key + "' in section [" + section + "]");
      }
      assign(section, key, value);
    }
    validate();
    return cfg_;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigParseError("line " + std::to_string(line_) + ": " + msg);
  }

  double to_double(const std::string& v) const {
    try {
      size_t used = 0;
      const double x = std::stod(v, &used);
      if (used != v.size()) fail("trailing characters in number '" + v + "'");
      return x;
    } catch (const std::invalid_argument&) {
      fail("expected a number, got '" + v + "'");
    } catch (const std::out_of_range&) {
      fail("number out of range: '" + v + "'");
    }
  }

  int to_int(const std::string& v) const {
    try {
      size_t used = 0;
      const int x = std::stoi(v, &used);
      if (used != v.size()) fail("trailing characters in integer '" + v + "'");
      return x;
    } catch (const std::invalid_argument&) {
      fail("expected an integer, got '" + v + "'");
    } catch (const std::out_of_range&) {
      fail("integer out of range: '" + v + "'");
    }
  }

  bool to_bool(const std::string& v) const {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail("expected a boolean, got '" + v + "'");
  }

  Profile to_profile(const std::string& v) const {
    const size_t colon = v.find(':');
    if (colon == std::string::npos) {
      fail("profile must look like kind:params, got '" + v + "'");
    }
    const std::string kind = trim(v.substr(0, colon));
    const std::vector<std::string> params = split(v.substr(colon + 1), ',');
    auto want = [&](size_t n) {
      if (params.size() != n) {
        fail("profile '" + kind + "' takes " + std::to_string(n) +
             " parameter(s), got " + std::to_string(params.size()));
      }
    };
    if (kind == "constant") {
      want(1);
      return Profile::constant(to_double(trim(params[0])));
    }
    if (kind == "radial") {
      want(2);
      return Profile::radial(to_double(trim(params[0])),
                             to_double(trim(params[1])));
    }
    if (kind == "angular") {
      want(3);
      return Profile::angular(to_double(trim(params[0])),
                              to_double(trim(params[1])),
                              to_int(trim(params[2])));
    }
    if (kind == "file") {
      want(1);
      const std::filesystem::path p = dir_ / trim(params[0]);
      try {
        return Profile::nodal(read_nodal_csv(p));
      } catch (const Error& e) {
        fail(std::string("bad nodal profile file: ") + e.what());
      }
    }
    fail("unknown profile kind '" + kind + "'");
  }

  std::vector<double> to_double_list(const std::string& v) const {
    std::vector<double> out;
    for (const std::string& part : split(v, ',')) {
      const std::string t = trim(part);
      if (!t.empty()) out.push_back(to_double(t));
    }
    return out;
  }

  void assign(const std::string& section, const std::string& key,
              const std::string& value) {
    if (section == "domain") {
      if (key == "kind") {
        if (value == "disk") {
          cfg_.domain.kind = DomainSpec::Kind::Disk;
        } else if (value == "annulus") {
          cfg_.domain.kind = DomainSpec::Kind::Annulus;
        } else {
          fail("domain kind must be disk or annulus, got '" + value + "'");
        }
      } else if (key == "outer_radius") {
        cfg_.domain.outer_radius = to_double(value);
      } else if (key == "inner_radius") {
        cfg_.domain.inner_radius = to_double(value);
      } else if (key == "n_theta") {
        cfg_.domain.n_theta = to_int(value);
      } else if (key == "n_r") {
        cfg_.domain.n_r = to_int(value);
      } else {
        fail("unknown key '" + key + "' in section [domain]");
      }
    } else if (section == "coefficients") {
      if (key == "d") {
        cfg_.coefficients.d = to_profile(value);
      } else if (key == "mu") {
        cfg_.coefficients.mu = to_profile(value);
      } else if (key == "sigma") {
        cfg_.coefficients.sigma = to_profile(value);
      } else if (key == "delta") {
        cfg_.coefficients.delta = to_profile(value);
      } else if (key == "kappa") {
        cfg_.coefficients.kappa = to_profile(value);
      } else if (key == "rho0") {
        cfg_.coefficients.rho0 = to_double(value);
      } else if (key == "c") {
        cfg_.coefficients.c = to_double(value);
      } else {
        fail("unknown key '" + key + "' in section [coefficients]");
      }
    } else if (section == "initial") {
      if (key == "u0") {
        cfg_.initial.u0 = to_profile(value);
      } else if (key == "v0") {
        cfg_.initial.v0 = to_profile(value);
      } else if (key == "u1") {
        cfg_.initial.u1 = to_profile(value);
      } else if (key == "v1") {
        cfg_.initial.v1 = to_profile(value);
      } else {
        fail("unknown key '" + key + "' in section [initial]");
      }
    } else if (section == "stepper") {
      if (key == "dt") {
        cfg_.stepper.dt = value == "auto" ? 0.0 : to_double(value);
      } else if (key == "t_end") {
        cfg_.stepper.t_end = to_double(value);
      } else if (key == "record_every") {
        cfg_.stepper.record_every = to_int(value);
      } else if (key == "solver_tol") {
        cfg_.stepper.solver_tol = to_double(value);
      } else {
        fail("unknown key '" + key + "' in section [stepper]");
      }
    } else if (section == "output") {
      if (key == "directory") {
        cfg_.output.directory = value;
      } else if (key == "snapshot_times") {
        cfg_.output.snapshot_times = to_double_list(value);
      } else if (key == "vtk") {
        cfg_.output.vtk = to_bool(value);
      } else if (key == "dump_matrices") {
        cfg_.output.dump_matrices = to_bool(value);
      } else {
        fail("unknown key '" + key + "' in section [output]");
      }
    }
  }

  void validate() const {
    try {
      cfg_.domain.validate();
    } catch (const InvalidSpecError& e) {
      throw ConfigValidationError(std::string("[domain] ") + e.what());
    }
    if (!(cfg_.stepper.t_end > 0.0)) {
      throw ConfigValidationError("[stepper] t_end must be positive");
    }
    if (cfg_.stepper.record_every < 1) {
      throw ConfigValidationError("[stepper] record_every must be at least 1");
    }
    if (!(cfg_.stepper.solver_tol > 0.0)) {
      throw ConfigValidationError("[stepper] solver_tol must be positive");
    }
    if (cfg_.output.directory.empty()) {
      throw ConfigValidationError("[output] directory must not be empty");
    }
  }

  std::string text_;
  std::filesystem::path dir_;
  int line_ = 0;
  std::set<std::string> seen_;
  RunConfig cfg_;
};

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::filesystem::path& dir) {
  return Parser(text, dir).parse();
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigParseError("cannot open config file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.parent_path().empty()
                                          ? std::filesystem::path(".")
                                          : path.parent_path());
}

}  // namespace abcwave
