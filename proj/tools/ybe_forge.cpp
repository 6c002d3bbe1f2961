// ybe_forge: run identity suites, print Boltzmann weight tables, study convergence.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>

#include "ybe/format.hpp"
#include "ybe/suites.hpp"

using namespace ybe;

namespace {

using Settings = std::map<std::string, std::string>;

const std::vector<std::string> kKeys{"suite", "seed", "samples", "tolerance", "trunc", "format", "out", "timing",
                                     "q", "p", "w", "z", "max_terms", "tail_tolerance", "target", "nmin",
                                     "nmax", "lmin", "lmax"};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Settings read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  Settings s;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(n) + ": expected key=value");
    std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    std::replace(k.begin(), k.end(), '-', '_');
    if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end())
      throw ConfigError(path + ":" + std::to_string(n) + ": unknown key '" + k + "'");
    s[k] = v;
  }
  return s;
}

template <class T>
T as(const Settings& s, const std::string& key, T dflt) {
  auto it = s.find(key);
  if (it == s.end()) return dflt;
  const std::string& v = it->second;
  try {
    std::size_t used = 0;
    T out;
    if constexpr (std::is_same_v<T, double>) out = std::stod(v, &used);
    else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
      out = std::stoull(v, &used);
    } else out = static_cast<T>(std::stoll(v, &used));
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(key + ": invalid value '" + v + "'");
  }
}

bool as_bool(const Settings& s, const std::string& key) {
  auto it = s.find(key);
  if (it == s.end()) return false;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  throw ConfigError(key + ": expected true/false");
}

std::string as_str(const Settings& s, const std::string& key, const std::string& dflt) {
  auto it = s.find(key);
  return it == s.end() ? dflt : it->second;
}

TruncationPolicy policy_from(const Settings& s) {
  TruncationPolicy p;
  p.max_terms = as<int>(s, "max_terms", p.max_terms);
  p.hard_cap = std::max(p.hard_cap, p.max_terms);
  p.tail_tolerance = as<double>(s, "tail_tolerance", p.tail_tolerance);
  p.validate();
  return p;
}

double fixed_param(const Settings& s, const std::string& k, double dflt) {
  auto it = s.find(k);
  if (it == s.end()) return dflt;
  Range r = parse_range(k, it->second);
  if (!r.fixed()) throw ConfigError(k + ": a single value is required here");
  return r.lo;
}

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Output(const Settings& s) {
    auto it = s.find("out");
    if (it != s.end() && !it->second.empty() && it->second != "-") {
      file.open(it->second, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file '" + it->second + "'");
      os = &file;
    }
  }
};

int cmd_check(const Settings& s) {
  SuiteConfig c;
  c.suite = as_str(s, "suite", c.suite);
  c.seed = as<std::uint64_t>(s, "seed", c.seed);
  c.samples = as<int>(s, "samples", c.samples);
  if (s.count("tolerance")) {
    c.tolerance = as<double>(s, "tolerance", 0.0);
    if (!(c.tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
  }
  c.trunc = as<int>(s, "trunc", 0);
  if (s.count("trunc") && c.trunc < 1) throw ConfigError("trunc must be >= 1");
  c.format = as_str(s, "format", c.format);
  c.timing = as_bool(s, "timing");
  for (const char* k : {"q", "p", "w", "z"})
    if (s.count(k)) c.overrides[k] = parse_range(k, s.at(k));
  c.policy = policy_from(s);
  c.validate();
  auto reps = run_suite(c);
  Output out(s);
  write_reports(*out.os, reps, c.format);
  bool ok = std::all_of(reps.begin(), reps.end(), [](const ResidualReport& r) { return r.pass; });
  return ok ? 0 : 1;
}

int cmd_weights(const Settings& s) {
  const double q = fixed_param(s, "q", 0.4), p = fixed_param(s, "p", 0.2), w = fixed_param(s, "w", 0.9),
               z = fixed_param(s, "z", 0.5);
  const int lmin = as<int>(s, "lmin", -2), lmax = as<int>(s, "lmax", 2);
  const std::string format = as_str(s, "format", "json");
  if (lmax < lmin) throw ConfigError("height range needs lmin <= lmax");
  if (lmax - lmin > 200) throw ConfigError("height range too wide");
  if (format != "json" && format != "csv" && format != "text") throw ConfigError("format must be json, csv or text");
  if (!(q > 0 && q < 1 && p > 0 && p < 1)) throw ConfigError("q and p must lie in (0,1)");
  TruncationPolicy pol = policy_from(s);
  Output out(s);
  std::ostream& os = *out.os;
  if (format == "csv") os << "l,lp,m,mp,w_shift,re,im,flag\n";
  for (int l = lmin; l <= lmax; ++l)
    for (int lp : {l - 1, l + 1})
      for (int m : {l - 1, l + 1})
        for (int mp : {lp - 1, lp + 1}) {
          if (!admissible(l, lp, m, mp)) continue;
          double ws = w * std::pow(q, l);
          cplx v = 0.0;
          std::string flag = "ok";
          try {
            v = boltzmann_weight(l, lp, m, mp, z, p, w, q, pol);
            if (!std::isfinite(std::abs(v))) flag = "PoleHit";
          } catch (const PoleHit&) {
            flag = "PoleHit";
          }
          if (format == "json") {
            nlohmann::ordered_json j;
            j["l"] = l;
            j["lp"] = lp;
            j["m"] = m;
            j["mp"] = mp;
            j["w_shift"] = ws;
            j["re"] = flag == "ok" ? nlohmann::ordered_json(v.real()) : nlohmann::ordered_json(nullptr);
            j["im"] = flag == "ok" ? nlohmann::ordered_json(v.imag()) : nlohmann::ordered_json(nullptr);
            j["flag"] = flag;
            os << j.dump() << '\n';
          } else if (format == "csv") {
            os << l << ',' << lp << ',' << m << ',' << mp << ',' << fmt_double(ws) << ',' << fmt_double(v.real()) << ','
               << fmt_double(v.imag()) << ',' << flag << '\n';
          } else {
            os << "W(" << l << "," << lp << "," << m << "," << mp << ")  w_shift=" << fmt_double(ws) << "  "
               << fmt_double(v.real()) << (v.imag() < 0 ? " - " : " + ") << fmt_double(std::abs(v.imag())) << "i  "
               << flag << '\n';
          }
        }
  return 0;
}

int cmd_converge(const Settings& s) {
  const std::string target = as_str(s, "target", "twist");
  const int nmin = as<int>(s, "nmin", 1), nmax = as<int>(s, "nmax", 6);
  const std::string format = as_str(s, "format", "json");
  if (format != "json" && format != "csv" && format != "text") throw ConfigError("format must be json, csv or text");
  Params params;
  for (const char* k : {"q", "p", "w", "z"})
    if (s.count(k)) params[k] = fixed_param(s, k, 0.0);
  ConvergeResult res = converge(target, nmin, nmax, params, policy_from(s));
  Output out(s);
  std::ostream& os = *out.os;
  if (format == "csv") os << "target,N,residual\n";
  for (auto& r : res.rows) {
    if (format == "json") {
      nlohmann::ordered_json j;
      j["target"] = target;
      j["N"] = r.N;
      j["residual"] = r.residual;
      os << j.dump() << '\n';
    } else if (format == "csv") {
      os << target << ',' << r.N << ',' << fmt_double(r.residual) << '\n';
    } else {
      os << "N=" << std::setw(4) << r.N << "  residual=" << std::scientific << std::setprecision(6) << r.residual << '\n';
    }
  }
  if (format == "json") {
    nlohmann::ordered_json j;
    j["target"] = target;
    j["params"] = nlohmann::ordered_json(res.params);
    j["monotone"] = res.monotone;
    j["rate"] = res.has_fit ? nlohmann::ordered_json(res.rate) : nlohmann::ordered_json(nullptr);
    os << j.dump() << '\n';
  } else if (format == "csv") {
    os << "# monotone=" << (res.monotone ? "true" : "false") << ",rate=" << (res.has_fit ? fmt_double(res.rate) : "none")
       << ",params=" << kv_string(res.params) << '\n';
  } else {
    os << "monotone: " << (res.monotone ? "yes" : "no") << "  fitted rate: "
       << (res.has_fit ? fmt_double(res.rate) : std::string("n/a")) << "  (" << kv_string(res.params) << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ybe_forge: residual checks for 6V/8V/IRF R-matrices, twists and gauge transformations"};
  app.require_subcommand(1);
  Settings flags;
  std::string config;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "key=value file; flags take precedence");
    sub->add_option("--seed", flags["seed"], "64-bit seed for mt19937_64");
    sub->add_option("--samples", flags["samples"], "points per suite");
    sub->add_option("--tolerance", flags["tolerance"], "override every check's tolerance");
    sub->add_option("--trunc", flags["trunc"], "N for product routes");
    sub->add_option("--format", flags["format"], "json (NDJSON), csv or text");
    sub->add_option("--out", flags["out"], "output file (default stdout)");
    sub->add_option("--q", flags["q"], "value or lo:hi");
    sub->add_option("--p", flags["p"], "value or lo:hi");
    sub->add_option("--w", flags["w"], "value or lo:hi");
    sub->add_option("--z", flags["z"], "value or lo:hi (modulus)");
    sub->add_option("--max-terms", flags["max_terms"], "series/product term budget");
    sub->add_option("--tail-tolerance", flags["tail_tolerance"], "series/product stopping threshold");
  };
  auto* check = app.add_subcommand("check", "run identity suites");
  add_common(check);
  check->add_option("--suite", flags["suite"],
                    "qspecial|cartan|evalrep|qybe6v|qybe8v|qdybe-irf|twist|vertex-irf|hexagonal|all");
  check->add_flag("--timing", "measure wall_ms (output is then not byte-reproducible)");
  auto* weights = app.add_subcommand("weights", "table of admissible Boltzmann weights");
  add_common(weights);
  weights->add_option("--lmin", flags["lmin"], "lowest height");
  weights->add_option("--lmax", flags["lmax"], "highest height");
  auto* conv = app.add_subcommand("converge", "residual against truncation order N");
  add_common(conv);
  conv->add_option("--target", flags["target"], "twist|m_plus|m_minus|r6v_universal|r_irf_twist");
  conv->add_option("--nmin", flags["nmin"], "first N");
  conv->add_option("--nmax", flags["nmax"], "last N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Settings s;
    if (!config.empty()) s = read_config(config);
    CLI::App* sub = app.get_subcommands().front();
    for (auto& [k, v] : flags) {
      std::string opt = "--" + k;
      std::replace(opt.begin(), opt.end(), '_', '-');
      bool given = false;
      try {
        given = sub->count(opt) > 0;
      } catch (const CLI::OptionNotFound&) {
      }
      if (given) s[k] = v;
    }
    if (check->parsed() && check->count("--timing")) s["timing"] = "true";
    if (check->parsed()) return cmd_check(s);
    if (weights->parsed()) return cmd_weights(s);
    return cmd_converge(s);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 3;
  }
}
