#include "agsplab/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace agsplab {

namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model", {"family", "n", "alpha", "J", "B", "A", "A_table", "Bpair", "Bpair_table", "Jtilde", "mu"}},
      {"blocks", {"q", "l", "cut"}},
      {"effective", {"tau", "tau_grid"}},
      {"agsp", {"m", "m_grid", "sr_m_max", "p_max"}},
      {"sweep", {}},
      {"output", {"dir", "seed", "tolerance", "bond_dims"}},
  };
  return keys;
}

const std::set<std::string> kListKeys{"tau_grid", "m_grid", "bond_dims"};
const std::set<std::string> kFermionOnly{"A", "A_table", "Bpair", "Bpair_table", "Jtilde", "mu"};
const std::set<std::string> kIsingOnly{"J", "B"};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& text, int line, const std::string& key) {
  try {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "key " + key + ": expected a number, got '" + text + "'");
  }
}

long to_long(const std::string& text, int line, const std::string& key) {
  try {
    size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "key " + key + ": expected an integer, got '" + text + "'");
  }
}

void check_key(const std::string& section, const std::string& key, int line) {
  const auto& keys = allowed_keys();
  auto it = keys.find(section);
  if (it == keys.end()) throw ConfigError(line, "unknown section [" + section + "]");
  if (!it->second.count(key)) throw ConfigError(line, "unknown key '" + key + "' in [" + section + "]");
}

}  // namespace

RawConfig parse_config_text(const std::string& text) {
  RawConfig raw;
  std::stringstream in(text);
  std::string line_text, section;
  int line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    std::string s = line_text.substr(0, line_text.find('#'));
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!allowed_keys().count(section)) throw ConfigError(line, "unknown section [" + section + "]");
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key = value");
    if (section.empty()) throw ConfigError(line, "key outside of any section");
    std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "empty key");
    if (value.empty()) throw ConfigError(line, "empty value for key " + key);
    if (section == "sweep") {
      size_t dot = key.find('.');
      if (dot == std::string::npos) throw ConfigError(line, "sweep keys must be written section.key");
      std::string sec = key.substr(0, dot), k = key.substr(dot + 1);
      if (sec == "sweep") throw ConfigError(line, "cannot sweep the sweep section");
      check_key(sec, k, line);
      if (kListKeys.count(k)) throw ConfigError(line, "cannot sweep list-valued key " + key);
      for (const auto& [existing, _] : raw.sweep)
        if (existing == key) throw ConfigError(line, "duplicate sweep key " + key);
      raw.sweep.push_back({key, RawEntry{value, line}});
      continue;
    }
    check_key(section, key, line);
    auto& sec = raw.sections[section];
    if (sec.count(key)) throw ConfigError(line, "duplicate key " + key);
    sec[key] = RawEntry{value, line};
  }
  return raw;
}

RawConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(0, "cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  RawConfig raw = parse_config_text(ss.str());
  auto parent = std::filesystem::path(path).parent_path();
  raw.base_dir = parent.empty() ? "." : parent.string();
  return raw;
}

ExperimentConfig to_config(const RawConfig& raw) {
  ExperimentConfig c;
  c.base_dir = raw.base_dir;
  auto get = [&](const std::string& sec, const std::string& key) -> const RawEntry* {
    auto s = raw.sections.find(sec);
    if (s == raw.sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };
  auto num = [&](const std::string& sec, const std::string& key, double& out) {
    if (auto e = get(sec, key)) out = to_double(e->value, e->line, key);
  };
  auto integer = [&](const std::string& sec, const std::string& key, auto& out) {
    if (auto e = get(sec, key)) out = static_cast<std::remove_reference_t<decltype(out)>>(to_long(e->value, e->line, key));
  };

  auto& m = c.model;
  if (auto e = get("model", "family")) {
    m.family = e->value;
    if (m.family != "ising" && m.family != "fermion")
      throw ConfigError(e->line, "family must be ising or fermion, got '" + m.family + "'");
  }
  if (auto s = raw.sections.find("model"); s != raw.sections.end())
    for (const auto& [key, entry] : s->second) {
      if (m.family == "ising" && kFermionOnly.count(key))
        throw ConfigError(entry.line, "key " + key + " is not used by family ising");
      if (m.family == "fermion" && kIsingOnly.count(key))
        throw ConfigError(entry.line, "key " + key + " is not used by family fermion");
    }
  const RawEntry* n_entry = get("model", "n");
  if (!n_entry) throw ConfigError(0, "missing required key n in [model]");
  integer("model", "n", m.n);
  if (m.n < 1) throw ConfigError(n_entry->line, "n must be positive");
  num("model", "alpha", m.alpha);
  num("model", "J", m.J);
  num("model", "B", m.B);
  num("model", "A", m.A);
  num("model", "Bpair", m.Bpair);
  num("model", "Jtilde", m.Jtilde);
  num("model", "mu", m.mu);
  if (auto e = get("model", "A_table")) m.A_table = e->value;
  if (auto e = get("model", "Bpair_table")) m.Bpair_table = e->value;

  integer("blocks", "q", c.q);
  integer("blocks", "l", c.l);
  if (auto e = get("blocks", "cut")) c.cut = static_cast<int>(to_long(e->value, e->line, "cut"));

  num("effective", "tau", c.tau);
  if (auto e = get("effective", "tau_grid")) {
    for (const auto& item : split_list(e->value)) c.tau_grid.push_back(to_double(item, e->line, "tau_grid"));
    for (size_t i = 1; i < c.tau_grid.size(); ++i)
      if (!(c.tau_grid[i] > c.tau_grid[i - 1])) throw ConfigError(e->line, "tau_grid must be strictly ascending");
  }

  integer("agsp", "m", c.m);
  if (auto e = get("agsp", "m_grid"))
    for (const auto& item : split_list(e->value)) c.m_grid.push_back(static_cast<int>(to_long(item, e->line, "m_grid")));
  integer("agsp", "sr_m_max", c.sr_m_max);
  integer("agsp", "p_max", c.p_max);

  if (auto e = get("output", "dir")) c.out_dir = e->value;
  if (auto e = get("output", "seed")) c.seed = static_cast<std::uint64_t>(to_long(e->value, e->line, "seed"));
  num("output", "tolerance", c.tolerance);
  if (auto e = get("output", "bond_dims")) {
    c.bond_dims.clear();
    for (const auto& item : split_list(e->value)) {
      long D = to_long(item, e->line, "bond_dims");
      if (D < 1) throw ConfigError(e->line, "bond dimensions must be positive");
      c.bond_dims.push_back(D);
    }
  }
  if (c.m < 0) throw ConfigError(get("agsp", "m") ? get("agsp", "m")->line : 0, "m must be non-negative");
  if (c.p_max < 1) throw ConfigError(get("agsp", "p_max") ? get("agsp", "p_max")->line : 0, "p_max must be positive");
  return c;
}

std::vector<GridPoint> expand_sweep(const RawConfig& raw) {
  std::vector<std::vector<std::string>> values;
  for (const auto& [key, entry] : raw.sweep) {
    auto list = split_list(entry.value);
    for (const auto& v : list)
      if (v.empty()) throw ConfigError(entry.line, "empty value in sweep list " + key);
    values.push_back(list);
  }
  std::vector<GridPoint> out;
  std::vector<size_t> idx(values.size(), 0);
  for (;;) {
    RawConfig point = raw;
    GridPoint gp;
    for (size_t i = 0; i < values.size(); ++i) {
      const auto& key = raw.sweep[i].first;
      size_t dot = key.find('.');
      point.sections[key.substr(0, dot)][key.substr(dot + 1)] = RawEntry{values[i][idx[i]], raw.sweep[i].second.line};
      gp.swept.push_back({key, values[i][idx[i]]});
    }
    gp.config = to_config(point);
    out.push_back(std::move(gp));
    int pos = static_cast<int>(values.size()) - 1;
    while (pos >= 0 && ++idx[pos] == values[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

}  // namespace agsplab
