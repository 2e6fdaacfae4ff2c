#include "metlie/algebra_file.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "metlie/errors.hpp"

namespace metlie {

namespace {

using json = nlohmann::json;
using PathElem = std::variant<std::string, std::size_t>;
using Path = std::vector<PathElem>;

constexpr std::size_t kMaxDim = 64;

/// Finds the line on which the value at `path` starts in already-valid JSON.
class LineLocator {
 public:
  explicit LineLocator(std::string_view text) : s_(text) {}

  std::size_t find(const Path& path) {
    pos_ = 0;
    line_ = 1;
    std::size_t best = 1;
    ws();
    best = line_;
    for (const auto& elem : path) {
      if (pos_ >= s_.size()) break;
      bool found = false;
      if (s_[pos_] == '{' && std::holds_alternative<std::string>(elem)) {
        found = enter_object(std::get<std::string>(elem));
      } else if (s_[pos_] == '[' && std::holds_alternative<std::size_t>(elem)) {
        found = enter_array(std::get<std::size_t>(elem));
      }
      if (!found) break;
      best = line_;
    }
    return best;
  }

 private:
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string read_string() {
    std::string out;
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
      out += s_[pos_++];
    }
    ++pos_;
    return out;
  }

  void skip_value() {
    ws();
    if (pos_ >= s_.size()) return;
    const char c = s_[pos_];
    if (c == '"') {
      read_string();
    } else if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++pos_;
      ws();
      if (pos_ < s_.size() && s_[pos_] == close) {
        ++pos_;
        return;
      }
      while (pos_ < s_.size()) {
        if (c == '{') {
          ws();
          read_string();
          ws();
          ++pos_;  // ':'
        }
        skip_value();
        ws();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        ++pos_;  // close
        return;
      }
    } else {
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '}' &&
             !std::isspace(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
    }
  }

  bool enter_object(const std::string& key) {
    ++pos_;
    ws();
    if (pos_ < s_.size() && s_[pos_] == '}') return false;
    while (pos_ < s_.size()) {
      ws();
      const std::string k = read_string();
      ws();
      ++pos_;  // ':'
      ws();
      if (k == key) return true;
      skip_value();
      ws();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      return false;
    }
    return false;
  }

  bool enter_array(std::size_t index) {
    ++pos_;
    ws();
    if (pos_ < s_.size() && s_[pos_] == ']') return false;
    for (std::size_t i = 0; pos_ < s_.size(); ++i) {
      ws();
      if (i == index) return true;
      skip_value();
      ws();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      return false;
    }
    return false;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::string path_str(const Path& path) {
  std::string out;
  for (const auto& e : path) {
    if (std::holds_alternative<std::string>(e)) {
      out += "/" + std::get<std::string>(e);
    } else {
      out += "/" + std::to_string(std::get<std::size_t>(e));
    }
  }
  return out.empty() ? "/" : out;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const Path& path, const std::string& what) const {
    LineLocator loc(text_);
    throw ParseError(path_str(path) + ": " + what, loc.find(path));
  }

  std::size_t index(const json& j, const Path& path, std::size_t dim) const {
    if (!j.is_number_integer()) fail(path, "expected an integer index");
    const auto v = j.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= dim)
      fail(path, "index " + std::to_string(v) + " out of range for dim " + std::to_string(dim));
    return static_cast<std::size_t>(v);
  }

  Rational value(const json& j, const Path& path) const {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(path, "expected a rational written as \"p/q\"");
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& err) {
      fail(path, err.what());
    }
  }

 private:
  std::string_view text_;
};

std::size_t line_of_offset(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

const SymBilinearForm* AlgebraFile::find_metric(std::string_view metric) const {
  for (const auto& [n, f] : metrics)
    if (n == metric) return &f;
  return nullptr;
}

AlgebraFile parse_algebra_json(std::string_view text, std::string name) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& err) {
    const std::size_t byte = err.byte > 0 ? err.byte - 1 : 0;
    std::string msg = err.what();
    // Keep the text after "[json.exception...] parse error at line L, column C: ".
    if (const auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    if (const auto p = msg.find(": "); p != std::string::npos && msg.rfind("parse error", 0) == 0) msg = msg.substr(p + 2);
    throw ParseError(msg, line_of_offset(text, byte));
  }
  const Reader rd(text);
  if (!root.is_object()) rd.fail({}, "top level must be an object");
  for (const auto& [key, _] : root.items())
    if (key != "dim" && key != "brackets" && key != "metrics" && key != "name")
      rd.fail({key}, "unknown key '" + key + "'");

  if (!root.contains("dim")) rd.fail({}, "missing \"dim\"");
  const json& jd = root["dim"];
  if (!jd.is_number_integer() || jd.get<long long>() < 1 || jd.get<long long>() > static_cast<long long>(kMaxDim))
    rd.fail({"dim"}, "\"dim\" must be an integer between 1 and " + std::to_string(kMaxDim));
  const auto dim = static_cast<std::size_t>(jd.get<long long>());

  if (root.contains("name")) {
    if (!root["name"].is_string()) rd.fail({"name"}, "\"name\" must be a string");
    name = root["name"].get<std::string>();
  }

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::pair<Rational, Path>> seen;
  std::vector<BracketEntry<Rational>> entries;
  if (root.contains("brackets")) {
    const json& jb = root["brackets"];
    if (!jb.is_array()) rd.fail({"brackets"}, "\"brackets\" must be an array");
    for (std::size_t n = 0; n < jb.size(); ++n) {
      const Path here = {std::string("brackets"), n};
      const json& b = jb[n];
      if (!b.is_array() || b.size() != 4) rd.fail(here, "expected [i, j, k, \"p/q\"]");
      auto at = [&](std::size_t c) {
        Path p = here;
        p.emplace_back(c);
        return p;
      };
      const std::size_t i = rd.index(b[0], at(0), dim), j = rd.index(b[1], at(1), dim), k = rd.index(b[2], at(2), dim);
      const Rational v = rd.value(b[3], at(3));
      if (i == j && !is_zero(v)) rd.fail(here, "[e_i, e_i] must vanish");
      const auto key = i < j ? std::tuple{i, j, k} : std::tuple{j, i, k};
      const Rational oriented = i < j ? v : Rational(-v);
      if (const auto it = seen.find(key); it != seen.end()) {
        if (it->second.first != oriented) rd.fail(here, "conflicts with an earlier entry for the same bracket");
        continue;
      }
      seen.emplace(key, std::pair{oriented, here});
      if (i != j) entries.push_back({std::get<0>(key), std::get<1>(key), k, oriented});
    }
  }

  AlgebraFile out;
  out.name = name;
  out.algebra = LieAlgebra::from_brackets(dim, entries, name);
  if (const auto jac = jacobi_check(out.algebra); !jac) throw JacobiError(jac.triple[0], jac.triple[1], jac.triple[2]);

  if (root.contains("metrics")) {
    const json& jm = root["metrics"];
    if (!jm.is_object()) rd.fail({"metrics"}, "\"metrics\" must be an object");
    for (const auto& [mname, entries_json] : jm.items()) {
      const Path mp = {std::string("metrics"), mname};
      if (!entries_json.is_array()) rd.fail(mp, "a metric is an array of [i, j, \"p/q\"]");
      Matrix<Rational> m(dim, dim);
      std::vector<std::vector<bool>> set(dim, std::vector<bool>(dim, false));
      for (std::size_t n = 0; n < entries_json.size(); ++n) {
        Path here = mp;
        here.emplace_back(n);
        const json& e = entries_json[n];
        if (!e.is_array() || e.size() != 3) rd.fail(here, "expected [i, j, \"p/q\"]");
        auto at = [&](std::size_t c) {
          Path p = here;
          p.emplace_back(c);
          return p;
        };
        const std::size_t i = rd.index(e[0], at(0), dim), j = rd.index(e[1], at(1), dim);
        const Rational v = rd.value(e[2], at(2));
        if (set[i][j] && m(i, j) != v) rd.fail(here, "conflicts with an earlier entry for the same pair");
        m(i, j) = v;
        m(j, i) = v;
        set[i][j] = set[j][i] = true;
      }
      out.metrics.emplace_back(mname, SymBilinearForm(std::move(m)));
    }
  }
  return out;
}

AlgebraFile load_algebra_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (const auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return parse_algebra_json(ss.str(), stem);
}

std::string to_json(const LieAlgebra& g, const std::vector<std::pair<std::string, SymBilinearForm>>& metrics) {
  json root;
  root["dim"] = g.dim();
  if (!g.name().empty()) root["name"] = g.name();
  json br = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j)
      for (std::size_t k = 0; k < g.dim(); ++k)
        if (!is_zero(g.structure(i, j, k))) br.push_back({i, j, k, to_string(g.structure(i, j, k))});
  root["brackets"] = br;
  json ms = json::object();
  for (const auto& [name, f] : metrics) {
    json entries = json::array();
    for (std::size_t i = 0; i < f.dim(); ++i)
      for (std::size_t j = i; j < f.dim(); ++j)
        if (!is_zero(f(i, j))) entries.push_back({i, j, to_string(f(i, j))});
    ms[name] = entries;
  }
  root["metrics"] = ms;
  return root.dump(2) + "\n";
}

}  // namespace metlie
