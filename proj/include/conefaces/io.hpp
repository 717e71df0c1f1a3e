#pragma once

// Matrix/cone input, JSON encoding of results, and DOT rendering.

#include "conefaces/orthant_faces.hpp"
#include "conefaces/poly_cone.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace conefaces::io {

using json = nlohmann::json;
using classes::ClassStructure;
using ratmath::Rational;
using ratmath::RatMatrix;
using ratmath::RatVector;
using spectra::SpectralPair;
using spectra::SpectralValue;
using spectra::ToleranceConfig;

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Parsing.

namespace detail {

inline std::string location(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1);
}

inline Rational entry(const std::string& token, std::size_t row, std::size_t col) {
  try {
    return ratmath::parse_rational(token);
  } catch (const InputError& e) {
    throw InputError(location(row, col) + ": " + e.what());
  }
}

inline std::string json_token(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError(where + ": entries must be rational strings such as \"1/3\"");
}

inline RatMatrix from_rows(const std::vector<RatVector>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw InputError("empty matrix");
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i].size() != rows[0].size())
      throw InputError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(rows[0].size()));
  if (rows[0].size() != n)
    throw InputError("matrix is not square: " + std::to_string(n) + " rows of length " + std::to_string(rows[0].size()));
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

} // namespace detail

// Whitespace text (one row per line, blank lines ignored).
inline RatMatrix parse_matrix_text(const std::string& text) {
  std::vector<RatVector> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    RatVector row;
    while (ls >> tok) row.push_back(detail::entry(tok, rows.size(), row.size()));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return detail::from_rows(rows);
}

// {"n": int, "entries": [["0","1"], ...]}
inline RatMatrix parse_matrix_json(const std::string& text) {
  json j = detail::parse_json(text);
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw InputError("matrix JSON needs an \"entries\" array");
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < j["entries"].size(); ++i) {
    const json& r = j["entries"][i];
    if (!r.is_array()) throw InputError("row " + std::to_string(i + 1) + " is not an array");
    RatVector row;
    for (std::size_t k = 0; k < r.size(); ++k)
      row.push_back(detail::entry(detail::json_token(r[k], detail::location(i, k)), i, k));
    rows.push_back(std::move(row));
  }
  RatMatrix m = detail::from_rows(rows);
  if (j.contains("n") && (!j["n"].is_number_integer() || j["n"].get<long long>() != static_cast<long long>(m.rows())))
    throw InputError("\"n\" does not match the number of rows");
  return m;
}

inline RatMatrix parse_matrix(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_matrix_json(text);
  return parse_matrix_text(text);
}

inline void require_nonnegative(const RatMatrix& P) {
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < P.cols(); ++j)
      if (sgn(P(i, j)) < 0)
        throw InputError(detail::location(i, j) + ": negative entry " + ratmath::to_string(P(i, j)) +
                         " (the orthant commands need a nonnegative matrix)");
}

// "1,1/2,0"
inline RatVector parse_vector(const std::string& text) {
  RatVector v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.push_back(ratmath::parse_rational(tok));
    } catch (const InputError& e) {
      throw InputError("vector entry " + std::to_string(v.size() + 1) + ": " + e.what());
    }
  }
  if (v.empty()) throw InputError("empty vector");
  return v;
}

// "1,3" (1-based) -> {0, 2}; "" is the empty set.
inline IndexSet parse_index_set(const std::string& text, int n) {
  IndexSet s;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    int i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(tok, &used);
      if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("index '" + tok + "' is not an integer");
    }
    if (i < 1 || i > n) throw InputError("index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    s.push_back(i - 1);
  }
  return normalized(s);
}

// {"n": int, "generators": [["1","0","1"], ...]}
inline polycone::GeneratorCone parse_cone(const std::string& text) {
  json j = detail::parse_json(text);
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    throw InputError("cone JSON needs a \"generators\" array");
  std::vector<RatVector> gens;
  for (std::size_t i = 0; i < j["generators"].size(); ++i) {
    const json& g = j["generators"][i];
    if (!g.is_array()) throw InputError("generator " + std::to_string(i + 1) + " is not an array");
    RatVector v;
    for (std::size_t k = 0; k < g.size(); ++k) {
      std::string where = "generator " + std::to_string(i + 1) + ", entry " + std::to_string(k + 1);
      try {
        v.push_back(ratmath::parse_rational(detail::json_token(g[k], where)));
      } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
      }
    }
    gens.push_back(std::move(v));
  }
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw InputError("\"n\" must be an integer");
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (static_cast<long long>(gens[i].size()) != j["n"].get<long long>())
        throw InputError("generator " + std::to_string(i + 1) + " does not have length n");
  }
  return polycone::build_cone(gens);
}

// ---------------------------------------------------------------------------
// JSON encoding. Index sets and class ids are 1-based.

inline json rational_json(const Rational& r) { return ratmath::to_string(r); }

inline json vector_json(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

inline json matrix_json(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(rational_json(m(i, j)));
    rows.push_back(r);
  }
  return {{"n", m.rows()}, {"entries", rows}};
}

inline json index_set_json(const IndexSet& s) {
  json a = json::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

inline json value_json(const SpectralValue& v, const ToleranceConfig& tol) {
  json j{{"value", v.to_string()}, {"approx", v.approx}, {"exact", v.is_exact()}};
  if (!v.is_exact()) j["error_bound"] = v.error_bound(tol);
  return j;
}

inline json pair_json(const SpectralPair& p, const ToleranceConfig& tol) {
  return {{"radius", value_json(p.radius, tol)}, {"order", p.order}};
}

inline std::string pair_text(const SpectralPair& p) {
  return "(" + p.radius.to_string() + "," + std::to_string(p.order) + ")";
}

inline json verdict_json(const orthant::Verdict& v) {
  json j{{"detail", v.detail}};
  j["value"] = v.value ? json(*v.value) : json("unsupported");
  return j;
}

inline json tolerance_json(const ToleranceConfig& tol) {
  return {{"rel_eps", tol.rel_eps}, {"power_tol", tol.power_tol}, {"max_iters", tol.max_iters}, {"seed", tol.retry_seed}};
}

inline json cone_json(const polycone::GeneratorCone& K) {
  json g = json::array(), z = json::array();
  for (const auto& v : K.generators) g.push_back(vector_json(v));
  for (const auto& v : K.normals) z.push_back(vector_json(v));
  return {{"n", K.n}, {"generators", g}, {"facet_normals", z}};
}

inline std::string class_letters(const ClassStructure& cs, int a) {
  std::string s;
  if (cs.basic[a]) s += "[B]";
  if (cs.distinguished[a]) s += "[D]";
  if (cs.semi_distinguished[a]) s += "[SD]";
  return s;
}

inline json classes_json(const ClassStructure& cs) {
  json list = json::array();
  for (int a = 0; a < cs.class_count(); ++a)
    list.push_back({{"id", a + 1},
                    {"indices", index_set_json(cs.classes[a])},
                    {"radius", value_json(cs.radius[a], cs.tol)},
                    {"basic", static_cast<bool>(cs.basic[a])},
                    {"initial", static_cast<bool>(cs.initial[a])},
                    {"final", static_cast<bool>(cs.final[a])},
                    {"distinguished", static_cast<bool>(cs.distinguished[a])},
                    {"semi_distinguished", static_cast<bool>(cs.semi_distinguished[a])}});
  json covers = json::array();
  for (auto [a, b] : classes::access_covers(cs)) covers.push_back({a + 1, b + 1});
  return {{"classes", list}, {"access_covers", covers}, {"spectral_radius", value_json(cs.rho, cs.tol)}};
}

// Radii that compare equal only through the tolerance.
inline std::vector<std::string> tie_warnings(const ClassStructure& cs) {
  std::vector<std::string> out;
  for (int a = 0; a < cs.class_count(); ++a)
    for (int b = a + 1; b < cs.class_count(); ++b) {
      const auto &x = cs.radius[a], &y = cs.radius[b];
      if ((x.is_exact() && y.is_exact()) || !spectra::approx_equal(x, y, cs.tol)) continue;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3g", spectra::margin(x, y));
      out.push_back("radii of classes " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                    " treated as equal within tolerance (margin " + buf + ")");
    }
  return out;
}

inline json face_classification_json(const orthant::FaceClassification& c, const ToleranceConfig& tol) {
  json j{{"face", index_set_json(c.face)},
         {"closure", index_set_json(c.closure)},
         {"invariant", c.invariant},
         {"nonzero", c.nonzero},
         {"minimal", c.minimal},
         {"join_irreducible", c.join_irreducible},
         {"relint_generalized_eigenvector", c.relint_generalized_eigenvector},
         {"relint_eigenvector", c.relint_eigenvector},
         {"semi_distinguished", c.semi_distinguished},
         {"distinguished", c.distinguished},
         {"spectral_pair", pair_json(c.pair, tol)}};
  j["eigenvalue"] = c.eigenvalue ? value_json(*c.eigenvalue, tol) : json(nullptr);
  return j;
}

inline json optional_flag(const std::optional<bool>& b) { return b ? json(*b) : json("unsupported"); }

inline json poly_classification_json(const polycone::PolyFaceClassification& c, const ToleranceConfig& tol) {
  return {{"generators", index_set_json(c.face.generators)},
          {"tight_facets", index_set_json(c.face.facets)},
          {"invariant", c.invariant},
          {"nonzero", c.nonzero},
          {"minimal", c.minimal},
          {"join_irreducible", c.join_irreducible},
          {"relint_generalized_eigenvector", optional_flag(c.relint_generalized_eigenvector)},
          {"relint_eigenvector", optional_flag(c.relint_eigenvector)},
          {"semi_distinguished", optional_flag(c.semi_distinguished)},
          {"distinguished", c.distinguished},
          {"spectral_pair", pair_json(c.pair, tol)}};
}

// ---------------------------------------------------------------------------
// Text rendering of a report: one "path: value" line per leaf.

inline void render_text(const json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    if (j.empty()) out << path << ": {}\n";
    for (const auto& [k, v] : j.items()) render_text(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
    if (flat) {
      out << path << ": [";
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      out << "]\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], path + "[" + std::to_string(i + 1) + "]", out);
    }
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

// ---------------------------------------------------------------------------
// DOT.

namespace detail {

inline std::string set_label(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
  return out + "}";
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

} // namespace detail

inline std::string classes_dot(const ClassStructure& cs) {
  std::ostringstream out;
  out << "digraph classes {\n  rankdir=BT;\n";
  for (int a = 0; a < cs.class_count(); ++a)
    out << "  c" << a + 1 << " [label=\""
        << detail::dot_escape(detail::set_label(cs.classes[a]) + " ρ=" + cs.radius[a].to_string() + " " +
                              class_letters(cs, a))
        << "\"];\n";
  for (auto [a, b] : classes::access_covers(cs)) out << "  c" << a + 1 << " -> c" << b + 1 << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string face_letters(bool minimal, bool join_irreducible, bool distinguished, bool semi) {
  std::string s;
  if (minimal) s += " M";
  if (join_irreducible) s += " J";
  if (distinguished) s += " D";
  if (semi) s += " SD";
  return s;
}

inline std::string faces_dot(const ClassStructure& cs, std::size_t cap = 4096) {
  auto lat = orthant::invariant_face_lattice(cs, cap);
  std::ostringstream out;
  out << "digraph faces {\n  rankdir=BT;\n";
  for (std::size_t k = 0; k < lat.elements.size(); ++k) {
    auto c = orthant::classify_face(cs, lat.elements[k]);
    std::string label = detail::set_label(lat.elements[k]) + " ρ=" + c.rho.to_string() + " sp=" + pair_text(c.pair) +
                        face_letters(c.minimal, c.join_irreducible, c.distinguished, c.semi_distinguished);
    out << "  f" << k << " [label=\"" << detail::dot_escape(label) << "\"];\n";
  }
  for (auto [a, b] : lat.covers) out << "  f" << a << " -> f" << b << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string poly_faces_dot(const polycone::GeneratorCone& K, const RatMatrix& A, const ToleranceConfig& tol,
                                  std::size_t cap = 4096) {
  auto lat = polycone::invariant_face_lattice(K, A, cap, tol);
  std::ostringstream out;
  out << "digraph faces {\n  rankdir=BT;\n";
  for (std::size_t k = 0; k < lat.faces.size(); ++k) {
    auto c = polycone::classify_face_poly(K, A, lat.faces[k], lat, tol);
    std::string label = detail::set_label(lat.faces[k].generators) + " ρ=" + c.pair.radius.to_string() +
                        " sp=" + pair_text(c.pair) +
                        face_letters(c.minimal, c.join_irreducible, c.distinguished, c.semi_distinguished.value_or(false));
    out << "  f" << k << " [label=\"" << detail::dot_escape(label) << "\"];\n";
  }
  for (auto [a, b] : lat.covers) out << "  f" << a << " -> f" << b << ";\n";
  out << "}\n";
  return out.str();
}

} // namespace conefaces::io
