#pragma once

// The conefaces command-line front end. `run` returns the process exit code:
// 0 success, 1 input/validation error, 2 unsupported mode, 3 cap exceeded.

#include "conefaces/fixtures.hpp"
#include "conefaces/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace conefaces::cli {

using io::json;
using ratmath::Rational;
using ratmath::RatMatrix;
using ratmath::RatVector;
using spectra::SpectralValue;
using spectra::ToleranceConfig;

enum ExitCode { kOk = 0, kInputError = 1, kUnsupported = 2, kCapExceeded = 3 };

struct Options {
  std::string input, cone, fixture;
  double tol = 1e-9;
  std::size_t cap = 4096;
  std::string format = "json";
  std::uint64_t seed = 1;

  std::string face, vector, lambda, mode = "auto", theorem, y, z, what, name;
  int cls = 0;
  int k = 1;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(f), {});
}

struct Session {
  const Options& opt;
  ToleranceConfig tol;
  std::optional<RatMatrix> matrix;
  std::string source;
  std::optional<polycone::GeneratorCone> cone;
  std::vector<std::string> warnings;

  explicit Session(const Options& o) : opt(o) {
    tol.rel_eps = o.tol;
    tol.retry_seed = o.seed;
    tol.validate();
    if (!o.fixture.empty() && !o.input.empty()) throw InputError("give either --input or --fixture, not both");
    if (!o.fixture.empty()) {
      matrix = fixtures::by_name(o.fixture).matrix;
      source = "fixture:" + o.fixture;
    } else if (!o.input.empty()) {
      matrix = io::parse_matrix(read_file(o.input));
      source = o.input == "-" ? "stdin" : o.input;
    }
    if (!o.cone.empty()) {
      cone = io::parse_cone(read_file(o.cone));
      if (matrix && static_cast<int>(matrix->rows()) != cone->n)
        throw InputError("matrix size does not match the cone dimension");
    }
  }

  const RatMatrix& A() const {
    if (!matrix) throw InputError("this command needs a matrix (--input PATH or --fixture NAME)");
    return *matrix;
  }

  // Orthant commands read the matrix as nonnegative P.
  classes::ClassStructure orthant_classes(const char* command) {
    if (cone) throw InputError(std::string(command) + " works on the nonnegative orthant only; drop --cone");
    io::require_nonnegative(A());
    auto cs = classes::build_classes(A(), tol);
    for (auto& w : io::tie_warnings(cs)) warnings.push_back(std::move(w));
    return cs;
  }

  polycone::GeneratorCone poly_cone() const {
    return cone ? *cone : polycone::orthant_cone(static_cast<int>(A().rows()));
  }

  SpectralValue lambda_for(const classes::ClassStructure* cs) const {
    if (opt.lambda.empty() || opt.lambda == "rho") {
      if (cs) return cs->rho;
      return spectra::peripheral_report(A(), tol).spectral_radius;
    }
    return SpectralValue::of(ratmath::parse_rational(opt.lambda));
  }

  Rational exact_lambda(const classes::ClassStructure* cs) const {
    auto v = lambda_for(cs);
    if (!v.exact) throw UnsupportedModeError("exact mode requires a rational eigenvalue, got " + v.to_string());
    return *v.exact;
  }

  json input_json() const {
    json j = json::object();
    if (matrix) {
      j["matrix"] = io::matrix_json(*matrix);
      j["source"] = source;
    }
    if (cone) j["cone"] = io::cone_json(*cone);
    return j;
  }
};

inline json fv_json(const orthant::FvVector& v, const ToleranceConfig& tol) {
  json j{{"class", v.cls + 1},
         {"lambda", io::value_json(v.lambda, tol)},
         {"support", io::index_set_json(v.support)},
         {"approx", v.approx},
         {"residual", v.residual},
         {"exact", v.exact_mode()}};
  if (v.exact) j["vector"] = io::vector_json(*v.exact);
  return j;
}

inline orthant::EigenMode eigen_mode(const std::string& m) {
  if (m == "auto") return orthant::EigenMode::automatic;
  if (m == "exact") return orthant::EigenMode::exact;
  if (m == "numeric") return orthant::EigenMode::numeric;
  throw InputError("--mode must be auto, exact or numeric");
}

inline json chain_faces_json(const std::vector<polycone::PolyFace>& faces, const polycone::GeneratorCone& K,
                             const RatMatrix& A, const ToleranceConfig& tol) {
  json list = json::array();
  for (const auto& F : faces)
    list.push_back({{"generators", io::index_set_json(F.generators)},
                    {"spectral_pair", io::pair_json(polycone::face_spectral_pair_poly(K, A, F, tol), tol)}});
  return list;
}

// The result payload of one command, or DOT text in `dot`.
inline json execute(const std::string& command, Session& s, std::string& dot) {
  const Options& o = s.opt;
  const ToleranceConfig& tol = s.tol;

  if (command == "fixture") {
    const auto& f = fixtures::by_name(o.name);
    return {{"name", f.name}, {"description", f.description}, {"matrix", io::matrix_json(f.matrix)}};
  }
  if (command == "classes") {
    auto cs = s.orthant_classes("classes");
    if (o.format == "dot") dot = io::classes_dot(cs);
    return io::classes_json(cs);
  }
  if (command == "initial-subsets") {
    auto cs = s.orthant_classes("initial-subsets");
    json list = json::array();
    for (const auto& I : classes::enumerate_initial_subsets(cs, o.cap)) list.push_back(io::index_set_json(I));
    return {{"count", list.size()}, {"initial_subsets", list}};
  }
  if (command == "faces") {
    json faces = json::array(), covers = json::array();
    if (s.cone) {
      auto K = s.poly_cone();
      auto lat = polycone::invariant_face_lattice(K, s.A(), o.cap, tol);
      for (const auto& F : lat.faces)
        faces.push_back(io::poly_classification_json(polycone::classify_face_poly(K, s.A(), F, lat, tol), tol));
      for (auto [a, b] : lat.covers) covers.push_back({a + 1, b + 1});
      if (o.format == "dot") dot = io::poly_faces_dot(K, s.A(), tol, o.cap);
    } else {
      auto cs = s.orthant_classes("faces");
      auto lat = orthant::invariant_face_lattice(cs, o.cap);
      for (const auto& I : lat.elements) faces.push_back(io::face_classification_json(orthant::classify_face(cs, I), tol));
      for (auto [a, b] : lat.covers) covers.push_back({a + 1, b + 1});
      if (o.format == "dot") dot = io::faces_dot(cs, o.cap);
    }
    return {{"faces", faces}, {"covers", covers}};
  }
  if (command == "classify") {
    if (s.cone) {
      auto K = s.poly_cone();
      auto lat = polycone::invariant_face_lattice(K, s.A(), o.cap, tol);
      auto F = polycone::face_generated(K, io::parse_index_set(o.face, K.generator_count()));
      return io::poly_classification_json(polycone::classify_face_poly(K, s.A(), F, lat, tol), tol);
    }
    auto cs = s.orthant_classes("classify");
    return io::face_classification_json(orthant::classify_face(cs, io::parse_index_set(o.face, cs.n)), tol);
  }
  if (command == "spectral-pair") {
    if (o.vector.empty() == o.face.empty()) throw InputError("give exactly one of --vector and --face");
    if (!o.vector.empty()) {
      RatVector x = io::parse_vector(o.vector);
      if (s.cone && !polycone::membership(*s.cone, x).member) throw InputError("vector is not in the cone");
      return {{"vector", io::vector_json(x)}, {"spectral_pair", io::pair_json(spectra::spectral_pair(s.A(), x, tol), tol)}};
    }
    if (s.cone) {
      auto K = s.poly_cone();
      auto F = polycone::face_generated(K, io::parse_index_set(o.face, K.generator_count()));
      return {{"generators", io::index_set_json(F.generators)},
              {"spectral_pair", io::pair_json(polycone::face_spectral_pair_poly(K, s.A(), F, tol), tol)}};
    }
    auto cs = s.orthant_classes("spectral-pair");
    IndexSet I = io::parse_index_set(o.face, cs.n);
    IndexSet closure = classes::initial_closure(I, cs);
    return {{"face", io::index_set_json(I)},
            {"closure", io::index_set_json(closure)},
            {"spectral_pair", io::pair_json(orthant::face_spectral_pair(cs, I), tol)}};
  }
  if (command == "frobenius-victory") {
    auto cs = s.orthant_classes("frobenius-victory");
    auto mode = eigen_mode(o.mode);
    json list = json::array();
    if (o.cls > 0) {
      if (o.cls > cs.class_count()) throw InputError("--class out of range 1.." + std::to_string(cs.class_count()));
      list.push_back(fv_json(orthant::fv_vector(cs, o.cls - 1, mode), tol));
    } else {
      if (o.lambda.empty()) throw InputError("give --class or --lambda");
      for (const auto& v : orthant::eigencone_basis(cs, s.lambda_for(&cs), mode)) list.push_back(fv_json(v, tol));
    }
    return {{"vectors", list}};
  }
  if (command == "nonneg-basis") {
    auto cs = s.orthant_classes("nonneg-basis");
    json list = json::array();
    for (const auto& b : orthant::nonnegative_basis(cs, s.lambda_for(&cs)))
      list.push_back({{"class", b.cls + 1}, {"vector", io::vector_json(b.vector)}, {"margin", io::rational_json(b.margin)}});
    return {{"lambda", io::value_json(s.lambda_for(&cs), tol)}, {"basis", list}};
  }
  if (command == "sublevel") {
    auto cs = s.orthant_classes("sublevel");
    auto lambda = s.lambda_for(&cs);
    IndexSet F = o.k == 0 ? orthant::strict_sublevel_face(cs, lambda) : orthant::sublevel_face(cs, lambda, o.k);
    return {{"lambda", io::value_json(lambda, tol)}, {"k", o.k}, {"strict", o.k == 0}, {"face", io::index_set_json(F)}};
  }
  if (command == "rothblum-chain" || command == "m-lambda") {
    std::optional<classes::ClassStructure> cs;
    if (!s.cone) cs = s.orthant_classes(command.c_str());
    Rational lambda = s.exact_lambda(cs ? &*cs : nullptr);
    auto K = s.poly_cone();
    json out{{"lambda", io::rational_json(lambda)}};
    if (cs) {
      auto chain = classes::longest_semidistinguished_chain(*cs, SpectralValue::of(lambda));
      json ids = json::array();
      for (int a : chain.chain) ids.push_back(a + 1);
      out["class_chain"] = ids;
    }
    if (command == "m-lambda") {
      out["m_lambda"] = polycone::max_distinguished_order(K, s.A(), lambda);
      return out;
    }
    auto chain = polycone::rothblum_chain(K, s.A(), lambda, tol, o.cap);
    out["m_lambda"] = chain.m_lambda;
    out["longest_semidistinguished_chain"] = chain.longest_semidistinguished;
    out["chain"] = chain_faces_json(chain.faces, K, s.A(), tol);
    return out;
  }
  if (command == "check") {
    if (o.theorem == "6.1") {
      auto K = s.poly_cone();
      auto r = polycone::check_dual_uniqueness(K, s.A(), tol, o.cap);
      json rays = json::array();
      for (const auto& w : r.dual_distinguished_eigenvectors) rays.push_back(io::vector_json(w));
      return {{"theorem", o.theorem}, {"a", r.a}, {"b", r.b}, {"c", r.c},
              {"dual_distinguished_eigenvectors", rays}, {"equivalence_holds", r.equivalence_holds}};
    }
    auto cs = s.orthant_classes("check");
    if (o.theorem == "7.2") {
      auto lambda = s.lambda_for(&cs);
      auto r = orthant::check_simple_eigenvector(cs, lambda, o.cap);
      return {{"theorem", o.theorem}, {"lambda", io::value_json(lambda, tol)},
              {"a", io::verdict_json(r.a)}, {"b", io::verdict_json(r.b)}, {"c", io::verdict_json(r.c)},
              {"d", io::verdict_json(r.d)}, {"e", io::verdict_json(r.e)}, {"f", io::verdict_json(r.f)},
              {"implications_consistent", r.implications_consistent}};
    }
    if (o.theorem == "7.1") {
      auto lambda = s.lambda_for(&cs);
      auto r = orthant::check_unit_order(cs, lambda, o.cap);
      return {{"theorem", o.theorem}, {"lambda", io::value_json(lambda, tol)}, {"a", io::verdict_json(r.a)},
              {"b", io::verdict_json(r.b)}, {"m_lambda", r.m_lambda}};
    }
    if (o.theorem == "6.4") {
      auto lambda = s.lambda_for(&cs);
      auto r = orthant::check_eigencone_faces(cs, lambda, o.cap);
      return {{"theorem", o.theorem}, {"lambda", io::value_json(lambda, tol)},
              {"a_i", io::verdict_json(r.a_i)}, {"a_ii", io::verdict_json(r.a_ii)}, {"b_i", io::verdict_json(r.b_i)},
              {"b_ii", io::verdict_json(r.b_ii)}, {"b_iii", io::verdict_json(r.b_iii)}, {"c", io::verdict_json(r.c)}};
    }
    if (o.theorem == "B" || o.theorem == "C") {
      const bool comparable = classes::has_comparable_basic_classes(cs);
      json out{{"theorem", o.theorem}, {"rho", io::value_json(cs.rho, tol)}};
      if (o.theorem == "B") {
        std::vector<int> basic;
        for (int a = 0; a < cs.class_count(); ++a)
          if (cs.basic[a]) basic.push_back(a);
        bool all_comparable = true;
        for (int a : basic)
          for (int b : basic) all_comparable = all_comparable && (cs.has_access(a, b) || cs.has_access(b, a));
        out["basic_classes_pairwise_comparable"] = all_comparable;
        if (cs.rho.exact) {
          const int dim = ratmath::rank_profile_at(cs.matrix, *cs.rho.exact).geometric_multiplicity;
          out["eigenspace_dimension"] = dim;
          out["agree"] = (dim == 1) == all_comparable;
        } else {
          out["eigenspace_dimension"] = "unsupported";
          s.warnings.push_back("irrational spectral radius: eigenspace dimension not computed");
        }
        return out;
      }
      out["comparable_basic_classes"] = comparable;
      out["longest_basic_chain"] = classes::longest_basic_chain(cs).length;
      if (cs.rho.exact) {
        const int nu = ratmath::rank_profile_at(cs.matrix, *cs.rho.exact).index;
        out["index"] = nu;
        out["agree"] = (nu == 1) == !comparable;
      } else {
        out["index"] = "unsupported";
        s.warnings.push_back("irrational spectral radius: index not computed");
      }
      return out;
    }
    throw InputError("--theorem must be one of 7.1, 7.2, 6.1, 6.4, B, C");
  }
  if (command == "rank-one") {
    RatVector y = io::parse_vector(o.y), z = io::parse_vector(o.z);
    auto K = s.cone ? *s.cone : polycone::orthant_cone(static_cast<int>(y.size()));
    auto r = polycone::rank_one_analysis(K, y, z, tol, o.cap);
    return {{"map", io::matrix_json(r.map)},       {"orthogonal", r.orthogonal}, {"a", r.a}, {"b", r.b},
            {"c", r.c},                            {"dual_face", io::index_set_json(r.dual_face.generators)},
            {"facets_containing_y", io::index_set_json(r.facets_containing_y)}, {"consistent", r.consistent}};
  }
  if (command == "dot") {
    if (o.what == "classes") {
      dot = io::classes_dot(s.orthant_classes("dot"));
    } else if (o.what == "faces") {
      if (s.cone) dot = io::poly_faces_dot(s.poly_cone(), s.A(), tol, o.cap);
      else dot = io::faces_dot(s.orthant_classes("dot"), o.cap);
    } else {
      throw InputError("--what must be classes or faces");
    }
    return json::object();
  }
  throw InputError("unknown command " + command);
}

inline void add_common(CLI::App* app, Options& o) {
  app->add_option("--input", o.input, "matrix file (JSON or whitespace text; - for stdin)");
  app->add_option("--cone", o.cone, "cone generator JSON (default: nonnegative orthant)");
  app->add_option("--fixture", o.fixture, "use a built-in matrix");
  app->add_option("--tol", o.tol, "relative tolerance")->capture_default_str();
  app->add_option("--cap", o.cap, "lattice size cap")->capture_default_str();
  app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "dot", "text"}));
  app->add_option("--seed", o.seed, "seed for randomized witnesses")->capture_default_str();
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Invariant faces, spectral pairs and distinguished eigenvectors of cone-preserving matrices",
               "conefaces"};
  app.require_subcommand(1);
  detail::add_common(&app, o);
  app.fallthrough();

  auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };
  sub("classes", "classes of P with their flags");
  sub("initial-subsets", "all initial subsets");
  sub("faces", "invariant-face lattice");
  sub("classify", "classify one face")->add_option("--face", o.face, "1-based index set, e.g. 1,3")->required();
  auto* sp = sub("spectral-pair", "spectral pair of a vector or a face");
  sp->add_option("--vector", o.vector, "comma-separated entries");
  sp->add_option("--face", o.face, "1-based index set");
  auto* fv = sub("frobenius-victory", "distinguished eigenvectors");
  fv->add_option("--class", o.cls, "1-based class id");
  fv->add_option("--lambda", o.lambda, "eigenvalue (rational, or rho)");
  fv->add_option("--mode", o.mode, "auto, exact or numeric");
  sub("nonneg-basis", "nonnegative basis of the generalized eigenspace")
      ->add_option("--lambda", o.lambda, "eigenvalue")->required();
  auto* sl = sub("sublevel", "join of class faces with pair at most (lambda, k); k = 0 for rho < lambda");
  sl->add_option("--lambda", o.lambda, "eigenvalue")->required();
  sl->add_option("--k", o.k, "order bound")->capture_default_str();
  sub("rothblum-chain", "maximal chain of semi-distinguished faces")->add_option("--lambda", o.lambda, "eigenvalue")->required();
  sub("m-lambda", "maximal order of distinguished generalized eigenvectors")
      ->add_option("--lambda", o.lambda, "eigenvalue")->required();
  auto* ck = sub("check", "evaluate a set of equivalent conditions");
  ck->add_option("--theorem", o.theorem, "7.1, 7.2, 6.1, 6.4, B or C")->required();
  ck->add_option("--lambda", o.lambda, "eigenvalue (default rho)");
  auto* ro = sub("rank-one", "analyse the map y z^T");
  ro->add_option("--y", o.y, "vector on the boundary of the cone")->required();
  ro->add_option("--z", o.z, "vector on the boundary of the dual cone")->required();
  sub("dot", "Graphviz rendering")->add_option("--what", o.what, "classes or faces")->required();
  sub("fixture", "print a built-in matrix")->add_option("--name", o.name, "fixture name")->required();

  std::vector<std::string> argv_storage{"conefaces"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    detail::Session session(o);
    std::string dot;
    json result = detail::execute(command, session, dot);
    if (!dot.empty()) {
      out << dot;
      return kOk;
    }
    if (o.format == "dot") throw InputError("--format dot applies to classes, faces and dot");
    json report{{"schema_version", io::kSchemaVersion},
                {"command", command},
                {"input", session.input_json()},
                {"tolerance", io::tolerance_json(session.tol)},
                {"result", result},
                {"warnings", session.warnings}};
    if (o.format == "text") io::render_text(report, "", out);
    else out << report.dump(2) << "\n";
    return kOk;
  } catch (const UnsupportedModeError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const CapExceededError& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

} // namespace conefaces::cli
