// Command-line front end. Exit codes: 0 success, 1 mathematical negative,
// 2 input error, 3 numeric failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json_io.hpp"

namespace {

using namespace gha;
using gha::cli::json;

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kNumeric = 3 };

struct Globals {
  std::string backend = "exact";
  unsigned conductor = 0;  // 0: automatic
  double tol = 1e-9;
  unsigned threads = 1;
  unsigned samples = 2;
  std::uint64_t seed = 1;
  bool json = false;

  Backend backend_value() const { return backend == "approx" ? Backend::approx : Backend::exact; }
  unsigned conductor_or_one() const { return conductor == 0 ? 1 : conductor; }
  ParseOptions parse(Backend b) const {
    return {b, conductor == 0 ? std::nullopt : std::optional<unsigned>(conductor)};
  }
  /// Decimal literals in `text` promote to the approx backend.
  ParseOptions parse_for(const std::string& text) const {
    return parse(has_decimal_literal(text) ? Backend::approx : backend_value());
  }
};

void emit(const std::string& command, json body) {
  json out{{"schema_version", cli::kSchemaVersion}, {"command", command}};
  out.update(body);
  std::cout << out.dump(2) << '\n';
}

json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (arg.empty() || arg.front() != '{') {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Poly poly_arg(const Globals& g, const std::string& text, Backend b) {
  const Poly p = parse_poly(text, g.parse(b));
  return b == Backend::approx && p.backend() == Backend::exact ? p.to_approx() : p;
}

int run_normalize(const Globals& g, const std::string& f_text, const std::string& e_text) {
  const Backend b = g.parse_for(f_text + " " + e_text).backend;
  const auto p = Presentation::make(poly_arg(g, f_text, b));
  const Element e = parse_element(e_text, p, g.parse(b));
  if (g.json) {
    json degree = nullptr;
    if (!e.is_zero()) degree = {e.degree().first, e.degree().second};
    emit("normalize", {{"f", p->f().to_string()}, {"input", e_text}, {"normal_form", e.to_string()}, {"degree", degree}});
  } else {
    std::cout << e.to_string() << '\n';
  }
  return kOk;
}

int run_central(const Globals& g, const std::string& f_text, const std::string& e_text) {
  const Backend b = g.parse_for(f_text + " " + e_text).backend;
  const auto p = Presentation::make(poly_arg(g, f_text, b));
  const Element e = parse_element(e_text, p, g.parse(b));
  json failing = nullptr;
  for (const auto& [name, gen] : {std::pair{"x", Generator::x}, {"h", Generator::h}, {"y", Generator::y}}) {
    const Element c = commutator(e, Element::generator(p, gen));
    if (!c.is_zero()) {
      failing = {{"generator", name}, {"commutator", c.to_string()}};
      break;
    }
  }
  const bool central = failing.is_null();
  if (g.json) {
    emit("central", {{"f", p->f().to_string()}, {"element", e.to_string()}, {"central", central}, {"failing", failing}});
  } else if (central) {
    std::cout << "true\n";
  } else {
    std::cout << "false: [" << e.to_string() << ", " << failing["generator"].get<std::string>()
              << "] = " << failing["commutator"].get<std::string>() << '\n';
  }
  return central ? kOk : kNegative;
}

int run_center(const Globals& g, const std::string& f_text) {
  const auto p = Presentation::make(poly_arg(g, f_text, g.parse_for(f_text).backend));
  json body = cli::to_json(center(p));
  body["f"] = p->f().to_string();
  emit("center", body);
  return kOk;
}

int run_iso(const Globals& g, const std::string& f1_text, const std::string& f2_text) {
  const Backend b = g.parse_for(f1_text + " " + f2_text).backend;
  const Poly f1 = poly_arg(g, f1_text, b), f2 = poly_arg(g, f2_text, b);
  const IsoVerdict v = iso_check(f1, f2, g.conductor_or_one());
  json body = cli::to_json(v);
  body["f1"] = f1.to_string();
  body["f2"] = f2.to_string();
  emit("iso", body);
  return v.isomorphic ? kOk : kNegative;
}

int run_simples(const Globals& g, const std::string& f_text, unsigned n) {
  const Poly f = poly_arg(g, f_text, g.parse_for(f_text).backend);
  const SimpleModules s = enumerate_simples(f, n, {g.conductor_or_one(), g.samples, g.seed, g.threads});
  json body = cli::to_json(s);
  body["f"] = f.to_string();
  emit("simples", body);
  return kOk;
}

int run_build(const Globals& g, const std::string& f_text, const std::string& descriptor) {
  const json doc = read_json_arg(descriptor);
  const Backend b = cli::document_backend(doc, g.parse_for(f_text).backend);
  const Poly f = poly_arg(g, f_text, b);
  const ModuleDescriptor d = cli::descriptor_from_json(doc, f, g.parse(b));
  MatrixModule m;
  try {
    m = build(d, f);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  json body = cli::to_json(m);
  body["f"] = f.to_string();
  body["kind"] = kind_name(d);
  emit("build", body);
  return kOk;
}

int run_verify(const Globals& g, const std::string& f_text, const std::string& module) {
  const json doc = read_json_arg(module);
  const Backend b = cli::document_backend(doc, g.parse_for(f_text).backend);
  const Poly f = poly_arg(g, f_text, b);
  const MatrixModule m = cli::module_from_json(doc, g.parse(b));
  const RelationReport r = verify_relations(m, f);
  const std::size_t span = burnside_dimension(m);
  if (g.json) {
    json body = cli::to_json(r);
    body["f"] = f.to_string();
    body["n"] = m.n;
    body["burnside_dimension"] = span;
    body["simple"] = span == m.n * m.n;
    emit("verify", body);
  } else {
    std::cout << (r.ok ? "relations hold" : "relations FAIL") << '\n';
    const char* names[] = {"hx - x*f(h)", "yh - f(h)*y", "yx - xy - (f(h) - h)"};
    for (int k = 0; k < 3; ++k) std::cout << "  " << names[k] << ": " << r.residuals[k] << '\n';
    std::cout << "burnside dimension " << span << " of " << m.n * m.n << (span == m.n * m.n ? " (simple)" : "")
              << '\n';
  }
  return r.ok ? kOk : kNegative;
}

int run_classify(const Globals& g, const std::string& f_text, const std::string& module) {
  const json doc = read_json_arg(module);
  const Backend b = cli::document_backend(doc, g.parse_for(f_text).backend);
  const Poly f = poly_arg(g, f_text, b);
  const MatrixModule m = cli::module_from_json(doc, g.parse(b));
  if (!verify_relations(m, f).ok) throw DomainError("the matrices do not satisfy the defining relations");
  if (!is_simple(m)) throw DomainError("not a simple module of this family: the module is not simple");
  json body = cli::to_json(classify(m, f, g.conductor_or_one()));
  body["f"] = f.to_string();
  emit("classify", body);
  return kOk;
}

/// CLI11 has no multi-character short options: accept -f1/-f2 as --f1/--f2.
std::vector<std::string> normalized_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int k = 1; k < argc; ++k) {
    std::string a = argv[k];
    if (a == "-f1" || a == "-f2") a = "-" + a;
    out.push_back(std::move(a));
  }
  std::reverse(out.begin(), out.end());  // CLI11 consumes a reversed vector
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional algebra and module computations for hx = x f(h), yh = f(h) y, yx - xy = f(h) - h"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--backend", g.backend, "Scalar backend")->check(CLI::IsMember({"exact", "approx"}));
  app.add_option("--conductor", g.conductor, "Exact scalars live in Q(zeta_N); 0 picks it from the input");
  app.add_option("--tol", g.tol, "Approximate equality radius")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads for enumeration")->check(CLI::Range(1u, 256u));
  app.add_option("--samples", g.samples, "Sampled instances per continuous family");
  app.add_option("--seed", g.seed, "Seed for sampled instances");
  app.add_flag("--json", g.json, "JSON output for every subcommand");

  std::string f, f2, expr, descriptor, module;
  unsigned n = 1;
  const auto with_f = [&](CLI::App* s) { s->add_option("-f,--f", f, "Polynomial f(h)")->required(); };

  auto* normalize = app.add_subcommand("normalize", "Normal form of an expression");
  with_f(normalize);
  normalize->add_option("-e,--expr", expr, "Expression in x, h, y, z")->required();
  auto* central = app.add_subcommand("central", "Whether an expression is central");
  with_f(central);
  central->add_option("-e,--expr", expr, "Expression in x, h, y, z")->required();
  auto* center_cmd = app.add_subcommand("center", "Generators of the center");
  with_f(center_cmd);
  auto* iso = app.add_subcommand("iso", "Isomorphism test for two choices of f");
  iso->add_option("--f1", f, "First polynomial")->required();
  iso->add_option("--f2", f2, "Second polynomial")->required();
  auto* simples = app.add_subcommand("simples", "Simple modules of a given dimension");
  with_f(simples);
  simples->add_option("-n", n, "Dimension")->required()->check(CLI::PositiveNumber);
  auto* build_cmd = app.add_subcommand("build", "Matrices of a module descriptor");
  with_f(build_cmd);
  build_cmd->add_option("--descriptor", descriptor, "Descriptor JSON, inline or a file")->required();
  auto* verify = app.add_subcommand("verify", "Check the defining relations on matrices");
  with_f(verify);
  verify->add_option("--module", module, "Module JSON file")->required();
  auto* classify_cmd = app.add_subcommand("classify", "Descriptor of a simple module given by matrices");
  with_f(classify_cmd);
  classify_cmd->add_option("--module", module, "Module JSON file")->required();
  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(normalized_args(argc, argv));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  NumericConfig cfg = numeric_config();
  cfg.tol = g.tol;
  set_numeric_config(cfg);

  try {
    if (*normalize) return run_normalize(g, f, expr);
    if (*central) return run_central(g, f, expr);
    if (*center_cmd) return run_center(g, f);
    if (*iso) return run_iso(g, f, f2);
    if (*simples) return run_simples(g, f, n);
    if (*build_cmd) return run_build(g, f, descriptor);
    if (*verify) return run_verify(g, f, module);
    if (*classify_cmd) return run_classify(g, f, module);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const MismatchError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const DomainError& e) {
    std::cerr << e.what() << '\n';
    return kNegative;
  }
  return kInput;
}
