#include "json_io.hpp"

namespace gha::cli {

json to_json(const Scalar& s) { return s.to_string(); }

json to_json(const std::vector<Scalar>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

json to_json(const Orbit& o) { return to_json(o.values()); }

json to_json(const ModuleDescriptor& d) {
  json out{{"kind", kind_name(d)}};
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NilpotentModule>) {
          out["z_value"] = to_json(m.z_value);
          out["dim"] = m.dim;
        } else {
          out["weights"] = to_json(m.weights);
          out["z_value"] = to_json(m.z_value);
          out["a"] = to_json(m.a);
        }
      },
      d);
  return out;
}

namespace {

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
json descriptors(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& d : v) out.push_back(to_json(ModuleDescriptor(d)));
  return out;
}

[[noreturn]] void bad(const std::string& what) { throw InputError("invalid JSON input: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

Matrix matrix_from_json(const json& j, std::size_t n, const ParseOptions& opts, const char* name) {
  if (!j.is_array() || j.size() != n) bad(std::string(name) + " must be an array of " + std::to_string(n) + " rows");
  Matrix m(n, opts.backend);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) {
      bad(std::string(name) + " row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = scalar_from_json(j[r][c], opts);
  }
  return m;
}

bool any_decimal(const json& j) {
  if (j.is_string()) return has_decimal_literal(j.get<std::string>());
  if (j.is_number_float()) return true;
  if (j.is_structured()) {
    for (const auto& v : j) {
      if (any_decimal(v)) return true;
    }
  }
  return false;
}

}  // namespace

json to_json(const MatrixModule& m) {
  return {{"n", m.n},
          {"backend", to_string(m.backend())},
          {"X", matrix_json(m.X)},
          {"H", matrix_json(m.H)},
          {"Y", matrix_json(m.Y)}};
}

json to_json(const RelationReport& r) {
  return {{"ok", r.ok},
          {"residuals",
           {{"hx - x*f(h)", r.residuals[0]}, {"yh - f(h)*y", r.residuals[1]}, {"yx - xy - (f(h) - h)", r.residuals[2]}}}};
}

json to_json(const CenterDescription& c) {
  json gens = json::array();
  for (const auto& g : c.generators) gens.push_back(g.to_string());
  return {{"cyclotomic", c.cyclotomic},
          {"l", c.cyclotomic ? json(c.l) : json(nullptr)},
          {"c", c.c ? to_json(*c.c) : json(nullptr)},
          {"generators", gens}};
}

json to_json(const IsoVerdict& v) {
  json w = nullptr;
  if (v.witness) w = {{"a", to_json(v.witness->a)}, {"c", to_json(v.witness->c)}, {"swapped", v.witness->swapped}};
  return {{"isomorphic", v.isomorphic},
          {"case", v.isomorphic ? json(v.case_label) : json(nullptr)},
          {"witness", w},
          {"numeric_witness", v.numeric_witness},
          {"reason", v.reason}};
}

json to_json(const SimpleModules& s) {
  json x = json::array(), y = json::array();
  for (const auto& f : s.x_cyclic) {
    x.push_back({{"weights", to_json(f.weights)}, {"free", {"z_value", "a"}}, {"samples", descriptors(f.samples)}});
  }
  for (const auto& f : s.y_cyclic) {
    y.push_back({{"weights", to_json(f.weights)},
                 {"z_values", to_json(f.z_values)},
                 {"free", {"a"}},
                 {"samples", descriptors(f.samples)}});
  }
  json continuum = nullptr;
  if (s.continuum) {
    const auto& c = *s.continuum;
    continuum = {{"center", to_json(c.orbits.center)},
                 {"multiplier", to_json(c.orbits.multiplier)},
                 {"period", c.orbits.period},
                 {"weights", "center + b*multiplier^i for every b != 0"},
                 {"free", {"b", "z_value", "a"}},
                 {"x_samples", descriptors(c.x_samples)},
                 {"y_samples", descriptors(c.y_samples)}};
  }
  json rejected = json::array();
  for (const auto& r : s.rejected) {
    rejected.push_back({{"z_value", to_json(r.z_value)}, {"index", r.index}, {"borderline", r.borderline}});
  }
  return {{"dim", s.dim},
          {"empty", s.empty()},
          {"x_cyclic", x},
          {"y_cyclic", y},
          {"continuum", continuum},
          {"nilpotent",
           {{"modules", descriptors(s.nilpotent)},
            {"free", s.nilpotent_free},
            {"excluded", to_json(s.nilpotent_excluded)},
            {"samples", descriptors(s.nilpotent_samples)}}},
          {"rejected", rejected},
          {"residual_roots", to_json(s.residual_roots)}};
}

Backend document_backend(const json& doc, Backend requested) {
  return requested == Backend::approx || any_decimal(doc) ? Backend::approx : Backend::exact;
}

Scalar scalar_from_json(const json& j, const ParseOptions& opts) {
  if (j.is_number_integer()) return Scalar::from_int(j.get<long>(), opts.backend);
  if (j.is_number_float()) {
    if (opts.backend == Backend::exact) bad("decimal number needs the approx backend");
    return Scalar::approx(j.get<double>());
  }
  if (!j.is_string()) bad("scalars must be strings or integers");
  return parse_scalar(j.get<std::string>(), opts);
}

ModuleDescriptor descriptor_from_json(const json& j, const Poly& f, const ParseOptions& opts) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) bad("'kind' must be a string");
  const std::string k = kind.get<std::string>();
  const Scalar z = scalar_from_json(field(j, "z_value"), opts);
  if (k == "nilpotent") {
    const json& dim = field(j, "dim");
    if (!dim.is_number_unsigned() || dim.get<unsigned>() == 0) bad("'dim' must be a positive integer");
    return NilpotentModule{z, dim.get<unsigned>()};
  }
  if (k != "x_cyclic" && k != "y_cyclic") bad("unknown kind '" + k + "'");
  const json& w = field(j, "weights");
  if (!w.is_array() || w.empty()) bad("'weights' must be a nonempty array");
  std::vector<Scalar> values;
  for (const auto& v : w) values.push_back(scalar_from_json(v, opts));
  Orbit orbit = Orbit::unchecked(values);
  try {
    orbit = Orbit::make(std::move(values), opts.backend == Backend::approx ? f.to_approx() : f);
  } catch (const DomainError& e) {
    throw InputError(std::string("invalid weights: ") + e.what());
  }
  const Scalar a = scalar_from_json(field(j, "a"), opts);
  if (k == "x_cyclic") return XCyclicModule{orbit, z, a};
  return YCyclicModule{orbit, z, a};
}

MatrixModule module_from_json(const json& j, const ParseOptions& opts) {
  const json& n = field(j, "n");
  if (!n.is_number_unsigned() || n.get<std::size_t>() == 0) bad("'n' must be a positive integer");
  const std::size_t size = n.get<std::size_t>();
  return {size, matrix_from_json(field(j, "X"), size, opts, "X"), matrix_from_json(field(j, "H"), size, opts, "H"),
          matrix_from_json(field(j, "Y"), size, opts, "Y")};
}

}  // namespace gha::cli
