#include "ssal/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ssal {

namespace {

using nlohmann::json;

json vec_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json mat_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Vector vec_from_json(const json& arr, const char* what) {
  if (!arr.is_array())
    throw std::invalid_argument(std::string("instance: ") + what +
                                " must be an array");
  Vector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
  return v;
}

Matrix mat_from_json(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array())
    throw std::invalid_argument(std::string("instance: ") + what +
                                " must be a nested array");
  const std::size_t ncols = rows[0].size();
  Matrix m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols)
      throw std::invalid_argument(std::string("instance: ragged rows in ") +
                                  what);
    for (std::size_t c = 0; c < ncols; ++c) m(r, c) = rows[r][c].get<double>();
  }
  return m;
}

}  // namespace

InstanceFile parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance: JSON parse error: ") +
                                e.what());
  }

  InstanceFile inst;
  inst.spec.n = doc.at("n").get<int>();

  const json& obj = doc.at("objective");
  const std::string kind = obj.at("kind").get<std::string>();
  if (kind == "quadratic_form") {
    inst.spec.objective = QuadraticForm{mat_from_json(obj.at("M"), "M")};
  } else if (kind == "least_squares") {
    inst.spec.objective = LeastSquares{mat_from_json(obj.at("A"), "A"),
                                       vec_from_json(obj.at("b"), "b")};
  } else {
    throw std::invalid_argument("instance: unknown objective kind: " + kind);
  }

  if (doc.contains("x_set")) {
    const json& xs = doc.at("x_set");
    if (xs.contains("box"))
      inst.spec.x_set.box =
          ConvexSetX::Box{vec_from_json(xs["box"].at("lower"), "box.lower"),
                          vec_from_json(xs["box"].at("upper"), "box.upper")};
    if (xs.contains("simplex")) inst.spec.x_set.simplex = xs["simplex"].get<bool>();
    if (xs.contains("return_halfspace"))
      inst.spec.x_set.halfspace = ConvexSetX::Halfspace{
          vec_from_json(xs["return_halfspace"].at("mu"), "mu"),
          xs["return_halfspace"].at("rho0").get<double>()};
    if (xs.contains("quad_risk"))
      inst.spec.x_set.quad_risk =
          ConvexSetX::QuadRisk{vec_from_json(xs["quad_risk"].at("d"), "d"),
                               xs["quad_risk"].at("sigma0").get<double>()};
  }

  const json& ys = doc.at("y_set");
  inst.spec.y_set.a = vec_from_json(ys.at("a"), "y_set.a");
  inst.spec.y_set.b = vec_from_json(ys.at("b"), "y_set.b");
  inst.spec.y_set.K = ys.at("K").get<int>();

  if (doc.contains("id")) inst.id = doc["id"].get<std::string>();
  if (doc.contains("f_true")) inst.f_true = vec_from_json(doc["f_true"], "f_true");
  if (doc.contains("noise_sigma2"))
    inst.noise_sigma2 = doc["noise_sigma2"].get<double>();

  inst.spec.validate();
  if (inst.f_true && inst.f_true->size() != inst.spec.n)
    throw std::invalid_argument("instance: f_true dimension mismatch");
  return inst;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("instance: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string instance_to_json(const InstanceFile& inst, int indent) {
  json doc;
  doc["n"] = inst.spec.n;
  if (const auto* q = std::get_if<QuadraticForm>(&inst.spec.objective)) {
    doc["objective"] = {{"kind", "quadratic_form"}, {"M", mat_to_json(q->M)}};
  } else {
    const auto& ls = std::get<LeastSquares>(inst.spec.objective);
    doc["objective"] = {{"kind", "least_squares"},
                        {"A", mat_to_json(ls.A)},
                        {"b", vec_to_json(ls.b)}};
  }
  json xs = json::object();
  if (inst.spec.x_set.box)
    xs["box"] = {{"lower", vec_to_json(inst.spec.x_set.box->lower)},
                 {"upper", vec_to_json(inst.spec.x_set.box->upper)}};
  if (inst.spec.x_set.simplex) xs["simplex"] = true;
  if (inst.spec.x_set.halfspace)
    xs["return_halfspace"] = {
        {"mu", vec_to_json(inst.spec.x_set.halfspace->mu)},
        {"rho0", inst.spec.x_set.halfspace->rho0}};
  if (inst.spec.x_set.quad_risk)
    xs["quad_risk"] = {{"d", vec_to_json(inst.spec.x_set.quad_risk->d)},
                       {"sigma0", inst.spec.x_set.quad_risk->sigma0}};
  doc["x_set"] = std::move(xs);
  doc["y_set"] = {{"a", vec_to_json(inst.spec.y_set.a)},
                  {"b", vec_to_json(inst.spec.y_set.b)},
                  {"K", inst.spec.y_set.K}};
  if (!inst.id.empty()) doc["id"] = inst.id;
  if (inst.f_true) doc["f_true"] = vec_to_json(*inst.f_true);
  if (inst.noise_sigma2) doc["noise_sigma2"] = *inst.noise_sigma2;
  return doc.dump(indent);
}

void save_instance(const InstanceFile& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("instance: cannot write " + path);
  out << instance_to_json(inst) << '\n';
}

std::string report_to_json(const SolveReport& report, int indent) {
  json doc;
  doc["converged"] = report.converged;
  doc["outer_iterations"] = report.outer_iterations;
  doc["primal_residual_final"] = report.primal_residual_final;
  doc["objective_x"] = report.objective_x;
  doc["objective_y"] = report.objective_y;
  doc["objective_polished"] = report.objective_polished;
  doc["stationarity_residual"] = report.stationarity_residual;
  doc["polish_feasible"] = report.polish_feasible;
  doc["wall_time_s"] = report.wall_time_s;
  doc["x_final"] = vec_to_json(report.x_final);
  doc["y_final"] = vec_to_json(report.y_final);
  doc["x_polished"] = vec_to_json(report.x_polished);
  json z = json::array();
  for (Eigen::Index i = 0; i < report.z_final.size(); ++i)
    z.push_back(report.z_final[i]);
  doc["z_final"] = std::move(z);
  json trace = json::array();
  for (const auto& point : report.trace)
    trace.push_back({point.k, point.primal_residual, point.objective});
  doc["trace"] = std::move(trace);
  return doc.dump(indent);
}

std::string oracle_to_json(const OracleResult& result, int indent) {
  json doc;
  doc["objective"] = result.objective;
  doc["supports_examined"] = result.supports_examined;
  doc["support"] = result.support;
  doc["x_star"] = vec_to_json(result.x_star);
  return doc.dump(indent);
}

}  // namespace ssal
