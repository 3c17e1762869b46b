#include "smoothsvm/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smoothsvm/errors.hpp"

namespace smoothsvm {
namespace {

using nlohmann::json;

constexpr const char* kModelFormat = "smoothsvm-model";
constexpr int kModelVersion = 1;

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json loss_to_json(const LossSpec& loss) {
  if (loss.family() == LossFamily::Custom) throw Unsupported("custom losses cannot be serialized");
  json j{{"family", family_name(loss.family())}, {"theta", loss.theta()}};
  switch (loss.family()) {
    case LossFamily::ShalevGamma: j["gamma"] = loss.gamma(); break;
    case LossFamily::WangKh: j["bandwidth"] = loss.bandwidth(); break;
    default:
      if (uses_sigma(loss.family())) j["sigma"] = loss.sigma();
  }
  if (loss.family() == LossFamily::SmoothAbsolute) j["rescale_absolute"] = loss.rescale_absolute();
  return j;
}

LossSpec loss_from_json(const json& j) {
  LossParams params;
  params.theta = j.at("theta").get<double>();
  params.sigma = j.value("sigma", 1.0);
  params.gamma = j.value("gamma", 1.0);
  params.bandwidth = j.value("bandwidth", 1.0);
  params.rescale_absolute = j.value("rescale_absolute", false);
  return LossSpec::make(parse_family(j.at("family").get<std::string>()), params);
}

void strip_timing(json& j) {
  if (j.is_object()) {
    j.erase("wall_time_seconds");
    for (auto& [key, value] : j.items()) strip_timing(value);
  } else if (j.is_array()) {
    for (json& v : j) strip_timing(v);
  }
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string finish(json doc) {
  json body = doc;
  strip_timing(body);
  doc["digest"] = hex64(fnv1a64(body.dump()));
  return doc.dump(2) + "\n";
}

json record_json(const CvRecord& r) {
  return {{"fold", r.fold},
          {"repetition", r.repetition},
          {"seed", r.seed},
          {"accuracy", r.accuracy},
          {"train_accuracy", r.train_accuracy},
          {"wall_time_seconds", r.wall_time_seconds},
          {"iterations", r.iterations},
          {"final_grad_norm", number_or_null(r.final_grad_norm)},
          {"converged", r.converged}};
}

json experiment_body(const ExperimentReport& e) {
  json records = json::array();
  for (const CvRecord& r : e.records) records.push_back(record_json(r));
  return {{"solver", e.solver},
          {"loss", e.loss},
          {"lambda", e.lambda},
          {"folds", e.folds},
          {"repetitions", e.repetitions},
          {"seed", e.seed},
          {"records", records},
          {"aggregate",
           {{"accuracy_mean", e.accuracy.mean},
            {"accuracy_std", e.accuracy.stddev},
            {"wall_time_seconds", {{"mean", e.wall_time_seconds.mean}, {"std", e.wall_time_seconds.stddev}}}}},
          {"warnings", e.warnings}};
}

void append_record_csv(std::string& out, const CvRecord& r) {
  out += std::to_string(r.fold) + ',' + std::to_string(r.repetition) + ',' + std::to_string(r.seed) + ',' +
         format_double(r.accuracy) + ',' + format_double(r.train_accuracy) + ',' +
         format_double(r.wall_time_seconds) + ',' + std::to_string(r.iterations) + ',' +
         format_double(r.final_grad_norm) + ',' + (r.converged ? "true" : "false") + '\n';
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string model_to_json(const Model& model) {
  json j{{"format", kModelFormat},
         {"version", kModelVersion},
         {"loss", loss_to_json(model.loss)},
         {"lambda", model.lambda},
         {"solver", model.solver},
         {"dimension", model.weights.size()},
         {"weights", model.weights}};
  return j.dump(2) + "\n";
}

Model model_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != kModelFormat) throw ParseError(0, "not a smoothsvm model");
    if (j.at("version").get<int>() != kModelVersion) throw ParseError(0, "unsupported model version");
    Model m{loss_from_json(j.at("loss")), j.at("lambda").get<double>(), j.at("solver").get<std::string>(),
            j.at("weights").get<std::vector<double>>()};
    if (m.weights.size() != j.at("dimension").get<std::size_t>()) {
      throw DimensionMismatch("model dimension does not match its weight count");
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("model: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << model_to_json(model);
  if (!out) throw Error("write error on '" + path.string() + "'");
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

std::string train_report_json(const TrainReport& r) {
  json rho = json::array();
  json radius = json::array();
  json grad = json::array();
  for (double x : r.rho_trace) rho.push_back(number_or_null(x));
  for (double x : r.radius_trace) radius.push_back(number_or_null(x));
  for (double x : r.grad_norm_trace) grad.push_back(number_or_null(x));
  json doc{{"solver", r.solver},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"final_objective", number_or_null(r.final_objective())},
           {"final_grad_norm", number_or_null(r.final_grad_norm())},
           {"objective_trace", r.objective_trace},
           {"grad_norm_trace", grad},
           {"cg_iters_trace", r.cg_iters_trace},
           {"radius_trace", radius},
           {"rho_trace", rho},
           {"accepted_trace", r.accepted_trace},
           {"warnings", r.warnings},
           {"timing", {{"wall_time_seconds", r.wall_time_seconds}}}};
  return finish(std::move(doc));
}

std::string experiment_json(const ExperimentReport& report) { return finish(experiment_body(report)); }

std::string sweep_json(const std::vector<SweepEntry>& sweep) {
  json entries = json::array();
  for (const SweepEntry& e : sweep) entries.push_back({{"sigma", e.sigma}, {"report", experiment_body(e.report)}});
  return finish(json{{"sweep", entries}});
}

std::string compare_json(const std::vector<CompareRow>& rows) {
  json out = json::array();
  for (const CompareRow& row : rows) {
    json j{{"solver", row.solver}, {"loss", row.loss}, {"valid", row.valid}};
    if (row.valid) {
      j["report"] = experiment_body(row.report);
    } else {
      j["warning"] = row.warning;
    }
    out.push_back(j);
  }
  return finish(json{{"rows", out}});
}

std::string train_report_csv(const TrainReport& r) {
  std::string out = "iteration,objective,grad_norm,cg_iters,radius,rho,accepted\n";
  for (std::size_t t = 0; t < r.objective_trace.size(); ++t) {
    out += std::to_string(t) + ',' + format_double(r.objective_trace[t]) + ',' + format_double(r.grad_norm_trace[t]) +
           ',' + std::to_string(r.cg_iters_trace[t]) + ',' + format_double(r.radius_trace[t]) + ',' +
           format_double(r.rho_trace[t]) + ',' + (r.accepted_trace[t] ? "true" : "false") + '\n';
  }
  return out;
}

std::string experiment_csv(const ExperimentReport& report) {
  std::string out =
      "fold,repetition,seed,accuracy,train_accuracy,wall_time_seconds,iterations,final_grad_norm,converged\n";
  for (const CvRecord& r : report.records) append_record_csv(out, r);
  return out;
}

std::string sweep_csv(const std::vector<SweepEntry>& sweep) {
  std::string out =
      "sigma,fold,repetition,seed,accuracy,train_accuracy,wall_time_seconds,iterations,final_grad_norm,"
      "converged\n";
  for (const SweepEntry& e : sweep) {
    for (const CvRecord& r : e.report.records) {
      out += format_double(e.sigma) + ',';
      append_record_csv(out, r);
    }
  }
  return out;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::string out = "solver,loss,valid,accuracy_mean,accuracy_std,wall_time_mean,wall_time_std,runs,warning\n";
  for (const CompareRow& row : rows) {
    out += row.solver + ',' + row.loss + ',' + (row.valid ? "true" : "false") + ',';
    if (row.valid) {
      const ExperimentReport& e = row.report;
      out += format_double(e.accuracy.mean) + ',' + format_double(e.accuracy.stddev) + ',' +
             format_double(e.wall_time_seconds.mean) + ',' + format_double(e.wall_time_seconds.stddev) + ',' +
             std::to_string(e.records.size()) + ',';
    } else {
      out += ",,,,0,";
    }
    out += csv_quote(row.warning) + '\n';
  }
  return out;
}

}  // namespace smoothsvm
