#include "nctorus/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nctorus {

namespace fs = std::filesystem;
using nlohmann::json;

std::string element_to_json(const FourierElement& a) {
  json j;
  j["theta"] = a.theta();
  j["bandwidth"] = a.bandwidth();
  json entries = json::array();
  const int B = a.bandwidth();
  for (int m = -B; m <= B; ++m)
    for (int n = -B; n <= B; ++n) {
      const cplx v = a.coeff(m, n);
      if (v == cplx(0.0, 0.0)) continue;
      entries.push_back(json::array({m, n, v.real(), v.imag()}));
    }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

FourierElement element_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("element parse error: ") + e.what());
  }
  if (!j.contains("theta") || !j.contains("bandwidth") || !j.contains("entries"))
    throw std::runtime_error(
        "element file must contain theta, bandwidth and entries");
  const double theta = j.at("theta").get<double>();
  const int bandwidth = j.at("bandwidth").get<int>();
  if (bandwidth < 1) throw std::runtime_error("element bandwidth must be >= 1");
  FourierElement a(theta, TruncationPolicy{bandwidth, ClipMode::track_spill, 0.0});
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 4)
      throw std::runtime_error("element entry must be [m, n, re, im]");
    const int m = e.at(0).get<int>();
    const int n = e.at(1).get<int>();
    const double re = e.at(2).get<double>();
    const double im = e.at(3).get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw std::runtime_error("element entry is not finite");
    if (std::abs(m) > bandwidth || std::abs(n) > bandwidth)
      throw std::runtime_error("element entry (" + std::to_string(m) + "," +
                               std::to_string(n) + ") outside bandwidth " +
                               std::to_string(bandwidth));
    a.set_coeff(m, n, cplx(re, im));
  }
  return a;
}

FourierElement load_element(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open element file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return element_from_json(ss.str());
}

void save_element(const std::string& path, const FourierElement& a) {
  write_text_atomic(path, element_to_json(a));
}

std::string flow_trace_to_jsonl(const FlowTrace& t) {
  std::string out;
  for (const FlowRecord& r : t.records) {
    json j;
    j["iter"] = r.iter;
    j["energy"] = r.energy;
    j["grad_norm"] = r.grad_norm;
    j["winding1"] = r.winding1;
    j["winding2"] = r.winding2;
    j["unitarity_defect"] = r.unitarity_defect;
    j["spill_mass"] = r.spill_mass;
    out += j.dump() + "\n";
  }
  json fin;
  fin["status"] = to_string(t.status);
  fin["iters"] = t.iters;
  out += fin.dump() + "\n";
  return out;
}

namespace {

json checks_to_json(const SummaryReport& r) {
  json checks = json::array();
  for (const CheckLine& c : r.checks) {
    json j;
    j["name"] = c.name;
    j["value"] = c.value;
    j["bound"] = c.bound;
    j["pass"] = c.pass;
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  return checks;
}

json config_to_json(const SummaryReport& r) {
  json cfg = json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  return cfg;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string summary_to_json(const SummaryReport& r) {
  json j;
  j["harness"] = r.harness;
  j["config"] = config_to_json(r);
  j["checks"] = checks_to_json(r);
  j["pass"] = r.pass;
  if (!r.table.empty()) {
    json table = json::array();
    for (const auto& row : r.table) table.push_back(row);
    j["table_header"] = r.table_header;
    j["table"] = std::move(table);
  }
  return j.dump(2) + "\n";
}

std::string summary_to_csv(const SummaryReport& r) {
  std::string out;
  auto emit_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += csv_escape(row[i]);
    }
    out += "\n";
  };
  emit_row(r.table_header);
  for (const auto& row : r.table) emit_row(row);
  return out;
}

std::string lemma_report_to_json(const LemmaReport& r) {
  json j;
  j["t"] = r.t;
  j["s"] = r.s;
  j["w"] = r.w;
  j["lambda_re"] = r.lambda.real();
  j["lambda_im"] = r.lambda.imag();
  j["tr_uv_abs"] = r.tr_uv_abs;
  j["tr_u_abs2"] = r.tr_u_abs2;
  j["tr_v_abs2"] = r.tr_v_abs2;
  j["region"] = r.region;
  j["swapped"] = r.swapped;
  json slacks = json::array();
  for (const SlackEntry& s : r.slacks) {
    slacks.push_back(json{{"name", s.name},
                          {"lhs", s.lhs},
                          {"rhs", s.rhs},
                          {"diff", s.diff()}});
  }
  j["slacks"] = std::move(slacks);
  return j.dump();
}

std::string lemma_batch_to_json(const LemmaBatch& b) {
  json j = json::parse(summary_to_json(b.summary));
  json reports = json::array();
  for (const LemmaReport& r : b.reports)
    reports.push_back(json::parse(lemma_report_to_json(r)));
  j["reports"] = std::move(reports);
  return j.dump(2) + "\n";
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path() && !target.parent_path().empty())
    fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_report_with_csv(const std::string& path, const SummaryReport& r) {
  write_text_atomic(path, summary_to_json(r));
  if (!r.table.empty()) {
    fs::path csv(path);
    csv.replace_extension(".csv");
    write_text_atomic(csv.string(), summary_to_csv(r));
  }
}

}  // namespace nctorus
