#include "sand/report.hpp"

#include <charconv>
#include <ostream>

#include "sand/error.hpp"

namespace sand {

std::string format_number(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

Json to_json(const OrbitDegreeReport& report) {
  Json doc;
  doc["node"] = report.node;
  doc["mode"] = report.mode;
  Json budgets = Json::array();
  for (const auto& b : report.budgets) budgets.push_back({{"method", b.method}, {"samples", b.samples}});
  doc["budgets"] = budgets;
  doc["seed"] = report.seed;
  Json orbits = Json::array();
  for (const auto& o : report.orbits) {
    orbits.push_back({{"id", o.id},
                      {"estimate", o.estimate.value},
                      {"estimate_clamped", o.estimate.clamped()},
                      {"variance", o.estimate.variance},
                      {"source", o.estimate.source}});
  }
  doc["orbits"] = orbits;
  Json cov = Json::array();
  for (const auto& c : report.covariances) cov.push_back({{"i", c.i}, {"j", c.j}, {"value", c.value}});
  doc["covariances"] = cov;
  return doc;
}

OrbitDegreeReport report_from_json(const Json& doc) {
  try {
    OrbitDegreeReport r;
    r.node = doc.at("node").get<std::uint64_t>();
    r.mode = doc.at("mode").get<std::string>();
    for (const auto& b : doc.at("budgets")) {
      r.budgets.push_back({b.at("method").get<std::string>(), b.at("samples").get<std::uint64_t>()});
    }
    r.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& o : doc.at("orbits")) {
      r.orbits.push_back({o.at("id").get<int>(),
                          {o.at("estimate").get<double>(), o.at("variance").get<double>(),
                           o.at("source").get<std::string>()}});
    }
    for (const auto& c : doc.at("covariances")) {
      r.covariances.push_back({c.at("i").get<int>(), c.at("j").get<int>(), c.at("value").get<double>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad report document: ") + e.what());
  }
}

void write_csv(std::ostream& out, const OrbitDegreeReport& report) {
  out << "kind,node,mode,seed,id,j,estimate,estimate_clamped,variance,source\n";
  for (const auto& o : report.orbits) {
    out << "orbit," << report.node << ',' << report.mode << ',' << report.seed << ',' << o.id << ",,"
        << format_number(o.estimate.value) << ',' << format_number(o.estimate.clamped()) << ','
        << format_number(o.estimate.variance) << ',' << o.estimate.source << '\n';
  }
  for (const auto& c : report.covariances) {
    out << "cov," << report.node << ',' << report.mode << ',' << report.seed << ',' << c.i << ','
        << c.j << ",,," << format_number(c.value) << ",\n";
  }
}

Json to_json(const EvalReport& report, bool with_timing) {
  Json doc;
  doc["node"] = report.node;
  doc["mode"] = report.mode;
  doc["runs"] = report.runs;
  doc["seed"] = report.seed;
  Json budgets = Json::array();
  for (const auto& b : report.budgets) budgets.push_back({{"method", b.method}, {"samples", b.samples}});
  doc["budgets"] = budgets;
  if (with_timing) doc["seconds_per_run"] = report.seconds_per_run;
  doc["has_exact"] = report.has_exact;
  Json orbits = Json::array();
  for (const auto& o : report.orbits) {
    Json row = {{"id", o.id}};
    row["exact"] = o.exact ? Json(*o.exact) : Json(nullptr);
    row["mean"] = o.mean;
    row["empirical_variance"] = o.empirical_variance;
    row["mean_reported_variance"] = o.mean_reported_variance;
    row["nrmse"] = o.nrmse ? Json(*o.nrmse) : Json(nullptr);
    orbits.push_back(row);
  }
  doc["orbits"] = orbits;
  auto moments = [](const std::optional<MomentSummary>& m) {
    return m ? Json{{"mean", m->mean}, {"variance", m->variance}} : Json(nullptr);
  };
  doc["l1"] = moments(report.l1);
  doc["l2"] = moments(report.l2);
  Json topk = Json::array();
  for (const auto& [k, hits] : report.topk_mean_hits) topk.push_back({{"k", k}, {"mean_hits", hits}});
  doc["topk"] = topk;
  return doc;
}

void write_csv(std::ostream& out, const EvalReport& report) {
  out << "node,mode,runs,seed,id,exact,mean,empirical_variance,mean_reported_variance,nrmse\n";
  for (const auto& o : report.orbits) {
    out << report.node << ',' << report.mode << ',' << report.runs << ',' << report.seed << ','
        << o.id << ',' << (o.exact ? format_number(*o.exact) : "") << ',' << format_number(o.mean)
        << ',' << format_number(o.empirical_variance) << ','
        << format_number(o.mean_reported_variance) << ','
        << (o.nrmse ? format_number(*o.nrmse) : "") << '\n';
  }
}

}  // namespace sand
