#include <algorithm>

#include "weilreg/errors.hpp"
#include "weilreg/session.hpp"

namespace weilreg::session {

using json = nlohmann::ordered_json;

json to_json(const Report& report) {
  json out;
  out["version"] = report.version;
  out["session"] = report.session;
  out["records"] = json::array();
  for (const auto& r : report.records) {
    json rec;
    rec["command"] = r.command;
    rec["status"] = r.status;
    rec["payload"] = r.payload;
    rec["millis"] = r.millis;
    rec["groebner_steps"] = r.groebner_steps;
    out["records"].push_back(std::move(rec));
  }
  return out;
}

namespace {

std::string emit_text(const Report& report) {
  struct Row {
    std::string index, command, status, steps, millis, payload;
  };
  std::vector<Row> rows{{"#", "command", "status", "steps", "millis", "payload"}};
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.millis);
    rows.push_back({std::to_string(i + 1), r.command, r.status, std::to_string(r.groebner_steps), ms, r.payload.dump()});
  }
  std::size_t w[5] = {0, 0, 0, 0, 0};
  for (const auto& row : rows) {
    w[0] = std::max(w[0], row.index.size());
    w[1] = std::max(w[1], row.command.size());
    w[2] = std::max(w[2], row.status.size());
    w[3] = std::max(w[3], row.steps.size());
    w[4] = std::max(w[4], row.millis.size());
  }
  auto pad = [](const std::string& s, std::size_t n) { return s + std::string(n - s.size(), ' '); };
  std::string out = "session: " + report.session + "\n";
  for (const auto& row : rows)
    out += pad(row.index, w[0]) + "  " + pad(row.command, w[1]) + "  " + pad(row.status, w[2]) + "  " +
           pad(row.steps, w[3]) + "  " + pad(row.millis, w[4]) + "  " + row.payload + "\n";
  return out;
}

}  // namespace

std::string emit_report(const Report& report, Format format) {
  if (format == Format::Text) return emit_text(report);
  return to_json(report).dump() + "\n";
}

Report report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    Report r;
    r.version = j.at("version").get<int>();
    r.session = j.at("session").get<std::string>();
    for (const auto& rec : j.at("records")) {
      Record x;
      x.command = rec.at("command").get<std::string>();
      x.status = rec.at("status").get<std::string>();
      x.payload = rec.at("payload");
      x.millis = rec.at("millis").get<double>();
      x.groebner_steps = rec.at("groebner_steps").get<std::uint64_t>();
      r.records.push_back(std::move(x));
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace weilreg::session
