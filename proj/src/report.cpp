#include "varbesov/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace varbesov {

using json = nlohmann::ordered_json;

namespace {

// JSON has no infinities; they travel as strings.
json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

GroupSummary summarize(const std::string& group, const std::vector<const RatioRow*>& rows) {
  GroupSummary s;
  s.group = group;
  for (const RatioRow* r : rows) {
    if (r->vacuous) continue;
    if (s.count == 0) {
      s.min_ratio = s.max_ratio = r->ratio;
    } else {
      s.min_ratio = std::min(s.min_ratio, r->ratio);
      s.max_ratio = std::max(s.max_ratio, r->ratio);
    }
    ++s.count;
  }
  s.spread = s.count == 0 ? 1.0 : s.max_ratio / s.min_ratio;
  return s;
}

}  // namespace

std::vector<GroupSummary> RatioReport::summaries() const {
  std::vector<std::string> order;
  for (const auto& r : rows)
    if (std::find(order.begin(), order.end(), r.group) == order.end()) order.push_back(r.group);
  std::vector<GroupSummary> out;
  for (const auto& g : order) {
    std::vector<const RatioRow*> members;
    for (const auto& r : rows)
      if (r.group == g) members.push_back(&r);
    out.push_back(summarize(g, members));
  }
  return out;
}

GroupSummary RatioReport::overall() const {
  std::vector<const RatioRow*> all;
  for (const auto& r : rows) all.push_back(&r);
  return summarize("all", all);
}

bool RatioReport::passed() const {
  for (const auto& s : summaries())
    if (!(s.spread <= threshold)) return false;
  for (const auto& l : lemmas)
    if (!l.passed) return false;
  for (const auto& [name, ok] : checks)
    if (!ok) return false;
  return true;
}

std::string RatioReport::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["threshold"] = number(threshold);
  j["metadata"] = json::object();
  for (const auto& [k, v] : metadata) j["metadata"][k] = v;
  j["checks"] = json::object();
  for (const auto& [k, v] : checks) j["checks"][k] = v;
  j["rows"] = json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"group", r.group},
                         {"entry", r.entry},
                         {"norm_a", number(r.norm_a)},
                         {"norm_b", number(r.norm_b)},
                         {"ratio", number(r.ratio)},
                         {"vacuous", r.vacuous},
                         {"boundary_mass", number(r.boundary_mass)}});
  j["lemmas"] = json::array();
  for (const auto& l : lemmas)
    j["lemmas"].push_back({{"id", l.id},
                           {"digest", l.digest},
                           {"constant", number(l.constant)},
                           {"refined", number(l.refined)},
                           {"finite", l.finite},
                           {"stable", l.stable},
                           {"hypothesis_met", l.hypothesis_met},
                           {"passed", l.passed},
                           {"note", l.note}});
  j["summary"] = json::array();
  for (const auto& s : summaries())
    j["summary"].push_back({{"group", s.group},
                            {"min", number(s.min_ratio)},
                            {"max", number(s.max_ratio)},
                            {"spread", number(s.spread)},
                            {"count", s.count}});
  j["passed"] = passed();
  return j.dump(2) + "\n";
}

RatioReport RatioReport::from_json(const std::string& text) {
  const json j = json::parse(text);
  RatioReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.threshold = number(j.at("threshold"));
  for (const auto& [k, v] : j.at("metadata").items()) r.metadata[k] = v.get<std::string>();
  for (const auto& [k, v] : j.at("checks").items()) r.checks[k] = v.get<bool>();
  for (const auto& row : j.at("rows"))
    r.rows.push_back({row.at("group").get<std::string>(), row.at("entry").get<std::string>(),
                      number(row.at("norm_a")), number(row.at("norm_b")), number(row.at("ratio")),
                      row.at("vacuous").get<bool>(), number(row.at("boundary_mass"))});
  for (const auto& l : j.at("lemmas"))
    r.lemmas.push_back({l.at("id").get<std::string>(), l.at("digest").get<std::string>(),
                        number(l.at("constant")), number(l.at("refined")), l.at("finite").get<bool>(),
                        l.at("stable").get<bool>(), l.at("hypothesis_met").get<bool>(),
                        l.at("passed").get<bool>(), l.at("note").get<std::string>()});
  return r;
}

void RatioReport::write_csv(std::ostream& out) const {
  out << std::setprecision(17);
  if (!rows.empty() || lemmas.empty()) {
    out << "group,entry,norm_a,norm_b,ratio,vacuous,boundary_mass\n";
    for (const auto& r : rows)
      out << csv_escape(r.group) << ',' << csv_escape(r.entry) << ',' << r.norm_a << ','
          << r.norm_b << ',' << r.ratio << ',' << (r.vacuous ? 1 : 0) << ',' << r.boundary_mass
          << '\n';
    return;
  }
  out << "id,digest,constant,refined,finite,stable,hypothesis_met,passed,note\n";
  for (const auto& l : lemmas)
    out << csv_escape(l.id) << ',' << l.digest << ',' << l.constant << ',' << l.refined << ','
        << l.finite << ',' << l.stable << ',' << l.hypothesis_met << ',' << l.passed << ','
        << csv_escape(l.note) << '\n';
}

void emit_report(const RatioReport& report, const std::string& dir, bool plots) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  auto open = [](const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
  };
  {
    auto out = open(fs::path(dir) / "report.json");
    out << report.to_json();
  }
  {
    auto out = open(fs::path(dir) / "report.csv");
    report.write_csv(out);
  }
  if (!plots) return;
  const fs::path pdir = fs::path(dir) / "plots";
  fs::create_directories(pdir, ec);
  if (ec) throw std::runtime_error("cannot create " + pdir.string());
  {
    auto out = open(pdir / "ratios.csv");
    report.write_csv(out);
  }
  auto script = open(pdir / "plot_ratios.py");
  script << R"(import csv
import sys
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
rows = list(csv.DictReader(open(here / "ratios.csv")))
if rows and "ratio" in rows[0]:
    groups = {}
    for r in rows:
        groups.setdefault(r["group"], []).append(r)
    fig, ax = plt.subplots(figsize=(8, 4))
    for name, members in groups.items():
        ax.plot([m["entry"] for m in members], [float(m["ratio"]) for m in members], "o-", label=name)
    ax.set_ylabel("norm_a / norm_b")
    ax.tick_params(axis="x", rotation=60)
    ax.legend()
    fig.tight_layout()
    fig.savefig(here / "ratios.png", dpi=120)
kernels = here.parent / "kernels.csv"
if kernels.exists():
    data = list(csv.DictReader(open(kernels)))
    fig, ax = plt.subplots(figsize=(6, 4))
    for col in data[0]:
        if col != "r":
            ax.plot([float(d["r"]) for d in data], [float(d[col]) for d in data], label=col)
    ax.set_xlabel("|xi|")
    ax.legend()
    fig.savefig(here / "kernels.png", dpi=120)
)";
}

Digest& Digest::add(std::span<const unsigned char> bytes) {
  for (unsigned char b : bytes) {
    state_ ^= b;
    state_ *= 0x100000001b3ULL;
  }
  return *this;
}

Digest& Digest::add(double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(bits >> (8 * i));
  return add(std::span<const unsigned char>(buf, 8));
}

Digest& Digest::add(std::span<const double> v) {
  for (double x : v) add(x);
  return *this;
}

Digest& Digest::add(const std::string& s) {
  return add(std::span<const unsigned char>(reinterpret_cast<const unsigned char*>(s.data()), s.size()));
}

std::string Digest::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
  return buf;
}

}  // namespace varbesov
