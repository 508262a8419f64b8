#include "mislab/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <tuple>

#include "mislab/errors.hpp"
#include "mislab/graph_io.hpp"

namespace mislab {

using nlohmann::json;

double theoretical_ratio(std::size_t n, double d, double size) {
  if (!(d > 1.0)) throw ParameterError("theoretical_ratio needs d > 1");
  if (n == 0) throw ParameterError("theoretical_ratio needs n > 0");
  return size / (static_cast<double>(n) * std::log(d) / d);
}

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string shortest(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

/// Sort key making aggregation independent of record order.
using RowKey = std::tuple<std::string, std::size_t, double, std::size_t, std::string, std::string, bool>;

RowKey key_of(const BenchRecord& r) {
  return {r.family, r.n, r.d.value_or(0.0), r.m.value_or(0), r.cell, r.solver, r.ls_applied};
}

void mark_highlights(std::vector<ReportRow>& rows) {
  std::map<std::pair<std::string, bool>, double> best;
  for (const auto& row : rows) {
    if (row.count == row.failed) continue;
    auto& b = best[{row.cell, row.ls_applied}];
    b = std::max(b, row.mean_size);
  }
  for (auto& row : rows) {
    auto it = best.find({row.cell, row.ls_applied});
    row.highlighted = it != best.end() && row.count > row.failed &&
                      row.mean_size >= (1.0 - kHighlightTolerance) * it->second;
  }
}

std::string row_param(const ReportRow& r) {
  if (r.d) return shortest(*r.d);
  if (r.m) return std::to_string(*r.m);
  return "";
}

int solver_group(const std::string& solver) {
  if (solver.find("greedy") != std::string::npos || solver.find("exact") != std::string::npos) return 0;
  if (solver.find("anneal") != std::string::npos || solver.find("pcqo") != std::string::npos) return 1;
  return 2;
}

const char* group_name(int group) {
  switch (group) {
    case 0: return "Classical";
    case 1: return "Sampling/gradient";
    default: return "External";
  }
}

std::string file_safe(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return out;
}

}  // namespace

ReportTable aggregate_table(const std::vector<BenchRecord>& records) {
  std::map<RowKey, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records) groups[key_of(r)].push_back(&r);

  ReportTable table;
  for (auto& [key, group] : groups) {
    std::sort(group.begin(), group.end(),
              [](const BenchRecord* a, const BenchRecord* b) { return a->graph_index < b->graph_index; });
    const BenchRecord& first = *group.front();
    ReportRow row;
    row.cell = first.cell;
    row.family = first.family;
    row.n = first.n;
    row.d = first.d;
    row.m = first.m;
    row.solver = first.solver;
    row.ls_applied = first.ls_applied;
    row.count = group.size();

    std::vector<const BenchRecord*> ok;
    for (const auto* r : group) {
      if (r->status == "failed") ++row.failed;
      else ok.push_back(r);
    }
    if (!ok.empty()) {
      const double k = static_cast<double>(ok.size());
      double sum = 0, time = 0;
      for (const auto* r : ok) {
        sum += static_cast<double>(r->size);
        time += r->wall_time;
      }
      row.mean_size = sum / k;
      row.mean_time = time / k;
      double sq = 0;
      for (const auto* r : ok) sq += std::pow(static_cast<double>(r->size) - row.mean_size, 2);
      row.std_size = ok.size() > 1 ? std::sqrt(sq / (k - 1)) : 0.0;
      if (first.family == "er" && first.d && *first.d > 1.0) {
        double ratio = 0;
        for (const auto* r : ok) ratio += theoretical_ratio(r->n, *r->d, static_cast<double>(r->size));
        row.mean_ratio = ratio / k;
      }
      if (std::all_of(ok.begin(), ok.end(), [](const BenchRecord* r) { return r->thirds.has_value(); })) {
        ThirdsSummary t;
        for (const auto* r : ok) {
          t.p1 += r->thirds->p1;
          t.p2 += r->thirds->p2;
          t.p3 += r->thirds->p3;
          t.overall += r->thirds->overall;
        }
        t.p1 /= k;
        t.p2 /= k;
        t.p3 /= k;
        t.overall /= k;
        row.mean_thirds = t;
      }
    }
    table.rows.push_back(std::move(row));
  }
  mark_highlights(table.rows);
  return table;
}

ReportTable ls_delta_report(const std::vector<BenchRecord>& base, const std::vector<BenchRecord>& ls) {
  auto pair_key = [](const BenchRecord& r) {
    return r.cell + '|' + std::to_string(r.graph_index) + '|' + r.solver;
  };
  std::map<std::string, const BenchRecord*> base_by_key;
  for (const auto& r : base) base_by_key[pair_key(r)] = &r;
  std::set<std::string> matched;
  std::vector<std::string> orphans;
  for (const auto& r : ls) {
    auto k = pair_key(r);
    if (base_by_key.count(k)) matched.insert(k);
    else orphans.push_back("ls:" + k);
  }
  for (const auto& [k, r] : base_by_key) {
    if (!matched.count(k)) orphans.push_back("base:" + k);
  }
  if (!orphans.empty()) {
    std::string msg = "unmatched records:";
    for (const auto& o : orphans) msg += " " + o;
    throw ParameterError(msg);
  }

  std::vector<BenchRecord> base_rows(base.begin(), base.end());
  std::vector<BenchRecord> ls_rows(ls.begin(), ls.end());
  for (auto& r : base_rows) r.ls_applied = false;
  for (auto& r : ls_rows) r.ls_applied = true;
  const auto base_table = aggregate_table(base_rows);
  auto table = aggregate_table(ls_rows);
  for (auto& row : table.rows) {
    for (const auto& b : base_table.rows) {
      if (b.cell == row.cell && b.solver == row.solver) row.ls_delta = row.mean_size - b.mean_size;
    }
  }
  return table;
}

std::string format_final_delta(double final_mean, double delta) {
  return fixed2(final_mean) + " (" + fixed2(delta) + ")";
}

json ReportTable::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    json j{{"cell", r.cell}, {"family", r.family}, {"n", r.n}, {"solver", r.solver},
           {"ls_applied", r.ls_applied}, {"count", r.count}, {"failed", r.failed},
           {"mean_size", r.mean_size}, {"std_size", r.std_size}, {"mean_time", r.mean_time},
           {"highlighted", r.highlighted}};
    if (r.d) j["d"] = *r.d;
    if (r.m) j["m"] = *r.m;
    if (r.mean_ratio) j["mean_ratio"] = *r.mean_ratio;
    if (r.ls_delta) j["ls_delta"] = *r.ls_delta;
    if (r.mean_thirds) {
      j["thirds"] = {{"p1", r.mean_thirds->p1}, {"p2", r.mean_thirds->p2},
                     {"p3", r.mean_thirds->p3}, {"overall", r.mean_thirds->overall}};
    }
    rows_json.push_back(std::move(j));
  }
  return json{{"rows", rows_json}};
}

ReportTable ReportTable::from_json(const json& j) {
  ReportTable table;
  try {
    for (const auto& rj : j.at("rows")) {
      ReportRow r;
      r.cell = rj.at("cell").get<std::string>();
      r.family = rj.at("family").get<std::string>();
      r.n = rj.at("n").get<std::size_t>();
      r.solver = rj.at("solver").get<std::string>();
      r.ls_applied = rj.at("ls_applied").get<bool>();
      r.count = rj.at("count").get<std::size_t>();
      r.failed = rj.at("failed").get<std::size_t>();
      r.mean_size = rj.at("mean_size").get<double>();
      r.std_size = rj.at("std_size").get<double>();
      r.mean_time = rj.at("mean_time").get<double>();
      r.highlighted = rj.at("highlighted").get<bool>();
      if (rj.contains("d")) r.d = rj.at("d").get<double>();
      if (rj.contains("m")) r.m = rj.at("m").get<std::size_t>();
      if (rj.contains("mean_ratio")) r.mean_ratio = rj.at("mean_ratio").get<double>();
      if (rj.contains("ls_delta")) r.ls_delta = rj.at("ls_delta").get<double>();
      if (rj.contains("thirds")) {
        const auto& t = rj.at("thirds");
        r.mean_thirds = ThirdsSummary{t.at("p1").get<double>(), t.at("p2").get<double>(),
                                      t.at("p3").get<double>(), t.at("overall").get<double>()};
      }
      table.rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("report table: ") + e.what());
  }
  return table;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw ParameterError("unknown report format '" + name + "'");
}

std::string table_csv(const ReportTable& table) {
  std::string out =
      "cell,family,n,d,m,solver,ls_applied,count,failed,mean_size,std_size,mean_time,mean_ratio,"
      "ls_delta,p1,p2,p3,overall,highlighted\n";
  auto opt = [](const auto& o) { return o ? shortest(static_cast<double>(*o)) : std::string{}; };
  for (const auto& r : table.rows) {
    out += r.cell + ',' + r.family + ',' + std::to_string(r.n) + ',' + opt(r.d) + ',' + opt(r.m) +
           ',' + r.solver + ',' + (r.ls_applied ? "1" : "0") + ',' + std::to_string(r.count) + ',' +
           std::to_string(r.failed) + ',' + fixed2(r.mean_size) + ',' + fixed2(r.std_size) + ',' +
           shortest(r.mean_time) + ',' + (r.mean_ratio ? shortest(*r.mean_ratio) : "") + ',' +
           (r.ls_delta ? fixed2(*r.ls_delta) : "");
    if (r.mean_thirds) {
      out += ',' + fixed2(r.mean_thirds->p1) + ',' + fixed2(r.mean_thirds->p2) + ',' +
             fixed2(r.mean_thirds->p3) + ',' + fixed2(r.mean_thirds->overall);
    } else {
      out += ",,,,";
    }
    out += std::string(",") + (r.highlighted ? "1" : "0") + '\n';
  }
  return out;
}

std::string table_markdown(const ReportTable& table) {
  // Columns: one per (solver, ls) pair, ordered by solver family group.
  std::vector<std::tuple<int, std::string, bool>> columns;
  for (const auto& r : table.rows) {
    std::tuple<int, std::string, bool> c{solver_group(r.solver), r.solver, r.ls_applied};
    if (std::find(columns.begin(), columns.end(), c) == columns.end()) columns.push_back(c);
  }
  std::sort(columns.begin(), columns.end());

  // Rows: cells in table order.
  std::vector<const ReportRow*> cells;
  for (const auto& r : table.rows) {
    if (std::none_of(cells.begin(), cells.end(), [&](const ReportRow* c) { return c->cell == r.cell; })) {
      cells.push_back(&r);
    }
  }

  std::string out = "| family | n | d/m |";
  for (const auto& [group, solver, ls] : columns) {
    out += std::string(" ") + group_name(group) + ": " + (ls ? solver + "+ls" : solver) + " |";
  }
  out += "\n|---|---|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += "---|";
  out += '\n';
  for (const ReportRow* cell : cells) {
    out += "| " + cell->family + " | " + std::to_string(cell->n) + " | " + row_param(*cell) + " |";
    for (const auto& [group, solver, ls] : columns) {
      const ReportRow* hit = nullptr;
      for (const auto& r : table.rows) {
        if (r.cell == cell->cell && r.solver == solver && r.ls_applied == ls) hit = &r;
      }
      if (!hit || hit->count == hit->failed) {
        out += " -- |";
        continue;
      }
      std::string value = hit->ls_delta ? format_final_delta(hit->mean_size, *hit->ls_delta)
                                        : fixed2(hit->mean_size);
      out += hit->highlighted ? " **" + value + "** |" : " " + value + " |";
    }
    out += '\n';
  }
  return out;
}

std::string ratio_heatmap_csv(const ReportTable& table, const std::string& solver, bool ls_applied) {
  std::set<std::size_t> ns;
  std::set<double> ds;
  std::map<std::pair<std::size_t, double>, double> value;
  for (const auto& r : table.rows) {
    if (r.solver != solver || r.ls_applied != ls_applied || !r.mean_ratio || !r.d) continue;
    ns.insert(r.n);
    ds.insert(*r.d);
    value[{r.n, *r.d}] = *r.mean_ratio;
  }
  std::string out = "n";
  for (double d : ds) out += ",d=" + shortest(d);
  out += '\n';
  for (std::size_t n : ns) {
    out += std::to_string(n);
    for (double d : ds) {
      out += ',';
      if (auto it = value.find({n, d}); it != value.end()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", it->second);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

std::string thirds_csv(const ReportTable& table, const std::string& solver, bool ls_applied) {
  std::string out = "cell,family,n,param,p1,p2,p3,overall\n";
  for (const auto& r : table.rows) {
    if (r.solver != solver || r.ls_applied != ls_applied || !r.mean_thirds) continue;
    out += r.cell + ',' + r.family + ',' + std::to_string(r.n) + ',' + row_param(r) + ',' +
           fixed2(r.mean_thirds->p1) + ',' + fixed2(r.mean_thirds->p2) + ',' +
           fixed2(r.mean_thirds->p3) + ',' + fixed2(r.mean_thirds->overall) + '\n';
  }
  return out;
}

std::string render_table(const ReportTable& table, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return table_csv(table);
    case ReportFormat::Json: return table.to_json().dump(2) + '\n';
    case ReportFormat::Markdown: return table_markdown(table);
  }
  return {};
}

std::vector<std::string> emit_reports(const ReportTable& table, ReportFormat format,
                                      const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + out_dir + "': " + ec.message());

  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& text) {
    const auto path = (fs::path(out_dir) / name).string();
    write_text_file(path, text);
    written.push_back(path);
  };
  const char* ext = format == ReportFormat::Csv ? "csv" : format == ReportFormat::Json ? "json" : "md";
  put(std::string("table.") + ext, render_table(table, format));

  std::set<std::pair<std::string, bool>> with_ratio, with_thirds;
  for (const auto& r : table.rows) {
    if (r.mean_ratio) with_ratio.insert({r.solver, r.ls_applied});
    if (r.mean_thirds) with_thirds.insert({r.solver, r.ls_applied});
  }
  for (const auto& [solver, ls] : with_ratio) {
    put("heatmap_" + file_safe(ls ? solver + "+ls" : solver) + ".csv", ratio_heatmap_csv(table, solver, ls));
  }
  for (const auto& [solver, ls] : with_thirds) {
    put("thirds_" + file_safe(ls ? solver + "+ls" : solver) + ".csv", thirds_csv(table, solver, ls));
  }
  return written;
}

}  // namespace mislab
