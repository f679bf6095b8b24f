#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpvol/analysis.hpp"
#include "lpvol/montecarlo.hpp"
#include "lpvol/volumes.hpp"

namespace lpvol::cli {

namespace {

using json = nlohmann::json;
using kernels::Kind;
using quad::QuadConfig;
using volumes::VolumeEstimate;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    q += c;
    if (c == '"') q += '"';
  }
  q += '"';
  return q;
}

// One emitted record.  Every computational row carries value / err_estimate /
// method so the JSON schema stays stable across commands.
struct Row {
  std::string name;
  double value = 0.0;
  double err = 0.0;
  std::string method;
  std::vector<std::pair<std::string, std::string>> extra;  // per-command columns
};

struct Document {
  std::string command;
  json params = json::object();
  std::vector<Row> rows;
  bool scalar = false;  // single-value commands flatten into the top object

  void emit_json(std::ostream& os) const {
    json doc;
    doc["command"] = command;
    doc["params"] = params;
    if (scalar && rows.size() == 1) {
      doc["value"] = rows[0].value;
      doc["err_estimate"] = rows[0].err;
      doc["method"] = rows[0].method;
      for (const auto& [k, v] : rows[0].extra) doc[k] = v;
    } else {
      json arr = json::array();
      for (const auto& r : rows) {
        json item;
        item["name"] = r.name;
        item["value"] = r.value;
        item["err_estimate"] = r.err;
        item["method"] = r.method;
        for (const auto& [k, v] : r.extra) item[k] = v;
        arr.push_back(item);
      }
      doc["results"] = arr;
    }
    os << doc.dump(2) << "\n";
  }

  void emit_csv(std::ostream& os) const {
    // RFC 4180: CRLF records, quoted fields where needed, 17 significant digits.
    std::vector<std::string> header = {"command", "name", "value", "err_estimate", "method"};
    if (!rows.empty()) {
      for (const auto& [k, v] : rows.front().extra) header.push_back(k);
    }
    for (size_t i = 0; i < header.size(); ++i) {
      os << (i ? "," : "") << csv_quote(header[i]);
    }
    os << "\r\n";
    for (const auto& r : rows) {
      os << csv_quote(command) << ',' << csv_quote(r.name) << ',' << fmt17(r.value) << ','
         << fmt17(r.err) << ',' << csv_quote(r.method);
      for (const auto& [k, v] : r.extra) os << ',' << csv_quote(v);
      os << "\r\n";
    }
  }

  void emit_table(std::ostream& os) const {
    os << command;
    for (auto it = params.begin(); it != params.end(); ++it) {
      os << "  " << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump());
    }
    os << "\n";
    for (const auto& r : rows) {
      os << "  " << std::left << std::setw(18) << r.name << std::right << std::setw(22)
         << std::setprecision(12) << r.value << "  +-" << std::setw(12) << std::setprecision(3)
         << r.err << "  " << r.method;
      for (const auto& [k, v] : r.extra) os << "  " << k << "=" << v;
      os << "\n";
    }
  }

  void emit(const std::string& format, std::ostream& os) const {
    if (format == "json") {
      emit_json(os);
    } else if (format == "csv") {
      emit_csv(os);
    } else {
      emit_table(os);
    }
  }
};

Direction parse_direction(const std::string& spec, int n) {
  if (spec.rfind("diag:", 0) == 0) {
    const int k = std::stoi(spec.substr(5));
    return Direction::diag(n, k);
  }
  if (spec.rfind("vec:", 0) == 0) {
    std::vector<double> coords;
    std::stringstream ss(spec.substr(4));
    std::string tok;
    while (std::getline(ss, tok, ',')) coords.push_back(std::stod(tok));
    if (static_cast<int>(coords.size()) != n) {
      throw std::domain_error("--dir vec: expected " + std::to_string(n) + " coordinates, got " +
                              std::to_string(coords.size()));
    }
    return Direction::from_coords(std::move(coords));
  }
  throw std::domain_error("--dir must be diag:<k> or vec:<v1,v2,...>");
}

struct CommonOpts {
  std::string format = "table";
  std::string out_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    cmd->add_option("--out", out_path, "Write output to this path instead of stdout");
  }

  int write(const Document& doc, std::ostream& out, std::ostream& err) const {
    if (out_path.empty()) {
      doc.emit(format, out);
      return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot open output path " << out_path << "\n";
      return 2;
    }
    doc.emit(format, f);
    return f.good() ? 0 : 2;
  }
};

QuadConfig tol_config(std::optional<double> tol, Kind kind) {
  QuadConfig cfg =
      kind == Kind::section ? volumes::section_defaults() : volumes::projection_defaults();
  if (tol) {
    if (!(*tol > 0.0) || *tol > 0.1) throw std::domain_error("--tol must lie in (0, 0.1]");
    cfg.abs_tol = *tol;
    cfg.rel_tol = *tol;
  }
  return cfg;
}

bool estimate_converged(const VolumeEstimate& v, const QuadConfig& cfg) {
  return v.err_estimate <= 10.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(v.value));
}

Row volume_row(const std::string& name, const VolumeEstimate& v) {
  return {name, v.value, v.err_estimate, volumes::method_name(v.method), {}};
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lpvol: hyperplane section and projection volumes of l_p^n balls"};
  app.require_subcommand(0, 1);

  // section / projection -------------------------------------------------
  struct VolumeOpts {
    int n = 0;
    double index = 0.0;
    std::string dir;
    std::optional<double> tol;
    CommonOpts common;
  };
  VolumeOpts sec, proj;

  CLI::App* c_section = app.add_subcommand("section", "Normalized section volume A_{n,p}(a)");
  c_section->add_option("--n", sec.n, "Ambient dimension")->required();
  c_section->add_option("--p", sec.index, "Ball exponent p")->required();
  c_section->add_option("--dir", sec.dir, "Direction: diag:<k> or vec:<...> (default diag:n)");
  c_section->add_option("--tol", sec.tol, "Quadrature tolerance");
  sec.common.attach(c_section);

  CLI::App* c_projection =
      app.add_subcommand("projection", "Normalized projection volume P_{n,q}(a)");
  c_projection->add_option("--n", proj.n, "Ambient dimension")->required();
  c_projection->add_option("--q", proj.index, "Ball exponent q")->required();
  c_projection->add_option("--dir", proj.dir, "Direction (default diag:n)");
  c_projection->add_option("--tol", proj.tol, "Quadrature tolerance");
  proj.common.attach(c_projection);

  // kernel ----------------------------------------------------------------
  struct KernelOpts {
    std::optional<double> p, q, tol;
    double s = 0.0;
    CommonOpts common;
  } ker;
  CLI::App* c_kernel = app.add_subcommand("kernel", "Evaluate gamma_p(s) or delta_q(s)");
  c_kernel->add_option("--p", ker.p, "Section kernel exponent");
  c_kernel->add_option("--q", ker.q, "Projection kernel index");
  c_kernel->add_option("--s", ker.s, "Evaluation point")->required();
  c_kernel->add_option("--tol", ker.tol, "Quadrature tolerance");
  ker.common.attach(c_kernel);

  // roots -------------------------------------------------------------------
  CommonOpts roots_common;
  roots_common.format = "json";
  CLI::App* c_roots =
      app.add_subcommand("roots", "Critical exponents p0, p1, q1 and the f-minimum");
  roots_common.attach(c_roots);

  // verify -------------------------------------------------------------------
  struct VerifyOpts {
    double density = 50.0;
    CommonOpts common;
  } ver;
  CLI::App* c_verify = app.add_subcommand("verify", "Run the full lemma-bound suite");
  c_verify->add_option("--density", ver.density, "Grid points per unit interval (>= 50)");
  ver.common.attach(c_verify);

  // crossover ------------------------------------------------------------
  struct CrossoverOpts {
    std::optional<double> p, q, tol;
    int n_max = 200;
    CommonOpts common;
  } cross;
  CLI::App* c_crossover = app.add_subcommand(
      "crossover", "Empirical vs theorem crossover dimensions for the diagonal family");
  c_crossover->add_option("--p", cross.p, "Section exponent (picks the section scan)");
  c_crossover->add_option("--q", cross.q, "Projection index (picks the projection scan)");
  c_crossover->add_option("--n-max", cross.n_max, "Largest dimension to test");
  c_crossover->add_option("--tol", cross.tol, "Quadrature tolerance");
  cross.common.attach(c_crossover);

  // oracle -------------------------------------------------------------------
  struct OracleOpts {
    int n = 0;
    std::optional<double> p, q;
    std::string dir;
    long long samples = 1'000'000;
    std::uint64_t seed = 0;
    int streams = 8;
    CommonOpts common;
  } ora;
  CLI::App* c_oracle = app.add_subcommand("oracle", "Monte Carlo estimate of A or P");
  c_oracle->add_option("--n", ora.n, "Ambient dimension")->required();
  c_oracle->add_option("--p", ora.p, "Section exponent");
  c_oracle->add_option("--q", ora.q, "Projection index");
  c_oracle->add_option("--dir", ora.dir, "Direction (default diag:n)");
  c_oracle->add_option("--samples", ora.samples, "Sample count");
  c_oracle->add_option("--seed", ora.seed, "RNG seed");
  c_oracle->add_option("--streams", ora.streams, "Parallel substreams");
  ora.common.attach(c_oracle);

  // scan ----------------------------------------------------------------------
  struct ScanOpts {
    int n = 0;
    std::optional<double> p, q, tol;
    CommonOpts common;
  } scan;
  CLI::App* c_scan =
      app.add_subcommand("scan", "Volume along the diagonal family a^(k), k = 1..n");
  c_scan->add_option("--n", scan.n, "Ambient dimension")->required();
  c_scan->add_option("--p", scan.p, "Section exponent");
  c_scan->add_option("--q", scan.q, "Projection index");
  c_scan->add_option("--tol", scan.tol, "Quadrature tolerance");
  scan.common.attach(c_scan);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (app.get_subcommands().empty()) {
    out << app.help();
    return 0;
  }

  const auto pick_kind = [](const std::optional<double>& p, const std::optional<double>& q,
                            double& index) {
    if (p.has_value() == q.has_value()) {
      throw std::domain_error("exactly one of --p / --q must be given");
    }
    index = p ? *p : *q;
    return p ? Kind::section : Kind::projection;
  };

  try {
    Document doc;
    int compute_status = 0;
    const CommonOpts* common = nullptr;

    if (app.got_subcommand(c_section) || app.got_subcommand(c_projection)) {
      const bool is_sec = app.got_subcommand(c_section);
      VolumeOpts& o = is_sec ? sec : proj;
      const Kind kind = is_sec ? Kind::section : Kind::projection;
      const QuadConfig cfg = tol_config(o.tol, kind);
      if (o.dir.empty()) o.dir = "diag:" + std::to_string(o.n);
      const Direction a = parse_direction(o.dir, o.n);
      const VolumeEstimate v = is_sec ? volumes::section_volume(o.n, o.index, a, cfg)
                                      : volumes::projection_volume(o.n, o.index, a, cfg);
      doc.command = is_sec ? "section" : "projection";
      doc.params = {{"n", o.n}, {is_sec ? "p" : "q", o.index}, {"dir", o.dir}};
      doc.scalar = true;
      doc.rows = {volume_row(is_sec ? "A" : "P", v)};
      if (!estimate_converged(v, cfg)) {
        err << "warning: quadrature did not reach the requested tolerance\n";
        compute_status = 1;
      }
      common = &o.common;
    } else if (app.got_subcommand(c_kernel)) {
      double index = 0.0;
      const Kind kind = pick_kind(ker.p, ker.q, index);
      QuadConfig cfg;
      if (ker.tol) {
        cfg.abs_tol = *ker.tol;
        cfg.rel_tol = *ker.tol;
      }
      const quad::QuadResult r = kind == Kind::section
                                     ? kernels::gamma_kernel_result(index, ker.s, cfg)
                                     : kernels::delta_kernel_result(index, ker.s, cfg);
      doc.command = "kernel";
      doc.params = {{kind == Kind::section ? "p" : "q", index}, {"s", ker.s}};
      doc.scalar = true;
      doc.rows = {{kind == Kind::section ? "gamma_p" : "delta_q", r.value, r.err_estimate,
                   "quadrature", {}}};
      if (!r.converged) {
        err << "warning: kernel quadrature did not converge\n";
        compute_status = 1;
      }
      common = &ker.common;
    } else if (app.got_subcommand(c_roots)) {
      const auto ce = analysis::critical_exponents();
      doc.command = "roots";
      const auto row = [](const char* name, const analysis::RootResult& r) {
        Row out{name, r.x, r.residual, "bisection", {}};
        out.extra = {{"bracket_lo", fmt17(r.bracket_lo)}, {"bracket_hi", fmt17(r.bracket_hi)}};
        return out;
      };
      doc.rows = {row("p0", ce.p0), row("p1_section", ce.p1_section),
                  row("q1_projection", ce.q1_projection),
                  row("f_min_location", ce.f_min_location)};
      common = &roots_common;
    } else if (app.got_subcommand(c_verify)) {
      const auto reports = analysis::verify_all_lemmas(ver.density);
      doc.command = "verify";
      doc.params = {{"density", ver.density}};
      bool all_pass = true;
      for (const auto& r : reports) {
        Row row{analysis::lemma_name(r.lemma_id), r.worst_margin, 0.0, "grid", {}};
        row.extra = {{"pass", r.pass ? "true" : "false"},
                     {"grid_points", std::to_string(r.grid.size())},
                     {"worst_x", fmt17(r.worst_point.x)},
                     {"worst_y", fmt17(r.worst_point.y)}};
        doc.rows.push_back(row);
        all_pass = all_pass && r.pass;
      }
      if (!all_pass) {
        err << "verify: at least one lemma bound failed\n";
        compute_status = 1;
      }
      common = &ver.common;
    } else if (app.got_subcommand(c_crossover)) {
      double index = 0.0;
      const Kind kind = pick_kind(cross.p, cross.q, index);
      const QuadConfig cfg = tol_config(cross.tol, kind);
      const auto rep = analysis::crossover_scan(kind, index, cross.n_max, cfg);
      doc.command = "crossover";
      doc.params = {{kind == Kind::section ? "p" : "q", index},
                    {"n_max", cross.n_max},
                    {"n_theorem", rep.n_theorem},
                    {"n_empirical", rep.n_empirical ? json(*rep.n_empirical)
                                                    : json("none found <= n_max")},
                    {"theorem_verified", rep.theorem_verified}};
      for (const auto& r : rep.per_n) {
        Row row{"n=" + std::to_string(r.n), r.margin, r.err_combined, "quadrature", {}};
        row.extra = {{"n", std::to_string(r.n)},
                     {"diag_value", fmt17(r.diagonal.value)},
                     {"diag_err", fmt17(r.diagonal.err_estimate)},
                     {"a2_value", fmt17(r.a2.value)},
                     {"a2_err", fmt17(r.a2.err_estimate)},
                     {"beyond_error", r.beyond_error ? "true" : "false"}};
        doc.rows.push_back(row);
      }
      common = &cross.common;
    } else if (app.got_subcommand(c_oracle)) {
      double index = 0.0;
      const Kind kind = pick_kind(ora.p, ora.q, index);
      if (ora.dir.empty()) ora.dir = "diag:" + std::to_string(ora.n);
      const Direction a = parse_direction(ora.dir, ora.n);
      mc::McConfig mcfg;
      mcfg.samples = ora.samples;
      mcfg.seed = ora.seed;
      mcfg.streams = ora.streams;
      const mc::McEstimate est = kind == Kind::section
                                     ? mc::mc_section(ora.n, index, a, mcfg)
                                     : mc::mc_projection(ora.n, index, a, mcfg);
      doc.command = "oracle";
      doc.params = {{"n", ora.n},
                    {kind == Kind::section ? "p" : "q", index},
                    {"dir", ora.dir},
                    {"samples", est.samples},
                    {"seed", ora.seed},
                    {"streams", ora.streams}};
      doc.scalar = true;
      doc.rows = {{kind == Kind::section ? "A" : "P", est.mean, est.std_error, "monte_carlo", {}}};
      common = &ora.common;
    } else if (app.got_subcommand(c_scan)) {
      double index = 0.0;
      const Kind kind = pick_kind(scan.p, scan.q, index);
      const QuadConfig cfg = tol_config(scan.tol, kind);
      const auto sc = volumes::diagonal_scan(kind, scan.n, index, cfg);
      doc.command = "scan";
      doc.params = {{"n", scan.n},
                    {kind == Kind::section ? "p" : "q", index},
                    {"best_k", sc.best_k},
                    {"tie_within_error", sc.tie_within_error}};
      for (const auto& [k, v] : sc.table) {
        Row row = volume_row("k=" + std::to_string(k), v);
        row.extra = {{"k", std::to_string(k)}};
        doc.rows.push_back(row);
      }
      common = &scan.common;
    }

    const int write_status = common->write(doc, out, err);
    return write_status != 0 ? write_status : compute_status;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lpvol::cli
