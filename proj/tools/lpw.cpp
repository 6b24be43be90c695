// lpw: classify parameter systems, run witness experiments, sweep parameter grids.
//
//   lpw classify   --s 0 --p 2 --q 2 --r 2 --n 1 --family B
//   lpw experiment --kind modulated --sizes 2,4,8,16 --s 0 --p 4 --q 4 --r 2 --grid hi-band
//   lpw sweep      --s 0,0.5 --p 1,2 --q 1,2 --r 2 --n 1 --family B,F
//
// Exit status: 0 success, 2 usage or validation, 3 the grid cannot resolve the request.

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lpw/presets.hpp"
#include "lpw/szasz.hpp"
#include "lpw/witnesses.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerics = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json json_real(double v) {
  if (std::isfinite(v)) return v;
  return fmt_real(v);
}

const char* fmt_bool(bool b) { return b ? "true" : "false"; }

double parse_real(const std::string& key, std::string text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return lpw::kInf;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
    throw UsageError("--" + key + ": not a number: '" + text + "'");
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE)
    throw UsageError("--" + key + ": not an integer: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (text.back() == ',') out.emplace_back();
  return out;
}

lpw::Family parse_family(const std::string& text) {
  if (text == "B") return lpw::Family::B;
  if (text == "F") return lpw::Family::F;
  throw UsageError("--family: expected B or F, got '" + text + "'");
}

lpw::Setting parse_setting(const std::string& text) {
  if (text == "homogeneous") return lpw::Setting::homogeneous;
  if (text == "inhomogeneous") return lpw::Setting::inhomogeneous;
  throw UsageError("--setting: expected homogeneous or inhomogeneous, got '" + text + "'");
}

// Raw option text; lists stay comma separated until a subcommand reads them.
struct Options {
  std::string s, p, q, r, n = "1", family = "B", setting = "homogeneous";
  std::string kind, sizes, seed = "1", grid;
  std::string out, format = "csv";
  const CLI::App* sub = nullptr;
};

struct Output {
  std::string text;
  int status = kExitOk;
};

lpw::SzaszQuery make_query(const Options& o, const std::string& s, const std::string& p, const std::string& q,
                           const std::string& r, const std::string& n, const std::string& family) {
  const long long dim = parse_integer("n", n);
  if (dim < 1 || dim > 2) throw UsageError("--n: dimension must be 1 or 2");
  lpw::SzaszQuery query{lpw::SpaceParams{parse_real("s", s), parse_real("r", r), parse_real("q", q),
                                         parse_family(family), parse_setting(o.setting)},
                        parse_real("p", p), static_cast<int>(dim)};
  try {
    query.validate();
  } catch (const lpw::Error& e) {
    throw UsageError(e.what());
  }
  return query;
}

// Presence, not content: an empty sweep list is legal.
void require(const Options& o, std::initializer_list<const char*> keys) {
  for (const char* key : keys)
    if (o.sub->count(std::string("--") + key) == 0) throw UsageError(std::string("--") + key + " is required");
}

void require_format(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw UsageError("--format: expected csv or json");
}

std::string trace_text(const std::vector<lpw::Condition>& trace) {
  std::string out;
  for (const auto& c : trace) {
    if (!out.empty()) out += ';';
    out += c.id + "=" + fmt_bool(c.pass);
  }
  return out;
}

Output run_classify(const Options& o) {
  require(o, {"s", "p", "q", "r"});
  require_format(o);
  const auto query = make_query(o, o.s, o.p, o.q, o.r, o.n, o.family);
  const auto c = lpw::classify(query);
  const auto& sp = query.space;
  Output out;
  if (o.format == "json") {
    json rec;
    rec["s"] = json_real(sp.s);
    rec["p"] = json_real(query.p);
    rec["q"] = json_real(sp.q);
    rec["r"] = json_real(sp.r);
    rec["n"] = query.n;
    rec["family"] = lpw::family_name(sp.family);
    rec["setting"] = lpw::setting_name(sp.setting);
    rec["theta"] = json_real(c.theta);
    rec["weak"] = c.weak;
    rec["strong"] = c.strong;
    rec["verdict_trace"] = json::array();
    for (const auto& t : c.verdict_trace) rec["verdict_trace"].push_back({{"id", t.id}, {"pass", t.pass}});
    out.text = rec.dump() + "\n";
  } else {
    out.text = "s,p,q,r,n,family,setting,theta,weak,strong,verdict_trace\n";
    out.text += fmt_real(sp.s) + "," + fmt_real(query.p) + "," + fmt_real(sp.q) + "," + fmt_real(sp.r) + "," +
                std::to_string(query.n) + "," + lpw::family_name(sp.family) + "," + lpw::setting_name(sp.setting) + "," +
                fmt_real(c.theta) + "," + fmt_bool(c.weak) + "," + fmt_bool(c.strong) + ",\"" +
                trace_text(c.verdict_trace) + "\"\n";
  }
  return out;
}

Output run_experiment(const Options& o) {
  require(o, {"s", "p", "q", "r", "kind"});
  require_format(o);
  const auto kind = lpw::parse_witness_kind(o.kind);
  if (!kind) throw UsageError("--kind: unknown witness kind '" + o.kind + "'");
  const auto query = make_query(o, o.s, o.p, o.q, o.r, o.n, o.family);

  std::vector<int> sizes;
  for (const auto& item : split(o.sizes)) {
    const long long k = parse_integer("sizes", item);
    if (k < 0 || k > 62) throw UsageError("--sizes: sizes must lie in 0..62");
    sizes.push_back(static_cast<int>(k));
  }
  const long long seed = parse_integer("seed", o.seed);
  if (seed < 0) throw UsageError("--seed must be non-negative");

  std::string preset = o.grid;
  if (preset.empty())
    preset = (*kind == lpw::WitnessKind::dilated_low || *kind == lpw::WitnessKind::lowfreq_blowup) ? "lo-band"
                                                                                                  : "hi-band";
  const auto grid = lpw::grid_preset(preset);
  if (!grid) throw UsageError("--grid: unknown preset '" + preset + "'");
  if (grid->dim() != query.n) throw UsageError("--n does not match the dimension of grid '" + preset + "'");
  if (*kind == lpw::WitnessKind::lowfreq_blowup && !(query.space.s > query.n / query.space.r))
    throw UsageError("lowfreq_blowup needs s > n/r");

  const auto result = lpw::divergence_experiment(*kind, query, sizes, *grid, static_cast<std::uint64_t>(seed));
  Output out;
  if (o.format == "csv") out.text = "size,space_norm,lhs,ratio\n";
  for (const auto& rec : result.records) {
    if (o.format == "json") {
      json j;
      j["size"] = rec.size;
      j["space_norm"] = json_real(rec.space_norm);
      j["lhs"] = json_real(rec.lhs);
      j["ratio"] = json_real(rec.ratio);
      out.text += j.dump() + "\n";
    } else {
      out.text += std::to_string(rec.size) + "," + fmt_real(rec.space_norm) + "," + fmt_real(rec.lhs) + "," +
                  fmt_real(rec.ratio) + "\n";
    }
  }
  if (result.error) {
    const std::string msg = result.error->what();
    out.text += o.format == "json" ? json{{"error", msg}}.dump() + "\n" : "#error " + msg + "\n";
    out.status = lpw::is_numerical(result.error->code()) ? kExitNumerics : kExitUsage;
  }
  return out;
}

Output run_sweep(const Options& o) {
  require(o, {"s", "p", "q", "r"});
  require_format(o);
  const auto ss = split(o.s), ps = split(o.p), qs = split(o.q), rs = split(o.r), ns = split(o.n),
             fs = split(o.family);

  // Validate every list entry before classifying anything.
  for (const auto& v : ss) parse_real("s", v);
  for (const auto& v : ns) parse_integer("n", v);
  for (const auto& v : fs) parse_family(v);
  const std::string any_s = ss.empty() ? "0" : ss[0], any_q = qs.empty() ? "1" : qs[0];
  const std::string any_r = rs.empty() ? "1" : rs[0], any_n = ns.empty() ? "1" : ns[0];
  const std::string any_f = fs.empty() ? "B" : fs[0], any_p = ps.empty() ? "1" : ps[0];
  for (const auto& v : ps) make_query(o, any_s, v, any_q, any_r, any_n, any_f);
  for (const auto& v : qs) make_query(o, any_s, any_p, v, any_r, any_n, any_f);
  for (const auto& v : rs) make_query(o, any_s, any_p, any_q, v, any_n, any_f);
  for (const auto& v : ns) make_query(o, any_s, any_p, any_q, any_r, v, any_f);

  Output out;
  if (o.format == "csv") out.text = "s,p,q,r,n,family,theta,weak,strong\n";
  for (const auto& s : ss)
    for (const auto& p : ps)
      for (const auto& q : qs)
        for (const auto& r : rs)
          for (const auto& n : ns)
            for (const auto& f : fs) {
              const auto query = make_query(o, s, p, q, r, n, f);
              const auto c = lpw::classify(query);
              const auto& sp = query.space;
              if (o.format == "json") {
                json j;
                j["s"] = json_real(sp.s);
                j["p"] = json_real(query.p);
                j["q"] = json_real(sp.q);
                j["r"] = json_real(sp.r);
                j["n"] = query.n;
                j["family"] = lpw::family_name(sp.family);
                j["theta"] = json_real(c.theta);
                j["weak"] = c.weak;
                j["strong"] = c.strong;
                out.text += j.dump() + "\n";
              } else {
                out.text += fmt_real(sp.s) + "," + fmt_real(query.p) + "," + fmt_real(sp.q) + "," +
                            fmt_real(sp.r) + "," + std::to_string(query.n) + "," + lpw::family_name(sp.family) + "," +
                            fmt_real(c.theta) + "," + fmt_bool(c.weak) + "," + fmt_bool(c.strong) + "\n";
              }
            }
  return out;
}

int emit(const Output& out, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << out.text << std::flush;
    return out.status;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    std::cerr << "lpw: cannot open '" << path << "' for writing\n";
    return kExitUsage;
  }
  file << out.text;
  return out.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley witnesses: weighted Fourier-side inequalities on Besov and Triebel-Lizorkin spaces"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub, bool lists) {
    const std::string hint = lists ? " (comma-separated list)" : "";
    sub->add_option("--s", o.s, "smoothness s" + hint);
    sub->add_option("--p", o.p, "exponent p, 'inf' allowed" + hint);
    sub->add_option("--q", o.q, "summation exponent q, 'inf' allowed" + hint);
    sub->add_option("--r", o.r, "integrability r, 'inf' allowed" + hint);
    sub->add_option("--n", o.n, "dimension" + hint);
    sub->add_option("--family", o.family, "B or F" + hint);
    sub->add_option("--setting", o.setting, "homogeneous or inhomogeneous");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json");
  };

  auto* classify = app.add_subcommand("classify", "weak and strong verdicts for one parameter system");
  add_common(classify, false);
  auto* experiment = app.add_subcommand("experiment", "ratio of a witness family over a list of sizes");
  add_common(experiment, false);
  experiment->add_option("--kind", o.kind,
                         "modulated | modulated_borderline | dilated_low | random_bandlimited | lowfreq_blowup");
  experiment->add_option("--sizes", o.sizes, "comma-separated sizes");
  experiment->add_option("--seed", o.seed, "seed for random_bandlimited");
  experiment->add_option("--grid", o.grid, "grid preset: hi-band, lo-band, small, plane");
  auto* sweep = app.add_subcommand("sweep", "classify the cartesian product of parameter lists");
  add_common(sweep, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Output out;
    o.sub = app.get_subcommands().front();
    if (*classify) out = run_classify(o);
    else if (*experiment) out = run_experiment(o);
    else out = run_sweep(o);
    if (out.status != kExitOk) std::cerr << "lpw: run stopped early, see the last output line\n";
    return emit(out, o.out);
  } catch (const UsageError& e) {
    std::cerr << "lpw: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lpw::Error& e) {
    std::cerr << "lpw: " << e.what() << "\n";
    return lpw::is_numerical(e.code()) ? kExitNumerics : kExitUsage;
  }
}
