// Command-line front end: every subcommand prints a machine-readable report
// (JSON by default) or a plain integer list, with byte-identical output for a
// fixed seed and any worker count.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ergaps/admissible.hpp"
#include "ergaps/constants.hpp"
#include "ergaps/equidist.hpp"
#include "ergaps/er_explorer.hpp"
#include "ergaps/errors.hpp"
#include "ergaps/functional.hpp"
#include "ergaps/prime_engine.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace ergaps;

namespace {

constexpr const char* kVersion = "0.1.0";

// floats go out with 15 significant digits
json jnum(double v) {
  if (!std::isfinite(v)) return std::string(v > 0 ? "inf" : (v < 0 ? "-inf" : "nan"));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return json::parse(buf);
}

struct Global {
  std::uint64_t seed = 1;
  int workers = 1;
  std::string format = "json";
  std::uint64_t sieve_budget = kDefaultSieveBudget;
};

json report_head(const char* tool, const Global& g) {
  json r;
  r["tool"] = tool;
  r["version"] = kVersion;
  r["seed"] = g.seed;
  return r;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::string>& lines) {
  if (j.is_object()) {
    for (auto& [key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, lines);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (auto& value : j) flatten(value, prefix + "[" + std::to_string(i++) + "]", lines);
  } else {
    lines.push_back(prefix + " = " + j.dump());
  }
}

// json (default) or text; subcommands with a tabular rendering handle csv themselves
void emit(const json& r, const Global& g) {
  if (g.format == "text") {
    std::vector<std::string> lines;
    flatten(r, "", lines);
    for (const auto& line : lines) std::cout << line << "\n";
    return;
  }
  if (g.format == "csv")
    throw parameter_error("csv format not available for this report");
  std::cout << r.dump(2) << "\n";
}

std::string cache_path(const char* dir, std::uint64_t limit, const PrimeSetSpec& spec) {
  std::string name = spec.to_string();
  for (char& ch : name) {
    if (ch == ';' || ch == '=' || ch == ',') ch = '_';
  }
  return std::string(dir) + "/sieve_" + std::to_string(limit) + "_" + name + ".bin";
}

SieveTable build_table(std::uint64_t limit, const PrimeSetSpec& spec, const Global& g) {
  if (limit > g.sieve_budget)
    throw resource_error("request needs a sieve up to " + std::to_string(limit) +
                         ", beyond --sieve-budget " + std::to_string(g.sieve_budget));
  limit = std::max<std::uint64_t>(limit, 2);
  const char* cache_dir = std::getenv("ERGAPS_SIEVE_CACHE");
  if (cache_dir && *cache_dir) {
    const std::string path = cache_path(cache_dir, limit, spec);
    if (auto cached = load_table(path, limit, spec)) return std::move(*cached);
    SieveTable t = sieve_primes(limit, spec, g.sieve_budget);
    save_table(t, path);  // best effort; a failed write just skips the cache
    return t;
  }
  return sieve_primes(limit, spec, g.sieve_budget);
}

// grows the sieve until the k primes after k fit
Tuple tuple_after_k(std::uint64_t k, const Global& g) {
  std::uint64_t limit = primes_gt_k_limit_hint(k);
  for (;;) {
    SieveTable t = build_table(limit, PrimeSetSpec::all_primes(), g);
    try {
      return construct_primes_gt_k(k, t);
    } catch (const resource_error&) {
      if (limit >= g.sieve_budget) throw;
      limit = std::min<std::uint64_t>(g.sieve_budget, limit * 3 / 2 + 64);
    }
  }
}

Interval parse_interval(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos)
    throw parameter_error("interval must look like lo:hi, got " + s);
  try {
    return {std::stoull(s.substr(0, colon)), std::stoull(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw parameter_error("bad interval bounds: " + s);
  }
}

std::vector<ExpRange> parse_exp_ranges(const std::string& s) {
  std::vector<ExpRange> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw parameter_error("range must look like a:b, got " + item);
    try {
      out.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw parameter_error("bad range exponents: " + item);
    }
  }
  return out;
}

void print_list(const std::vector<std::uint64_t>& xs, const std::string& out_path) {
  if (out_path.empty()) {
    for (std::uint64_t x : xs) std::cout << x << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw parameter_error("cannot open output file " + out_path);
  for (std::uint64_t x : xs) out << x << "\n";
}

json params_json(const FunctionalParams& p) {
  json j;
  j["k"] = jnum(p.k);
  j["r"] = p.r;
  j["theta"] = jnum(p.theta);
  j["A"] = jnum(p.A);
  j["T"] = jnum(p.T);
  j["sigma"] = jnum(p.sigma);
  j["eta"] = jnum(p.eta);
  return j;
}

// ---- subcommand bodies ----

void run_constants(const Global& g, int r, int m, double delta, std::uint64_t B,
                   double theta, double k_override) {
  json rep = report_head("constants", g);
  rep["inputs"] = {{"r", r},
                   {"m", m},
                   {"delta", jnum(delta)},
                   {"B", B},
                   {"theta", jnum(theta)},
                   {"epsilon_note", "epsilon terms taken as 0 (limit values)"}};
  const double rho = m - 1.0;
  rep["rho"] = jnum(rho);
  const double kmin = k_threshold(r, rho, delta, B, theta);
  rep["k_min"] = jnum(kmin);
  const double k = k_override > 0 ? k_override : std::ceil(kmin);
  rep["k_chosen"] = jnum(k);

  const ChosenParams cp = choose_A_eta(k, r, theta);
  rep["params"] = params_json(cp.params);
  rep["lemma_condition_ok"] = cp.condition_ok;
  if (cp.lemma_bound) {
    rep["M_lower"] = jnum(*cp.lemma_bound);
    const NuResult nv = nu(k, r, delta, B, theta, *cp.lemma_bound);
    rep["nu_available"] = nv.available;
    if (nv.available) {
      rep["nu"] = nv.value;
      rep["nu_is_lower_bound"] = true;
    }
  } else {
    rep["M_lower"] = nullptr;
    rep["nu_available"] = false;
  }

  const ScriptL l = script_L_and_gap(r, m, delta, B, theta);
  rep["script_L"] = jnum(l.script_L);
  rep["gap_bound"] = jnum(l.gap_bound);

  const DusartBound db = dusart_diameter_bound(k);
  rep["C_of_m"] = jnum(db.value);
  rep["dusart_validity"] = db.in_validity;
  emit(rep, g);
}

void run_example_c(const Global& g, int m) {
  const ExampleC c = example_C(m);
  json rep = report_head("example-c", g);
  rep["inputs"] = {{"m", m}, {"delta", jnum(0.25)}, {"B", 2}, {"theta", jnum(0.5)}};
  rep["exponent"] = jnum(c.exponent);
  rep["k"] = jnum(c.k_chosen);
  rep["C"] = jnum(c.C);
  rep["C_over_k"] = jnum(c.C / c.k_chosen);
  rep["dusart_validity"] = c.dusart_validity;
  emit(rep, g);
}

void run_tuple(const Global& g, std::uint64_t k, const std::string& out_path) {
  Tuple t = tuple_after_k(k, g);
  std::vector<std::uint64_t> xs(t.offsets.begin(), t.offsets.end());
  print_list(xs, out_path);
}

void run_narrowest(const Global&, int k, std::int64_t max_diameter) {
  auto t = narrowest_search(k, max_diameter);
  if (!t) {
    std::cout << "none\n";
    return;
  }
  for (std::int64_t h : t->offsets) std::cout << h << "\n";
}

void run_functional(const Global& g, double k, int r, double theta, double A_override,
                    const std::string& method_name, std::uint64_t budget) {
  json rep = report_head("functional", g);
  rep["inputs"] = {{"k", jnum(k)},         {"r", r},
                   {"theta", jnum(theta)}, {"method", method_name},
                   {"budget", budget},     {"A_override", A_override > 0}};

  FunctionalParams p;
  ChosenParams cp;
  if (A_override > 0) {
    p = make_params(k, r, theta, A_override);
    cp.lemma_bound = k >= 2 ? ratio_lower_bound(k, A_override) : std::nullopt;
    cp.condition_ok = cp.lemma_bound.has_value();
  } else {
    cp = choose_A_eta(k, r, theta);
    p = cp.params;
  }
  rep["A"] = jnum(p.A);
  rep["T"] = jnum(p.T);
  rep["sigma"] = jnum(p.sigma);
  rep["eta"] = jnum(p.eta);

  const IntegrationMethod method = parse_method(method_name);
  const Estimate i = I_k(p, method, budget, g.seed, g.workers);
  const Estimate j = J_sum(p, method, budget, g.seed, g.workers);
  rep["I_k"] = jnum(i.value);
  rep["I_k_error"] = jnum(i.error);
  rep["J_sum"] = jnum(j.value);
  rep["J_sum_error"] = jnum(j.error);
  rep["ratio"] = jnum(j.value / i.value);
  rep["condition_ok"] = cp.condition_ok;
  rep["lemma_bound"] = cp.lemma_bound ? jnum(*cp.lemma_bound) : json(nullptr);
  emit(rep, g);
}

void run_er(const Global& g, int r, std::uint64_t X, const std::string& spec_text,
            std::uint64_t N, int h, double eta, const std::string& out_path) {
  const PrimeSetSpec spec = PrimeSetSpec::parse(spec_text);
  if (N > 0) {
    SieveTable t = build_table(2 * N, spec, g);
    print_list(enumerate_Eh_constrained(t, spec, N, h, eta), out_path);
    return;
  }
  SieveTable t = build_table(X, spec, g);
  print_list(enumerate_Er(t, {r, X, spec}, g.workers), out_path);
}

void run_gaps(const Global& g, int m, const std::string& input, bool csv) {
  std::vector<std::uint64_t> xs;
  {
    std::ifstream in(input);
    if (!in) throw parameter_error("cannot open input file " + input);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        xs.push_back(std::stoull(line));
      } catch (const std::exception&) {
        throw parameter_error("bad list line: " + line);
      }
    }
  }
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] <= xs[i - 1]) throw parameter_error("input list must be strictly ascending");

  const GapScanResult res = gap_scan(xs, m);
  if (csv || g.format == "csv") {
    std::cout << "gap,count\n";
    for (auto& [gap, count] : res.histogram) std::cout << gap << "," << count << "\n";
    return;
  }
  json rep = report_head("gaps", g);
  rep["inputs"] = {{"m", m}, {"input", input}, {"count", xs.size()}};
  rep["min_window"] = res.min_window;
  rep["location"] = res.location;
  json hist = json::array();
  for (auto& [gap, count] : res.histogram) hist.push_back({{"gap", gap}, {"count", count}});
  rep["histogram"] = hist;
  emit(rep, g);
}

void run_tn(const Global& g, int r, std::uint64_t N, double eta,
            const std::string& spec_text) {
  const PrimeSetSpec spec = PrimeSetSpec::parse(spec_text);
  SieveTable t = build_table(2 * N, spec, g);
  const TnReport res = compute_T_N(t, spec, N, r, eta, g.workers);
  json rep = report_head("tn", g);
  rep["inputs"] = {{"r", r}, {"N", N}, {"eta", jnum(eta)}, {"spec", spec.to_string()}};
  rep["T_N"] = res.t_n;
  rep["q_count"] = res.q_count;
  rep["lower_bound"] = jnum(res.lower_bound);
  rep["ratio"] = jnum(res.ratio);
  emit(rep, g);
}

void run_equidist_sw(const Global& g, std::uint64_t x, std::uint64_t q,
                     const std::string& spec_text) {
  const PrimeSetSpec spec = PrimeSetSpec::parse(spec_text);
  SieveTable t = build_table(x, spec, g);
  const double err = sw_error(t, spec, x, q);
  const std::uint64_t main_term = pi_P(t, spec, x);
  json rep = report_head("equidist-sw", g);
  rep["inputs"] = {{"x", x}, {"q", q}, {"spec", spec.to_string()}};
  rep["error"] = jnum(err);
  rep["main_term"] = main_term;
  rep["ratio"] = jnum(err / static_cast<double>(main_term));
  emit(rep, g);
}

void run_equidist_bv(const Global& g, std::uint64_t x, double theta,
                     const std::string& spec_text, const std::string& per_q_path) {
  const PrimeSetSpec spec = PrimeSetSpec::parse(spec_text);
  SieveTable t = build_table(x, spec, g);
  std::vector<std::pair<std::uint64_t, double>> per_q;
  const double sum = bv_sum(t, spec, x, theta, &per_q, g.workers);
  if (g.format == "csv") {
    std::cout << "q,error\n";
    for (auto& [q, e] : per_q) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.15g", e);
      std::cout << q << "," << buf << "\n";
    }
    return;
  }
  if (!per_q_path.empty()) {
    std::ofstream out(per_q_path);
    if (!out) throw parameter_error("cannot open output file " + per_q_path);
    out << "q,error\n";
    for (auto& [q, e] : per_q) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.15g", e);
      out << q << "," << buf << "\n";
    }
  }
  const std::uint64_t main_term = pi_P(t, spec, x);
  json rep = report_head("equidist-bv", g);
  rep["inputs"] = {{"x", x}, {"theta", jnum(theta)}, {"spec", spec.to_string()}};
  rep["sum"] = jnum(sum);
  rep["q_terms"] = per_q.size();
  rep["main_term"] = main_term;
  rep["ratio"] = jnum(sum / static_cast<double>(main_term));
  emit(rep, g);
}

void run_equidist_bver(const Global& g, double N, double u, int r,
                       const std::string& ranges_text, double q_exponent,
                       const std::string& spec_text) {
  const PrimeSetSpec spec = PrimeSetSpec::parse(spec_text);
  const auto ranges = parse_exp_ranges(ranges_text);
  const double limit = std::pow(N, u);
  if (limit > 5e8) throw resource_error("N^u too large");
  SieveTable t = build_table(static_cast<std::uint64_t>(limit) + 1, spec, g);
  const auto fr = enumerate_Fr(t, spec, N, u, r, ranges);
  const double sum = bv_sum_beta_r(t, spec, N, u, r, ranges, q_exponent);
  json rep = report_head("equidist-bv-er", g);
  rep["inputs"] = {{"N", jnum(N)},
                   {"u", jnum(u)},
                   {"r", r},
                   {"ranges", ranges_text},
                   {"q_exponent", jnum(q_exponent)},
                   {"spec", spec.to_string()}};
  rep["set_size"] = fr.size();
  rep["sum"] = jnum(sum);
  rep["main_term"] = fr.size();
  rep["ratio"] = jnum(fr.empty() ? 0.0 : sum / static_cast<double>(fr.size()));
  emit(rep, g);
}

void run_conv_check(const Global& g, int r, std::uint64_t X, const std::string& spec_text,
                    const std::string& head_text, const std::string& last_text, int c) {
  const PrimeSetSpec spec = PrimeSetSpec::parse(spec_text);
  SieveTable t = build_table(X, spec, g);
  const Interval head = parse_interval(head_text), last = parse_interval(last_text);
  const ConvolutionReport res = convolution_delta_check(t, spec, X, r, head, last, c);
  json rep = report_head("conv-check", g);
  rep["inputs"] = {{"r", r},
                   {"X", X},
                   {"spec", spec.to_string()},
                   {"range_head", head_text},
                   {"range_last", last_text},
                   {"c", c}};
  rep["exceptional_count"] = res.exceptional.size();
  json ex = json::array();
  for (std::size_t i = 0; i < res.exceptional.size() && i < 1000; ++i)
    ex.push_back(res.exceptional[i]);
  rep["exceptional"] = ex;
  rep["max_abs_deviation"] = res.max_abs_deviation;
  rep["clean_off_squares"] = res.clean_off_squares;
  emit(rep, g);
}

void run_report_all(const Global& g) {
  json rep = report_head("report-all", g);

  json cs = json::array();
  for (int m = 2; m <= 4; ++m) {
    const double kmin = k_threshold(2, m - 1.0, 0.25, 2, 0.5);
    const ExampleC c = example_C(m);
    cs.push_back({{"m", m},
                  {"k_min", jnum(kmin)},
                  {"k", jnum(c.k_chosen)},
                  {"C", jnum(c.C)},
                  {"dusart_validity", c.dusart_validity}});
  }
  rep["density_quarter_constants"] = cs;

  {
    const ChosenParams cp = choose_A_eta(100, 2, 0.5);
    json f;
    f["params"] = params_json(cp.params);
    f["lemma_bound"] = cp.lemma_bound ? jnum(*cp.lemma_bound) : json(nullptr);
    f["bound_meets_log_target"] = cp.bound_meets_target;
    const FunctionalParams p3 = make_params(3, 2, 0.5, 1.0);
    const Estimate i = I_k(p3, IntegrationMethod::quadrature, 1 << 12);
    const Estimate jq = J_sum(p3, IntegrationMethod::quadrature, 1 << 12);
    const Estimate im = I_k(p3, IntegrationMethod::montecarlo, 200'000, g.seed, g.workers);
    f["small_case"] = {{"k", 3},
                       {"A", jnum(1.0)},
                       {"I_k", jnum(i.value)},
                       {"J_sum", jnum(jq.value)},
                       {"ratio", jnum(jq.value / i.value)},
                       {"I_k_mc", jnum(im.value)},
                       {"I_k_mc_error", jnum(im.error)}};
    rep["functional"] = f;
  }

  {
    SieveTable t = build_table(100'000, PrimeSetSpec::all_primes(), g);
    const Tuple t5 = construct_primes_gt_k(5, t);
    json adm;
    adm["primes_after_5"] = std::vector<std::int64_t>(t5.offsets.begin(), t5.offsets.end());
    adm["diameter"] = t5.diameter();
    adm["admissible"] = is_admissible(t5, g.workers).admissible;
    auto nar = narrowest_search(5, 50);
    adm["narrowest_5"] =
        nar ? json(std::vector<std::int64_t>(nar->offsets.begin(), nar->offsets.end()))
            : json(nullptr);
    const Tuple t1000 = construct_primes_gt_k(1000, t);
    const DusartBound db = dusart_diameter_bound(1000);
    adm["diameter_check_k1000"] = {{"exact", t1000.diameter()},
                                   {"bound", jnum(db.value)},
                                   {"bound_in_validity", db.in_validity},
                                   {"exact_le_bound", t1000.diameter() <= db.value}};
    rep["admissible"] = adm;
  }

  {
    SieveTable t = build_table(20'000, PrimeSetSpec::all_primes(), g);
    auto e2 = enumerate_Er(t, {2, 10'000, PrimeSetSpec::all_primes()}, g.workers);
    const GapScanResult gs = gap_scan(e2, 1);
    json er;
    er["count_e2_1e4"] = e2.size();
    er["first"] = std::vector<std::uint64_t>(e2.begin(), e2.begin() + 6);
    er["min_gap"] = gs.min_window;
    er["min_gap_at"] = gs.location;
    const TnReport tn = compute_T_N(t, PrimeSetSpec::all_primes(), 10'000, 2, 0.2, g.workers);
    er["tn_1e4"] = {{"T_N", tn.t_n},
                    {"lower_bound", jnum(tn.lower_bound)},
                    {"ratio", jnum(tn.ratio)}};
    const ConvolutionReport conv = convolution_delta_check(
        t, PrimeSetSpec::all_primes(), 10'000, 2, {10, 99}, {100, 999}, 1);
    er["conv_check"] = {{"exceptional_count", conv.exceptional.size()},
                        {"clean_off_squares", conv.clean_off_squares}};
    rep["er"] = er;
  }

  {
    // summed-error decay sequence at theta = 0.25
    json eq = json::array();
    for (const char* spec_text : {"all", "mod=8;classes=1;B=2"}) {
      const PrimeSetSpec spec = PrimeSetSpec::parse(spec_text);
      for (std::uint64_t x : {10'000ull, 100'000ull, 1'000'000ull}) {
        SieveTable t = build_table(x, spec, g);
        const double sum = bv_sum(t, spec, x, 0.25, nullptr, g.workers);
        eq.push_back({{"spec", spec.to_string()},
                      {"x", x},
                      {"theta", jnum(0.25)},
                      {"sum", jnum(sum)},
                      {"ratio", jnum(sum / static_cast<double>(pi_P(t, spec, x)))}});
      }
    }
    rep["equidist_decay"] = eq;
  }

  emit(rep, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergaps: constants, patterns, and desk-scale checks for gaps between "
               "products of r distinct primes"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--seed", g.seed, "random seed recorded in every report");
  app.add_option("--workers", g.workers, "worker threads (never changes results)")
      ->check(CLI::Range(1, 256));
  app.add_option("--format", g.format, "json (default), text, or csv where tabular")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_option("--sieve-budget", g.sieve_budget, "largest sieve limit allowed");

  auto* c_cmd = app.add_subcommand("constants", "threshold, script L, gap bound, nu");
  int c_r = 2, c_m = 2;
  double c_delta = 1.0, c_theta = 0.5, c_k = 0;
  std::uint64_t c_B = 1;
  c_cmd->add_option("--r", c_r)->required();
  c_cmd->add_option("--m", c_m)->required();
  c_cmd->add_option("--delta", c_delta)->required();
  c_cmd->add_option("--B", c_B)->required();
  c_cmd->add_option("--theta", c_theta)->required();
  c_cmd->add_option("--k", c_k, "override the auto-chosen k");
  c_cmd->callback([&] { run_constants(g, c_r, c_m, c_delta, c_B, c_theta, c_k); });

  auto* e_cmd = app.add_subcommand("example-c", "worked constant C(m) at density 1/4");
  int e_m = 2;
  e_cmd->add_option("--m", e_m)->required();
  e_cmd->callback([&] { run_example_c(g, e_m); });

  auto* t_cmd = app.add_subcommand("tuple", "the k primes after k, one per line");
  std::uint64_t t_k = 5;
  std::string t_out;
  t_cmd->add_option("--k", t_k)->required();
  t_cmd->add_option("--out", t_out, "write to a file instead of stdout");
  t_cmd->callback([&] { run_tuple(g, t_k, t_out); });

  auto* n_cmd = app.add_subcommand("narrowest", "minimal-diameter admissible pattern");
  int n_k = 5;
  std::int64_t n_max = 100;
  n_cmd->add_option("--k", n_k)->required();
  n_cmd->add_option("--max-diameter", n_max);
  n_cmd->callback([&] { run_narrowest(g, n_k, n_max); });

  auto* f_cmd = app.add_subcommand("functional", "I_k, J_sum, ratio, closed-form bound");
  double f_k = 3, f_theta = 0.5, f_A = 0;
  int f_r = 2;
  std::string f_method = "quadrature";
  std::uint64_t f_budget = 400'000;
  f_cmd->add_option("--k", f_k)->required();
  f_cmd->add_option("--r", f_r)->required();
  f_cmd->add_option("--theta", f_theta)->required();
  f_cmd->add_option("--A", f_A, "override A (default log(k)/r)");
  f_cmd->add_option("--method", f_method, "quadrature or montecarlo");
  f_cmd->add_option("--budget", f_budget, "samples (MC) or node budget (quadrature)");
  f_cmd->callback([&] { run_functional(g, f_k, f_r, f_theta, f_A, f_method, f_budget); });

  auto* er_cmd = app.add_subcommand("er", "enumerate the product set, one per line");
  er_cmd->set_help_flag("--help", "print help");  // frees -h/--h for the factor count
  int er_r = 2, er_h = 1;
  std::uint64_t er_X = 1000, er_N = 0;
  double er_eta = 0.2;
  std::string er_spec = "all", er_out;
  er_cmd->add_option("--r", er_r);
  er_cmd->add_option("--X", er_X);
  er_cmd->add_option("--spec", er_spec);
  er_cmd->add_option("--N", er_N, "constrained mode scale");
  er_cmd->add_option("--h", er_h, "constrained mode factor count");
  er_cmd->add_option("--eta", er_eta, "constrained mode smallest-factor exponent");
  er_cmd->add_option("--out", er_out);
  er_cmd->callback([&] { run_er(g, er_r, er_X, er_spec, er_N, er_h, er_eta, er_out); });

  auto* g_cmd = app.add_subcommand("gaps", "window scan over an ascending list");
  int g_m = 1;
  std::string g_input;
  bool g_csv = false;
  g_cmd->add_option("--m", g_m)->required();
  g_cmd->add_option("--input", g_input)->required();
  g_cmd->add_flag("--csv", g_csv, "print the histogram as gap,count lines");
  g_cmd->callback([&] { run_gaps(g, g_m, g_input, g_csv); });

  auto* tn_cmd = app.add_subcommand("tn", "restricted counting sum and its bound");
  int tn_r = 2;
  std::uint64_t tn_N = 10'000;
  double tn_eta = 0.2;
  std::string tn_spec = "all";
  tn_cmd->add_option("--r", tn_r)->required();
  tn_cmd->add_option("--N", tn_N)->required();
  tn_cmd->add_option("--eta", tn_eta)->required();
  tn_cmd->add_option("--spec", tn_spec);
  tn_cmd->callback([&] { run_tn(g, tn_r, tn_N, tn_eta, tn_spec); });

  auto* eq_cmd = app.add_subcommand("equidist", "progression error sums");
  eq_cmd->require_subcommand(1);
  auto* sw_cmd = eq_cmd->add_subcommand("sw", "single-modulus error");
  std::uint64_t sw_x = 100'000, sw_q = 3;
  std::string sw_spec = "all";
  sw_cmd->add_option("--x", sw_x)->required();
  sw_cmd->add_option("--q", sw_q)->required();
  sw_cmd->add_option("--spec", sw_spec);
  sw_cmd->callback([&] { run_equidist_sw(g, sw_x, sw_q, sw_spec); });

  auto* bv_cmd = eq_cmd->add_subcommand("bv", "summed error over q <= x^theta");
  std::uint64_t bv_x = 100'000;
  double bv_theta = 0.25;
  std::string bv_spec = "all", bv_per_q;
  bv_cmd->add_option("--x", bv_x)->required();
  bv_cmd->add_option("--theta", bv_theta)->required();
  bv_cmd->add_option("--spec", bv_spec);
  bv_cmd->add_option("--per-q", bv_per_q, "write a q,error CSV");
  bv_cmd->callback([&] { run_equidist_bv(g, bv_x, bv_theta, bv_spec, bv_per_q); });

  auto* bver_cmd = eq_cmd->add_subcommand("bv-er", "summed error for the product set");
  double bver_N = 100'000, bver_u = 1.0, bver_qexp = 0.2;
  int bver_r = 2;
  std::string bver_ranges = "0.2:0.4,0.5:0.7", bver_spec = "all";
  bver_cmd->add_option("--N", bver_N)->required();
  bver_cmd->add_option("--u", bver_u);
  bver_cmd->add_option("--r", bver_r)->required();
  bver_cmd->add_option("--ranges", bver_ranges, "a:b pairs, comma separated, one per factor");
  bver_cmd->add_option("--q-exponent", bver_qexp);
  bver_cmd->add_option("--spec", bver_spec);
  bver_cmd->callback(
      [&] { run_equidist_bver(g, bver_N, bver_u, bver_r, bver_ranges, bver_qexp, bver_spec); });

  auto* cv_cmd = app.add_subcommand("conv-check", "convolution identity check");
  int cv_r = 2, cv_c = 1;
  std::uint64_t cv_X = 10'000;
  std::string cv_spec = "all", cv_head = "10:99", cv_last = "100:999";
  cv_cmd->add_option("--r", cv_r)->required();
  cv_cmd->add_option("--X", cv_X)->required();
  cv_cmd->add_option("--spec", cv_spec);
  cv_cmd->add_option("--range-head", cv_head)->required();
  cv_cmd->add_option("--range-last", cv_last)->required();
  cv_cmd->add_option("--c", cv_c)->required();
  cv_cmd->callback([&] { run_conv_check(g, cv_r, cv_X, cv_spec, cv_head, cv_last, cv_c); });

  auto* ra_cmd = app.add_subcommand("report-all", "one JSON document with the battery");
  ra_cmd->callback([&] { run_report_all(g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const parameter_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
