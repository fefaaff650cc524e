#include "qfc/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace qfc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      if constexpr (std::is_unsigned_v<T>) {
        out.push_back(static_cast<T>(std::stoull(item, &used)));
      } else {
        out.push_back(static_cast<T>(std::stoll(item, &used)));
      }
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::BadConfig, "bad integer '" + item + "' for key " + key);
    }
  }
  return out;
}

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

ExperimentRecord run_cell(const SweepSpec& spec, std::uint64_t p, std::int64_t M, std::uint64_t cell) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord rec;
  rec.p = p;
  rec.M = M;
  rec.K = 0;
  rec.L = 0;
  rec.lambda = 0;
  rec.form = spec.form;
  rec.trivial_bound = 2 * static_cast<std::uint64_t>(M);
  const double pd = static_cast<double>(p), md = static_cast<double>(M);
  const double logp = std::log(pd);
  rec.estimate_bound = md * md / pd + spec.estimate_c * std::sqrt(pd) * logp * logp;
  rec.theorem_shape = std::pow(md, 4.0 / 3.0) * std::pow(pd, -1.0 / 3.0) + 1.0;
  rec.seed = spec.seed;
  try {
    const PrimeModulus pm(p);
    const auto& f = spec.form;
    const QuadraticForm q(big(f[0]), big(f[1]), big(f[2]), big(f[3]), big(f[4]), big(f[5]));
    rec.regime = classify_regime(big(M), pm, squarefree_extract(q.discriminant()).core);
    SplitMix64 rng(SplitMix64(spec.seed + 0x632BE59BD9B4E019ULL * (cell + 1)).next());
    std::uint64_t sum = 0;
    bool have = false;
    for (std::int64_t s = 0; s < spec.samples; ++s) {
      const BigInt K(static_cast<unsigned long>(rng.below(p)));
      const BigInt L(static_cast<unsigned long>(rng.below(p)));
      const BigInt lambda(static_cast<unsigned long>(rng.below(p)));
      if (!is_absolutely_irreducible(q, lambda, pm)) {
        ++rec.skipped;
        continue;
      }
      const auto res = count_exact_serial(q, lambda, pm, Box(K, L, M));
      ++rec.samples;
      sum += res.count;
      if (!have || res.count > rec.count) {
        rec.count = res.count;
        rec.K = K;
        rec.L = L;
        rec.lambda = lambda;
        have = true;
      }
    }
    rec.mean_count = rec.samples ? static_cast<double>(sum) / static_cast<double>(rec.samples) : 0.0;
    if (!have) rec.error = "no irreducible samples";
  } catch (const Error& e) {
    rec.error = e.what();
  }
  if (spec.timing) {
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

}  // namespace

SweepSpec parse_sweep_config(std::istream& in) {
  SweepSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::BadConfig, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "primes") {
      spec.primes = parse_list<std::uint64_t>(key, value);
    } else if (key == "m_schedule") {
      spec.m_schedule = parse_list<std::int64_t>(key, value);
    } else if (key == "samples") {
      const auto v = parse_list<std::int64_t>(key, value);
      if (v.size() != 1 || v[0] < 1) throw Error(Errc::BadConfig, "samples must be one positive integer");
      spec.samples = v[0];
    } else if (key == "form") {
      spec.form = parse_list<std::int64_t>(key, value);
      if (spec.form.size() != 6) throw Error(Errc::BadConfig, "form needs six coefficients a,b,c,d,e,f");
    } else if (key == "seed") {
      const auto v = parse_list<std::uint64_t>(key, value);
      if (v.size() != 1) throw Error(Errc::BadConfig, "seed must be one integer");
      spec.seed = v[0];
    } else if (key == "estimate_c") {
      try {
        spec.estimate_c = std::stod(value);
      } catch (const std::exception&) {
        throw Error(Errc::BadConfig, "estimate_c must be a real number");
      }
    } else if (key == "timing") {
      spec.timing = value == "true" || value == "1";
    } else {
      throw Error(Errc::BadConfig, "unknown key '" + key + "'");
    }
  }
  for (auto M : spec.m_schedule) {
    if (M < 1) throw Error(Errc::BadConfig, "m_schedule entries must be positive");
  }
  return spec;
}

SweepSpec parse_sweep_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadConfig, "cannot open " + path);
  return parse_sweep_config(in);
}

std::string csv_header() {
  return "p,M,K,L,lambda,a,b,c,d,e,f,count,trivialBound,estimateBound,theoremShape,regime,seed,wallTimeMs,"
         "meanCount,samples,skipped,error";
}

std::string csv_row(const ExperimentRecord& r) {
  std::ostringstream os;
  os << r.p << ',' << r.M << ',' << r.K << ',' << r.L << ',' << r.lambda;
  for (std::size_t i = 0; i < 6; ++i) os << ',' << (i < r.form.size() ? r.form[i] : 0);
  os << ',' << r.count << ',' << r.trivial_bound << ',' << fmt_real(r.estimate_bound) << ','
     << fmt_real(r.theorem_shape) << ',' << regime_name(r.regime) << ',' << r.seed << ','
     << fmt_real(r.wall_time_ms) << ',' << fmt_real(r.mean_count) << ',' << r.samples << ',' << r.skipped << ','
     << csv_field(r.error);
  return os.str();
}

std::vector<ExperimentRecord> sweep_serial(const SweepSpec& spec) {
  std::vector<ExperimentRecord> out;
  std::uint64_t cell = 0;
  for (auto p : spec.primes) {
    for (auto M : spec.m_schedule) out.push_back(run_cell(spec, p, M, cell++));
  }
  return out;
}

std::vector<ExperimentRecord> sweep(const SweepSpec& spec) {
  const std::size_t nm = spec.m_schedule.size();
  const auto cells = static_cast<std::int64_t>(spec.primes.size() * nm);
  std::vector<ExperimentRecord> out(static_cast<std::size_t>(cells));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < cells; ++c) {
    const auto i = static_cast<std::size_t>(c);
    out[i] = run_cell(spec, spec.primes[i / nm], spec.m_schedule[i % nm], i);
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kSchemaLine << '\n' << csv_header() << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::vector<ExperimentRecord> out;
  std::string line;
  std::map<std::string, std::size_t> col;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    if (col.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) col[fields[i]] = i;
      for (const char* need : {"p", "M", "count"}) {
        if (!col.count(need)) throw Error(Errc::BadConfig, std::string("CSV lacks column ") + need);
      }
      continue;
    }
    auto get = [&](const char* name) -> std::string {
      auto it = col.find(name);
      return it == col.end() || it->second >= fields.size() ? std::string() : fields[it->second];
    };
    try {
      ExperimentRecord r;
      r.p = std::stoull(get("p"));
      r.M = std::stoll(get("M"));
      r.count = std::stoull(get("count"));
      if (auto v = get("K"); !v.empty()) r.K = BigInt(v);
      if (auto v = get("L"); !v.empty()) r.L = BigInt(v);
      if (auto v = get("lambda"); !v.empty()) r.lambda = BigInt(v);
      for (const char* c : {"a", "b", "c", "d", "e", "f"}) {
        if (auto v = get(c); !v.empty()) r.form.push_back(std::stoll(v));
      }
      if (auto v = get("trivialBound"); !v.empty()) r.trivial_bound = std::stoull(v);
      if (auto v = get("regime"); !v.empty()) r.regime = v == "SmallM" ? Regime::SmallM : Regime::LargeM;
      if (auto v = get("seed"); !v.empty()) r.seed = std::stoull(v);
      if (auto v = get("meanCount"); !v.empty()) r.mean_count = std::stod(v);
      if (auto v = get("samples"); !v.empty()) r.samples = std::stoll(v);
      if (auto v = get("skipped"); !v.empty()) r.skipped = std::stoll(v);
      r.error = get("error");
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(Errc::BadConfig, "malformed CSV row: " + line);
    }
  }
  return out;
}

ExponentFit fit_exponent(const std::vector<ExperimentRecord>& records) {
  std::vector<double> xs, ys;
  std::set<std::int64_t> ms;
  for (const auto& r : records) {
    if (r.count >= 1 && r.M >= 1) {
      ms.insert(r.M);
      xs.push_back(std::log(static_cast<double>(r.M)));
      ys.push_back(std::log(static_cast<double>(r.count)));
    }
  }
  if (xs.size() < 3) throw Error(Errc::Underdetermined, "need at least 3 records with count >= 1");
  if (ms.size() < 2) throw Error(Errc::Underdetermined, "all records share one M");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double icept = my - slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (icept + slope * xs[i]);
    ss += r * r;
  }
  return {slope, std::sqrt(ss / n)};
}

std::vector<ParabolaRow> parabola_sanity(const std::vector<std::int64_t>& m_schedule, const PrimeModulus& p) {
  const auto q = QuadraticForm::allow_degenerate(-1, 0, 0, 0, 1, 0);
  std::vector<ParabolaRow> rows;
  for (auto M : m_schedule) {
    const auto res = count_exact(q, 0, p, Box(0, 0, M));
    rows.push_back({M, res.count, static_cast<double>(res.count) / std::sqrt(static_cast<double>(M))});
  }
  return rows;
}

}  // namespace qfc
