#include "ipsjoin/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipsjoin/core/dataset_io.hpp"
#include "ipsjoin/core/join.hpp"
#include "ipsjoin/core/parallel.hpp"
#include "ipsjoin/core/random.hpp"
#include "ipsjoin/embeddings/embeddings.hpp"
#include "ipsjoin/embeddings/profile.hpp"
#include "ipsjoin/lowerbound/audit.hpp"
#include "ipsjoin/lowerbound/sequences.hpp"
#include "ipsjoin/lowerbound/verify.hpp"
#include "ipsjoin/lsh/collision.hpp"
#include "ipsjoin/lsh/lsh_index.hpp"
#include "ipsjoin/lsh/rho.hpp"
#include "ipsjoin/ovp/ovp.hpp"
#include "ipsjoin/sketch/index_io.hpp"
#include "ipsjoin/sketch/mips_index.hpp"
#include "ipsjoin/simd/kernels.hpp"

namespace ipsjoin::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format;  // empty: command default
};

std::string format_or(const Globals& g, const std::string& fallback) { return g.format.empty() ? fallback : g.format; }

void require_json(const Globals& g, const char* command) {
  if (format_or(g, "json") != "json") throw UsageError(std::string(command) + " only supports --format json");
}

std::string number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_text(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

Dataset read_input(const std::string& path) {
  if (path.empty() || path == "-") return read_dataset(std::cin);
  return load_dataset(path);
}

/// a:b:step, inclusive of b within rounding.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size())
      throw UsageError("bad grid '" + spec + "': expected a:b:step");
    parts.push_back(v);
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    throw UsageError("bad grid '" + spec + "': expected a:b:step with a <= b and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k)
    grid[k] = std::round((parts[0] + static_cast<double>(k) * parts[2]) * 1e12) / 1e12;
  return grid;
}

json profile_json(const embeddings::GapEmbeddingProfile& p) {
  json j;
  j["family"] = p.family;
  j["param"] = p.param;
  j["d1"] = p.d1;
  j["d2"] = p.d2;
  j["cs"] = p.cs;
  j["s"] = p.s;
  j["c"] = p.c();
  j["ratio"] = p.ratio();
  j["domain"] = std::string(domain_name(p.domain));
  j["signed"] = p.is_signed;
  if (p.nominal) {
    j["nominal"] = {{"d2", p.nominal->d2}, {"cs", p.nominal->cs}, {"s", p.nominal->s}, {"ratio", p.nominal->ratio()}};
  }
  if (p.dimension_bound_holds) j["dimension_bound_holds"] = *p.dimension_bound_holds;
  return j;
}

json pair_json(const std::optional<ovp::IndexPair>& p) {
  if (!p) return nullptr;
  return json::array({p->first, p->second});
}

JoinMode parse_mode(const std::string& m) {
  if (m == "signed") return JoinMode::kSigned;
  if (m == "unsigned") return JoinMode::kUnsigned;
  throw UsageError("mode must be signed or unsigned");
}

std::unique_ptr<Joiner> make_joiner(const std::string& name, std::uint64_t seed) {
  if (name == "brute") return std::make_unique<BruteForceJoiner>();
  if (name == "lsh") return std::make_unique<lsh::LshJoiner>(lsh::LshParams{8, 16, Seed{derive_seed(seed, 0x15)}});
  if (name == "sketch") {
    sketch::SketchParams params;
    params.seed = Seed{derive_seed(seed, 0x5c)};
    return std::make_unique<sketch::SketchJoiner>(params);
  }
  throw UsageError("joiner must be brute, lsh or sketch");
}

// ---------------------------------------------------------------- gen

struct GenOpts {
  std::size_t n = 0;
  std::size_t d = 0;
  std::string domain = "binary";
  std::string dist = "uniform";
  std::string planted = "none";
  double density = 0.5;
  std::string out;
};

Dataset generate(const GenOpts& o, std::uint64_t seed) {
  if (o.n < 1 || o.d < 1) throw UsageError("gen needs --n >= 1 and --d >= 1");
  if (o.dist != "uniform") throw UsageError("gen supports --dist uniform");
  if (o.planted != "none" && o.planted != "orthogonal" && o.planted != "inner")
    throw UsageError("--planted must be none, orthogonal or inner");
  if (o.planted != "none" && o.n < 2) throw UsageError("a planted pair needs --n >= 2");
  const Domain domain = parse_domain(o.domain);
  StreamRng rng(seed, 0x6e);

  if (domain == Domain::kReal) {
    std::vector<RealVector> rows(o.n);
    for (auto& row : rows) {
      std::vector<double> v(o.d);
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (double& e : v) {
          e = rng.gaussian();
          norm2 += e * e;
        }
      } while (norm2 == 0.0);
      const double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(o.d));
      const double f = radius / std::sqrt(norm2);
      for (double& e : v) e *= f;
      row = RealVector(std::move(v));
    }
    if (o.planted == "inner") {
      rows[1] = rows[0];
    } else if (o.planted == "orthogonal") {
      // Remove from row 1 its component along row 0.
      const double pp = inner_product(rows[0], rows[0]);
      if (pp > 0.0) {
        const double t = inner_product(rows[0], rows[1]) / pp;
        simd::axpy(-t, rows[0].values(), rows[1].values());
      }
    }
    return make_dataset(std::move(rows), o.d);
  }

  if (!(o.density >= 0.0 && o.density <= 1.0)) throw UsageError("--density must lie in [0, 1]");
  std::vector<std::vector<int>> bits(o.n, std::vector<int>(o.d));
  for (auto& row : bits)
    for (int& b : row) b = rng.bernoulli(domain == Domain::kBinary ? o.density : 0.5) ? 1 : 0;
  if (o.planted == "inner") bits[1] = bits[0];
  if (o.planted == "orthogonal") {
    for (std::size_t t = 0; t < o.d; ++t) {
      if (domain == Domain::kBinary) {
        if (bits[0][t]) bits[1][t] = 0;
      } else {
        // Sign vectors: half the coordinates agree, half disagree (odd d leaves a residue of 1).
        bits[1][t] = (t % 2 == 0) ? bits[0][t] : 1 - bits[0][t];
      }
    }
  }
  if (domain == Domain::kBinary) {
    std::vector<BinaryVector> rows;
    for (const auto& r : bits) rows.push_back(BinaryVector::from_entries(std::span<const int>(r)));
    return make_dataset(std::move(rows), o.d);
  }
  std::vector<SignVector> rows;
  for (const auto& r : bits) {
    std::vector<int> entries(r.size());
    for (std::size_t t = 0; t < r.size(); ++t) entries[t] = r[t] ? -1 : 1;
    rows.push_back(SignVector::from_entries(std::span<const int>(entries)));
  }
  return make_dataset(std::move(rows), o.d);
}

int cmd_gen(const GenOpts& o, const Globals& g, std::ostream& out) {
  std::ostringstream text;
  write_dataset(text, generate(o, g.seed));
  write_text(out, o.out, text.str());
  return kExitOk;
}

// ---------------------------------------------------------------- embed

struct EmbedOpts {
  int family = 1;
  std::uint64_t param = 0;
  std::string in;
  std::string side = "data";
  std::string out;
};

int cmd_embed(const EmbedOpts& o, const Globals&, std::ostream& out) {
  const Dataset data = read_input(o.in);
  if (data.domain() != Domain::kBinary) throw UsageError("embed needs a binary dataset");
  if (o.side != "data" && o.side != "query") throw UsageError("--side must be data or query");
  embeddings::validate_family(o.family, o.param, data.dim);
  const auto side = o.side == "data" ? embeddings::Side::kData : embeddings::Side::kQuery;
  const auto& rows = data.as<BinaryVector>();
  std::vector<embeddings::Embedded> embedded(rows.size());
  parallel_for(rows.size(), [&](std::size_t i) { embedded[i] = embeddings::embed(o.family, o.param, rows[i], side); });
  const auto prof = embeddings::profile(o.family, data.dim, o.param);
  Dataset result;
  result.dim = static_cast<std::size_t>(prof.d2);
  if (prof.domain == Domain::kSign) {
    std::vector<SignVector> v;
    for (auto& e : embedded) v.push_back(std::get<SignVector>(std::move(e)));
    result.rows = std::move(v);
  } else {
    std::vector<BinaryVector> v;
    for (auto& e : embedded) v.push_back(std::get<BinaryVector>(std::move(e)));
    result.rows = std::move(v);
  }
  std::ostringstream text;
  write_dataset(text, result);
  write_text(out, o.out, text.str());
  return kExitOk;
}

// ---------------------------------------------------------------- profile

struct ProfileOpts {
  int family = 1;
  std::size_t d = 0;
  std::uint64_t param = 0;
};

int cmd_profile(const ProfileOpts& o, const Globals& g, std::ostream& out) {
  const auto p = embeddings::profile(o.family, o.d, o.param);
  const std::string fmt = format_or(g, "json");
  if (fmt == "csv") {
    out << "family,param,d1,d2,cs,s,ratio,domain,signed\r\n";
    out << p.family << ',' << p.param << ',' << p.d1 << ',' << p.d2 << ',' << number(p.cs) << ',' << number(p.s)
        << ',' << number(p.ratio()) << ',' << domain_name(p.domain) << ',' << (p.is_signed ? "true" : "false")
        << "\r\n";
    return kExitOk;
  }
  json j = profile_json(p);
  if (o.family == 2) j["ratio_closed_form"] = embeddings::family2_ratio_closed_form(o.d, static_cast<unsigned>(o.param));
  if (o.family == 3 && o.param >= 2) j["ratio_closed_form"] = embeddings::family3_ratio_closed_form(o.d, o.param);
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- ovp-reduce

struct OvpOpts {
  int family = 1;
  std::uint64_t param = 0;
  std::size_t n = 100;
  std::size_t d = 12;
  double density = 0.5;
  bool planted = false;
  std::string joiner = "brute";
  std::string data;
  std::string queries;
  bool timings = false;
};

int cmd_ovp(const OvpOpts& o, const Globals& g, std::ostream& out) {
  require_json(g, "ovp-reduce");
  ovp::OvpInstance inst;
  if (!o.data.empty() || !o.queries.empty()) {
    if (o.data.empty() || o.queries.empty()) throw UsageError("--data and --queries must be given together");
    const Dataset P = read_input(o.data);
    const Dataset Q = read_input(o.queries);
    if (P.domain() != Domain::kBinary || Q.domain() != Domain::kBinary || P.dim != Q.dim)
      throw UsageError("ovp-reduce needs two binary datasets of equal dimension");
    inst.P = P.as<BinaryVector>();
    inst.Q = Q.as<BinaryVector>();
    inst.d = P.dim;
  } else {
    if (o.n < 1 || o.d < 1) throw UsageError("ovp-reduce needs --n >= 1 and --d >= 1");
    inst = ovp::random_instance(o.n, o.n, o.d, o.density, g.seed, o.planted);
  }
  const auto joiner = make_joiner(o.joiner, g.seed);
  const ovp::ReductionReport r = ovp::reduce_and_join(inst, o.family, o.param, *joiner);
  json j;
  j["seed"] = g.seed;
  j["n_data"] = inst.P.size();
  j["n_query"] = inst.Q.size();
  j["d"] = inst.d;
  j["profile"] = profile_json(r.profile);
  j["join"] = {{"s", r.join_spec.s},
               {"c", r.join_spec.c},
               {"mode", r.join_spec.mode == JoinMode::kSigned ? "signed" : "unsigned"}};
  j["joiner"] = r.joiner;
  j["join_found"] = r.join_found;
  j["oracle_found"] = r.oracle_found;
  j["witness"] = pair_json(r.witness);
  j["oracle_witness"] = pair_json(r.oracle_witness);
  j["pairs_reported"] = r.pairs_reported;
  j["agree"] = r.agree();
  if (o.timings) {
    j["timings_ns"] = {{"embed", r.timings.embed.count()},
                       {"join", r.timings.join.count()},
                       {"oracle", r.timings.oracle.count()}};
  }
  out << j.dump(2) << '\n';
  // Approximate joiners may miss a pair; only the exact joiner must agree.
  return (o.joiner == "brute" && !r.agree()) ? kExitVerificationFailed : kExitOk;
}

// ---------------------------------------------------------------- join

struct JoinOpts {
  std::string data;
  std::string queries;
  double s = 1.0;
  double c = 0.5;
  std::string mode = "signed";
  std::string joiner = "brute";
};

int cmd_join(const JoinOpts& o, const Globals& g, std::ostream& out) {
  const Dataset P = read_input(o.data);
  const Dataset Q = read_input(o.queries);
  if (P.domain() != Q.domain() || P.dim != Q.dim) throw UsageError("join needs datasets of one domain and dimension");
  const JoinSpec spec(o.s, o.c, parse_mode(o.mode));
  const auto joiner = make_joiner(o.joiner, g.seed);
  const auto pairs = joiner->join(P, Q, spec);
  if (format_or(g, "json") == "csv") {
    out << "query,data,inner_product\r\n";
    for (const auto& p : pairs) out << p.query << ',' << p.data << ',' << number(p.value) << "\r\n";
    return kExitOk;
  }
  json j;
  j["seed"] = g.seed;
  j["joiner"] = joiner->name();
  j["s"] = spec.s;
  j["c"] = spec.c;
  j["mode"] = o.mode;
  json arr = json::array();
  for (const auto& p : pairs) arr.push_back({{"query", p.query}, {"data", p.data}, {"inner_product", p.value}});
  j["pairs"] = std::move(arr);
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- rho-curve

struct RhoOpts {
  std::string s_grid = "0.1:0.9:0.1";
  std::string c_grid = "0.1:0.9:0.1";
  double U = 1.0;
  std::string out;  // output format alias
};

int cmd_rho(const RhoOpts& o, const Globals& g, std::ostream& out) {
  std::string fmt = format_or(g, "csv");
  if (!o.out.empty()) fmt = o.out;
  if (fmt != "csv" && fmt != "json") throw UsageError("rho-curve output must be csv or json");
  if (!(o.U >= 1.0)) throw UsageError("--U must be >= 1");
  const auto S = parse_grid(o.s_grid);
  const auto C = parse_grid(o.c_grid);
  json rows = json::array();
  if (fmt == "csv") out << "s,c,rho_datadep,rho_simple\r\n";
  for (double s : S) {
    for (double c : C) {
      const double rd = lsh::rho_datadep(s / o.U, c).rho;
      const double rs = lsh::rho_simple(s, c);
      if (fmt == "csv") {
        out << number(s) << ',' << number(c) << ',' << number(rd) << ',' << number(rs) << "\r\n";
      } else {
        rows.push_back({{"s", s}, {"c", c}, {"rho_datadep", rd}, {"rho_simple", rs}});
      }
    }
  }
  if (fmt == "json") out << json{{"U", o.U}, {"rows", rows}}.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- lsh-bench

struct BenchOpts {
  std::string suite = "hyperplane";
  std::uint64_t trials = 100000;
  double U = 2.0;
};

json bench_row(const std::string& label, double expected, const lsh::CollisionEstimate& e, bool& ok) {
  const double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(e.trials));
  const double dev = std::abs(e.p_hat - expected);
  const bool within = dev <= 3.0 * sigma + 1e-12;
  ok = ok && within;
  return {{"case", label},       {"expected", expected}, {"p_hat", e.p_hat},
          {"stderr", e.stderr_}, {"trials", e.trials},   {"within_3sigma", within}};
}

int cmd_bench(const BenchOpts& o, const Globals& g, std::ostream& out) {
  require_json(g, "lsh-bench");
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  json rows = json::array();
  bool ok = true;
  const lsh::HyperplaneFamily planes{1, Seed{derive_seed(g.seed, 0xb1)}};
  if (o.suite == "hyperplane") {
    const lsh::HyperplaneHashFamily family(planes);
    int k = 0;
    for (double angle : {std::numbers::pi / 6, std::numbers::pi / 3, std::numbers::pi / 2, 2 * std::numbers::pi / 3}) {
      ++k;
      const RealVector x{1.0, 0.0};
      const RealVector y{std::cos(angle), std::sin(angle)};
      const auto e = lsh::estimate_collision(family, x, y, o.trials, derive_seed(g.seed, k));
      rows.push_back(bench_row("theta=" + number(angle), 1.0 - angle / std::numbers::pi, e, ok));
    }
  } else if (o.suite == "lift") {
    if (!(o.U >= 1.0)) throw UsageError("--U must be >= 1");
    const lsh::AsymmetricLiftFamily family(o.U, planes);
    int k = 0;
    for (double ip : {-0.5, 0.0, 0.25, 0.5, 0.9}) {
      // p = (1, 0), q = U (ip, sqrt(1 - ip^2)) so that p.q / U = ip.
      const RealVector p{1.0, 0.0};
      const RealVector q{o.U * ip, o.U * std::sqrt(1.0 - ip * ip)};
      const auto e = lsh::estimate_collision(family, p, q, o.trials, derive_seed(g.seed, ++k));
      rows.push_back(bench_row("p.q/U=" + number(ip), 1.0 - std::acos(ip) / std::numbers::pi, e, ok));
    }
  } else {
    throw UsageError("--suite must be hyperplane or lift");
  }
  out << json{{"seed", g.seed}, {"suite", o.suite}, {"rows", rows}, {"pass", ok}}.dump(2) << '\n';
  return ok ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- sketch-mips

struct SketchBuildOpts {
  std::string in;
  double kappa = 4.0;
  unsigned copies = 9;
  double C = 8.0;
  std::string out;
};

struct SketchQueryOpts {
  std::string index;
  std::string queries;
  std::string data;
  std::string report;
};

std::vector<RealVector> real_rows(const Dataset& d) { return to_real(d); }

int cmd_sketch_build(const SketchBuildOpts& o, const Globals& g, std::ostream& out) {
  require_json(g, "sketch-mips build");
  if (o.out.empty()) throw UsageError("sketch-mips build needs --out");
  const Dataset data = read_input(o.in);
  sketch::SketchParams params;
  params.kappa = o.kappa;
  params.copies = o.copies;
  params.C = o.C;
  params.seed = Seed{g.seed};
  const auto index = sketch::MipsIndex::build(real_rows(data), params);
  sketch::save_index(o.out, index);
  out << json{{"seed", g.seed},
              {"n", index.size()},
              {"d", index.dim()},
              {"kappa", params.kappa},
              {"copies", params.copies},
              {"levels", index.levels()},
              {"nodes", index.nodes().size()},
              {"total_rows", index.total_rows()},
              {"root_rows", index.root_rows()}}
             .dump(2)
      << '\n';
  return kExitOk;
}

int cmd_sketch_query(const SketchQueryOpts& o, const Globals& g, std::ostream& out) {
  std::string fmt = format_or(g, "json");
  if (!o.report.empty()) fmt = o.report;
  if (fmt != "csv" && fmt != "json") throw UsageError("--report must be csv or json");
  const auto index = sketch::load_index(o.index);
  const Dataset qs = read_input(o.queries);
  if (qs.dim != index.dim()) throw UsageError("query dimension does not match the index");
  const auto Q = real_rows(qs);
  std::optional<std::vector<RealVector>> P;
  if (!o.data.empty()) {
    const Dataset ds = read_input(o.data);
    if (ds.dim != index.dim() || ds.size() != index.size()) throw UsageError("--data does not match the index");
    P = real_rows(ds);
  }
  struct Row {
    std::size_t index = 0;
    double estimate = 0.0;
    double value = 0.0;
    double best = 0.0;
  };
  std::vector<Row> rows(Q.size());
  parallel_for(Q.size(), [&](std::size_t j) {
    Row& r = rows[j];
    r.index = index.recover(Q[j].values());
    r.estimate = index.estimate_max(0, 0, Q[j].values());
    if (P) {
      r.value = std::abs(inner_product((*P)[r.index], Q[j]));
      for (const auto& p : *P) r.best = std::max(r.best, std::abs(inner_product(p, Q[j])));
    }
  });
  if (fmt == "csv") {
    out << "query,index,root_estimate" << (P ? ",abs_inner_product,max_abs_inner_product" : "") << "\r\n";
    for (std::size_t j = 0; j < rows.size(); ++j) {
      out << j << ',' << rows[j].index << ',' << number(rows[j].estimate);
      if (P) out << ',' << number(rows[j].value) << ',' << number(rows[j].best);
      out << "\r\n";
    }
    return kExitOk;
  }
  json arr = json::array();
  for (std::size_t j = 0; j < rows.size(); ++j) {
    json r = {{"query", j}, {"index", rows[j].index}, {"root_estimate", rows[j].estimate}};
    if (P) {
      r["abs_inner_product"] = rows[j].value;
      r["max_abs_inner_product"] = rows[j].best;
    }
    arr.push_back(std::move(r));
  }
  out << json{{"results", arr}}.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- lowerbound

struct LowerOpts {
  std::string kind = "1a";
  double s = 0.25;
  double c = 0.5;
  double U = 1.0;
  std::size_t d = 2;
  bool verify = false;
  std::vector<std::string> audit;
  bool audit_requested = false;
  std::string mode;
};

int cmd_lowerbound(const LowerOpts& o, const Globals& g, std::ostream& out) {
  require_json(g, "lowerbound");
  using namespace lowerbound;
  const SequenceCase kind = parse_case(o.kind);
  HardSequence seq;
  switch (kind) {
    case SequenceCase::k1a: seq = seq_case1_1d(o.s, o.c, o.U); break;
    case SequenceCase::k1b: seq = seq_case1_blocked(o.s, o.c, o.U, o.d); break;
    case SequenceCase::k2: seq = seq_case2(o.s, o.c, o.U, o.d); break;
    case SequenceCase::k3: seq = seq_case3(o.s, o.U, o.c); break;
  }
  json j;
  j["seed"] = g.seed;
  j["case"] = std::string(case_name(kind));
  j["s"] = o.s;
  j["c"] = o.c;
  j["U"] = o.U;
  j["dim"] = seq.dim;
  j["n"] = seq.size();
  j["block_lengths"] = seq.block_lengths;
  if (kind == SequenceCase::k2) j["min_block_guarantee"] = case2_min_block(o.s, o.c, o.U);
  if (seq.family) {
    j["incoherent"] = {{"q", seq.family->q}, {"t", seq.family->t}, {"dim", seq.family->dim},
                       {"epsilon", seq.family->epsilon}, {"target_epsilon", seq.epsilon}};
  }
  bool ok = true;
  if (o.verify) {
    const JoinMode mode = o.mode.empty() ? seq.natural_mode() : parse_mode(o.mode);
    const VerifyReport r = verify_sequence(seq, mode);
    json v;
    v["pass"] = r.pass;
    v["mode"] = mode == JoinMode::kSigned ? "signed" : "unsigned";
    v["upper_margin"] = finite_or_null(r.upper_margin);
    v["lower_margin"] = finite_or_null(r.lower_margin);
    v["max_data_norm"] = r.max_data_norm;
    v["max_query_norm"] = r.max_query_norm;
    v["offending"] = r.offending ? json::array({r.offending->first, r.offending->second}) : json(nullptr);
    if (!r.pass) v["failure"] = r.failure;
    j["verify"] = std::move(v);
    ok = ok && r.pass;
  }
  if (o.audit_requested) {
    std::string family = "lift";
    std::uint64_t trials = 100000;
    for (const auto& kv : o.audit) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--audit takes key=value arguments");
      const std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      if (key == "family") {
        family = value;
      } else if (key == "trials") {
        const auto res = std::from_chars(value.data(), value.data() + value.size(), trials);
        if (res.ec != std::errc{} || res.ptr != value.data() + value.size() || trials < 1)
          throw UsageError("bad audit trials '" + value + "'");
      } else {
        throw UsageError("unknown audit key '" + key + "'");
      }
    }
    const lsh::HyperplaneFamily planes{1, Seed{derive_seed(g.seed, 0xa0d)}};
    std::unique_ptr<lsh::HashFamily> fam;
    if (family == "lift") {
      fam = std::make_unique<lsh::AsymmetricLiftFamily>(o.U, planes);
    } else if (family == "hyperplane") {
      fam = std::make_unique<lsh::HyperplaneHashFamily>(planes);
    } else {
      throw UsageError("audit family must be lift or hyperplane");
    }
    const GapAudit a = gap_audit(seq, *fam, trials, derive_seed(g.seed, 0xa0e));
    j["audit"] = {{"family", fam->name()},     {"trials", a.trials},         {"n", a.n},
                  {"bound", a.bound},          {"p1_min_hat", a.p1_min_hat}, {"p1_stderr", a.p1_stderr},
                  {"p2_max_hat", a.p2_max_hat}, {"p2_stderr", a.p2_stderr},  {"gap", a.gap()},
                  {"pass", a.pass()}};
    ok = ok && a.pass();
  }
  out << j.dump(2) << '\n';
  return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inner-product similarity join toolkit", "ipsjoin"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Root seed of every randomized step")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  GenOpts gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random dataset");
  gen_cmd->add_option("--n", gen.n, "Number of vectors")->required();
  gen_cmd->add_option("--d", gen.d, "Dimension")->required();
  gen_cmd->add_option("--domain", gen.domain, "binary, sign or real")->capture_default_str();
  gen_cmd->add_option("--dist", gen.dist, "Distribution (uniform)")->capture_default_str();
  gen_cmd->add_option("--density", gen.density, "P(bit = 1) for binary data")->capture_default_str();
  gen_cmd->add_option("--planted", gen.planted, "none, orthogonal or inner (rows 0 and 1)")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output path (stdout if omitted)");

  EmbedOpts emb;
  auto* emb_cmd = app.add_subcommand("embed", "Apply a gap embedding to a binary dataset");
  emb_cmd->add_option("--family", emb.family, "1, 2 or 3")->required();
  emb_cmd->add_option("--param", emb.param, "q for family 2, k for family 3");
  emb_cmd->add_option("--in", emb.in, "Input dataset (stdin if omitted)");
  emb_cmd->add_option("--side", emb.side, "data or query")->capture_default_str();
  emb_cmd->add_option("--out", emb.out, "Output path (stdout if omitted)");

  ProfileOpts prof;
  auto* prof_cmd = app.add_subcommand("profile", "Print the (d1, d2, cs, s) profile of an embedding");
  prof_cmd->add_option("--family", prof.family, "1, 2 or 3")->required();
  prof_cmd->add_option("--d", prof.d, "Input dimension")->required();
  prof_cmd->add_option("--param", prof.param, "q for family 2, k for family 3");

  OvpOpts ovpo;
  auto* ovp_cmd = app.add_subcommand("ovp-reduce", "Solve OVP through a gap embedding and a join");
  ovp_cmd->add_option("--family", ovpo.family, "1, 2 or 3")->required();
  ovp_cmd->add_option("--param", ovpo.param, "q for family 2, k for family 3");
  ovp_cmd->add_option("--n", ovpo.n, "Vectors per side")->capture_default_str();
  ovp_cmd->add_option("--d", ovpo.d, "Dimension")->capture_default_str();
  ovp_cmd->add_option("--density", ovpo.density, "P(bit = 1)")->capture_default_str();
  ovp_cmd->add_flag("--planted", ovpo.planted, "Plant an orthogonal pair");
  ovp_cmd->add_option("--joiner", ovpo.joiner, "brute, lsh or sketch")->capture_default_str();
  ovp_cmd->add_option("--data", ovpo.data, "Binary dataset P (instead of a random instance)");
  ovp_cmd->add_option("--queries", ovpo.queries, "Binary dataset Q");
  ovp_cmd->add_flag("--timings", ovpo.timings, "Include wall-clock timings in the report");

  JoinOpts jo;
  auto* join_cmd = app.add_subcommand("join", "Run a (cs, s) inner-product join");
  join_cmd->add_option("--data", jo.data, "Data dataset")->required();
  join_cmd->add_option("--queries", jo.queries, "Query dataset")->required();
  join_cmd->add_option("--s", jo.s, "Threshold s")->required();
  join_cmd->add_option("--c", jo.c, "Approximation c")->capture_default_str();
  join_cmd->add_option("--mode", jo.mode, "signed or unsigned")->capture_default_str();
  join_cmd->add_option("--joiner", jo.joiner, "brute, lsh or sketch")->capture_default_str();

  RhoOpts rho;
  auto* rho_cmd = app.add_subcommand("rho-curve", "Tabulate rho values over an (s, c) grid");
  rho_cmd->add_option("--s-grid", rho.s_grid, "a:b:step")->capture_default_str();
  rho_cmd->add_option("--c-grid", rho.c_grid, "a:b:step")->capture_default_str();
  rho_cmd->add_option("--U", rho.U, "Query radius")->capture_default_str();
  rho_cmd->add_option("--out", rho.out, "csv or json");

  BenchOpts bench;
  auto* bench_cmd = app.add_subcommand("lsh-bench", "Monte-Carlo collision probabilities");
  bench_cmd->add_option("--suite", bench.suite, "hyperplane or lift")->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials, "Hash functions per pair")->capture_default_str();
  bench_cmd->add_option("--U", bench.U, "Query radius for the lift suite")->capture_default_str();

  SketchBuildOpts sb;
  SketchQueryOpts sq;
  auto* sketch_cmd = app.add_subcommand("sketch-mips", "Sketch-based unsigned c-MIPS");
  sketch_cmd->require_subcommand(1);
  auto* sb_cmd = sketch_cmd->add_subcommand("build", "Build an index file");
  sb_cmd->add_option("--in", sb.in, "Data dataset")->required();
  sb_cmd->add_option("--kappa", sb.kappa, "Norm parameter >= 2")->capture_default_str();
  sb_cmd->add_option("--copies", sb.copies, "Median copies")->capture_default_str();
  sb_cmd->add_option("--C", sb.C, "Row constant")->capture_default_str();
  sb_cmd->add_option("--out", sb.out, "Index path")->required();
  auto* sq_cmd = sketch_cmd->add_subcommand("query", "Query an index file");
  sq_cmd->add_option("--index", sq.index, "Index path")->required();
  sq_cmd->add_option("--queries", sq.queries, "Query dataset")->required();
  sq_cmd->add_option("--data", sq.data, "Data dataset, to report exact products");
  sq_cmd->add_option("--report", sq.report, "csv or json");

  LowerOpts lo;
  auto* lo_cmd = app.add_subcommand("lowerbound", "Generate and check a hard query/data sequence");
  lo_cmd->add_option("--case", lo.kind, "1a, 1b, 2 or 3")->required();
  lo_cmd->add_option("--s", lo.s, "Threshold s")->required();
  lo_cmd->add_option("--c", lo.c, "Approximation c")->required();
  lo_cmd->add_option("--U", lo.U, "Query radius")->capture_default_str();
  lo_cmd->add_option("--d", lo.d, "Dimension for cases 1b and 2")->capture_default_str();
  lo_cmd->add_flag("--verify", lo.verify, "Check the staircase and the ball constraints");
  lo_cmd->add_option("--mode", lo.mode, "signed or unsigned (default: the case's own mode)");
  auto* audit_opt = lo_cmd->add_option("--audit", lo.audit, "Gap audit: family=lift|hyperplane trials=N")
                        ->expected(0, 2)
                        ->allow_extra_args(false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  lo.audit_requested = audit_opt->count() > 0;

  const unsigned previous_threads = default_threads();
  set_default_threads(g.threads);
  struct Restore {
    unsigned threads;
    ~Restore() { set_default_threads(threads); }
  } restore{previous_threads};

  try {
    if (*gen_cmd) return cmd_gen(gen, g, out);
    if (*emb_cmd) return cmd_embed(emb, g, out);
    if (*prof_cmd) return cmd_profile(prof, g, out);
    if (*ovp_cmd) return cmd_ovp(ovpo, g, out);
    if (*join_cmd) return cmd_join(jo, g, out);
    if (*rho_cmd) return cmd_rho(rho, g, out);
    if (*bench_cmd) return cmd_bench(bench, g, out);
    if (*sb_cmd) return cmd_sketch_build(sb, g, out);
    if (*sq_cmd) return cmd_sketch_query(sq, g, out);
    if (*lo_cmd) return cmd_lowerbound(lo, g, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace ipsjoin::cli
