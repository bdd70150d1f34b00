#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "renyi/coding.hpp"
#include "renyi/gmin.hpp"
#include "renyi/locus.hpp"

// Command-line surface. Output is deterministic: records are computed as
// pure functions of the inputs (sweeps may run concurrently) and emitted in
// input-grid order, and every value prints with 12 significant digits.

namespace renyi::cli {

inline std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// JSON value carrying a double rounded to 12 significant digits; infinities
// become the string "inf" since JSON numbers cannot express them.
inline nlohmann::json json_number(double v) {
  if (std::isnan(v) || std::isinf(v)) return fmt12(v);
  return std::strtod(fmt12(v).c_str(), nullptr);
}

namespace detail {

inline double parse_double(const std::string& tok) {
  std::size_t idx = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &idx);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + tok + "'");
  }
  if (idx != tok.size()) throw std::invalid_argument("not a number: '" + tok + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_double(tok));
  return out;
}

// "lo:hi:step" inclusive of both ends (up to half a step of slack at hi).
inline std::vector<double> parse_grid(const std::string& s) {
  const std::vector<std::string> parts = split(s, ':');
  if (parts.size() != 3) {
    throw std::invalid_argument("grid must look like lo:hi:step: got '" + s + "'");
  }
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  const double step = parse_double(parts[2]);
  if (step <= 0.0 || hi < lo) throw std::invalid_argument("bad grid range: '" + s + "'");
  const int n = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double v = lo + step * i;
    if (v <= hi + 0.5 * step) out.push_back(v);
  }
  return out;
}

inline ChannelModel parse_channel(const std::string& s) {
  const std::size_t pos = s.find(':');
  if (pos == std::string::npos) {
    throw std::invalid_argument("channel must look like bsc:<delta> or biawgn:<EsN0_dB>: got '" +
                                s + "'");
  }
  const std::string kind = s.substr(0, pos);
  const double value = parse_double(s.substr(pos + 1));
  if (kind == "bsc") return ChannelModel::Bsc(value);
  if (kind == "biawgn") return ChannelModel::Biawgn(std::pow(10.0, value / 10.0));
  throw std::invalid_argument("unknown channel kind: '" + kind + "'");
}

inline BoundMethod parse_method(const std::string& s) {
  if (s == "renyi") return BoundMethod::renyi;
  if (s == "sf" || s == "shulman_feder" || s == "shulman-feder") return BoundMethod::shulman_feder;
  if (s == "union") return BoundMethod::union_bhattacharyya;
  if (s == "partitioned") return BoundMethod::partitioned;
  throw std::invalid_argument("unknown method: '" + s + "'");
}

// Spectrum CSV: rows "l,count"; an optional header row is skipped; missing
// weights are zero; N is the largest listed weight.
inline DistanceSpectrum read_spectrum_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::vector<std::pair<int, double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != 2) throw std::invalid_argument("bad spectrum row: '" + line + "'");
    if (first) {
      first = false;
      try {
        parse_double(cells[0]);
      } catch (const std::invalid_argument&) {
        continue;  // header row
      }
    }
    const double l = parse_double(cells[0]);
    if (l < 0.0 || l != std::floor(l)) {
      throw std::invalid_argument("bad weight in spectrum row: '" + line + "'");
    }
    rows.emplace_back(static_cast<int>(l), parse_double(cells[1]));
  }
  if (rows.empty()) throw std::invalid_argument("spectrum file '" + path + "' has no rows");
  int n = 0;
  for (const auto& [l, c] : rows) n = std::max(n, l);
  if (n < 1) throw std::invalid_argument("spectrum file '" + path + "' has no nonzero weights");
  DistanceSpectrum spec;
  spec.n = n;
  spec.counts.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (const auto& [l, c] : rows) spec.counts[static_cast<std::size_t>(l)] += c;
  spec.validate();
  return spec;
}

// Generator matrix: one row per line, contiguous 0/1 characters.
inline std::vector<std::vector<int>> read_generator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::vector<std::vector<int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    std::vector<int> row;
    row.reserve(line.size());
    for (char c : line) {
      if (c == '0') {
        row.push_back(0);
      } else if (c == '1') {
        row.push_back(1);
      } else {
        throw std::invalid_argument("generator rows must be 0/1 strings: got '" + line + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("generator file '" + path + "' has no rows");
  return rows;
}

// Applies f to every input on contiguous slices of a worker pool; chunks are
// reassembled in input order, so the emitted bytes never depend on the
// thread count.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& inputs, F f) {
  using R = decltype(f(inputs.front()));
  const std::size_t n = inputs.size();
  const unsigned workers = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                                              static_cast<unsigned>(n));
  std::vector<R> out;
  out.reserve(n);
  if (workers < 2) {
    for (const T& in : inputs) out.push_back(f(in));
    return out;
  }
  std::vector<std::future<std::vector<R>>> tasks;
  tasks.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    tasks.push_back(std::async(std::launch::async, [&inputs, &f, lo, hi] {
      std::vector<R> chunk;
      chunk.reserve(hi - lo);
      for (std::size_t i = lo; i < hi; ++i) chunk.push_back(f(inputs[i]));
      return chunk;
    }));
  }
  for (auto& t : tasks) {
    for (R& r : t.get()) out.push_back(std::move(r));
  }
  return out;
}

struct Emitter {
  bool json = false;
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<std::pair<std::string, nlohmann::json>>> records;

  void add(std::vector<std::pair<std::string, nlohmann::json>> record) {
    records.push_back(std::move(record));
  }

  void write(std::ostream& out) const {
    if (json) {
      nlohmann::json doc;
      doc["command"] = command;
      doc["records"] = nlohmann::json::array();
      for (const auto& rec : records) {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [k, v] : rec) j[k] = v;
        doc["records"].push_back(std::move(j));
      }
      out << doc.dump(2) << "\n";
      return;
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << columns[i] << (i + 1 < columns.size() ? "," : "");
    }
    out << "\n";
    for (const auto& rec : records) {
      for (std::size_t i = 0; i < rec.size(); ++i) {
        const nlohmann::json& v = rec[i].second;
        if (v.is_string()) {
          out << v.get<std::string>();
        } else if (v.is_number_integer()) {
          out << v.get<long long>();
        } else if (v.is_boolean()) {
          out << (v.get<bool>() ? "true" : "false");
        } else if (v.is_null()) {
          // empty cell
        } else {
          out << fmt12(v.get<double>());
        }
        out << (i + 1 < rec.size() ? "," : "");
      }
      out << "\n";
    }
  }
};

inline std::vector<std::pair<std::string, nlohmann::json>> bound_record(
    const BoundReport& rep, const ChannelModel& ch, int n, double rate,
    const PartitionWindow* window) {
  std::vector<std::pair<std::string, nlohmann::json>> rec;
  rec.emplace_back("method", std::string(to_string(rep.method)));
  rec.emplace_back("channel", std::string(to_string(ch.kind)));
  rec.emplace_back("channel_param", json_number(ch.parameter));
  rec.emplace_back("n", n);
  rec.emplace_back("rate", json_number(rate));
  rec.emplace_back("exponent", json_number(rep.exponent));
  rec.emplace_back("r_star", json_number(rep.r_star));
  rec.emplace_back("rho_star", json_number(rep.rho_star));
  rec.emplace_back("s_star", json_number(rep.s_star));
  rec.emplace_back("d_s", json_number(rep.divergence_term));
  rec.emplace_back("prob_bound", json_number(rep.prob_bound));
  rec.emplace_back("window_lo", window ? nlohmann::json(window->lo) : nlohmann::json());
  rec.emplace_back("window_hi", window ? nlohmann::json(window->hi) : nlohmann::json());
  rec.emplace_back("subcode", rep.subcode);
  return rec;
}

}  // namespace detail

// Runs one command; args excludes the program name. Returns 0 on success,
// 2 on an input error, 3 on a numerical failure.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renyi-divergence minima, relative-entropy loci, and ML decoding bounds"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->default_str("csv");
    sub->add_option("--out", out_path, "output path (default: stdout)");
  };

  CLI::App* gmin_cmd = app.add_subcommand("gmin", "minimum Renyi divergence under a TV constraint");
  std::string gmin_alpha;
  std::string gmin_eps;
  std::string gmin_eps_grid;
  gmin_cmd->add_option("--alpha", gmin_alpha, "order(s), comma separated")->required();
  gmin_cmd->add_option("--eps", gmin_eps, "TV value(s), comma separated");
  gmin_cmd->add_option("--eps-grid", gmin_eps_grid, "TV grid lo:hi:step");
  add_common(gmin_cmd);

  CLI::App* locus_cmd = app.add_subcommand("locus", "boundary of the relative-entropy locus");
  std::string locus_eps;
  int locus_points = 200;
  locus_cmd->add_option("--eps", locus_eps, "TV value(s), comma separated")->required();
  locus_cmd->add_option("--points", locus_points, "points per boundary")->default_val(200);
  add_common(locus_cmd);

  CLI::App* chern_cmd =
      app.add_subcommand("chernoff-min", "minimum Chernoff information under a TV constraint");
  std::string chern_eps;
  chern_cmd->add_option("--eps", chern_eps, "TV value(s), comma separated")->required();
  add_common(chern_cmd);

  CLI::App* bound_cmd = app.add_subcommand("bound", "ML decoding error bounds from a spectrum");
  std::string bound_spectrum;
  std::string bound_generator;
  std::string bound_rate = "auto";
  std::string bound_channel;
  std::string bound_method = "renyi";
  bound_cmd->add_option("--spectrum", bound_spectrum, "distance spectrum CSV (l,count)");
  bound_cmd->add_option("--generator", bound_generator, "generator matrix file (0/1 rows)");
  bound_cmd->add_option("--rate", bound_rate, "code rate in nats/use, or 'auto'")
      ->default_str("auto");
  bound_cmd->add_option("--channel", bound_channel, "bsc:<delta> or biawgn:<EsN0_dB>")->required();
  bound_cmd->add_option("--method", bound_method, "renyi | sf | union | partitioned")
      ->default_str("renyi");
  add_common(bound_cmd);

  CLI::App* spec_cmd = app.add_subcommand("spectrum", "distance spectrum of a generator matrix");
  std::string spec_generator;
  spec_cmd->add_option("--generator", spec_generator, "generator matrix file (0/1 rows)")
      ->required();
  add_common(spec_cmd);

  std::vector<const char*> argv;
  argv.push_back("renyidiv");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "renyidiv: " << e.what() << "\n";
    return 2;
  }

  try {
    if (format != "csv" && format != "json") {
      throw std::invalid_argument("unknown format: '" + format + "'");
    }
    detail::Emitter emit;
    emit.json = (format == "json");

    if (gmin_cmd->parsed()) {
      emit.command = "gmin";
      emit.columns = {"alpha", "eps", "value", "p_star", "q_star", "method"};
      if (gmin_eps.empty() == gmin_eps_grid.empty()) {
        throw std::invalid_argument("gmin needs exactly one of --eps or --eps-grid");
      }
      const std::vector<double> alphas = detail::parse_list(gmin_alpha);
      const std::vector<double> epss = gmin_eps.empty() ? detail::parse_grid(gmin_eps_grid)
                                                        : detail::parse_list(gmin_eps);
      std::vector<GMinQuery> queries;
      for (double a : alphas) {
        for (double e : epss) queries.push_back({a, e});
      }
      const auto results =
          detail::parallel_map(queries, [](const GMinQuery& q) { return g_alpha(q); });
      for (std::size_t i = 0; i < queries.size(); ++i) {
        emit.add({{"alpha", json_number(queries[i].alpha)},
                  {"eps", json_number(queries[i].eps)},
                  {"value", json_number(results[i].value)},
                  {"p_star", json_number(results[i].p_star)},
                  {"q_star", json_number(results[i].q_star)},
                  {"method", std::string(to_string(results[i].method))}});
      }
    } else if (locus_cmd->parsed()) {
      emit.command = "locus";
      emit.columns = {"eps", "slope", "alpha", "x", "y", "p1_star", "p2_star", "q_star"};
      const std::vector<double> epss = detail::parse_list(locus_eps);
      require(locus_points >= 2, "locus: --points must be >= 2");
      const auto boundaries = detail::parallel_map(
          epss, [&](double e) { return boundary_polyline(e, locus_points); });
      for (std::size_t i = 0; i < epss.size(); ++i) {
        for (const WitnessTriple& w : boundaries[i]) {
          emit.add({{"eps", json_number(epss[i])},
                    {"slope", json_number(-w.alpha / (1.0 - w.alpha))},
                    {"alpha", json_number(w.alpha)},
                    {"x", json_number(w.point[0])},
                    {"y", json_number(w.point[1])},
                    {"p1_star", json_number(w.p1_star[0])},
                    {"p2_star", json_number(w.p2_star[0])},
                    {"q_star", json_number(w.q_star[0])}});
        }
      }
    } else if (chern_cmd->parsed()) {
      emit.command = "chernoff-min";
      emit.columns = {"eps", "value", "x", "y", "p1_star", "p2_star", "q_star"};
      const std::vector<double> epss = detail::parse_list(chern_eps);
      const auto results = detail::parallel_map(epss, [](double e) { return chernoff_min(e); });
      for (std::size_t i = 0; i < epss.size(); ++i) {
        const ChernoffMinResult& r = results[i];
        emit.add({{"eps", json_number(epss[i])},
                  {"value", json_number(r.value)},
                  {"x", json_number(r.witness.point[0])},
                  {"y", json_number(r.witness.point[1])},
                  {"p1_star", json_number(r.witness.p1_star[0])},
                  {"p2_star", json_number(r.witness.p2_star[0])},
                  {"q_star", json_number(r.witness.q_star[0])}});
      }
    } else if (bound_cmd->parsed()) {
      emit.command = "bound";
      emit.columns = {"method", "channel", "channel_param", "n", "rate", "exponent", "r_star",
                      "rho_star", "s_star", "d_s", "prob_bound", "window_lo", "window_hi",
                      "subcode"};
      if (bound_spectrum.empty() == bound_generator.empty()) {
        throw std::invalid_argument("bound needs exactly one of --spectrum or --generator");
      }
      const DistanceSpectrum spec = bound_spectrum.empty()
                                        ? spectrum_from_generator(
                                              detail::read_generator(bound_generator))
                                        : detail::read_spectrum_csv(bound_spectrum);
      const ChannelModel ch = detail::parse_channel(bound_channel);
      const double auto_rate = std::log(1.0 + spec.nonzero_total()) / spec.n;
      const double rate =
          (bound_rate == "auto") ? auto_rate : detail::parse_double(bound_rate);
      if (std::abs(rate - auto_rate) > 1e-9) {
        err << "renyidiv: warning: rate " << fmt12(rate) << " differs from log(M)/N = "
            << fmt12(auto_rate) << "\n";
      }
      const BoundMethod method = detail::parse_method(bound_method);
      switch (method) {
        case BoundMethod::renyi:
          emit.add(detail::bound_record(renyi_bound(spec, rate, ch), ch, spec.n, rate, nullptr));
          break;
        case BoundMethod::shulman_feder:
          emit.add(detail::bound_record(shulman_feder_bound(spec, rate, ch), ch, spec.n, rate,
                                        nullptr));
          break;
        case BoundMethod::union_bhattacharyya:
          emit.add(detail::bound_record(union_bhattacharyya_bound(spec, ch), ch, spec.n, rate,
                                        nullptr));
          break;
        case BoundMethod::partitioned: {
          const PartitionedBound pb = partitioned_bound(spec, rate, ch);
          emit.add(detail::bound_record(pb.report, ch, spec.n, rate, &pb.window));
          break;
        }
      }
    } else if (spec_cmd->parsed()) {
      emit.command = "spectrum";
      emit.columns = {"l", "count"};
      const DistanceSpectrum spec =
          spectrum_from_generator(detail::read_generator(spec_generator));
      for (int l = 0; l <= spec.n; ++l) {
        emit.add({{"l", l}, {"count", json_number(spec.counts[static_cast<std::size_t>(l)])}});
      }
    }

    if (out_path.empty()) {
      emit.write(out);
    } else {
      std::ofstream file(out_path);
      if (!file) throw std::invalid_argument("cannot write '" + out_path + "'");
      emit.write(file);
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "renyidiv: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "renyidiv: numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace renyi::cli
