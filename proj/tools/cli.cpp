#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "coverage/oracle.hpp"
#include "coverage/planner.hpp"
#include "coverage/render.hpp"
#include "coverage/serialize.hpp"

namespace coverage::cli {

namespace fs = std::filesystem;

namespace {

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) throw UsageError("bad " + what + " '" + text + "'");
  return value;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

Json read_result(const fs::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("result is not JSON: ") + e.what());
  }
}

}  // namespace

GenSpec parse_gen_spec(const std::string& text) {
  const auto x = text.find('x');
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (x == std::string::npos || c1 == std::string::npos || c2 == std::string::npos || x > c1)
    throw UsageError("generator spec must look like WxH:density:seed, got '" + text + "'");
  GenSpec g;
  g.width = parse_number<int>(text.substr(0, x), "width");
  g.height = parse_number<int>(text.substr(x + 1, c1 - x - 1), "height");
  g.density = parse_number<double>(text.substr(c1 + 1, c2 - c1 - 1), "density");
  g.seed = parse_number<std::uint64_t>(text.substr(c2 + 1), "seed");
  if (g.width < 2 || g.height < 2) throw UsageError("generated maps must be at least 2x2");
  if (!(g.density >= 0.0 && g.density < 1.0)) throw UsageError("density must lie in [0,1)");
  return g;
}

Energy parse_budget(const std::string& token, const Environment& env) {
  if (!token.empty() && token.back() == 'l') {
    const auto k = parse_number<Energy>(token.substr(0, token.size() - 1), "budget multiplier");
    return k * std::max(env.width(), env.height());
  }
  return parse_number<Energy>(token, "budget");
}

RenderMode parse_render_mode(const std::string& text) {
  if (text == "svg") return RenderMode::Svg;
  if (text == "ascii") return RenderMode::Ascii;
  if (text == "none") return RenderMode::None;
  throw UsageError("render mode must be svg, ascii or none");
}

Environment load_environment(const RunConfig& config) {
  if (config.map_path.has_value() == config.gen.has_value())
    throw UsageError("give exactly one of --map and --gen");
  if (config.map_path) return load_map_file(*config.map_path);
  return generate_env(config.gen->width, config.gen->height, config.gen->density, config.gen->seed);
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Environment env = [&] {
    try {
      return load_environment(config);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  std::vector<Energy> budgets;
  for (const auto& t : config.budgets) budgets.push_back(parse_budget(t, env));
  if (budgets.empty()) throw UsageError("no budget given");
  for (const Energy b : budgets)
    if (b < 2) throw UsageError("budget must be at least 2, got " + std::to_string(b));

  // Everything is computed before the first file is written.
  std::vector<std::pair<fs::path, std::string>> artifacts;
  bool all_valid = true;
  for (const Energy b : budgets) {
    const CoverageResult result = plan_coverage(env, b);
    const ValidationReport report = validate_result(env, b, result);
    all_valid = all_valid && report.ok();
    const std::string tag = "B" + std::to_string(b);
    artifacts.emplace_back("result_" + tag + ".json", result_to_json(result, env).dump(2) + "\n");
    artifacts.emplace_back("events_" + tag + ".jsonl", events_to_jsonl(result.events));
    if (config.render == RenderMode::Svg) artifacts.emplace_back("routes_" + tag + ".svg", render_svg(env, result));
    if (config.render == RenderMode::Ascii) artifacts.emplace_back("routes_" + tag + ".txt", render_ascii(env, result));

    const Metrics& m = result.metrics;
    out << "B=" << b << " k=" << m.num_routes << " total_length=" << m.total_length << " n=" << m.n
        << " min_bound=" << m.min_bound << " ratio_paths=" << fixed(m.ratio_paths, 3)
        << " ratio_length=" << fixed(m.ratio_length, 3) << " skipped=" << result.skipped_unreachable.size()
        << " valid=" << (report.ok() ? "yes" : "no") << "\n";
    for (const auto& c : report.checks)
      if (!c.passed) err << "check " << c.name << " failed: " << c.detail << "\n";

    if (config.oracle) {
      const Energy even = effective_budget(b, env.cell_size());
      if (reachable_set(env, even).size() > kOracleCellCap) {
        out << "  oracle: skipped, more than " << kOracleCellCap << " reachable cells\n";
      } else {
        const OptimalSolution opt = solve_optimal(env, even);
        artifacts.emplace_back("oracle_" + tag + ".json", solution_to_json(opt).dump(2) + "\n");
        out << "  oracle: k_opt=" << opt.k_opt << " len_opt=" << opt.len_opt;
        if (opt.k_opt > 0)
          out << " k/k_opt=" << fixed(static_cast<double>(m.num_routes) / static_cast<double>(opt.k_opt), 3)
              << " len/len_opt="
              << fixed(static_cast<double>(m.total_length) / static_cast<double>(opt.len_opt), 3);
        out << "\n";
      }
    }
  }

  fs::create_directories(config.out_dir);
  for (const auto& [name, text] : artifacts) write_file(config.out_dir / name, text);
  return all_valid ? kExitOk : kExitInvalid;
}

BenchReport run_bench(const fs::path& corpus, const std::vector<std::string>& budgets, unsigned threads) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(corpus, ec))
    for (const auto& entry : fs::directory_iterator(corpus))
      if (entry.is_regular_file() && entry.path().extension() == ".map") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw EmptyCorpus("no .map files in '" + corpus.string() + "'");
  if (budgets.empty()) throw UsageError("no budget given");

  BenchReport report;
  std::vector<std::pair<std::string, Environment>> maps;
  for (const auto& f : files) {
    try {
      maps.emplace_back(f.filename().string(), load_map_file(f.string()));
    } catch (const std::exception& e) {
      report.skipped.emplace_back(f.filename().string(), e.what());
    }
  }

  struct Job {
    std::size_t map;
    Energy budget;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    std::vector<Energy> resolved;
    for (const auto& t : budgets) resolved.push_back(parse_budget(t, maps[i].second));
    std::sort(resolved.begin(), resolved.end());
    resolved.erase(std::unique(resolved.begin(), resolved.end()), resolved.end());
    for (const Energy b : resolved) jobs.push_back({i, b});
  }

  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex failures_mutex;
  const auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const auto& [name, env] = maps[jobs[j].map];
      try {
        const CoverageResult r = plan_coverage(env, jobs[j].budget);
        const Metrics& m = r.metrics;
        rows[j] = {name, jobs[j].budget, m.n, m.num_routes, m.total_length, m.min_bound, m.ratio_paths,
                   m.ratio_length, m.wall_ms};
      } catch (const std::exception& e) {
        const std::lock_guard lock(failures_mutex);
        report.skipped.emplace_back(name, "B=" + std::to_string(jobs[j].budget) + ": " + e.what());
        rows[j].map.clear();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (auto& r : rows)
    if (!r.map.empty()) report.rows.push_back(std::move(r));
  std::sort(report.skipped.begin(), report.skipped.end());
  return report;
}

namespace {

struct Aggregate {
  Energy budget;
  BenchRow mean;
  BenchRow max;
};

std::vector<Aggregate> aggregates(const BenchReport& report) {
  std::map<Energy, std::vector<const BenchRow*>> by_budget;
  for (const auto& r : report.rows) by_budget[r.budget].push_back(&r);
  std::vector<Aggregate> out;
  for (const auto& [b, rows] : by_budget) {
    Aggregate a{b, {}, {}};
    a.mean.map = "mean";
    a.max.map = "max";
    a.mean.budget = a.max.budget = b;
    double n = 0, k = 0, len = 0, minb = 0;
    for (const BenchRow* r : rows) {
      n += static_cast<double>(r->n);
      k += r->k;
      len += static_cast<double>(r->total_length);
      minb += static_cast<double>(r->min_bound);
      a.mean.ratio_paths += r->ratio_paths;
      a.mean.ratio_length += r->ratio_length;
      a.mean.wall_ms += r->wall_ms;
      a.max.n = std::max(a.max.n, r->n);
      a.max.k = std::max(a.max.k, r->k);
      a.max.total_length = std::max(a.max.total_length, r->total_length);
      a.max.min_bound = std::max(a.max.min_bound, r->min_bound);
      a.max.ratio_paths = std::max(a.max.ratio_paths, r->ratio_paths);
      a.max.ratio_length = std::max(a.max.ratio_length, r->ratio_length);
      a.max.wall_ms = std::max(a.max.wall_ms, r->wall_ms);
    }
    const double count = static_cast<double>(rows.size());
    a.mean.n = static_cast<std::size_t>(n / count + 0.5);
    a.mean.k = static_cast<int>(k / count + 0.5);
    a.mean.total_length = static_cast<long long>(len / count + 0.5);
    a.mean.min_bound = static_cast<long long>(minb / count + 0.5);
    a.mean.ratio_paths /= count;
    a.mean.ratio_length /= count;
    a.mean.wall_ms /= count;
    out.push_back(a);
  }
  return out;
}

std::string csv_line(const BenchRow& r) {
  return r.map + "," + std::to_string(r.budget) + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
         std::to_string(r.total_length) + "," + std::to_string(r.min_bound) + "," + fixed(r.ratio_paths, 4) + "," +
         fixed(r.ratio_length, 4) + "," + fixed(r.wall_ms, 3) + "\n";
}

}  // namespace

std::string bench_csv(const BenchReport& report) {
  std::string out = "map,B,n,k,total_length,min_bound,ratio_paths,ratio_length,wall_ms\n";
  for (const auto& r : report.rows) out += csv_line(r);
  for (const auto& a : aggregates(report)) out += csv_line(a.mean);
  return out;
}

std::string bench_table(const BenchReport& report) {
  std::size_t name_w = 4;
  for (const auto& r : report.rows) name_w = std::max(name_w, r.map.size());
  std::ostringstream t;
  const auto line = [&](const BenchRow& r) {
    t << std::left << std::setw(static_cast<int>(name_w)) << r.map << std::right << std::setw(7) << r.budget
      << std::setw(7) << r.n << std::setw(6) << r.k << std::setw(9) << r.total_length << std::setw(6) << r.min_bound
      << std::setw(9) << fixed(r.ratio_paths, 3) << std::setw(9) << fixed(r.ratio_length, 3) << std::setw(10)
      << fixed(r.wall_ms, 2) << "\n";
  };
  t << std::left << std::setw(static_cast<int>(name_w)) << "map" << std::right << std::setw(7) << "B" << std::setw(7)
    << "n" << std::setw(6) << "k" << std::setw(9) << "length" << std::setw(6) << "MIN" << std::setw(9) << "k/MIN"
    << std::setw(9) << "len/n" << std::setw(10) << "ms" << "\n";
  for (const auto& r : report.rows) line(r);
  for (const auto& a : aggregates(report)) {
    line(a.mean);
    line(a.max);
  }
  return t.str();
}

int cmd_bench(const fs::path& corpus, const std::vector<std::string>& budgets, const fs::path& out_dir,
              std::ostream& out, std::ostream& err) {
  BenchReport report;
  try {
    report = run_bench(corpus, budgets);
  } catch (const EmptyCorpus& e) {
    err << "EmptyCorpus: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const auto& [file, reason] : report.skipped) err << "skipped " << file << ": " << reason << "\n";
  fs::create_directories(out_dir);
  write_file(out_dir / "bench.csv", bench_csv(report));
  out << bench_table(report);
  return kExitOk;
}

int cmd_validate(const fs::path& result_path, const fs::path& map_path, std::optional<Energy> budget,
                 std::ostream& out, std::ostream& err) {
  CoverageResult result;
  try {
    result = result_from_json(read_result(result_path));
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitUsage;
  }
  const Environment env = load_map_file(map_path.string());
  const Energy b = budget.value_or(result.budget);
  const ValidationReport report = validate_result(env, b, result);
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) out << ": " << c.detail;
    out << "\n";
  }
  out << (report.ok() ? "valid" : "invalid") << "\n";
  return report.ok() ? kExitOk : kExitInvalid;
}

int cmd_render(const fs::path& result_path, const fs::path& map_path, RenderMode mode,
               const std::optional<fs::path>& out_file, std::ostream& out, std::ostream& err) {
  CoverageResult result;
  try {
    result = result_from_json(read_result(result_path));
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitUsage;
  }
  const Environment env = load_map_file(map_path.string());
  std::string text;
  if (mode == RenderMode::Svg) text = render_svg(env, result);
  if (mode == RenderMode::Ascii) text = render_ascii(env, result);
  if (out_file)
    write_file(*out_file, text);
  else
    out << text;
  return kExitOk;
}

int cmd_generate(const GenSpec& spec, const std::optional<fs::path>& out_file, std::ostream& out, std::ostream&) {
  const std::string text = render_map(generate_env(spec.width, spec.height, spec.density, spec.seed));
  if (out_file)
    write_file(*out_file, text);
  else
    out << text;
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-budgeted online coverage planner", "coverage-sim"};
  app.require_subcommand(1);

  RunConfig run_config;
  std::string map_path, gen_text, render_text = "svg", out_dir = ".";
  std::vector<std::string> budgets;
  auto* run = app.add_subcommand("run", "plan coverage on one map for one or more budgets");
  auto* run_map = run->add_option("--map", map_path, "map file");
  auto* run_gen = run->add_option("--gen", gen_text, "generate a map: WxH:density:seed");
  run_map->excludes(run_gen);
  run->add_option("--budget,--budgets", budgets, "budgets; '4l' means 4 times the longer side")
      ->required()
      ->delimiter(',');
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--render", render_text, "svg, ascii or none");
  run->add_flag("--oracle", run_config.oracle, "also solve tiny instances exactly");

  std::string corpus;
  auto* bench = app.add_subcommand("bench", "run every map of a corpus directory");
  bench->add_option("corpus", corpus, "directory of .map files")->required();
  bench->add_option("--budget,--budgets", budgets, "budgets; '4l' means 4 times the longer side")
      ->required()
      ->delimiter(',');
  bench->add_option("--out", out_dir, "directory for bench.csv");

  std::string result_path;
  Energy budget = 0;
  auto* validate = app.add_subcommand("validate", "check a result document against its map");
  validate->add_option("result", result_path, "result JSON")->required();
  validate->add_option("--map", map_path, "map file")->required();
  auto* validate_budget = validate->add_option("--budget", budget, "budget (default: the one in the result)");

  std::string out_file;
  auto* render = app.add_subcommand("render", "draw the routes of a result document");
  render->add_option("result", result_path, "result JSON")->required();
  render->add_option("--map", map_path, "map file")->required();
  render->add_option("--render", render_text, "svg or ascii");
  auto* render_out = render->add_option("--out", out_file, "output file (default: stdout)");

  auto* generate = app.add_subcommand("generate", "write a random map");
  generate->add_option("--gen", gen_text, "WxH:density:seed")->required();
  auto* generate_out = generate->add_option("--out", out_file, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      if (run_map->count() > 0) run_config.map_path = map_path;
      if (run_gen->count() > 0) run_config.gen = parse_gen_spec(gen_text);
      run_config.budgets = budgets;
      run_config.out_dir = out_dir;
      run_config.render = parse_render_mode(render_text);
      return cmd_run(run_config, out, err);
    }
    if (bench->parsed()) return cmd_bench(corpus, budgets, out_dir, out, err);
    const auto optional_path = [](CLI::Option* o, const std::string& p) {
      return o->count() > 0 ? std::optional<fs::path>(p) : std::nullopt;
    };
    if (validate->parsed())
      return cmd_validate(result_path, map_path,
                          validate_budget->count() > 0 ? std::optional<Energy>(budget) : std::nullopt, out, err);
    if (render->parsed()) {
      const RenderMode mode = parse_render_mode(render_text);
      if (mode == RenderMode::None) throw UsageError("render needs svg or ascii");
      return cmd_render(result_path, map_path, mode, optional_path(render_out, out_file), out, err);
    }
    if (generate->parsed()) return cmd_generate(parse_gen_spec(gen_text), optional_path(generate_out, out_file), out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace coverage::cli
