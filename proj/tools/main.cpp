/* Apache License, Version 2.0 */
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghp/gh.hpp"
#include "ghp/pointed_rho.hpp"
#include "ghp/pyramid.hpp"
#include "ghp/space_io.hpp"
#include "ghp/space_zoo.hpp"
#include "ghp/verify.hpp"

using namespace ghp;
using nlohmann::json;

namespace {

int thread_cap() {
  // Parallel fan-out is capped by PYRAMID_GH_THREADS. This build evaluates
  // sequentially (cap honored for any value >= 1); results are independent of
  // the setting by construction.
  const char* env = std::getenv("PYRAMID_GH_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

ExtReal parse_ext(const std::string& s) {
  if (s == "inf") return ExtReal::inf();
  return ExtReal(std::stod(s));
}

SpaceRecipe recipe_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "sigma")
    return SpaceRecipe::sigma(j.at("n").get<int>(),
                              j.at("d").is_string()
                                  ? parse_ext(j.at("d").get<std::string>())
                                  : ExtReal(j.at("d").get<double>()));
  if (family == "spider")
    return SpaceRecipe::spider(j.at("n").get<int>(), j.at("r").get<double>(),
                               j.at("k").get<int>());
  if (family == "sphere")
    return SpaceRecipe::sphere(j.at("dim").get<int>(),
                               j.at("samples").get<int>(),
                               j.value("seed", 1ull));
  if (family == "proj")
    return SpaceRecipe::proj_space(j.at("dim").get<int>(),
                                   j.at("samples").get<int>(),
                                   j.value("seed", 1ull));
  if (family == "lp")
    return SpaceRecipe::lp_product(
        recipe_from_json(j.at("base")), j.at("n").get<int>(),
        j.at("p").is_string() ? std::numeric_limits<double>::infinity()
                              : j.at("p").get<double>(),
        j.at("samples").get<int>(), j.value("seed", 1ull));
  if (family == "path")
    return SpaceRecipe::path(j.at("length").get<double>(), j.at("k").get<int>());
  if (family == "random")
    return SpaceRecipe::random_metric(j.at("n").get<int>(), j.value("seed", 1ull));
  throw std::runtime_error("unknown recipe family: " + family);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// Compact inline recipes for the command line:
//   sigma:n:d   spider:n:r:k   path:len:k   random:n:seed
//   sphere:dim:m:seed   proj:dim:m:seed
SpaceRecipe recipe_from_compact(const std::string& text) {
  auto parts = split(text, ':');
  const std::string& fam = parts.at(0);
  if (fam == "sigma")
    return SpaceRecipe::sigma(std::stoi(parts.at(1)), parse_ext(parts.at(2)));
  if (fam == "spider")
    return SpaceRecipe::spider(std::stoi(parts.at(1)), std::stod(parts.at(2)),
                               std::stoi(parts.at(3)));
  if (fam == "path")
    return SpaceRecipe::path(std::stod(parts.at(1)), std::stoi(parts.at(2)));
  if (fam == "random")
    return SpaceRecipe::random_metric(std::stoi(parts.at(1)),
                                      std::stoull(parts.at(2)));
  if (fam == "sphere")
    return SpaceRecipe::sphere(std::stoi(parts.at(1)), std::stoi(parts.at(2)),
                               std::stoull(parts.at(3)));
  if (fam == "proj")
    return SpaceRecipe::proj_space(std::stoi(parts.at(1)),
                                   std::stoi(parts.at(2)),
                                   std::stoull(parts.at(3)));
  throw std::runtime_error("unknown compact recipe: " + text);
}

struct LoadedSpace {
  FiniteSpace space;
  int base = -1;
};

// An operand is a space file, the literal "max", or a compact recipe.
struct Operand {
  std::optional<LoadedSpace> loaded;  // empty means the maximal sentinel
  std::string label;
};

Operand load_operand(const std::string& arg) {
  Operand op;
  if (arg == "max" || arg == "MAX") {
    op.label = "MAX";
    return op;
  }
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") {
    int base = -1;
    FiniteSpace s = load_space_file(arg, &base);
    op.label = s.label().empty() ? arg : s.label();
    op.loaded = LoadedSpace{std::move(s), base};
    return op;
  }
  GeneratedSpace g = generate(recipe_from_compact(arg));
  op.label = g.space.label();
  op.loaded = LoadedSpace{g.space, g.base.value_or(-1)};
  return op;
}

PyramidHandle to_handle(const Operand& op, bool pointed) {
  if (!op.loaded) return PyramidHandle::max_sentinel();
  if (pointed)
    return PyramidHandle::finite_pointed(
        PointedSpace(op.loaded->space, std::max(op.loaded->base, 0)));
  return PyramidHandle::finite(op.loaded->space);
}

std::string interval_str(const Interval& i) {
  std::ostringstream os;
  os.precision(10);
  os << "[" << i.lo << ", " << i.hi << "]";
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write: " + out_path);
  out << text;
}

std::string rho_csv(const RhoEstimate& est) {
  std::ostringstream os;
  os << "# ghp.rho.v1\n";
  os << "N,lo,hi,certified\n";
  os.precision(10);
  for (const RhoLevel& l : est.levels)
    os << l.n << "," << l.value.lo << "," << l.value.hi << ","
       << (l.certified ? 1 : 0) << "\n";
  os << "total," << est.total.lo << "," << est.total.hi << ",\n";
  os << "tail," << est.tail_bound << ",,\n";
  os << "outer," << est.outer().lo << "," << est.outer().hi << ",\n";
  return os.str();
}

void print_rho_text(const RhoEstimate& est, const std::string& label_a,
                    const std::string& label_b) {
  std::cout << "rho(" << label_a << ", " << label_b << ")\n";
  std::cout << "  N   interval                   certified\n";
  for (const RhoLevel& l : est.levels) {
    std::cout << "  " << l.n << "   " << interval_str(l.value) << "   "
              << (l.certified ? "yes" : "no") << "\n";
  }
  std::cout << "  tail bound " << est.tail_bound << "\n";
  std::cout << "  total " << interval_str(est.total) << "\n";
  std::cout << "  model gap " << est.model_gap << " -> outer "
            << interval_str(est.outer()) << "\n";
}

int cmd_space_gen(const std::string& recipe_file, const std::string& compact,
                  const std::string& out) {
  SpaceRecipe recipe;
  if (!recipe_file.empty()) {
    std::ifstream in(recipe_file);
    if (!in) throw std::runtime_error("cannot open recipe: " + recipe_file);
    json j;
    in >> j;
    recipe = recipe_from_json(j);
  } else if (!compact.empty()) {
    recipe = recipe_from_compact(compact);
  } else {
    throw std::runtime_error("space gen needs --recipe or --family");
  }
  GeneratedSpace g = generate(recipe);
  const std::string text = space_to_json(g.space, g.base.value_or(-1)) + "\n";
  emit(text, out);
  if (!out.empty())
    std::cout << "wrote " << out << " (n=" << g.space.size() << ")\n";
  return 0;
}

int cmd_space_info(const std::string& file) {
  int base = -1;
  FiniteSpace s = load_space_file(file, &base);
  std::cout << "label: " << (s.label().empty() ? "(none)" : s.label()) << "\n";
  std::cout << "n: " << s.size() << "\n";
  std::cout << "diameter: " << s.diameter().str() << "\n";
  if (base >= 0) {
    PointedSpace p(s, base);
    std::cout << "base: " << base << "\n";
    std::cout << "radius: " << p.radius().str() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pyramid-slice distances between finite metric spaces"};
  app.require_subcommand(1);
  (void)thread_cap();

  // ---- space ----
  auto* space = app.add_subcommand("space", "generate or inspect space files");
  space->require_subcommand(1);
  auto* gen = space->add_subcommand("gen", "generate a space from a recipe");
  std::string gen_recipe, gen_compact, gen_out;
  gen->add_option("--recipe", gen_recipe, "recipe JSON file");
  gen->add_option("--family", gen_compact,
                  "compact recipe, e.g. spider:8:1:2 or sigma:3:1");
  gen->add_option("--out", gen_out, "output space file");
  auto* info = space->add_subcommand("info", "print n, diameter, radius");
  std::string info_file;
  info->add_option("file", info_file)->required();

  // ---- gh ----
  auto* gh = app.add_subcommand("gh", "Gromov-Hausdorff distance");
  std::string gh_a, gh_b;
  bool gh_exact_flag = false, gh_bounds_flag = false, gh_pointed_flag = false;
  uint64_t gh_budget = 20'000'000;
  gh->add_option("A", gh_a)->required();
  gh->add_option("B", gh_b)->required();
  gh->add_flag("--exact", gh_exact_flag, "branch-and-bound exact value");
  gh->add_flag("--bounds", gh_bounds_flag, "certified interval for large inputs");
  gh->add_flag("--pointed", gh_pointed_flag,
               "base-pair-constrained surrogate distance");
  gh->add_option("--budget", gh_budget, "node budget");

  // ---- rho / rho-pointed ----
  std::string rho_a, rho_b, rho_format = "text", rho_out;
  RhoParams rho_params;
  auto add_rho_opts = [&](CLI::App* cmd) {
    cmd->add_option("A", rho_a)->required();
    cmd->add_option("B", rho_b)->required();
    cmd->add_option("--nmax", rho_params.n_max, "levels to sum (default 8)");
    cmd->add_option("--delta", rho_params.delta, "grid step (default 0.25)");
    cmd->add_option("--budget", rho_params.max_net, "net size cap");
    cmd->add_option("--tol", rho_params.tol, "membership tolerance");
    cmd->add_option("--format", rho_format, "text|csv|json");
    cmd->add_option("--out", rho_out, "write the report to a file");
  };
  auto* rho_cmd = app.add_subcommand("rho", "compactification distance");
  add_rho_opts(rho_cmd);
  auto* rhop_cmd =
      app.add_subcommand("rho-pointed", "pointed compactification distance");
  add_rho_opts(rhop_cmd);

  // ---- rho0 ----
  auto* rho0_cmd = app.add_subcommand("rho0", "ball-integral distance");
  std::string r0_a, r0_b, r0_format = "text", r0_out;
  double r0_rmin = 0.05, r0_rmax = 3.0;
  int r0_nodes = 32;
  RhoParams r0_params;
  rho0_cmd->add_option("A", r0_a)->required();
  rho0_cmd->add_option("B", r0_b)->required();
  rho0_cmd->add_option("--rmin", r0_rmin);
  rho0_cmd->add_option("--rmax", r0_rmax);
  rho0_cmd->add_option("--nodes", r0_nodes);
  rho0_cmd->add_option("--nmax", r0_params.n_max);
  rho0_cmd->add_option("--delta", r0_params.delta);
  rho0_cmd->add_option("--budget", r0_params.max_net);
  rho0_cmd->add_option("--tol", r0_params.tol);
  rho0_cmd->add_option("--format", r0_format, "text|json");
  rho0_cmd->add_option("--out", r0_out);

  // ---- slice ----
  auto* slice = app.add_subcommand("slice", "export a slice net as JSON");
  std::string slice_a, slice_out;
  int slice_n = 3;
  double slice_d = 3.0;
  bool slice_pointed = false;
  RhoParams slice_params;
  slice->add_option("A", slice_a)->required();
  slice->add_option("--N", slice_n, "point cap");
  slice->add_option("--D", slice_d, "diameter cap");
  slice->add_option("--delta", slice_params.delta);
  slice->add_option("--budget", slice_params.max_net);
  slice->add_flag("--pointed", slice_pointed);
  slice->add_option("--out", slice_out);

  // ---- sequence ----
  auto* seq = app.add_subcommand("sequence",
                                 "convergence table against a target");
  std::vector<std::string> seq_terms;
  std::string seq_target, seq_metric = "rho", seq_format = "text", seq_out;
  int seq_n = 3;
  double seq_d = 3.0;
  RhoParams seq_params;
  seq->add_option("terms", seq_terms, "space files or compact recipes")
      ->required();
  seq->add_option("--target", seq_target)->required();
  seq->add_option("--metric", seq_metric, "rho|rho-pointed|slice");
  seq->add_option("--N", seq_n, "slice point cap (metric=slice)");
  seq->add_option("--D", seq_d, "slice diameter cap (metric=slice)");
  seq->add_option("--nmax", seq_params.n_max);
  seq->add_option("--delta", seq_params.delta);
  seq->add_option("--budget", seq_params.max_net);
  seq->add_option("--tol", seq_params.tol);
  seq->add_option("--format", seq_format, "text|csv");
  seq->add_option("--out", seq_out);

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run the quantitative gate");
  bool verify_list = false;
  std::vector<std::string> verify_filter;
  std::string verify_suite = "full";
  verify->add_flag("--list", verify_list, "print criteria ids and names");
  verify->add_option("--filter", verify_filter, "criterion ids to run");
  verify->add_option("--suite", verify_suite, "criteria suite (full)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_space_gen(gen_recipe, gen_compact, gen_out);
    if (info->parsed()) return cmd_space_info(info_file);

    if (gh->parsed()) {
      Operand a = load_operand(gh_a);
      Operand b = load_operand(gh_b);
      if (!a.loaded || !b.loaded)
        throw std::runtime_error("gh needs two concrete spaces");
      if (gh_pointed_flag) {
        GhResult r = gh_pointed(
            PointedSpace(a.loaded->space, std::max(a.loaded->base, 0)),
            PointedSpace(b.loaded->space, std::max(b.loaded->base, 0)),
            {gh_budget});
        std::cout << "pointed gh " << interval_str(r.value) << "\n";
        return 0;
      }
      if (gh_bounds_flag || (!gh_exact_flag &&
                             static_cast<uint64_t>(a.loaded->space.size()) *
                                     b.loaded->space.size() >
                                 64)) {
        GhResult r = gh_bounds(a.loaded->space, b.loaded->space, gh_budget);
        std::cout << "gh bounds " << interval_str(r.value) << "\n";
        return 0;
      }
      try {
        GhResult r = gh_exact(a.loaded->space, b.loaded->space, {gh_budget});
        std::cout << "gh exact " << interval_str(r.value) << "\n";
        if (r.witness) {
          std::cout << "witness pairs:";
          for (auto [i, j] : r.witness->pairs)
            std::cout << " (" << i << "," << j << ")";
          std::cout << "\n";
        }
      } catch (const SizeLimitError&) {
        std::cout << "size limit exceeded; retry with --bounds\n";
        return 3;
      }
      return 0;
    }

    if (rho_cmd->parsed() || rhop_cmd->parsed()) {
      const bool pointed = rhop_cmd->parsed();
      Operand a = load_operand(rho_a);
      Operand b = load_operand(rho_b);
      RhoEstimate est = pointed
                            ? rho_pointed(to_handle(a, true), to_handle(b, true),
                                          rho_params)
                            : rho(to_handle(a, false), to_handle(b, false),
                                  rho_params);
      if (rho_format == "csv") {
        emit(rho_csv(est), rho_out);
      } else if (rho_format == "json") {
        emit(rho_to_json(est) + "\n", rho_out);
      } else {
        print_rho_text(est, a.label, b.label);
      }
      return 0;
    }

    if (rho0_cmd->parsed()) {
      Operand a = load_operand(r0_a);
      Operand b = load_operand(r0_b);
      if (!a.loaded || !b.loaded)
        throw std::runtime_error("rho0 needs two concrete pointed spaces");
      PointedSpace pa(a.loaded->space, std::max(a.loaded->base, 0));
      PointedSpace pb(b.loaded->space, std::max(b.loaded->base, 0));
      Rho0Report rep =
          rho0(pa, pb, QuadratureScheme::geometric(r0_rmin, r0_rmax, r0_nodes),
               r0_params);
      if (r0_format == "json") {
        json j;
        json nodes = json::array();
        for (const Rho0Node& n : rep.nodes)
          nodes.push_back({{"r", n.r}, {"lo", n.value.lo}, {"hi", n.value.hi}});
        j["nodes"] = std::move(nodes);
        j["lower_tail"] = rep.lower_tail;
        j["upper_tail"] = rep.upper_tail;
        j["modulus_slack"] = rep.modulus_slack;
        j["model_gap"] = rep.model_gap;
        j["total_lo"] = rep.total.lo;
        j["total_hi"] = rep.total.hi;
        emit(j.dump(2) + "\n", r0_out);
      } else {
        std::cout << "rho0(" << a.label << ", " << b.label << ")\n";
        for (const Rho0Node& n : rep.nodes)
          std::cout << "  r=" << n.r << "  " << interval_str(n.value) << "\n";
        std::cout << "  tails " << rep.lower_tail << " / " << rep.upper_tail
                  << ", modulus slack " << rep.modulus_slack << "\n";
        std::cout << "  total " << interval_str(rep.total) << " (outer "
                  << interval_str(rep.outer()) << ")\n";
      }
      return 0;
    }

    if (slice->parsed()) {
      Operand a = load_operand(slice_a);
      SliceNet net = slice_net(to_handle(a, slice_pointed), slice_n, slice_d,
                               slice_params.delta, slice_params, slice_pointed);
      emit(net_to_json(net) + "\n", slice_out);
      if (!slice_out.empty())
        std::cout << "wrote " << slice_out << " (" << net.elements.size()
                  << " elements, " << (net.certified ? "certified" : "sampled")
                  << ")\n";
      return 0;
    }

    if (seq->parsed()) {
      Operand target = load_operand(seq_target);
      std::ostringstream csv;
      csv << "# ghp.sequence.v1\nlabel,lo,hi,runtime_s\n";
      csv.precision(10);
      std::ostringstream text;
      text << "term  interval  runtime\n";
      if (seq_metric == "slice") {
        std::vector<PyramidHandle> handles;
        std::vector<std::string> labels;
        for (const std::string& t : seq_terms) {
          Operand op = load_operand(t);
          handles.push_back(to_handle(op, false));
          labels.push_back(op.label);
        }
        auto rows = slice_converge_report(handles, to_handle(target, false),
                                          seq_n, seq_d, seq_params.delta,
                                          seq_params);
        for (size_t i = 0; i < rows.size(); ++i) {
          csv << labels[i] << "," << rows[i].value.lo << "," << rows[i].value.hi
              << ",0\n";
          text << labels[i] << "  " << interval_str(rows[i].value) << "\n";
        }
      } else {
        const bool pointed = seq_metric == "rho-pointed";
        for (const std::string& t : seq_terms) {
          const auto t0 = std::chrono::steady_clock::now();
          Operand op = load_operand(t);
          RhoEstimate est =
              pointed ? rho_pointed(to_handle(op, true),
                                    to_handle(target, true), seq_params)
                      : rho(to_handle(op, false), to_handle(target, false),
                            seq_params);
          const double dt = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
          csv << op.label << "," << est.total.lo << "," << est.total.hi << ","
              << dt << "\n";
          text << op.label << "  " << interval_str(est.total) << "  " << dt
               << "s\n";
        }
      }
      if (seq_format == "csv")
        emit(csv.str(), seq_out);
      else
        emit(text.str(), seq_out);
      return 0;
    }

    if (verify->parsed()) {
      if (verify_suite != "full")
        throw std::runtime_error("unknown suite: " + verify_suite);
      if (verify_list) {
        for (const auto& c : verification_criteria())
          std::cout << c.id << " " << c.name << "\n";
        return 0;
      }
      auto results = run_verification(verify_filter, &std::cout);
      return all_passed(results) ? 0 : 1;
    }
  } catch (const InvalidSpaceError& e) {
    std::cerr << "invalid space: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
