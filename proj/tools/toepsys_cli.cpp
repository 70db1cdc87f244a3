#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "toepsys/toepsys.hpp"

using namespace toepsys;

namespace {

struct RunConfig {
  double gap = 1e-6;
  double tol = 1e-9;
  double quad_tol = 1e-8;
  std::uint64_t seed = 42;
  std::string out;
};

struct MalformedJson {
  std::string path;
  std::string message;
  std::size_t position;
};

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::invalid_argument, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedJson{path, e.what(), e.byte};
  }
}

void write_text(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  require(static_cast<bool>(os), ErrorKind::invalid_argument, "cannot write " + cfg.out);
  os << text;
}

void emit(const RunConfig& cfg, const json& j) { write_text(cfg, dump(j) + "\n"); }

void fail(const json& j) { std::cerr << dump(j) << "\n"; }

// First token that is neither an option nor an option's value.
std::string first_command(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--", 0) == 0) {
      if (a.find('=') == std::string::npos && a != "--help") ++i;
      continue;
    }
    if (a.rfind('-', 0) == 0) continue;
    return a;
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Toeplitz operator systems: factorization, decomposition, states, distances"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--gap", cfg.gap, "certified gap for distance programs")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "relative numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--quad-tol", cfg.quad_tol, "Kantorovich integration tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", cfg.out, "output path (default stdout)");

  std::string input, input2, eval_path, sample_kind;
  bool check_pure = false, geometry_check = false;
  int m = 0, n = 0, toeplitz_n = 0, circulant_m = 0, max_k = 4, count = 1000, samples = 1000;
  double slice_d = -0.4;

  auto* factorize = app.add_subcommand("factorize", "Fejer-Riesz factor of a positive density");
  factorize->add_option("input", input, "FR element JSON, - for stdin")->required();

  auto* decompose = app.add_subcommand("decompose", "Vandermonde decomposition of a positive Toeplitz matrix");
  decompose->add_option("input", input, "Toeplitz JSON, - for stdin")->required();

  auto* state = app.add_subcommand("state", "validate and inspect a state density");
  state->add_option("input", input, "density JSON, - for stdin")->required();
  state->add_flag("--check-pure", check_pure, "report whether the state is pure");
  state->add_option("--eval", eval_path, "Toeplitz JSON to evaluate the state on");

  auto* distance = app.add_subcommand("distance", "Connes and Kantorovich distances between two states");
  distance->add_option("phi", input, "first density JSON")->required();
  distance->add_option("psi", input2, "second density JSON")->required();

  auto* circulant = app.add_subcommand("circulant", "circulant completion, compression and spectra");
  circulant->require_subcommand(1);
  auto* complete = circulant->add_subcommand("complete", "complete a Toeplitz matrix to an m x m circulant");
  complete->add_option("input", input, "Toeplitz JSON")->required();
  complete->add_option("--m", m, "circulant size, >= 2n-1")->required();
  auto* compress = circulant->add_subcommand("compress", "upper-left n x n corner of a circulant");
  compress->add_option("input", input, "circulant JSON")->required();
  compress->add_option("--n", n, "corner size")->required();
  auto* eigen = circulant->add_subcommand("eigenvalues", "eigenvalues via the finite Fourier transform");
  eigen->add_option("input", input, "circulant JSON")->required();
  auto* tensor = circulant->add_subcommand("tensor-rank", "rank of the map l^inf(C_{2n-1}) (x) Toep(n) -> M_{2n-1}");
  tensor->add_option("--n", n, "Toeplitz size, >= 2")->required();

  auto* propagation = app.add_subcommand("propagation", "propagation number of a built-in system");
  auto* opt_t = propagation->add_option("--toeplitz", toeplitz_n, "Toep(n)");
  auto* opt_c = propagation->add_option("--circulant", circulant_m, "circulant matrices of size m");
  opt_t->excludes(opt_c);
  propagation->add_option("--max-k", max_k, "largest k tried");

  auto* geometry3 = app.add_subcommand("geometry3", "n = 3 identity checks and surface samples");
  auto* opt_check = geometry3->add_flag("--check", geometry_check, "run every identity, exit 0 iff all pass");
  auto* opt_sample = geometry3->add_option("--sample", sample_kind, "cone-slice | cone-boundary | state-surface | boundary");
  opt_check->excludes(opt_sample);
  geometry3->add_option("--count", count, "number of sample draws");
  geometry3->add_option("--slice-d", slice_d, "d for cone-slice");
  geometry3->add_option("--samples", samples, "random points per identity for --check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const auto cmd = first_command(argc, argv);
    if (!cmd.empty() && app.get_subcommand_no_throw(cmd) == nullptr) {
      fail({{"error", "unknown_subcommand"}, {"message", "unknown subcommand: " + cmd}});
      return 2;
    }
    fail({{"error", "usage"}, {"message", e.what()}});
    return 2;
  }

  try {
    if (*factorize) {
      const auto a = fr_element_from_json(read_json(input));
      const auto f = fejer_riesz_factorize(a, cfg.tol);
      emit(cfg, {{"q", to_json(f.q)}, {"residual", factorization_residual(a, f)}});
    } else if (*decompose) {
      const auto t = toeplitz_from_json(read_json(input));
      emit(cfg, to_json(vandermonde_decompose(t, cfg.tol, static_cast<unsigned>(cfg.seed))));
    } else if (*state) {
      const auto s = state_from_density(fr_element_from_json(read_json(input)), cfg.tol);
      json j{{"density", to_json(s.density)}};
      if (check_pure) j["pure"] = is_pure(s);
      if (!eval_path.empty()) j["value"] = evaluate(s, toeplitz_from_json(read_json(eval_path)));
      emit(cfg, j);
    } else if (*distance) {
      const auto phi = state_from_density(fr_element_from_json(read_json(input)), cfg.tol);
      const auto psi = state_from_density(fr_element_from_json(read_json(input2)), cfg.tol);
      const auto c = connes_distance(phi, psi, cfg.gap);
      const double k = kantorovich(phi, psi, cfg.quad_tol);
      emit(cfg, {{"connes", {{"value", c.value}, {"lower", c.lower}, {"upper", c.upper}}},
                 {"kantorovich", k},
                 {"inequality_ok", c.value >= k - (cfg.gap + cfg.quad_tol)}});
    } else if (*circulant) {
      if (*complete) {
        emit(cfg, to_json(complete_toeplitz(toeplitz_from_json(read_json(input)), m)));
      } else if (*compress) {
        emit(cfg, to_json(compress_circulant(circulant_from_json(read_json(input)), n)));
      } else if (*eigen) {
        emit(cfg, {{"eigenvalues", to_json(circulant_eigenvalues(circulant_from_json(read_json(input))))}});
      } else {
        const int r = tensor_map_rank(n);
        emit(cfg, {{"n", n}, {"m", 2 * n - 1}, {"rank", r}, {"bijective", r == (2 * n - 1) * (2 * n - 1)}});
      }
    } else if (*propagation) {
      require(opt_t->count() + opt_c->count() == 1, ErrorKind::invalid_argument,
              "propagation: give exactly one of --toeplitz, --circulant");
      const auto sys = opt_t->count() ? toeplitz_system(toeplitz_n) : circulant_system(circulant_m);
      emit(cfg, {{"prop", propagation_number(sys, max_k)}});
    } else if (*geometry3) {
      if (geometry_check) {
        json checks = json::array();
        bool ok = true;
        for (const auto& c : check_geometry3(samples, cfg.seed)) {
          checks.push_back({{"name", c.name}, {"max_error", c.max_error}, {"tolerance", c.tolerance}, {"passed", c.passed}});
          ok = ok && c.passed;
        }
        emit(cfg, {{"passed", ok}, {"checks", checks}});
        return ok ? 0 : 1;
      }
      require(!sample_kind.empty(), ErrorKind::invalid_argument, "geometry3: give --check or --sample <kind>");
      std::ostringstream os;
      write_csv(os, sample_surfaces(parse_sample_kind(sample_kind), count, cfg.seed, slice_d));
      write_text(cfg, os.str());
    }
  } catch (const MalformedJson& e) {
    fail({{"error", "malformed_json"}, {"path", e.path}, {"message", e.message}, {"position", e.position}});
    return 1;
  } catch (const Error& e) {
    fail({{"error", to_string(e.kind())}, {"message", e.what()}});
    return 1;
  } catch (const json::exception& e) {
    fail({{"error", "invalid_argument"}, {"message", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    fail({{"error", "internal"}, {"message", e.what()}});
    return 1;
  }
  return 0;
}
