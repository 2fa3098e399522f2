#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "http_service.hpp"
#include "schmidt/schmidt.hpp"

using namespace schmidt;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

Interval parse_pair(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "expected lo,hi (got '" + text + "')");
  return make_interval(Rational::parse(text.substr(0, comma)), Rational::parse(text.substr(comma + 1)));
}

std::vector<Interval> parse_seeds(const std::vector<std::string>& raw) {
  std::vector<Interval> seeds;
  for (const auto& s : raw) seeds.push_back(parse_pair(s));
  return seeds;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParseError:
    case ErrorKind::AlphaTooLarge:
    case ErrorKind::SeedMismatch:
    case ErrorKind::PreconditionViolated: return kExitUsage;
    default: return kExitFail;
  }
}

int report(const Certificate& c) {
  std::cout << c.to_json().dump() << '\n';
  return c.pass ? 0 : kExitFail;
}

Strategy bob_by_name(const std::string& name, Interval first, std::uint64_t seed) {
  if (name == "leftmost") return opening_then(first, leftmost_reply);
  if (name == "rightmost") return opening_then(first, rightmost_reply);
  if (name == "centered") return opening_then(first, centered_reply);
  if (name == "random") {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return opening_then(first, [rng](const GameHistory& h) {
      std::uniform_int_distribution<std::int64_t> pick(0, 1000);
      return reply_at(h, Rational(pick(*rng), 1000));
    });
  }
  throw Error(ErrorKind::InvalidArgument, "unknown Bob strategy '" + name + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for Schmidt's (alpha, beta)-game"};
  app.require_subcommand(1);

  std::string alpha, beta;
  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "Alice's ratio, p/q")->required();
    cmd->add_option("--beta", beta, "Bob's ratio, p/q")->required();
  };

  std::vector<std::string> seeds{"0,1"};
  int depth = 4;
  std::string mode = "single";
  auto add_tree = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seeds, "seed interval lo,hi (repeatable)")->take_all();
    cmd->add_option("--depth", depth, "stages to build")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", mode, "single | pair | diagonal | thickened");
  };

  auto* classify = app.add_subcommand("classify", "Label the (alpha, beta) region");
  add_params(classify);

  std::size_t max_omegas = 20000;
  auto* build = app.add_subcommand("build-tree", "Build the target tree and dump it as JSON");
  add_params(build);
  add_tree(build);
  build->add_option("--max-omegas", max_omegas, "stop listing windows after this many");

  std::string bob = "leftmost";
  std::uint64_t rng_seed = 1;
  int rounds = 0;
  auto* run = app.add_subcommand("run", "Play the tree strategy against a scripted Bob; prints a JSONL trace");
  add_params(run);
  add_tree(run);
  run->add_option("--bob", bob, "leftmost | rightmost | centered | random");
  run->add_option("--rng-seed", rng_seed, "seed for --bob random");
  run->add_option("--rounds", rounds, "rounds to play (default depth+1)");

  std::string oracle = "leftmost";
  std::string first = "0,1";
  int foil_depth = 10;
  auto* foil_cmd = app.add_subcommand("foil", "Run Bob's foiling pairing against a scripted Alice");
  add_params(foil_cmd);
  foil_cmd->add_option("--oracle", oracle, "leftmost | rightmost | centered | alternating | pseudo-random");
  foil_cmd->add_option("--first", first, "Bob's first move lo,hi");
  foil_cmd->add_option("--depth", foil_depth, "rounds")->check(CLI::PositiveNumber);

  std::string check;
  std::string trace_path;
  int stage = 1;
  std::uint64_t q_index = 0;
  std::string q_text;
  auto* verify = app.add_subcommand("verify", "Run one finite check and print its certificate");
  add_params(verify);
  add_tree(verify);
  verify->add_option("--check", check, "omega-geometry | chain-lemma | partial-vitali | run | cantor-geometry")->required();
  verify->add_option("--trace", trace_path, "JSONL trace (check run)");
  verify->add_option("--stage", stage, "stage whose windows are checked (chain-lemma)");
  verify->add_option("--q-index", q_index, "enumeration index of q (chain-lemma)");
  verify->add_option("--q", q_text, "explicit q (chain-lemma)");

  int grid = 120;
  auto* sweep = app.add_subcommand("sweep", "Classify an n x n grid of (i/(n+1), j/(n+1)); CSV on stdout");
  sweep->add_option("--grid", grid, "grid size")->check(CLI::PositiveNumber);

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Serve the JSON session protocol over HTTP");
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--host", host, "bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    auto params = [&] { return GameParams(Rational::parse(alpha), Rational::parse(beta)); };
    auto tree = [&] { return TargetTree::build(parse_seeds(seeds), params(), depth, parse_tree_mode(mode)); };

    if (*classify) {
      std::cout << join_labels(classify_region(params())) << '\n';
      return 0;
    }
    if (*build) {
      std::cout << dump_tree(tree(), max_omegas).dump() << '\n';
      return 0;
    }
    if (*run) {
      TargetTree t = tree();
      const int n = rounds > 0 ? rounds : depth + 1;
      GameHistory h = run_game(t.params(), bob_by_name(bob, t.seeds().front(), rng_seed), alice_strategy(t),
                               static_cast<std::size_t>(n));
      std::cout << trace_jsonl(h);
      Certificate c = check_run(h, t);
      std::cerr << c.to_json().dump() << '\n';
      return c.pass ? 0 : kExitFail;
    }
    if (*foil_cmd) {
      FoilCertificate c = foil(params(), oracles::by_name(oracle, rng_seed), foil_depth, parse_pair(first));
      std::cout << to_json(c).dump() << '\n';
      return c.valid() ? 0 : kExitFail;
    }
    if (*verify) {
      if (check == "omega-geometry") return report(check_omega_geometry(params()));
      if (check == "cantor-geometry") return report(check_cantor_geometry(parse_pair(first), params()));
      if (check == "partial-vitali") return report(check_partial_vitali(tree()));
      if (check == "chain-lemma") {
        TargetTree t = tree();
        Rational q = q_text.empty() ? enumerate_rationals(q_index) : Rational::parse(q_text);
        std::vector<Interval> omegas;
        for (NodeId node : t.level(t.seed_root(0), stage + t.offset(0))) omegas.push_back(t.omega(node));
        return report(check_chain_lemma(omegas, q));
      }
      if (check == "run") {
        if (trace_path.empty()) throw Error(ErrorKind::InvalidArgument, "--trace is required for the run check");
        TargetTree t = tree();
        return report(check_run(parse_trace(read_file(trace_path), t.params()), t));
      }
      throw Error(ErrorKind::InvalidArgument, "unknown check '" + check + "'");
    }
    if (*sweep) {
      std::cout << "alpha,beta,labels\n";
      for (int i = 1; i <= grid; ++i)
        for (int j = 1; j <= grid; ++j) {
          GameParams p(Rational(i, grid + 1), Rational(j, grid + 1));
          std::cout << p.alpha() << ',' << p.beta() << ',' << join_labels(classify_region(p)) << '\n';
        }
      return 0;
    }
    if (*serve) {
      SessionManager sessions;
      httplib::Server server;
      tools::install_routes(server, sessions);
      std::cerr << "listening on http://" << host << ':' << port << '\n';
      if (!server.listen(host, port)) throw Error(ErrorKind::InvalidArgument, "cannot bind " + host + ":" + std::to_string(port));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << Json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << '\n';
    return exit_code_for(e.kind());
  }
  return 0;
}
