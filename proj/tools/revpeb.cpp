// revpeb: generate pebbling instances, solve them exactly, and convert
// between reversible pebblings and Nullstellensatz certificates.
//
// Exit codes: 0 success, 1 invalid input, 2 infeasible or too large,
// 3 internal consistency violation.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "revpeb/revpeb.hpp"

using namespace revpeb;

namespace {

struct Consistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SpaceInfeasible:
    case ErrorKind::InstanceTooLarge:
      return 2;
    case ErrorKind::Internal:
    case ErrorKind::NoPathToSink:
      return 3;
    default:
      return 1;
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_file(path, text);
}

Game parse_game(const std::string& s) { return s == "standard" ? Game::Standard : Game::Reversible; }
Flavor parse_flavor(const std::string& s) { return s == "persistent" ? Flavor::Persistent : Flavor::Visiting; }

std::string ceil_decimal(const mpq_class& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out.get_str();
}

// ---- gen ------------------------------------------------------------------

struct FamilyArgs {
  std::string family;
  std::size_t height = 2, n = 4, c = 2, r = 1;
  std::optional<std::size_t> single_sink;
};

void add_family_options(CLI::App* cmd, FamilyArgs& a) {
  cmd->add_option("--family", a.family, "pyramid | line | cs | bit-reversal")
      ->required()
      ->check(CLI::IsMember({"pyramid", "line", "cs", "bit-reversal"}));
  cmd->add_option("--height", a.height, "pyramid height");
  cmd->add_option("--n", a.n, "line length or bit-reversal width");
  cmd->add_option("--c", a.c, "Carlson-Savage spine count");
  cmd->add_option("--r", a.r, "Carlson-Savage recursion depth");
  cmd->add_option("--single-sink", a.single_sink, "keep only what reaches sink j (1-based, cs only)");
}

Dag make_family(const FamilyArgs& a) {
  if (a.family == "pyramid") return pyramid(a.height);
  if (a.family == "line") return line(a.n);
  if (a.family == "bit-reversal") return bit_reversal(a.n);
  Dag g = carlson_savage(a.c, a.r);
  if (a.single_sink) {
    if (*a.single_sink < 1 || *a.single_sink > a.c)
      throw Error(ErrorKind::ParamOutOfRange, "--single-sink must lie in 1.." + std::to_string(a.c));
    return single_sink_restriction(g, carlson_savage_sink_name(a.c, a.r, *a.single_sink));
  }
  return g;
}

// ---- tradeoff helpers -----------------------------------------------------

// Best time among the constructive strategies for the family that fit in
// `space` pebbles, as reversible visiting pebblings.
std::optional<std::size_t> strategy_upper_time(const FamilyArgs& a, const Dag& dag, std::size_t space) {
  std::vector<Strategy> candidates;
  if (a.family == "line") {
    candidates.push_back(strat_line_visiting(a.n));
    for (std::size_t k = 1; k <= 6; ++k) candidates.push_back(strat_line_checkpoint(a.n, k));
  } else if (a.family == "pyramid") {
    candidates.push_back(strat_by_depth(dag));
  } else if (a.family == "cs") {
    candidates.push_back(strat_carlson_savage(a.c, a.r, a.single_sink.value_or(1)));
  } else {
    candidates.push_back(strat_bit_reversal_small_space(a.n));
    for (std::size_t k = 1; k <= floor_log2(a.n); ++k) candidates.push_back(strat_bit_reversal_checkpoint(a.n, k));
  }
  std::optional<std::size_t> best;
  for (const Strategy& s : candidates) {
    Strategy visiting = mirror_extend(dag, std::span(s.moves).first(sink_prefix_length(dag, s.moves, s.game)));
    PebblingMetrics m = verify_strategy(dag, visiting);
    if (m.space <= space && (!best || m.time < *best)) best = m.time;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pebble games and Nullstellensatz certificates"};
  app.require_subcommand(1);
  SearchOptions search_opts;
  app.add_option("--state-budget", search_opts.state_budget, "maximum expanded configurations per search");

  // gen
  FamilyArgs gen_args;
  std::string gen_out;
  std::optional<std::string> gen_dimacs;
  auto* gen = app.add_subcommand("gen", "generate a graph family");
  add_family_options(gen, gen_args);
  gen->add_option("--out", gen_out, "graph JSON path (default stdout)");
  gen->add_option("--dimacs", gen_dimacs, "also write the pebbling formula as DIMACS (default stdout)")
      ->expected(0, 1)
      ->default_str("-");

  // solve
  std::string solve_graph, solve_game = "reversible", solve_flavor = "visiting", solve_mode = "min-space";
  std::optional<std::size_t> solve_space, solve_smax;
  std::string solve_witness, solve_csv, solve_witness_dir = ".";
  auto* solve = app.add_subcommand("solve", "exact optimal pebblings");
  solve->add_option("graph", solve_graph, "graph JSON")->required();
  solve->add_option("--game", solve_game)->check(CLI::IsMember({"reversible", "standard"}));
  solve->add_option("--flavor", solve_flavor)->check(CLI::IsMember({"visiting", "persistent"}));
  solve->add_option("--mode", solve_mode)->check(CLI::IsMember({"min-space", "min-time", "pareto"}));
  solve->add_option("--space", solve_space, "pebble budget for min-time");
  solve->add_option("--smax", solve_smax, "largest budget for pareto");
  solve->add_option("--witness", solve_witness, "witness strategy JSON path");
  solve->add_option("--csv", solve_csv, "pareto CSV path (default stdout)");
  solve->add_option("--witness-dir", solve_witness_dir, "directory for pareto witnesses");

  // cert
  auto* cert = app.add_subcommand("cert", "Nullstellensatz certificates");
  cert->require_subcommand(1);
  std::string cert_graph, cert_input, cert_out, cert_field_text;
  auto add_cert_common = [&](CLI::App* sub, const char* input_help) {
    sub->add_option("graph", cert_graph, "graph JSON")->required();
    sub->add_option("input", cert_input, input_help)->required();
    sub->add_option("--field", cert_field_text, "2, 3, F5, GF(7) or rationals");
    sub->add_option("--out", cert_out, "output path");
  };
  auto* compile_cmd = cert->add_subcommand("compile", "certificate from a reversible pebbling");
  add_cert_common(compile_cmd, "strategy JSON");
  auto* verify_cmd = cert->add_subcommand("verify", "check a certificate");
  add_cert_common(verify_cmd, "certificate JSON");
  auto* extract_cmd = cert->add_subcommand("extract", "reversible pebbling from a certificate");
  add_cert_common(extract_cmd, "certificate JSON");
  auto* ml_cmd = cert->add_subcommand("multilinearize", "drop Boolean axioms and exponents");
  add_cert_common(ml_cmd, "certificate JSON");

  // tradeoff
  FamilyArgs tr_args;
  std::string tr_game = "reversible", tr_flavor = "visiting", tr_out;
  std::optional<std::size_t> tr_smax;
  auto* tradeoff = app.add_subcommand("tradeoff", "time-space table for a family");
  add_family_options(tradeoff, tr_args);
  tradeoff->add_option("--game", tr_game)->check(CLI::IsMember({"reversible", "standard"}));
  tradeoff->add_option("--flavor", tr_flavor)->check(CLI::IsMember({"visiting", "persistent"}));
  tradeoff->add_option("--smax", tr_smax, "largest budget (default minimum + 2)");
  tradeoff->add_option("--out", tr_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      Dag g = make_family(gen_args);
      const bool dimacs_to_stdout = gen_dimacs && (gen_dimacs->empty() || *gen_dimacs == "-");
      if (!gen_out.empty() || !dimacs_to_stdout) emit(gen_out, graph_to_json(g).dump(2) + "\n");
      if (gen_dimacs) emit(*gen_dimacs, to_dimacs(g));
      return 0;
    }

    if (solve->parsed()) {
      Dag g = load_graph(solve_graph);
      Game game = parse_game(solve_game);
      Flavor flavor = parse_flavor(solve_flavor);
      if (solve_mode == "min-space") {
        SearchResult r = min_space(g, game, flavor, search_opts);
        PebblingMetrics m = verify_strategy(g, r.witness);
        std::cout << "space " << r.value << "\ntime " << m.time << "\n";
        if (!solve_witness.empty()) write_file(solve_witness, strategy_to_json(g, r.witness).dump(2) + "\n");
      } else if (solve_mode == "min-time") {
        if (!solve_space) throw Error(ErrorKind::ParamOutOfRange, "--mode min-time needs --space");
        SearchResult r = min_time_within_space(g, game, flavor, *solve_space, search_opts);
        PebblingMetrics m = verify_strategy(g, r.witness);
        std::cout << "time " << r.value << "\nspace " << m.space << "\n";
        if (!solve_witness.empty()) write_file(solve_witness, strategy_to_json(g, r.witness).dump(2) + "\n");
      } else {
        std::size_t smax = solve_smax ? *solve_smax : min_space(g, game, flavor, search_opts).value + 2;
        smax = std::min(smax, g.size());
        auto points = pareto(g, game, flavor, smax, search_opts);
        std::ostringstream csv;
        csv << "space,time,witness_file\n";
        for (const auto& p : points) {
          auto file = std::filesystem::path(solve_witness_dir) / ("witness_s" + std::to_string(p.space_budget) + ".json");
          write_file(file.string(), strategy_to_json(g, p.witness).dump(2) + "\n");
          csv << p.space_budget << "," << p.optimal_time << "," << file.string() << "\n";
        }
        emit(solve_csv, csv.str());
      }
      return 0;
    }

    if (cert->parsed()) {
      Dag g = load_graph(cert_graph);
      if (compile_cmd->parsed()) {
        Strategy s = strategy_from_json(g, parse_json(read_file(cert_input), cert_input));
        FieldSpec spec = cert_field_text.empty() ? FieldSpec::prime_field(2) : FieldSpec::parse(cert_field_text);
        return with_field(spec, [&](auto field) {
          const std::size_t prefix = sink_prefix_length(g, s.moves, Game::Reversible);
          auto c = compile(g, s, field);
          if (prefix < s.moves.size())
            std::cerr << "warning: ignoring " << s.moves.size() - prefix << " moves after the sink is first pebbled\n";
          auto rep = verify(pebbling_formula(g, field), c);
          if (!rep.valid) throw Consistency("compiled certificate does not verify");
          std::cout << "size " << rep.size << "\ndegree " << rep.degree << "\n";
          emit(cert_out, certificate_to_json(g, c).dump(2) + "\n");
          return 0;
        });
      }
      json doc = parse_json(read_file(cert_input), cert_input);
      FieldSpec spec = cert_field_text.empty() ? certificate_field(doc) : FieldSpec::parse(cert_field_text);
      return with_field(spec, [&](auto field) {
        auto c = certificate_from_json(g, doc, field);
        auto formula = pebbling_formula(g, field);
        if (verify_cmd->parsed()) {
          auto rep = verify(formula, c);
          std::cout << "field " << spec.name() << "\nvalid " << (rep.valid ? "true" : "false") << "\nsize " << rep.size
                    << "\ndegree " << rep.degree << "\n";
          if (!rep.valid) std::cout << "residual " << to_string(rep.residual, g) << "\n";
          return rep.valid ? 0 : 1;
        }
        if (extract_cmd->parsed()) {
          Strategy s = extract(g, c);
          PebblingMetrics m = verify_strategy(g, s);
          auto rep = verify(formula, c);
          if (m.space > rep.degree || m.time + 1 > rep.size)
            throw Consistency("extracted pebbling exceeds the certificate's degree or size");
          std::cout << "time " << m.time << "\nspace " << m.space << "\n";
          emit(cert_out, strategy_to_json(g, s).dump(2) + "\n");
          return 0;
        }
        auto ml = multilinearize(formula, c);
        auto rep = verify(formula, ml);
        std::cout << "size " << rep.size << "\ndegree " << rep.degree << "\n";
        emit(cert_out, certificate_to_json(g, ml).dump(2) + "\n");
        return 0;
      });
    }

    if (tradeoff->parsed()) {
      FamilyArgs a = tr_args;
      if (a.family == "cs" && !a.single_sink) a.single_sink = 1;
      Dag g = make_family(a);
      Game game = parse_game(tr_game);
      Flavor flavor = parse_flavor(tr_flavor);
      std::size_t smax = tr_smax ? *tr_smax : min_space(g, game, flavor, search_opts).value + 2;
      smax = std::min(smax, g.size());
      auto points = pareto(g, game, flavor, smax, search_opts);
      std::ostringstream csv;
      csv << "space,optimal_time,theorem_bound,strategy_upper_time,cert_size,cert_degree\n";
      for (const auto& p : points) {
        csv << p.space_budget << "," << p.optimal_time << ",";
        if (a.family == "cs") csv << ceil_decimal(cs_lower_bound(a.c, a.r, p.space_budget));
        csv << ",";
        if (flavor == Flavor::Visiting)
          if (auto t = strategy_upper_time(a, g, p.space_budget)) csv << *t;
        csv << ",";
        if (game == Game::Reversible && flavor == Flavor::Visiting) {
          PrimeField f2(2);
          auto rep = verify(pebbling_formula(g, f2), compile(g, p.witness, f2));
          PebblingMetrics m = verify_strategy(g, p.witness);
          if (!rep.valid || rep.size != m.time + 1 || rep.degree != m.space)
            throw Consistency("compiled witness breaks size = time + 1 or degree = space");
          csv << rep.size << "," << rep.degree;
        } else {
          csv << ",";
        }
        csv << "\n";
      }
      emit(tr_out, csv.str());
      return 0;
    }
  } catch (const Consistency& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    if (e.kind() == ErrorKind::InstanceTooLarge) std::cerr << "hint: raise --state-budget\n";
    return exit_code(e.kind());
  }
  return 0;
}
