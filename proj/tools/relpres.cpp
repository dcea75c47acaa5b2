#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "relpres/json_io.hpp"

using namespace relpres;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot open input file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
  }
}

void emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  text.push_back('\n');
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorCode::SchemaError, "cannot open output file: " + out_path);
    out << text;
  }
}

int run_analyze(const std::string& input, const std::string& output,
                const std::string& gen_flag, const std::string& subfamily_flag) {
  RelativePresentation p = parse_presentation(load_json(input));
  Json out;
  bool all_ok = true;

  Json unimod = Json::object();
  for (const std::string& g : p.alphabet.free_gens()) {
    unimod[g] = is_unimodular(p, g);
  }
  out["is_unimodular"] = unimod;
  std::string gen = gen_flag;
  if (gen.empty() && !p.alphabet.free_gens().empty()) gen = p.alphabet.free_gens().front();
  if (!gen.empty()) {
    out["checked_generator"] = gen;
    all_ok = all_ok && is_unimodular(p, gen);
  }

  if (p.t_factor) {
    GeneralizedReport gr = generalized_unimodular_report(p);
    out["generalized"] = report_to_json(p, gr);
    all_ok = all_ok && gr.verdict;
    if (gr.verdict) {
      try {
        CosetForm cf = rewrite_to_coset_form(p);
        Json cj = coset_form_to_json(p, cf);
        Word expanded = expand_coset_form(p.alphabet, *p.t_factor, cf);
        cj["round_trip_ok"] = words_equal(p.alphabet, expanded, cf.source_relator);
        out["coset_form"] = cj;
        all_ok = all_ok && cj["round_trip_ok"].get<bool>() && cf.coset_labels.size() >= 2;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SplittingCase) throw;
        out["coset_form"] = Json{{"error", "SplittingCase"}, {"detail", e.what()}};
      }
    }
  } else if (p.alphabet.factor_names().size() == 1 && !p.alphabet.free_gens().empty()) {
    out["case_split"] = report_to_json(p, split_cases(p));
  }

  if (!subfamily_flag.empty()) {
    if (gen.empty())
      throw Error(ErrorCode::SchemaError, "--subfamily needs a free generator (see --gen)");
    Json sub = Json::parse(subfamily_flag, nullptr, false);
    if (sub.is_discarded())
      throw Error(ErrorCode::SchemaError, "--subfamily must be a JSON object");
    SubproductSpec spec = parse_subproduct(p.alphabet, sub, "/subfamily");
    HypothesisReport hr = hypothesis_report(p, gen, spec);
    out["hypothesis"] = report_to_json(p, hr);
    all_ok = all_ok && hr.all_green();
  }

  out["ok"] = all_ok;
  emit(out, output);
  return all_ok ? kExitOk : kExitCheckFailed;
}

int run_sc_check(const std::string& input, const std::string& output, const std::string& lambda,
                 const std::string& family, int arms, int count, int blocks_j, int blocks) {
  Rat lam;
  try {
    lam = Rat::parse(lambda);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("bad --lambda: ") + e.what());
  }
  if (!(Rat(0) < lam)) throw Error(ErrorCode::SchemaError, "--lambda must be positive");

  Alphabet alphabet;
  std::vector<Word> relators;
  if (!family.empty()) {
    RelatorFamily fam;
    if (family == "lemma3")
      fam = build_product_block_family(arms, count, blocks_j);
    else if (family == "section5")
      fam = build_shared_letter_family(count, blocks);
    else
      throw Error(ErrorCode::SchemaError, "--family must be lemma3 or section5");
    alphabet = std::move(fam.alphabet);
    relators = std::move(fam.relators);
  } else {
    if (input.empty()) throw Error(ErrorCode::SchemaError, "relators file or --family required");
    RelatorsInput in = parse_relators(load_json(input));
    alphabet = std::move(in.alphabet);
    relators = std::move(in.relators);
  }
  CPrimeReport rep = check_cprime(alphabet, relators, lam);
  emit(report_to_json(alphabet, rep), output);
  return rep.holds ? kExitOk : kExitCheckFailed;
}

int run_up_check(const std::string& input, const std::string& output) {
  UpInput in = parse_up_sets(load_json(input));
  UniqueProductsReport up = unique_products(in.x, in.y);
  StrongUpReport strong = has_strong_up(in.x, in.y);
  Json out;
  out["unique_products"] = report_to_json(in.x.backend, up);
  out["strong_up"] = report_to_json(in.x.backend, strong);
  emit(out, output);
  return strong.verdict == StrongUpReport::Verdict::False ? kExitCheckFailed : kExitOk;
}

int run_omega_check(const std::string& input, const std::string& output) {
  SetSystem s = parse_set_system(load_json(input));
  OmegaReport rep = check_omega_conditions(s);
  Json out = report_to_json(s, rep);
  Json flags = Json::array();
  for (bool f : s.n_flags) flags.push_back(f);
  out["intersection_certificates"] = flags;  // caller-supplied, recorded only
  emit(out, output);
  return rep.ok ? kExitOk : kExitCheckFailed;
}

int run_diagram(const std::string& action, const std::string& input, const std::string& output,
                const std::string& edge) {
  HowieDiagram d = parse_diagram(load_json(input));
  if (action == "validate") {
    ValidationReport rep = validate(d);
    emit(report_to_json(rep), output);
    return rep.valid() ? kExitOk : kExitCheckFailed;
  }
  if (action == "simulate") {
    CollisionReport rep = simulate(d);
    emit(report_to_json(rep), output);
    return kExitOk;
  }
  if (action == "parity") {
    ParityReport rep = check_parity_invariant(d);
    emit(report_to_json(rep), output);
    return rep.t_edges_ok && rep.x_edges_ok ? kExitOk : kExitCheckFailed;
  }
  if (action == "reduced") {
    ReducednessReport rep = reducedness_report(d);
    emit(report_to_json(rep), output);
    return kExitOk;
  }
  if (action == "reduce") {
    if (edge.empty()) throw Error(ErrorCode::SchemaError, "--edge required for reduce");
    HowieDiagram merged = reduce_step(d, edge);
    emit(diagram_to_json(merged), output);
    return kExitOk;
  }
  throw Error(ErrorCode::SchemaError, "unknown diagram action: " + action);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relative presentation toolkit"};
  app.require_subcommand(1);

  std::string input, output, gen, subfamily, lambda, family, edge, action;
  int arms = 2, count = 1, blocks_j = 2017, blocks = 1000;

  auto* analyze = app.add_subcommand("analyze", "presentation checks");
  analyze->add_option("input", input)->required();
  analyze->add_option("-o,--output", output);
  analyze->add_option("--gen", gen, "designated free generator");
  analyze->add_option("--subfamily", subfamily, "subproduct spec as JSON");

  auto* sc = app.add_subcommand("sc-check", "small cancellation C'(lambda)");
  sc->add_option("input", input);
  sc->add_option("-o,--output", output);
  sc->add_option("--lambda", lambda)->required();
  sc->add_option("--family", family, "built-in relator family: lemma3 | section5");
  sc->add_option("--l", arms, "arms for the lemma3 family");
  sc->add_option("--J", blocks_j, "blocks for the lemma3 family");
  sc->add_option("--blocks", blocks, "blocks for the section5 family");
  sc->add_option("--count", count, "number of relators");

  auto* up = app.add_subcommand("up-check", "unique product checks");
  up->add_option("input", input)->required();
  up->add_option("-o,--output", output);

  auto* omega = app.add_subcommand("omega-check", "set system conditions");
  omega->add_option("input", input)->required();
  omega->add_option("-o,--output", output);

  auto* diagram = app.add_subcommand("diagram", "spherical diagram operations");
  diagram->add_option("action", action, "validate | simulate | parity | reduced | reduce")
      ->required();
  diagram->add_option("input", input)->required();
  diagram->add_option("-o,--output", output);
  diagram->add_option("--edge", edge, "edge id for reduce");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return run_analyze(input, output, gen, subfamily);
    if (app.got_subcommand(sc))
      return run_sc_check(input, output, lambda, family, arms, count, blocks_j, blocks);
    if (app.got_subcommand(up)) return run_up_check(input, output);
    if (app.got_subcommand(omega)) return run_omega_check(input, output);
    if (app.got_subcommand(diagram)) return run_diagram(action, input, output, edge);
  } catch (const Error& e) {
    Json err{{"error", error_code_name(e.code())}, {"detail", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return e.code() == ErrorCode::SchemaError ? kExitBadInput : kExitCheckFailed;
  } catch (const std::exception& e) {
    Json err{{"error", "InvalidArgument"}, {"detail", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
